"""Monte Carlo check of the random-graph coupling bound.

Graphs share their vertex points; edges come from shared uniform variables
thresholded at q_n and q, so the pair is maximally coupled.  The expected
p-th power GOSPA distance is then bounded by a point-pattern Wasserstein
term (zero here, the points coincide) plus C_Y^p |q_n - q| / 2.  As q_n
approaches q the estimate drops to zero -- the metric is compatible with
convergence in distribution of the random graphs.
"""

from agdist.simgen import CouplingSpec, binomial_uniform_points, coupling_bound_check

model = binomial_uniform_points(5)

print("fixed q = 0.5, five shared uniform points, GOSPA2 with K = 1, p = 1")
print(f"{'q_n':>5} {'E[d] estimate':>14} {'bound':>8} {'+3 SE ok':>9}")
for q_n in (0.1, 0.2, 0.3, 0.4, 0.45, 0.5):
    check = coupling_bound_check(CouplingSpec(
        q_n=q_n, q=0.5, point_model=model, sample_count=4000, p=1.0, seed=11))
    print(f"{q_n:>5} {check.lhs:>14.4f} {check.rhs:>8.4f} {str(check.passed):>9}")

print("\nthe estimate tracks C_Y^p |q_n - q| / 2 closely and vanishes at q_n = q;")
print("with coinciding points the identity matching is usually optimal, so the")
print("estimate sits essentially on the bound, dipping below only when some")
print("permutation trades away edge mismatches")
