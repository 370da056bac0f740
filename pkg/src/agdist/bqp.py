"""Binary quadratic program form of the padded assignment problem.

The permutation matrix is linearized column-major, k = n*(j-1) + i in
1-based terms, giving ``min 1/2 z'Qz + r'z  s.t.  Az = 1, z binary`` with
Q holding the (scaled) p-th-power edge costs and r the vertex costs.  The
text dump is meant for external MILP/BQP solvers; in-memory indices are
0-based, the file is 1-based.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import sparse

from .costs import _costs_for
from .padding import PaddedPair


@dataclass(frozen=True)
class BqpInstance:
    n: int                     # padded graph size
    q: sparse.csr_matrix       # (n^2, n^2) symmetric edge-cost matrix
    r: np.ndarray              # (n^2,) vertex-cost vector
    a: sparse.csr_matrix       # (2n, n^2) assignment constraints
    b: np.ndarray              # all-ones right-hand side

    def index_of(self, i: int, j: int) -> int:
        """Linearized position of the (i, j) assignment variable (0-based)."""
        return self.n * j + i

    def permutation_vector(self, perm) -> np.ndarray:
        z = np.zeros(self.n * self.n)
        for i, j in enumerate(perm):
            z[self.index_of(i, int(j))] = 1.0
        return z

    def objective(self, z) -> float:
        z = np.asarray(z, dtype=float)
        return float(0.5 * z @ (self.q @ z) + self.r @ z)

    def is_feasible(self, z) -> bool:
        return bool(np.array_equal(self.a @ z, self.b))


def export_bqp(pair: PaddedPair, cfg=None) -> BqpInstance:
    """Build the BQP whose objective agrees with the raw QAP objective."""
    cfg = pair.cfg if cfg is None else cfg
    pc = _costs_for(pair, cfg)
    n = pair.n
    if n < 1:
        raise ValueError("BQP export needs at least one vertex")
    # Q[n*j + i, n*j2 + i2] = scaled edge-pair cost for i -> j, i2 -> j2
    tensor = pc.edge_scale * pc.tensor()       # indexed [i, i2, j, j2]
    q = tensor.transpose(2, 0, 3, 1).reshape(n * n, n * n)
    r = pc.vertex_costs.T.reshape(-1).copy()   # r[n*j + i] = vertex_costs[i, j]
    rows, cols, ones = [], [], []
    for j in range(n):
        for i in range(n):
            t = n * j + i
            rows.extend((i, n + j))
            cols.extend((t, t))
            ones.extend((1.0, 1.0))
    a = sparse.csr_matrix((ones, (rows, cols)), shape=(2 * n, n * n))
    return BqpInstance(n=n, q=sparse.csr_matrix(q), r=r, a=a, b=np.ones(2 * n))


def write_bqp(instance: BqpInstance, path) -> None:
    """Sparse text dump: header, r entries, upper-triangle Q entries, A ones.

    Format (1-based indices, 17 significant digits)::

        BQP n=<N> nz_Q=<count>
        r <k> <value>           one line per variable
        Q <k> <l> <value>       upper triangle, nonzeros only
        A <s> <t>               positions of the ones of A
    """
    coo = sparse.triu(instance.q).tocoo()
    lines = [f"BQP n={instance.n} nz_Q={coo.nnz}"]
    for k, val in enumerate(instance.r):
        lines.append(f"r {k + 1} {val:.17g}")
    for k, l, val in zip(coo.row, coo.col, coo.data):
        lines.append(f"Q {k + 1} {l + 1} {val:.17g}")
    acoo = instance.a.tocoo()
    for s, t in zip(acoo.row, acoo.col):
        lines.append(f"A {s + 1} {t + 1}")
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def read_bqp(path) -> BqpInstance:
    """Load a dump written by :func:`write_bqp` (round-trip checking aid)."""
    with open(path) as fh:
        header = fh.readline().split()
        n = int(header[1].split("=")[1])
        r = np.zeros(n * n)
        qr, qc, qv = [], [], []
        ar, ac = [], []
        for line in fh:
            parts = line.split()
            if not parts:
                continue
            if parts[0] == "r":
                r[int(parts[1]) - 1] = float(parts[2])
            elif parts[0] == "Q":
                k, l, val = int(parts[1]) - 1, int(parts[2]) - 1, float(parts[3])
                qr.append(k)
                qc.append(l)
                qv.append(val)
                if k != l:
                    qr.append(l)
                    qc.append(k)
                    qv.append(val)
            elif parts[0] == "A":
                ar.append(int(parts[1]) - 1)
                ac.append(int(parts[2]) - 1)
    q = sparse.csr_matrix((qv, (qr, qc)), shape=(n * n, n * n))
    a = sparse.csr_matrix((np.ones(len(ar)), (ar, ac)), shape=(2 * n, n * n))
    return BqpInstance(n=n, q=q, r=r, a=a, b=np.ones(2 * n))
