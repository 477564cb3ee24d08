"""Self-dual bent sequences: solutions X in the q-th roots of unity of
H X = lam * mu_k(X) with lam in Z[zeta_q].

Two independent routes are provided: ``exhaustive_search`` enumerates every
X (compiled kernel), and ``eigenspace_search`` works through the eigenspaces
of the product matrix mu_k^(t-1)(H) ... mu_k(H) H.  Both finish with the exact
check in ``verify_bent``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .butson import ButsonMatrix
from .cyclotomic import CycElt, apply_multiplier, multiplicative_order, reduction_matrix, units
from .exceptions import BudgetExceeded, NotCoprime, PreconditionFailed, ZeroFirstColumn
from .existence import compositions_iter

EXHAUSTIVE_BUDGET = 10**8
COMPOSITION_BUDGET = 10**7
EIGEN_BUDGET = 10**7

NULL_TOL = 1e-8
RANK_TOL = 1e-8
ROOT_TOL = 1e-6
CLUSTER_TOL = 1e-6


@dataclass(frozen=True)
class BentSolution:
    n: int
    q: int
    k: int
    x: tuple
    lam: CycElt

    def to_json(self) -> dict:
        return {"n": self.n, "q": self.q, "k": self.k, "x": list(self.x),
                "lambda": list(self.lam.reduce_canonical().coeffs)}

    @classmethod
    def from_json(cls, d: dict) -> "BentSolution":
        lam = CycElt(d["q"], d["lambda"])
        return cls(d["n"], d["q"], d["k"], tuple(d["x"]), lam)

    def roots(self) -> np.ndarray:
        return np.exp(2j * np.pi * np.array(self.x) / self.q)


def _check_k(k: int, q: int) -> None:
    if math.gcd(k, q) != 1:
        raise NotCoprime(f"multiplier {k} is not coprime to {q}")


def _row_group_ring(H: ButsonMatrix, x, k: int) -> np.ndarray:
    """Row i: group-ring vector of (H X)_i * zeta^(-k x_i)."""
    q = H.q
    x = np.asarray(x, dtype=np.int64)
    E = (H.L + x[None, :] - k * x[:, None]) % q
    return np.stack([(E == r).sum(axis=1) for r in range(q)], axis=1)


def verify_bent(H: ButsonMatrix, x, k: int) -> CycElt | None:
    """The exact lam with H X = lam mu_k(X), or None if X is not bent."""
    _check_k(k, H.q)
    if len(x) != H.n:
        raise ValueError(f"sequence length {len(x)} differs from order {H.n}")
    rows = _row_group_ring(H, x, k)
    canon = rows @ reduction_matrix(H.q)
    if not (canon == canon[0]).all():
        return None
    return CycElt(H.q, rows[0]).reduce_canonical()


def scale_solution(sol: BentSolution, s: int) -> BentSolution:
    """X -> zeta^s X; lam picks up zeta^(s(1-k))."""
    x = tuple((v + s) % sol.q for v in sol.x)
    return BentSolution(sol.n, sol.q, sol.k, x, sol.lam.shift(s * (1 - sol.k)).reduce_canonical())


def _solutions(H: ButsonMatrix, k: int, xs) -> list[BentSolution]:
    out = []
    for x in xs:
        lam = verify_bent(H, x, k)
        if lam is not None:
            out.append(BentSolution(H.n, H.q, k, tuple(int(v) for v in x), lam))
    out.sort(key=lambda s: s.x)
    return out


def exhaustive_search(H: ButsonMatrix, k: int, budget: int = EXHAUSTIVE_BUDGET,
                      threads: int = 1, backend: str | None = None) -> list[BentSolution]:
    """Every solution, by enumerating all q^n exponent vectors."""
    _check_k(k, H.q)
    total = H.q**H.n
    if total > budget:
        raise BudgetExceeded(f"{total} candidates exceed budget {budget}")
    xs = kernels.bent_sweep(H.L, H.q, k % H.q, reduction_matrix(H.q), threads=threads, backend=backend)
    # kernel hits are rechecked through the independent verifier
    return _solutions(H, k, xs)


def candidate_lambdas(n: int, q: int, budget: int = COMPOSITION_BUDGET) -> list[CycElt]:
    """Distinct sums of n q-th roots of unity with squared modulus exactly n."""
    seen = {}
    for comp in compositions_iter(n, q, budget):
        lam = comp.element()
        if (lam.norm_sq() - n).is_zero():
            seen.setdefault(lam.canonical(), lam.reduce_canonical())
    return sorted(seen.values(), key=CycElt.sort_key)


# --- product matrix over Z[zeta_q] -----------------------------------------

def _monomial_tensor(L: np.ndarray, q: int) -> np.ndarray:
    n = L.shape[0]
    T = np.zeros((n, n, q), dtype=np.int64)
    T[np.arange(n)[:, None], np.arange(n)[None, :], L] = 1
    return T


def _matmul_cyc(A: np.ndarray, B: np.ndarray, q: int) -> np.ndarray:
    # (n,n,q) x (n,n,q) -> (n,n,q), cyclic convolution on the last axis
    C = np.zeros((A.shape[0], B.shape[1], q), dtype=np.result_type(A, B))
    for r in range(q):
        Ar = A[:, :, r]
        if not Ar.any():
            continue
        C += np.einsum("il,ljs->ijs", Ar, np.roll(B, r, axis=2))
    return C


def product_matrix(H: ButsonMatrix, k: int) -> tuple[np.ndarray, int]:
    """Exact mu_k^(t-1)(H) ... mu_k(H) H as an (n, n, q) group-ring tensor, and t."""
    _check_k(k, H.q)
    q = H.q
    t = multiplicative_order(k % q, q)
    # entries are bounded by n^t; switch to Python ints before int64 overflows
    big = H.n**t >= 2**62
    M = _monomial_tensor(H.L, q)
    if big:
        M = M.astype(object)
    for i in range(1, t):
        Hi = _monomial_tensor((pow(k, i, q) * H.L) % q, q)
        if big:
            Hi = Hi.astype(object)
        M = _matmul_cyc(Hi, M, q)
    return M, t


def lambda_product(lam: CycElt, k: int, t: int) -> CycElt:
    """prod_{i<t} mu_k^i(lam)."""
    out = CycElt.integer(lam.q, 1)
    for i in range(t):
        out = out * apply_multiplier(lam, pow(k, i, lam.q))
    return out.reduce_canonical()


def embed_tensor(M: np.ndarray, q: int) -> np.ndarray:
    zeta = np.exp(2j * np.pi * np.arange(q) / q)
    return M.astype(np.float64) @ zeta


def greedy_submatrix(B: np.ndarray, tol: float = RANK_TOL) -> list[int]:
    """Column indices J, scanned left to right, with B[:, J] square and invertible.

    Column 0 always starts J; a zero first column raises ZeroFirstColumn.
    """
    B = np.atleast_2d(np.asarray(B))
    if not B.any():
        raise ValueError("zero matrix")
    scale = np.linalg.norm(B, 2)
    cut = tol * max(scale, 1.0)
    if np.linalg.norm(B[:, 0]) <= cut:
        raise ZeroFirstColumn("first column of the eigenspace basis is zero")
    target = np.linalg.matrix_rank(B, tol=cut)
    J = [0]
    rank = 1
    for c in range(1, B.shape[1]):
        if rank == target:
            break
        r2 = np.linalg.matrix_rank(B[:, J + [c]], tol=cut)
        if r2 > rank:
            J.append(c)
            rank = r2
    return J


def nullspace_rows(A: np.ndarray, scale: float, tol: float = NULL_TOL) -> np.ndarray:
    """Rows spanning {v : A v = 0}; singular values below tol*scale count as zero."""
    _, s, vh = np.linalg.svd(A)
    rank = int((s > tol * scale).sum())
    return vh[rank:].conj()


def round_to_roots(X: np.ndarray, q: int, tol: float = ROOT_TOL):
    """Exponents e with |X - zeta^e| <= tol entrywise, and the accept mask per row."""
    e = np.rint(np.angle(X) * q / (2 * np.pi)).astype(np.int64) % q
    ok = (np.abs(X - np.exp(2j * np.pi * e / q)) <= tol).all(axis=-1)
    return e, ok


def _targets(H: ButsonMatrix, k: int, t: int, Mc: np.ndarray, budget: int) -> list[complex]:
    try:
        lams = candidate_lambdas(H.n, H.q, budget)
    except BudgetExceeded:
        # float eigenvalue clusters guide the search; verify_bent stays exact
        centers: list[complex] = []
        for ev in np.linalg.eigvals(Mc):
            if all(abs(ev - c) > CLUSTER_TOL * max(1.0, abs(c)) for c in centers):
                centers.append(complex(ev))
        return centers
    prods = {}
    for lam in lams:
        Lam = lambda_product(lam, k, t)
        prods.setdefault(Lam.canonical(), Lam)
    return [P.embed() for P in sorted(prods.values(), key=CycElt.sort_key)]


def eigenspace_search(H: ButsonMatrix, k: int, budget: int = EIGEN_BUDGET,
                      composition_budget: int = COMPOSITION_BUDGET) -> list[BentSolution]:
    """Solutions through the eigenspaces of the product matrix.

    For each target eigenvalue, a nullspace basis B (rows) is computed, an
    invertible column block B_J is chosen greedily, every Z in the roots of
    unity^|J| is lifted to C = Z B_J^-1 and X = C B, and X is kept when all
    its entries round to roots of unity and it passes ``verify_bent``.
    """
    _check_k(k, H.q)
    q, n = H.q, H.n
    M, t = product_matrix(H, k)
    Mc = embed_tensor(M, q)
    scale = max(np.linalg.norm(Mc, 2), 1.0)
    found = {}
    for Lam in _targets(H, k, t, Mc, composition_budget):
        B = nullspace_rows(Mc - Lam * np.eye(n), max(scale, abs(Lam)))
        l = B.shape[0]
        if l == 0:
            continue
        try:
            J = greedy_submatrix(B)
        except ZeroFirstColumn:
            continue
        if q**l > budget:
            raise BudgetExceeded(f"eigenspace of dimension {l}: {q**l} lifts exceed budget {budget}")
        Binv = np.linalg.inv(B[:, J])
        zeta = np.exp(2j * np.pi * np.arange(q) / q)
        total = q**l
        chunk = 1 << 14
        for a in range(0, total, chunk):
            idx = np.arange(a, min(a + chunk, total))
            Zexp = np.stack([(idx // q**i) % q for i in range(l)], axis=1)
            X = (zeta[Zexp] @ Binv) @ B
            e, ok = round_to_roots(X, q)
            for x in e[ok]:
                key = tuple(int(v) for v in x)
                if key not in found:
                    lam = verify_bent(H, key, k)
                    found[key] = lam
    sols = [BentSolution(n, q, k, x, lam) for x, lam in found.items() if lam is not None]
    sols.sort(key=lambda s: s.x)
    return sols


def search(H: ButsonMatrix, k: int, method: str = "exhaustive", budget: int | None = None,
           threads: int = 1) -> list[BentSolution]:
    if method == "exhaustive":
        return exhaustive_search(H, k, budget or EXHAUSTIVE_BUDGET, threads=threads)
    if method in ("eigen", "eigenspace"):
        return eigenspace_search(H, k, budget or EIGEN_BUDGET)
    raise ValueError(f"unknown method {method!r}")


@dataclass
class Census:
    n: int
    q: int
    k: int
    rows: list  # (lam, count), lam ascending by canonical coefficients

    @property
    def distinct(self) -> int:
        return len(self.rows)

    @property
    def counts(self) -> list[int]:
        return [c for _, c in self.rows]

    @property
    def total(self) -> int:
        return sum(self.counts)

    def text(self) -> str:
        counts = "; ".join(str(c) for c in self.counts) or "0"
        return f"{self.n} {self.q} {self.distinct} {counts}"

    def to_json(self) -> dict:
        return {
            "n": self.n, "q": self.q, "k": self.k,
            "lambdas": [{"lambda": list(lam.coeffs), "count": c} for lam, c in self.rows],
            "distinct": self.distinct, "total": self.total,
        }


def census_of(solutions: list[BentSolution], n: int, q: int, k: int) -> Census:
    groups: dict = {}
    for s in solutions:
        lam = s.lam.reduce_canonical()
        groups[lam] = groups.get(lam, 0) + 1
    rows = sorted(groups.items(), key=lambda kv: kv[0].sort_key())
    return Census(n, q, k, rows)


def census(H: ButsonMatrix, k: int, method: str = "exhaustive", solutions=None,
           budget: int | None = None) -> Census:
    """Raw per-lambda counts of the solutions for multiplier k."""
    if solutions is None:
        solutions = search(H, k, method, budget)
    return census_of(solutions, H.n, H.q, k)


def census_all_k(H: ButsonMatrix, method: str = "exhaustive") -> dict[int, Census]:
    return {k: census(H, k, method) for k in units(H.q)}


def bent_to_selfdual(H: ButsonMatrix, x, y) -> tuple[ButsonMatrix, tuple]:
    """Given H X = lam Y, return (H D, y) with X = D Y, so Y is self-dual for H D
    with trivial multiplier."""
    q = H.q
    x = np.asarray(x, dtype=np.int64) % q
    y = np.asarray(y, dtype=np.int64) % q
    rows = _row_group_ring(H, x, 0)
    # row i of H X must equal lam * zeta^(y_i)
    shifted = np.stack([np.roll(rows[i], -int(y[i])) for i in range(H.n)])
    canon = shifted @ reduction_matrix(q)
    if not (canon == canon[0]).all():
        raise PreconditionFailed("H X is not a multiple of zeta^y")
    Hd = ButsonMatrix(q, (H.L + (x - y)[None, :]) % q)
    return Hd, tuple(int(v) for v in y)


def solutions_to_json(sols: list[BentSolution]) -> str:
    return json.dumps([s.to_json() for s in sols], sort_keys=True)
