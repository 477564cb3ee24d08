"""Chinese-Euclidean geometry of Butson codes and the attached spherical code."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .butson import ButsonMatrix, ZqCode, build_code, verify_butson
from .exceptions import BudgetExceeded
from .kernels import covering_sweep

COVERING_BUDGET = 10**9
INTEGRAL_Q = (1, 2, 3, 4, 6)
DESIGN_TOL = 1e-9


@dataclass(frozen=True)
class WeightTable:
    q: int
    w: np.ndarray = field(repr=False)
    integral: bool
    w_int: np.ndarray | None = field(default=None, repr=False)

    @classmethod
    def for_modulus(cls, q: int) -> "WeightTable":
        t = np.arange(q)
        w = 2.0 - 2.0 * np.cos(2 * np.pi * t / q)
        if q in INTEGRAL_Q:
            w_int = np.rint(w).astype(np.int64)
            return cls(q, w_int.astype(np.float64), True, w_int)
        return cls(q, w, False)

    def value(self, t: int):
        t %= self.q
        return int(self.w_int[t]) if self.integral else float(self.w[t])


def chinese_distance(u, v, tbl: WeightTable | int):
    if isinstance(tbl, int):
        tbl = WeightTable.for_modulus(tbl)
    u = np.asarray(u, dtype=np.int64)
    v = np.asarray(v, dtype=np.int64)
    if u.shape != v.shape:
        raise ValueError(f"length mismatch: {u.shape} vs {v.shape}")
    d = (u - v) % tbl.q
    if tbl.integral:
        return int(tbl.w_int[d].sum())
    return math.fsum(tbl.w[d])


def _as_value(x: float, tbl: WeightTable):
    return int(round(x)) if tbl.integral else x


def covering_radius(C: ZqCode, *, threads: int = 1, backend: str | None = None,
                    budget: int = COVERING_BUDGET):
    """max over x in Z_q^n of min over codewords of d_CE(x, c).

    If C is closed under adding a.1 the sweep fixes x_0 = 0.
    """
    tbl = WeightTable.for_modulus(C.q)
    fix_first = C.is_translation_closed()
    points = C.q ** (C.n - 1 if fix_first and C.n else C.n)
    if points > budget:
        raise BudgetExceeded(f"covering sweep of {points} vectors exceeds budget {budget}")
    r = covering_sweep(C.as_array(), C.q, tbl.w, fix_first, threads=threads, backend=backend)
    return _as_value(r, tbl)


def covering_radius_bruteforce(C: ZqCode):
    """Plain double loop over Z_q^n; for cross-checking at small sizes."""
    tbl = WeightTable.for_modulus(C.q)
    words = C.as_array()
    idx = np.arange(C.q**C.n)
    X = np.stack([(idx // C.q**i) % C.q for i in range(C.n)], axis=1)
    D = tbl.w[(X[:, None, :] - words[None, :, :]) % C.q].sum(axis=2)
    return _as_value(D.min(axis=1).max(), tbl)


def spectrum_formula(n: int, q: int) -> set:
    """{2n} together with 2n(1 - cos(2 pi t / q)) for t = 1..floor(q/2)."""
    tbl = WeightTable.for_modulus(q)
    vals = {2 * n} | {n * tbl.value(t) for t in range(1, q // 2 + 1)}
    if not tbl.integral:
        vals = {float(v) for v in vals}
    return vals


def distance_spectrum(M: ButsonMatrix, check: bool = True) -> set:
    """Distinct nonzero pairwise distances of C_H, by brute force."""
    tbl = WeightTable.for_modulus(M.q)
    W = build_code(M, full=True).as_array()
    iu = np.triu_indices(len(W), 1)
    diff = (W[iu[0]] - W[iu[1]]) % M.q
    if tbl.integral:
        vals = set(int(v) for v in np.unique(tbl.w_int[diff].sum(axis=1)))
    else:
        raw = np.sort(tbl.w[diff].sum(axis=1))
        vals = set()
        for v in raw:
            if not any(abs(v - u) < 1e-9 for u in vals):
                vals.add(float(v))
    if check:
        if not verify_butson(M):
            raise ValueError("not a Butson matrix")
        ref = spectrum_formula(M.n, M.q)
        for v in vals:
            assert any(abs(v - r) < 1e-9 for r in ref), (v, ref)
    return vals


@dataclass(frozen=True)
class Bounds:
    lower: float | None
    upper: float | None


def covering_bounds(n: int, q: int, dephased: bool, has_bent: bool) -> Bounds:
    lower = 2 * n - 2 * math.sqrt(n) if has_bent else None
    upper = 2 * n - math.sqrt(2 * n) if (q % 2 == 0 and dephased) else None
    return Bounds(lower, upper)


def attainable_at_least(bound: float, n: int, q: int) -> int | None:
    """Smallest sum of n integral weights that is >= bound, or None when
    the weight table is not integral."""
    tbl = WeightTable.for_modulus(q)
    if not tbl.integral:
        return None
    reach = {0}
    for _ in range(n):
        reach = {r + int(w) for r in reach for w in set(tbl.w_int.tolist())}
    cands = [r for r in reach if r >= bound - 1e-9]
    return min(cands) if cands else None


def deviation(C: ZqCode, x) -> float:
    """max over y in C of |<zeta^x, zeta^y>|."""
    x = np.asarray(x, dtype=np.int64) % C.q
    if x.shape != (C.n,):
        raise ValueError(f"expected a length-{C.n} vector")
    W = C.as_array()
    z = np.exp(2j * np.pi * ((x[None, :] - W) % C.q) / C.q)
    return float(np.abs(z.sum(axis=1)).max())


@dataclass(frozen=True)
class SphericalPoints:
    dim: int
    points: np.ndarray = field(repr=False)

    def __len__(self):
        return len(self.points)

    def min_sq_distance(self) -> float:
        P = self.points
        G = P @ P.T
        D = 2.0 - 2.0 * G  # unit vectors
        iu = np.triu_indices(len(P), 1)
        return float(D[iu].min()) if len(iu[0]) else math.inf


def embed_words(W: np.ndarray, q: int) -> np.ndarray:
    """Interleaved (cos, sin) coordinates scaled by 1/sqrt(n)."""
    W = np.atleast_2d(np.asarray(W, dtype=np.int64))
    n = W.shape[1]
    ang = 2 * np.pi * (W % q) / q
    P = np.empty((W.shape[0], 2 * n))
    P[:, 0::2] = np.cos(ang)
    P[:, 1::2] = np.sin(ang)
    return P / math.sqrt(n)


def spherical_embed(C: ZqCode) -> SphericalPoints:
    return SphericalPoints(2 * C.n, embed_words(C.as_array(), C.q))


def _is_1design(P: np.ndarray, tol: float) -> bool:
    return bool(np.all(np.abs(P.mean(axis=0)) <= tol))


def _is_2design(P: np.ndarray, tol: float) -> bool:
    S = P.T @ P / len(P)  # second moments
    diag = np.diag(S)
    off = S - np.diag(diag)
    return bool(np.ptp(diag) <= tol and np.all(np.abs(off) <= tol))


def design_strength(S: SphericalPoints, tol: float = DESIGN_TOL) -> int:
    P = S.points
    if not _is_1design(P, tol):
        return 0
    return 2 if _is_2design(P, tol) else 1


def is_antipodal(S: SphericalPoints, tol: float = DESIGN_TOL) -> bool:
    P = S.points
    D = ((P[:, None, :] + P[None, :, :]) ** 2).sum(axis=2)
    # every point has its negation in the set (counts agree, so this is set equality)
    return bool(np.all(D.min(axis=1) <= tol))


@dataclass(frozen=True)
class SphereBound:
    value: float
    hypothesis: str


def sphere_covering_bound(S: SphericalPoints, tol: float = DESIGN_TOL) -> SphereBound | None:
    """Smallest applicable covering-radius bound for the normalized code."""
    t = design_strength(S, tol)
    anti = is_antipodal(S, tol)
    cands = []
    if anti:
        cands.append(SphereBound(math.sqrt(2), "antipodal"))
    if t >= 1:
        cands.append(SphereBound(math.sqrt(2), "1-design"))
    if t >= 2:
        cands.append(SphereBound(math.sqrt(2 * (1 - 1 / S.dim)), "2-design"))
        if anti:
            cands.append(SphereBound(math.sqrt(2 * (1 - 1 / math.sqrt(S.dim))), "antipodal 2-design"))
    if not cands:
        return None
    return min(cands, key=lambda b: b.value)


def levenshtein_L3(d: int, s: float) -> float:
    hi = 1 / (math.sqrt(d + 3) + 1)
    if not (0 <= s < hi):
        raise ValueError(f"s = {s} outside [0, {hi:.6f})")
    return d * (2 + (d + 1) * s) * (1 - s) / (1 - d * s * s)
