"""Matrices that come with designed self-dual bent sequences.

Regular matrices (all-constant sequences), Bush-type matrices (blockwise
constant sequences), Kronecker products of solutions, and Maiorana-McFarland
type sequences zeta^f on the Fourier matrix over Z_q^(2m) (``plain``) or on
the group-invariant matrix (``shifted``).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .bent_search import BentSolution, verify_bent
from .butson import ButsonMatrix, fourier_matrix, group_invariant_matrix, is_bush_type, is_regular, zq_vectors
from .exceptions import ModulusMismatch, PreconditionFailed


def regular_bent(H: ButsonMatrix, u: int = 0) -> BentSolution:
    sigma = is_regular(H)
    if sigma is None:
        raise PreconditionFailed("matrix is not regular")
    x = (u % H.q,) * H.n
    lam = verify_bent(H, x, 1)
    assert lam == sigma
    return BentSolution(H.n, H.q, 1, x, lam)


def bush_bent(H: ButsonMatrix, block: int, u) -> BentSolution:
    """X = (zeta^u_1 1, ..., zeta^u_b 1) on a Bush-type matrix of order b^2."""
    if not is_bush_type(H, block):
        raise PreconditionFailed("matrix is not of Bush type for this block size")
    if len(u) != block:
        raise ValueError(f"need {block} block exponents")
    x = tuple(int(v) % H.q for v in u for _ in range(block))
    lam = verify_bent(H, x, 1)
    if lam is None:
        raise PreconditionFailed("blockwise-constant sequence failed verification")
    return BentSolution(H.n, H.q, 1, x, lam)


def bush_example_bh42() -> ButsonMatrix:
    """The Bush-type BH(4, 2) with diagonal blocks J and off-diagonal blocks
    [[1, -1], [-1, 1]]."""
    J = np.zeros((2, 2), dtype=np.int64)
    K = np.array([[0, 1], [1, 0]])
    L = np.block([[J, K], [K, J]])
    return ButsonMatrix(2, L)


def kronecker_bent(a: BentSolution, b: BentSolution) -> BentSolution:
    """X (x) Y on H (x) K, with lam_out = lam_a * lam_b."""
    if a.q != b.q:
        raise ModulusMismatch(f"moduli differ: {a.q} vs {b.q}")
    if a.k % a.q != b.k % b.q:
        raise ValueError(f"multipliers differ: {a.k} vs {b.k}")
    x = tuple((xi + yj) % a.q for xi in a.x for yj in b.x)
    return BentSolution(a.n * b.n, a.q, a.k, x, (a.lam * b.lam).reduce_canonical())


@dataclass(frozen=True)
class MMSpec:
    q: int
    m: int
    phi: tuple  # phi[i] = index of the image of the i-th vector of Z_q^m
    variant: str = "plain"
    k: int = 1

    def __post_init__(self):
        phi = tuple(int(v) for v in self.phi)
        size = self.q**self.m
        if len(phi) != size or sorted(phi) != list(range(size)):
            raise ValueError("phi is not a permutation table of Z_q^m")
        if self.variant not in ("plain", "shifted"):
            raise ValueError(f"unknown variant {self.variant!r}")
        if math.gcd(self.k, self.q) != 1:
            raise ValueError(f"multiplier {self.k} is not coprime to {self.q}")
        object.__setattr__(self, "phi", phi)
        if self.variant == "shifted" and not self.f_values().any():
            raise ValueError("f is the zero map")

    @classmethod
    def dilation(cls, q: int, m: int, d: int, variant: str = "plain", k: int = 1) -> "MMSpec":
        """phi(x) = d x."""
        V = zq_vectors(q, m)
        return cls(q, m, tuple(_index((d * V) % q, q)), variant, k)

    @classmethod
    def identity(cls, q: int, m: int, variant: str = "plain", k: int = 1) -> "MMSpec":
        return cls(q, m, tuple(range(q**m)), variant, k)

    def phi_vectors(self) -> np.ndarray:
        V = zq_vectors(self.q, self.m)
        return V[list(self.phi)]

    def f_values(self) -> np.ndarray:
        """f(x1, x2) at index idx(x1) + q^m idx(x2)."""
        q, m = self.q, self.m
        V = zq_vectors(q, m)
        P = self.phi_vectors()
        f = V @ P.T  # f[a, b] = x1_a . phi(x2_b)
        if self.variant == "shifted":
            f = f - V @ V.T
        # index = a + q^m b, so b is the slow axis
        return (f.T % q).reshape(-1)

    def to_json(self) -> str:
        return json.dumps({"q": self.q, "m": self.m, "variant": self.variant,
                           "k": self.k, "phi": list(self.phi)}, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "MMSpec":
        d = json.loads(text)
        return cls(d["q"], d["m"], tuple(d["phi"]), d.get("variant", "plain"), d.get("k", 1))


def _index(V: np.ndarray, q: int) -> np.ndarray:
    return (V * (q ** np.arange(V.shape[1]))[None, :]).sum(axis=1)


def mm_sequence(spec: MMSpec) -> tuple[ButsonMatrix, tuple]:
    """The matrix of order q^(2m) and the exponent vector of f.  Bentness is
    not asserted; see ``check_mm_condition``."""
    if spec.variant == "plain":
        H = fourier_matrix(spec.q, 2 * spec.m)
    else:
        H = group_invariant_matrix(spec.q, spec.m)
    return H, tuple(int(v) for v in spec.f_values())


def check_mm_condition(spec: MMSpec) -> bool:
    """The variant's identity over all pairs (x1, x2) of Z_q^m."""
    q, k = spec.q, spec.k
    V = zq_vectors(q, spec.m)
    P = spec.phi_vectors()
    if spec.variant == "plain":
        # x1 . x2 + k phi(x1) . phi(x2)
        C = V @ V.T + k * (P @ P.T)
    else:
        # k x1 . phi^2(x2) - (k+1) x1 . phi(x2) + x1 . x2
        P2 = P[list(spec.phi)]
        C = k * (V @ P2.T) - (k + 1) * (V @ P.T) + V @ V.T
    return not (C % q).any()


def mm_bent(spec: MMSpec) -> BentSolution:
    H, x = mm_sequence(spec)
    lam = verify_bent(H, x, spec.k)
    if lam is None:
        raise PreconditionFailed("sequence is not self-dual bent for this multiplier")
    return BentSolution(H.n, H.q, spec.k, x, lam)


def dilation_k_sets(q: int) -> tuple[set, set]:
    """Multipliers for phi(x) = d x: {-d^-2} (plain) and {d^-1 : d != 1} (shifted)."""
    s1, s2 = set(), set()
    for d in range(1, q):
        if math.gcd(d, q) != 1:
            continue
        inv = pow(d, -1, q)
        s1.add((-inv * inv) % q)
        if d != 1:
            s2.add(inv)
    return s1, s2
