"""Butson Hadamard matrices in logarithmic form.

A matrix H in BH(n, q) is stored as its n x n exponent matrix over Z_q.
Indices over Z_q^r (Fourier and group-invariant families) are ordered
lexicographically with the least significant coordinate varying fastest:
the vector (v_0, ..., v_{r-1}) sits at index sum_i v_i q^i.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .cyclotomic import CycElt, reduction_matrix
from .exceptions import MatrixFormatError, ModulusMismatch


def _frozen(a) -> np.ndarray:
    a = np.array(a, dtype=np.int64)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class ButsonMatrix:
    q: int
    log_entries: np.ndarray

    def __post_init__(self):
        L = np.array(self.log_entries, dtype=np.int64)
        if L.ndim != 2 or L.shape[0] != L.shape[1]:
            raise MatrixFormatError(f"log matrix must be square, got shape {L.shape}")
        if self.q < 1:
            raise MatrixFormatError("q must be positive")
        if L.size and (L.min() < 0 or L.max() >= self.q):
            raise MatrixFormatError(f"entries must lie in [0, {self.q})")
        L.setflags(write=False)
        object.__setattr__(self, "log_entries", L)

    @classmethod
    def from_exponents(cls, q: int, entries) -> "ButsonMatrix":
        return cls(q, np.mod(np.array(entries, dtype=np.int64), q))

    @property
    def n(self) -> int:
        return self.log_entries.shape[0]

    @property
    def L(self) -> np.ndarray:
        return self.log_entries

    def __eq__(self, other):
        if not isinstance(other, ButsonMatrix):
            return NotImplemented
        return self.q == other.q and np.array_equal(self.L, other.L)

    def __hash__(self):
        return hash((self.q, self.L.tobytes()))

    def __repr__(self):
        return f"ButsonMatrix(n={self.n}, q={self.q})"

    def entry(self, i: int, j: int) -> CycElt:
        return CycElt.root(self.q, int(self.L[i, j]))

    def to_complex(self) -> np.ndarray:
        return np.exp(2j * np.pi * self.L / self.q)

    def transpose(self) -> "ButsonMatrix":
        return ButsonMatrix(self.q, self.L.T)

    def conj(self) -> "ButsonMatrix":
        return ButsonMatrix(self.q, (-self.L) % self.q)

    def apply_multiplier(self, k: int) -> "ButsonMatrix":
        return ButsonMatrix(self.q, (k * self.L) % self.q)


@dataclass(frozen=True, eq=False)
class MonomialMatrix:
    """P.D with P a permutation and D diagonal over the q-th roots of unity.

    Column j holds its single nonzero entry zeta^diag[j] in row perm[j], so
    (M X)[perm[j]] = zeta^diag[j] X[j].
    """

    q: int
    perm: tuple
    diag: tuple = field(default=None)

    def __post_init__(self):
        perm = tuple(int(p) for p in self.perm)
        n = len(perm)
        if sorted(perm) != list(range(n)):
            raise ValueError("perm is not a permutation")
        diag = (0,) * n if self.diag is None else tuple(int(d) % self.q for d in self.diag)
        if len(diag) != n:
            raise ValueError("diag length differs from perm length")
        object.__setattr__(self, "perm", perm)
        object.__setattr__(self, "diag", diag)

    @classmethod
    def identity(cls, n: int, q: int) -> "MonomialMatrix":
        return cls(q, tuple(range(n)))

    @classmethod
    def scalar(cls, n: int, q: int, r: int) -> "MonomialMatrix":
        return cls(q, tuple(range(n)), (r,) * n)

    @property
    def n(self) -> int:
        return len(self.perm)

    def __eq__(self, other):
        if not isinstance(other, MonomialMatrix):
            return NotImplemented
        return (self.q, self.perm, self.diag) == (other.q, other.perm, other.diag)

    def __hash__(self):
        return hash((self.q, self.perm, self.diag))

    def to_complex(self) -> np.ndarray:
        M = np.zeros((self.n, self.n), dtype=complex)
        for j, (p, d) in enumerate(zip(self.perm, self.diag)):
            M[p, j] = np.exp(2j * np.pi * d / self.q)
        return M

    def __matmul__(self, other: "MonomialMatrix") -> "MonomialMatrix":
        if self.q != other.q:
            raise ModulusMismatch("moduli differ")
        perm = tuple(self.perm[other.perm[j]] for j in range(self.n))
        diag = tuple(other.diag[j] + self.diag[other.perm[j]] for j in range(self.n))
        return MonomialMatrix(self.q, perm, diag)

    def conj_transpose(self) -> "MonomialMatrix":
        perm = [0] * self.n
        diag = [0] * self.n
        for j, (p, d) in enumerate(zip(self.perm, self.diag)):
            perm[p] = j
            diag[p] = -d
        return MonomialMatrix(self.q, tuple(perm), tuple(diag))

    inverse = conj_transpose

    def apply_multiplier(self, k: int) -> "MonomialMatrix":
        return MonomialMatrix(self.q, self.perm, tuple(k * d for d in self.diag))

    def apply_vector(self, x) -> tuple:
        """Exponent vector of M X for X = zeta^x."""
        out = [0] * self.n
        for j, (p, d) in enumerate(zip(self.perm, self.diag)):
            out[p] = (int(x[j]) + d) % self.q
        return tuple(out)

    def left(self, L: np.ndarray) -> np.ndarray:
        """Log form of M H for H with log form L."""
        out = np.empty_like(L)
        out[list(self.perm), :] = L + np.array(self.diag)[:, None]
        return out % self.q

    def right(self, L: np.ndarray) -> np.ndarray:
        """Log form of H M."""
        perm = np.array(self.perm)
        return (L[:, perm] + np.array(self.diag)[None, :]) % self.q


def _pair_counts(L: np.ndarray, q: int) -> np.ndarray:
    # counts[i, j, r] = #{s : L[i,s] - L[j,s] = r mod q}
    D = (L[:, None, :] - L[None, :, :]) % q
    return np.stack([(D == r).sum(axis=2) for r in range(q)], axis=2)


def verify_butson(M: ButsonMatrix) -> bool:
    """Exact check of H H* = n I over Z[zeta_q]."""
    n, q = M.n, M.q
    if n == 0:
        return True
    counts = _pair_counts(M.L, q)
    counts[np.arange(n), np.arange(n), 0] -= n
    return not (counts @ reduction_matrix(q)).any()


def dephase(M: ButsonMatrix) -> ButsonMatrix:
    L = (M.L - M.L[:, :1]) % M.q
    L = (L - L[:1, :]) % M.q
    return ButsonMatrix(M.q, L)


def dephasing_pair(M: ButsonMatrix) -> tuple[MonomialMatrix, MonomialMatrix]:
    """Diagonal (D1, D2) with D1 H D2 = dephase(H)."""
    n, q = M.n, M.q
    rows = tuple(-int(v) for v in M.L[:, 0])
    after = (M.L - M.L[:, :1]) % q
    cols = tuple(-int(v) for v in after[0, :])
    return MonomialMatrix(q, tuple(range(n)), rows), MonomialMatrix(q, tuple(range(n)), cols)


def transform(M: ButsonMatrix, P: MonomialMatrix, Q: MonomialMatrix) -> ButsonMatrix:
    """The equivalent matrix P H Q*."""
    return ButsonMatrix(M.q, P.left(Q.conj_transpose().right(M.L)))


def kronecker(A: ButsonMatrix, B: ButsonMatrix) -> ButsonMatrix:
    if A.q != B.q:
        raise ModulusMismatch(f"moduli differ: {A.q} vs {B.q}")
    m = B.n
    L = (A.L[:, None, :, None] + B.L[None, :, None, :]) % A.q
    return ButsonMatrix(A.q, L.reshape(A.n * m, A.n * m))


def zq_vectors(q: int, r: int) -> np.ndarray:
    """All of Z_q^r, row i = the vector at index i (coordinate 0 fastest)."""
    if r == 0:
        return np.zeros((1, 0), dtype=np.int64)
    idx = np.arange(q**r)
    return np.stack([(idx // q**i) % q for i in range(r)], axis=1)


def fourier_matrix(q: int, r: int = 1) -> ButsonMatrix:
    """H(x, y) = zeta^(x . y) on Z_q^r."""
    if q < 2 or r < 1:
        raise ValueError("need q >= 2 and r >= 1")
    V = zq_vectors(q, r)
    return ButsonMatrix(q, (V @ V.T) % q)


def group_invariant_matrix(q: int, m: int = 1) -> ButsonMatrix:
    """H((x1,x2),(y1,y2)) = zeta^((x1-y1).(x2-y2)) on Z_q^(2m).

    Under the index convention, x1 is coordinates 0..m-1 and x2 is m..2m-1.
    """
    if q < 2 or m < 1:
        raise ValueError("need q >= 2 and m >= 1")
    V = zq_vectors(q, 2 * m)
    D = (V[:, None, :] - V[None, :, :]) % q
    L = (D[:, :, :m] * D[:, :, m:]).sum(axis=2) % q
    return ButsonMatrix(q, L)


def _sums_group_ring(L: np.ndarray, q: int, axis: int) -> np.ndarray:
    return np.stack([(L == r).sum(axis=axis) for r in range(q)], axis=-1)


def is_regular(M: ButsonMatrix):
    """Common row/column sum as a CycElt, or None when not regular."""
    q = M.q
    red = reduction_matrix(q)
    rows = _sums_group_ring(M.L, q, axis=1) @ red
    cols = _sums_group_ring(M.L, q, axis=0) @ red
    ref = rows[0]
    if not (rows == ref).all() or not (cols == ref).all():
        return None
    sigma = np.zeros(q, dtype=np.int64)
    sigma[: len(ref)] = ref
    return CycElt(q, sigma).reduce_canonical()


def is_bush_type(M: ButsonMatrix, block: int) -> bool:
    """Each block H_ij has all row and column sums equal to delta_ij * block."""
    if block < 1 or block * block != M.n:
        raise ValueError(f"order {M.n} is not the square of block size {block}")
    q = M.q
    red = reduction_matrix(q)
    for bi in range(block):
        for bj in range(block):
            B = M.L[bi * block:(bi + 1) * block, bj * block:(bj + 1) * block]
            target = np.zeros(q, dtype=np.int64)
            if bi == bj:
                target[0] = block
            t = target @ red
            if not ((_sums_group_ring(B, q, 1) @ red) == t).all():
                return False
            if not ((_sums_group_ring(B, q, 0) @ red) == t).all():
                return False
    return True


def random_monomial(n: int, q: int, rng) -> MonomialMatrix:
    return MonomialMatrix(q, tuple(int(v) for v in rng.permutation(n)),
                          tuple(int(v) for v in rng.integers(0, q, n)))


# --- text codec -------------------------------------------------------------

def serialize(M: ButsonMatrix, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines.extend(f"# {c}" for c in comment.splitlines())
    lines.append(f"{M.n} {M.q}")
    lines.extend(" ".join(str(int(v)) for v in row) for row in M.L)
    return "\n".join(lines) + "\n"


def parse(text: str) -> ButsonMatrix:
    rows = [ln.strip() for ln in text.splitlines()]
    rows = [ln for ln in rows if ln and not ln.startswith("#")]
    if not rows:
        raise MatrixFormatError("empty matrix file")
    head = rows[0].split()
    if len(head) != 2:
        raise MatrixFormatError(f"header must be 'n q', got {rows[0]!r}")
    try:
        n, q = int(head[0]), int(head[1])
    except ValueError:
        raise MatrixFormatError(f"malformed header {rows[0]!r}") from None
    if n < 1 or q < 1:
        raise MatrixFormatError("n and q must be positive")
    body = rows[1:]
    if len(body) != n:
        raise MatrixFormatError(f"expected {n} rows, got {len(body)}")
    entries = []
    for i, ln in enumerate(body):
        try:
            vals = [int(v) for v in ln.split()]
        except ValueError:
            raise MatrixFormatError(f"row {i + 1}: non-integer entry") from None
        if len(vals) != n:
            raise MatrixFormatError(f"row {i + 1}: expected {n} entries, got {len(vals)}")
        if any(v < 0 or v >= q for v in vals):
            raise MatrixFormatError(f"row {i + 1}: entry out of range [0, {q})")
        entries.append(vals)
    return ButsonMatrix(q, entries)


def load(path) -> ButsonMatrix:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


def save(M: ButsonMatrix, path, comment: str | None = None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize(M, comment))


# --- attached codes ---------------------------------------------------------

@dataclass(frozen=True)
class ZqCode:
    q: int
    n: int
    words: tuple

    def as_array(self) -> np.ndarray:
        return np.array(self.words, dtype=np.int64).reshape(len(self.words), self.n)

    def __len__(self):
        return len(self.words)

    def is_translation_closed(self) -> bool:
        ws = set(self.words)
        return all(tuple((v + 1) % self.q for v in w) in ws for w in ws)


def build_code(M: ButsonMatrix, full: bool = True) -> ZqCode:
    """F_H (rows of L(H)) or, with ``full``, C_H = union of F_H + a.1."""
    shifts = range(M.q) if full else (0,)
    words = {tuple(int(v) for v in (row + a) % M.q) for a in shifts for row in M.L}
    return ZqCode(M.q, M.n, tuple(sorted(words)))


def code_from_words(q: int, words) -> ZqCode:
    words = sorted({tuple(int(v) % q for v in w) for w in words})
    if not words:
        raise ValueError("empty code")
    return ZqCode(q, len(words[0]), tuple(words))

