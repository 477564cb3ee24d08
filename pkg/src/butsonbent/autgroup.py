"""Automorphisms of Butson matrices through digraphs and expanded designs.

G(H) has row vertices r(t, x) and column vertices c(s, x) for x in Z_q (the
exponent of the root), q-cycles on each row and column, and entry arcs
r(t, x) -> c(s, L[t, s] + x).  In strong mode with multiplier k it also has
mid vertices I(s, x) and paths r(s, k x) -> I(s, x) -> c(s, x).  Digraph
automorphisms correspond to pairs (P, Q) with P H Q* = H, or in strong mode
to single monomials M with mu_k(M) H = H M.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .bent_search import BentSolution, verify_bent
from .butson import ButsonMatrix, MonomialMatrix, transform
from .exceptions import BudgetExceeded, NotCoprime, PreconditionFailed

VERTEX_BUDGET = 2000

ROW, COL, MID = "r", "c", "I"
# arc colors by rule of origin
ROW_CYCLE, COL_CYCLE, ENTRY, PATH_IN, PATH_OUT = range(5)


@dataclass
class Digraph:
    n: int
    q: int
    k: int | None  # None for the plain graph
    labels: list  # (kind, index, exponent)
    arcs: np.ndarray = field(repr=False)  # (A, 3): tail, head, color
    index: dict = field(default=None, repr=False)

    def __post_init__(self):
        if self.index is None:
            self.index = {lab: i for i, lab in enumerate(self.labels)}

    @property
    def num_vertices(self) -> int:
        return len(self.labels)

    @property
    def num_arcs(self) -> int:
        return len(self.arcs)

    def vertex(self, kind: str, idx: int, x: int) -> int:
        return self.index[(kind, idx, x % self.q)]

    def kinds(self) -> np.ndarray:
        order = {ROW: 0, COL: 1, MID: 2}
        return np.array([order[lab[0]] for lab in self.labels])

    def arc_set(self, colored: bool = True) -> set:
        if colored:
            return set(map(tuple, self.arcs.tolist()))
        return set(map(tuple, self.arcs[:, :2].tolist()))

    def is_automorphism(self, f, colored: bool = False) -> bool:
        f = np.asarray(f)
        if sorted(f.tolist()) != list(range(self.num_vertices)):
            return False
        img = self.arcs.copy()
        img[:, 0] = f[self.arcs[:, 0]]
        img[:, 1] = f[self.arcs[:, 1]]
        if colored:
            return set(map(tuple, img.tolist())) == self.arc_set(True)
        return set(map(tuple, img[:, :2].tolist())) == self.arc_set(False)

    def to_dot(self) -> str:
        names = [f"{k}{i + 1}_{x}" for k, i, x in self.labels]
        lines = ["digraph G {"]
        lines.extend(f'  {nm} [label="{k}({i + 1},{x})"];' for nm, (k, i, x) in zip(names, self.labels))
        lines.extend(f"  {names[a]} -> {names[b]} [color={c}];" for a, b, c in self.arcs.tolist())
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_dimacs(self) -> str:
        """``p arc V A``, a ``v`` line of vertex colors, then ``a u v color``
        lines, all 1-based."""
        lines = [f"p arc {self.num_vertices} {self.num_arcs}",
                 "v " + " ".join(str(c) for c in self.kinds().tolist())]
        lines.extend(f"a {a + 1} {b + 1} {c}" for a, b, c in self.arcs.tolist())
        return "\n".join(lines) + "\n"


def build_digraph(H: ButsonMatrix, k: int | None = None) -> Digraph:
    """G(H), or G^k(H) when a multiplier is given."""
    n, q = H.n, H.q
    if k is not None and math.gcd(k, q) != 1:
        raise NotCoprime(f"multiplier {k} is not coprime to {q}")
    labels = [(ROW, t, x) for t in range(n) for x in range(q)]
    labels += [(COL, s, x) for s in range(n) for x in range(q)]
    if k is not None:
        labels += [(MID, s, x) for s in range(n) for x in range(q)]
    r = lambda t, x: t * q + x % q
    c = lambda s, x: n * q + s * q + x % q
    arcs = []
    for t in range(n):
        for x in range(q):
            arcs.append((r(t, x), r(t, x + 1), ROW_CYCLE))
    for s in range(n):
        for x in range(q):
            arcs.append((c(s, x), c(s, x + 1), COL_CYCLE))
    L = H.L
    for t in range(n):
        for s in range(n):
            for x in range(q):
                arcs.append((r(t, x), c(s, int(L[t, s]) + x), ENTRY))
    if k is not None:
        mid = lambda s, x: 2 * n * q + s * q + x % q
        for s in range(n):
            for x in range(q):
                arcs.append((r(s, k * x), mid(s, x), PATH_IN))
                arcs.append((mid(s, x), c(s, x), PATH_OUT))
    return Digraph(n, q, None if k is None else k % q, labels, np.array(arcs, dtype=np.int64))


# --- membership tests -------------------------------------------------------

def is_automorphism(H: ButsonMatrix, P: MonomialMatrix, Q: MonomialMatrix) -> bool:
    """P H Q* == H exactly."""
    return transform(H, P, Q) == H


def is_strong(H: ButsonMatrix, M: MonomialMatrix, k: int) -> bool:
    """mu_k(M) H == H M exactly."""
    if math.gcd(k, H.q) != 1:
        raise NotCoprime(f"multiplier {k} is not coprime to {H.q}")
    return bool((M.apply_multiplier(k).left(H.L) == M.right(H.L)).all())


def act_on_bent(M: MonomialMatrix, sol: BentSolution, H: ButsonMatrix) -> BentSolution:
    if not is_strong(H, M, sol.k):
        raise PreconditionFailed("monomial is not in the strong group for this multiplier")
    x = M.apply_vector(sol.x)
    lam = verify_bent(H, x, sol.k)
    assert lam == sol.lam, "strong action changed lambda"
    return BentSolution(sol.n, sol.q, sol.k, x, lam)


# --- decoding -------------------------------------------------------------

def _decode_block(G: Digraph, f, kind: str) -> MonomialMatrix:
    n, q = G.n, G.q
    perm, diag = [0] * n, [0] * n
    for t in range(n):
        shifts = set()
        for x in range(q):
            k2, t2, y = G.labels[f[G.vertex(kind, t, x)]]
            if k2 != kind:
                raise PreconditionFailed("permutation does not preserve vertex classes")
            if x == 0:
                perm[t] = t2
            elif t2 != perm[t]:
                raise PreconditionFailed("permutation splits a cycle")
            shifts.add((y - x) % q)
        if len(shifts) != 1:
            raise PreconditionFailed("inconsistent exponent shift along a cycle")
        diag[t] = -shifts.pop()
    return MonomialMatrix(q, tuple(perm), tuple(diag))


def decode_digraph_perm(G: Digraph, f, H: ButsonMatrix):
    """(P, Q) with P H Q* = H, or in strong mode the monomial M with
    mu_k(M) H = H M.  Verified exactly before returning."""
    f = np.asarray(f)
    P = _decode_block(G, f, ROW)
    Q = _decode_block(G, f, COL)
    if not is_automorphism(H, P, Q):
        raise PreconditionFailed("decoded pair is not an automorphism")
    if G.k is None:
        return P, Q
    if P != Q.apply_multiplier(G.k):
        raise PreconditionFailed("row part is not mu_k of the column part")
    assert is_strong(H, Q, G.k)
    return Q


def encode_pair(G: Digraph, P: MonomialMatrix, Q: MonomialMatrix) -> np.ndarray:
    """Vertex permutation of G induced by (P, Q); mids follow Q."""
    q = G.q
    f = np.empty(G.num_vertices, dtype=np.int64)
    for kind, M in ((ROW, P), (COL, Q), (MID, Q)):
        if kind == MID and G.k is None:
            continue
        for t in range(G.n):
            for x in range(q):
                f[G.vertex(kind, t, x)] = G.vertex(kind, M.perm[t], x - M.diag[t])
    return f


# --- automorphism search ----------------------------------------------------

class _Refiner:
    def __init__(self, G: Digraph, colored: bool):
        V = G.num_vertices
        self.V = V
        arcs = G.arcs if colored else np.column_stack([G.arcs[:, :2], np.zeros(len(G.arcs), dtype=np.int64)])
        self.out = [[] for _ in range(V)]
        self.inn = [[] for _ in range(V)]
        for a, b, c in arcs.tolist():
            self.out[a].append((c, b))
            self.inn[b].append((c, a))
        self.arcset = set(map(tuple, arcs.tolist()))
        self.init = G.kinds() if colored else np.zeros(V, dtype=np.int64)

    def refine(self, colors: list) -> list:
        """Equitable refinement; cells keep their relative order so the result
        is isomorphism invariant."""
        ncol = len(set(colors))
        while True:
            sig = [(colors[v],
                    tuple(sorted((c, colors[u]) for c, u in self.out[v])),
                    tuple(sorted((c, colors[u]) for c, u in self.inn[v])))
                   for v in range(self.V)]
            rank = {s: i for i, s in enumerate(sorted(set(sig)))}
            colors = [rank[s] for s in sig]
            if len(rank) == ncol:
                return colors
            ncol = len(rank)

    @staticmethod
    def individualize(colors: list, v: int) -> list:
        out = [2 * c + 1 for c in colors]
        out[v] -= 1
        return out

    @staticmethod
    def target_cell(colors: list):
        cells = {}
        for v, c in enumerate(colors):
            cells.setdefault(c, []).append(v)
        for c in sorted(cells):
            if len(cells[c]) > 1:
                return cells[c]
        return None

    def is_auto(self, f) -> bool:
        return all((f[a], f[b], c) in self.arcset for a, b, c in self.arcset)


def _orbit(v: int, gens: list) -> set:
    seen, stack = {v}, [v]
    while stack:
        u = stack.pop()
        for g in gens:
            w = int(g[u])
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return seen


@dataclass
class AutResult:
    generators: list
    order: int
    base: list


def digraph_automorphisms(G: Digraph, colored: bool = True, budget: int = VERTEX_BUDGET) -> AutResult:
    """Generators and order of Aut(G) by individualization and refinement.

    Walks a base path v_1, v_2, ...; for each level i and each w in the
    target cell outside the current orbit of v_i, searches the subtree where
    v_1..v_(i-1) are fixed and v_i -> w for a leaf that gives an
    automorphism.  The order is the product of the level orbit sizes.
    """
    if G.num_vertices > budget:
        raise BudgetExceeded(f"{G.num_vertices} vertices exceed budget {budget}")
    R = _Refiner(G, colored)
    # base path
    partitions = [R.refine(list(R.init))]
    cells, base = [], []
    while True:
        cell = R.target_cell(partitions[-1])
        if cell is None:
            break
        cells.append(cell)
        base.append(cell[0])
        partitions.append(R.refine(R.individualize(partitions[-1], cell[0])))
    leaf = partitions[-1]
    inv_leaf = {c: v for v, c in enumerate(leaf)}

    def leaf_map(colors):
        f = np.empty(R.V, dtype=np.int64)
        for v, c in enumerate(colors):
            f[inv_leaf[c]] = v
        return f

    def search(colors, level):
        cell = R.target_cell(colors)
        if cell is None:
            if sorted(colors) != sorted(leaf):
                return None
            f = leaf_map(colors)
            return f if R.is_auto(f) else None
        if level >= len(cells) or len(cell) != len(cells[level]):
            return None
        for w in cell:
            nxt = R.refine(R.individualize(colors, w))
            if sorted(nxt) != sorted(partitions[level + 1]):
                continue  # cell sizes disagree with the base path
            f = search(nxt, level + 1)
            if f is not None:
                return f
        return None

    gens = []
    order = 1
    for level in range(len(cells) - 1, -1, -1):
        v = base[level]
        orbit = _orbit(v, gens)
        for w in cells[level]:
            if w in orbit:
                continue
            nxt = R.refine(R.individualize(partitions[level], w))
            if sorted(nxt) != sorted(partitions[level + 1]):
                continue
            f = search(nxt, level + 1)
            if f is not None:
                gens.append(f)
                orbit = _orbit(v, gens)
        order *= len(orbit)
    if not gens:
        gens = [np.arange(R.V)]
    return AutResult(gens, order, base)


# --- expanded design --------------------------------------------------------

def expanded_design(H: ButsonMatrix) -> np.ndarray:
    """Exponents of E_H: entry (i n + a, j n + b) is L[a, b] + i + j."""
    n, q = H.n, H.q
    i = np.arange(q)
    E = H.L[None, :, None, :] + i[:, None, None, None] + i[None, None, :, None]
    return (E % q).reshape(n * q, n * q)


def associated_design(H: ButsonMatrix) -> np.ndarray:
    """0/1 matrix marking the unit entries of E_H."""
    return (expanded_design(H) == 0).astype(np.int64)


def theta_map(X: MonomialMatrix, Y: MonomialMatrix) -> tuple[np.ndarray, np.ndarray]:
    """Permutation matrices sum_w T_w (x) X_w and sum_w S_w (x) Y_w of order nq,
    where T_w[a, b] = 1 iff b = a + w and S_w[a, b] = 1 iff a = b + w."""
    q, n = X.q, X.n

    def build(M, sign):
        P = np.zeros((n * q, n * q), dtype=np.int64)
        for j, (p, d) in enumerate(zip(M.perm, M.diag)):
            for b in range(q):
                P[((b + sign * d) % q) * n + p, b * n + j] = 1
        return P

    return build(X, -1), build(Y, 1)


def fixes_design(E: np.ndarray, A: np.ndarray, B: np.ndarray) -> bool:
    """A E B^T == E for permutation matrices A, B."""
    return bool((A @ E @ B.T == E).all())

