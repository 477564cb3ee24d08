import numpy as np
import pytest

import oracles
from butsonbent import autgroup
from butsonbent.bent_search import exhaustive_search, verify_bent
from butsonbent.butson import MonomialMatrix, fourier_matrix, kronecker, random_monomial
from butsonbent.exceptions import BudgetExceeded, NotCoprime, PreconditionFailed

F2, F3, F4, F5 = (fourier_matrix(q) for q in (2, 3, 4, 5))
F2F2 = kronecker(F2, F2)


@pytest.mark.parametrize("H, k, V, A", [(F2, None, 8, 16), (F3, None, 18, 45), (F2, 1, 12, 24),
                                        (F3, 2, 27, 63), (F4, None, 32, 96)])
def test_digraph_sizes(H, k, V, A):
    G = autgroup.build_digraph(H, k)
    assert (G.num_vertices, G.num_arcs) == (V, A)
    n, q = H.n, H.q
    assert A == 2 * q * n + q * n * n + (0 if k is None else 2 * q * n)


def test_digraph_not_coprime():
    with pytest.raises(NotCoprime):
        autgroup.build_digraph(F4, 2)


# group orders from the brute-force oracle where it is feasible, frozen otherwise
ORDERS = [
    (F2, None, 8), (F3, None, 54), (F2F2, None, 192), (F4, None, 128), (F5, None, 500),
    (F2, 1, 2), (F3, 1, 6), (F3, 2, 6), (F2F2, 1, 8), (F4, 1, 16), (F4, 3, 8),
    (F5, 1, 10), (F5, 2, 2), (F5, 3, 2), (F5, 4, 10),
]


@pytest.mark.parametrize("H, k, order", ORDERS, ids=lambda v: str(v) if not hasattr(v, "L") else f"n{v.n}q{v.q}")
@pytest.mark.parametrize("colored", [True, False])
def test_group_orders(H, k, order, colored):
    G = autgroup.build_digraph(H, k)
    res = autgroup.digraph_automorphisms(G, colored=colored)
    assert res.order == order
    for f in res.generators:
        assert G.is_automorphism(f, colored=colored)


@pytest.mark.parametrize("H, k", [(F2, None), (F3, None), (F2, 1), (F3, 1), (F3, 2)])
def test_orders_match_oracle(H, k):
    ref = oracles.aut_order(H.L, H.q) if k is None else oracles.strong_order(H.L, H.q, k)
    assert autgroup.digraph_automorphisms(autgroup.build_digraph(H, k)).order == ref


def test_f2xf2_order_oracle():
    assert oracles.aut_order(F2F2.L, 2) == 192


@pytest.mark.parametrize("H, k", [(F2, None), (F3, None), (F2F2, None), (F3, 1), (F3, 2), (F4, 3)])
def test_decode_encode_round_trip(H, k):
    G = autgroup.build_digraph(H, k)
    for f in autgroup.digraph_automorphisms(G).generators:
        out = autgroup.decode_digraph_perm(G, f, H)
        P, Q = out if k is None else (out.apply_multiplier(k), out)
        g = autgroup.encode_pair(G, P, Q)
        rc = 2 * H.n * H.q
        assert np.array_equal(g[:rc], f[:rc])
        assert G.is_automorphism(g)


def test_generators_preserve_classes_and_degrees():
    G = autgroup.build_digraph(F2)
    kinds = G.kinds()
    outdeg = np.bincount(G.arcs[:, 0], minlength=G.num_vertices)
    for f in autgroup.digraph_automorphisms(G).generators:
        assert (kinds[f] == kinds).all()
        assert (outdeg[f] == outdeg).all()


def test_decode_examples():
    G = autgroup.build_digraph(F3)
    ident = np.arange(G.num_vertices)
    P, Q = autgroup.decode_digraph_perm(G, ident, F3)
    assert P == Q == MonomialMatrix.identity(3, 3)
    shift = autgroup.encode_pair(G, MonomialMatrix.scalar(3, 3, 2), MonomialMatrix.scalar(3, 3, 2))
    P, Q = autgroup.decode_digraph_perm(G, shift, F3)
    assert P == Q == MonomialMatrix.scalar(3, 3, 2)
    swap = MonomialMatrix(3, (0, 2, 1), (0, 0, 0))
    assert autgroup.is_automorphism(F3, swap, swap)
    assert autgroup.decode_digraph_perm(G, autgroup.encode_pair(G, swap, swap), F3) == (swap, swap)
    bad = ident.copy()
    bad[[0, 1]] = bad[[1, 0]]
    with pytest.raises(PreconditionFailed):
        autgroup.decode_digraph_perm(G, bad, F3)


def test_strong_and_action():
    z = MonomialMatrix.scalar(3, 3, 1)
    assert autgroup.is_strong(F3, z, 1)
    sol = exhaustive_search(F4, 1)[0]
    moved = autgroup.act_on_bent(MonomialMatrix.scalar(4, 4, 1), sol, F4)
    assert moved.x == tuple((v + 1) % 4 for v in sol.x) and moved.lam == sol.lam
    assert autgroup.act_on_bent(MonomialMatrix.identity(4, 4), sol, F4) == sol
    ex = [s for s in exhaustive_search(F3, 2) if s.x == (0, 1, 1)][0]
    with pytest.raises(PreconditionFailed):
        autgroup.act_on_bent(MonomialMatrix(3, (1, 0, 2), (0, 0, 0)), ex, F3)


@pytest.mark.parametrize("H", [F3, F4, F5, F2F2], ids=lambda H: f"n{H.n}q{H.q}")
def test_strong_action_on_all_solutions(H):
    for k in (1, H.q - 1):
        G = autgroup.build_digraph(H, k)
        gens = [autgroup.decode_digraph_perm(G, f, H) for f in autgroup.digraph_automorphisms(G).generators]
        for sol in exhaustive_search(H, k):
            for M in gens:
                out = autgroup.act_on_bent(M, sol, H)
                assert verify_bent(H, out.x, k) == sol.lam


def test_expanded_design_rows():
    A = autgroup.associated_design(F3)
    assert (A.sum(axis=1) == 3).all()
    E = autgroup.expanded_design(F2)
    assert E.shape == (4, 4)


def test_theta_examples():
    I = MonomialMatrix.identity(3, 3)
    A, B = autgroup.theta_map(I, I)
    assert (A == np.eye(9)).all() and (B == np.eye(9)).all()
    A, _ = autgroup.theta_map(MonomialMatrix.scalar(3, 3, 1), I)
    # block b moves to block b - 1, identity inside each block
    shift = np.roll(np.eye(3, dtype=np.int64), -1, axis=0)
    assert (A == np.kron(shift, np.eye(3, dtype=np.int64))).all()


@pytest.mark.parametrize("H", [F3, F2F2], ids=["F3", "F2xF2"])
def test_theta_fixes_design(H):
    E = autgroup.expanded_design(H)
    G = autgroup.build_digraph(H)
    for f in autgroup.digraph_automorphisms(G).generators:
        P, Q = autgroup.decode_digraph_perm(G, f, H)
        assert autgroup.fixes_design(E, *autgroup.theta_map(P, Q))


def test_theta_homomorphism():
    rng = np.random.default_rng(7)
    for _ in range(25):
        X1, X2, Y1, Y2 = (random_monomial(4, 4, rng) for _ in range(4))
        A1, B1 = autgroup.theta_map(X1, Y1)
        A2, B2 = autgroup.theta_map(X2, Y2)
        A, B = autgroup.theta_map(X1 @ X2, Y1 @ Y2)
        assert (A == A1 @ A2).all() and (B == B1 @ B2).all()


def test_exports():
    G = autgroup.build_digraph(F2, 1)
    dimacs = G.to_dimacs().splitlines()
    assert dimacs[0] == "p arc 12 24" and len(dimacs) == 26
    assert G.to_dot().startswith("digraph G {")


def test_vertex_budget():
    with pytest.raises(BudgetExceeded):
        autgroup.digraph_automorphisms(autgroup.build_digraph(F3), budget=10)
