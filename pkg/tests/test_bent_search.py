import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from butsonbent.bent_search import (BentSolution, bent_to_selfdual, candidate_lambdas, census,
                                    eigenspace_search, exhaustive_search, greedy_submatrix, scale_solution,
                                    search, solutions_to_json, verify_bent)
from butsonbent.butson import fourier_matrix, group_invariant_matrix, kronecker
from butsonbent.cyclotomic import CycElt, units
from butsonbent.exceptions import BudgetExceeded, NotCoprime, ZeroFirstColumn

F2, F3, F4, F5 = (fourier_matrix(q) for q in (2, 3, 4, 5))
F2F2 = kronecker(F2, F2)


def test_verify_examples():
    assert verify_bent(F3, (0, 1, 1), 2) == CycElt(3, (1, 2, 0))
    assert verify_bent(group_invariant_matrix(2, 1), (0, 0, 0, 0), 1) == 2
    assert verify_bent(F2, (0, 0), 1) is None


def test_verify_errors():
    with pytest.raises(NotCoprime):
        verify_bent(F4, (0, 0, 0, 0), 2)
    with pytest.raises(ValueError):
        verify_bent(F3, (0, 1), 1)


@pytest.mark.parametrize("H", [F2, F3, F4, F2F2, group_invariant_matrix(2, 1)], ids=lambda H: f"n{H.n}q{H.q}")
def test_exhaustive_matches_oracle(H):
    for k in units(H.q):
        got = {s.x: s.lam for s in exhaustive_search(H, k)}
        ref = oracles.bent_solutions(H.L, H.q, k)
        assert set(got) == set(ref)
        for x, lam in got.items():
            assert oracles.cyc_equal(list(lam.coeffs), ref[x], H.q)


def test_exhaustive_f5_matches_oracle():
    ref = oracles.bent_solutions(F5.L, 5, 4)
    got = exhaustive_search(F5, 4)
    assert {s.x for s in got} == set(ref)
    assert census(F5, 4).counts == oracles.census_counts(ref, 5)


def test_census_frozen():
    # raw counts, cross-checked with the oracle grouping
    assert census(F2, 1).counts == []
    assert census(F2F2, 1).counts == [2, 2]
    assert sorted(census(F3, 2).counts) == oracles.census_counts(oracles.bent_solutions(F3.L, 3, 2), 3)
    assert census(F3, 2).text() == "3 3 6 1; 3; 3; 1; 1; 3"
    assert census(F3, 1).text() == "3 3 0 0"


def test_eigen_f3_and_f4():
    assert any(s.x == (0, 1, 1) for s in eigenspace_search(F3, 2))
    for k in (1, 3):
        assert eigenspace_search(F4, k) == exhaustive_search(F4, k)
    assert eigenspace_search(F2F2, 1) == exhaustive_search(F2F2, 1)


def test_candidate_lambdas():
    assert [lam.as_integer() for lam in candidate_lambdas(4, 2)] == [-2, 2]
    assert candidate_lambdas(6, 3) == []
    lams = candidate_lambdas(3, 3)
    assert lams and all(lam.norm_sq() == 3 for lam in lams)


def test_greedy_submatrix():
    assert greedy_submatrix(np.eye(3)) == [0, 1, 2]
    with pytest.raises(ZeroFirstColumn):
        greedy_submatrix(np.array([[0.0, 1.0], [0.0, 2.0]]))
    B = np.array([[1.0, 1.0, 0.0, 2.0], [2.0, 2.0, 1.0, 0.0]])
    assert greedy_submatrix(B) == [0, 2]


def test_bent_to_selfdual():
    x = (0, 1, 1)
    y = tuple(2 * v % 3 for v in x)
    Hd, y2 = bent_to_selfdual(F3, x, y)
    assert verify_bent(Hd, y2, 1) == verify_bent(F3, x, 2)
    H0, _ = bent_to_selfdual(F2F2, (0, 0, 0, 1), (0, 0, 0, 1))
    assert H0 == F2F2


def test_budget():
    with pytest.raises(BudgetExceeded):
        exhaustive_search(F5, 1, budget=100)
    with pytest.raises(ValueError):
        search(F3, 1, method="groebner")


def test_json_round_trip():
    sols = exhaustive_search(F3, 2)
    assert [BentSolution.from_json(s.to_json()) for s in sols] == sols
    assert solutions_to_json(sols) == solutions_to_json(list(sols))


HS = {(H.n, H.q): H for H in (F3, F4, F5, F2F2)}
ALL_SOLUTIONS = [s for H in HS.values() for k in units(H.q) for s in exhaustive_search(H, k)]


@settings(max_examples=80, deadline=None)
@given(st.sampled_from(ALL_SOLUTIONS), st.integers(0, 20))
def test_scaling_law_and_norm(sol, s):
    H = HS[(sol.n, sol.q)]
    moved = scale_solution(sol, s)
    assert verify_bent(H, moved.x, sol.k) == moved.lam
    assert sol.lam.norm_sq() == sol.n
    # y = k x reproduces the solution through the self-dual normal form
    y = tuple(sol.k * v % sol.q for v in sol.x)
    Hd, _ = bent_to_selfdual(H, sol.x, y)
    assert verify_bent(Hd, y, 1) == sol.lam
