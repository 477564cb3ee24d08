import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from butsonbent import metrics
from butsonbent.bent_search import exhaustive_search
from butsonbent.butson import (build_code, code_from_words, dephase, fourier_matrix, kronecker,
                               random_monomial, transform)
from butsonbent.exceptions import BudgetExceeded

F2, F3, F4, F5, F6 = (fourier_matrix(q) for q in (2, 3, 4, 5, 6))
F2F2 = kronecker(F2, F2)


def test_distance_examples():
    assert metrics.chinese_distance((1, 2), (0, 0), 4) == 6
    assert metrics.chinese_distance((3, 5, 1), (3, 5, 1), 6) == 0
    assert metrics.chinese_distance((1,), (0,), 3) == 3
    with pytest.raises(ValueError):
        metrics.chinese_distance((1, 2), (1,), 3)


@pytest.mark.parametrize("H, expected", [(F2, 0), (F2F2, 4), (F3, 3), (F4, 4), (F6, 7)],
                         ids=["F2", "F2xF2", "F3", "F4", "F6"])
def test_covering_radius_integral(H, expected):
    C = build_code(H)
    r = metrics.covering_radius(C)
    assert r == expected and isinstance(r, int)
    assert metrics.covering_radius_bruteforce(C) == expected
    assert oracles.covering_radius(C.as_array().tolist(), H.q) == pytest.approx(expected, abs=1e-9)


def test_covering_radius_f5():
    C = build_code(F5)
    ref = oracles.covering_radius(C.as_array().tolist(), 5)
    assert metrics.covering_radius(C) == pytest.approx(ref, abs=1e-9)
    assert metrics.covering_radius(C, threads=4, backend="python") == pytest.approx(ref, abs=1e-9)


def test_covering_radius_without_translation_closure():
    C = build_code(F4, full=False)
    assert not C.is_translation_closed()
    assert metrics.covering_radius(C) == metrics.covering_radius_bruteforce(C)


def test_covering_budget():
    with pytest.raises(BudgetExceeded):
        metrics.covering_radius(build_code(F5), budget=10)


@pytest.mark.parametrize("H, expected", [(F2, {4, 8}), (F2F2, {8, 16}), (F3, {6, 9}), (F4, {8, 16}),
                                         (F6, {6, 12, 18, 24})], ids=["F2", "F2xF2", "F3", "F4", "F6"])
def test_spectrum(H, expected):
    assert metrics.distance_spectrum(H) == expected
    words = sorted(oracles.code_words(H.L, H.q))
    brute = {round(sum(oracles.weight(a - b, H.q) for a, b in zip(u, v)), 9)
             for i, u in enumerate(words) for v in words[i + 1:]}
    assert brute == {float(v) for v in expected}


def test_spectrum_formula():
    assert metrics.spectrum_formula(2, 2) == {4, 8}
    assert metrics.spectrum_formula(4, 4) == {8, 16}
    vals = sorted(metrics.distance_spectrum(F5))
    ref = sorted(metrics.spectrum_formula(5, 5))
    assert vals == pytest.approx(ref, abs=1e-9)


def test_bounds():
    assert metrics.covering_bounds(4, 4, True, True).lower == 4
    b = metrics.covering_bounds(8, 8, True, True)
    assert b.lower == pytest.approx(2 * (8 - math.sqrt(8)), abs=1e-12) and b.upper == 12
    assert metrics.covering_bounds(12, 6, True, True).lower == pytest.approx(17.072, abs=1e-3)
    assert metrics.covering_bounds(5, 5, True, True).upper is None
    assert metrics.attainable_at_least(13.675, 10, 4) == 14
    assert metrics.attainable_at_least(14 - 2 * math.sqrt(7), 7, 6) == 9
    assert metrics.attainable_at_least(3.0, 3, 5) is None


def test_deviation_examples():
    C = build_code(F3)
    for s in exhaustive_search(F3, 2):
        assert metrics.deviation(C, s.x) == pytest.approx(math.sqrt(3), abs=1e-9)
    assert metrics.deviation(C, C.as_array()[4]) == pytest.approx(3, abs=1e-12)
    assert metrics.deviation(build_code(F2), (0, 0)) == pytest.approx(2, abs=1e-12)


def test_embedding_examples():
    assert np.allclose(metrics.embed_words([[1]], 4), [[0, 1]])
    S4 = metrics.spherical_embed(build_code(F4))
    assert len(S4) == 16 and S4.min_sq_distance() == pytest.approx(2, abs=1e-9)
    S3 = metrics.spherical_embed(build_code(F3))
    # the minimum over distinct points of C_H is 2 here, below 2(1 - cos(2 pi/3)) = 3
    assert len(S3) == 9 and S3.min_sq_distance() == pytest.approx(2, abs=1e-9)


def test_design_and_antipodal():
    S = metrics.spherical_embed(build_code(dephase(F3)))
    assert metrics.design_strength(S) == 2 and not metrics.is_antipodal(S)
    assert metrics.is_antipodal(metrics.spherical_embed(build_code(F4)))
    one = metrics.SphericalPoints(3, np.array([[1.0, 0.0, 0.0]]))
    assert metrics.design_strength(one) == 0 and not metrics.is_antipodal(one)
    assert metrics.sphere_covering_bound(one) is None


def test_sphere_bounds():
    S8 = metrics.spherical_embed(build_code(dephase(fourier_matrix(8))))
    b = metrics.sphere_covering_bound(S8)
    assert b.value == pytest.approx(math.sqrt(1.5), abs=1e-12) and b.hypothesis == "antipodal 2-design"
    b3 = metrics.sphere_covering_bound(metrics.spherical_embed(build_code(dephase(F3))))
    assert b3.value == pytest.approx(math.sqrt(2 * (1 - 1 / 6)), abs=1e-12)


def test_levenshtein():
    assert metrics.levenshtein_L3(8, 0) == 16
    assert metrics.levenshtein_L3(2, 0) == 4
    with pytest.raises(ValueError):
        metrics.levenshtein_L3(4, 0.9)


@pytest.mark.parametrize("H", [F2, F3, F4, F5, F6, fourier_matrix(8), F2F2], ids=lambda H: f"n{H.n}q{H.q}")
def test_size_vs_levenshtein(H):
    C = build_code(H)
    s = 1 - metrics.spherical_embed(C).min_sq_distance() / 2
    s = max(s, 0.0) if abs(s) < 1e-12 else s
    try:
        bound = metrics.levenshtein_L3(2 * H.n, s)
    except ValueError:
        return
    assert H.n * H.q <= bound + 1e-9


@settings(max_examples=100)
@given(st.integers(2, 9), st.integers(1, 6), st.data())
def test_isometry(q, n, data):
    u = data.draw(st.lists(st.integers(0, q - 1), min_size=n, max_size=n))
    v = data.draw(st.lists(st.integers(0, q - 1), min_size=n, max_size=n))
    P = metrics.embed_words([u, v], q)
    d = metrics.chinese_distance(u, v, q)
    assert float(d) == pytest.approx(n * ((P[0] - P[1]) ** 2).sum(), abs=1e-9)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([F3, F4, F5, F2F2]), st.integers(0, 2**32 - 1))
def test_covering_radius_equivalence_invariant(H, seed):
    rng = np.random.default_rng(seed)
    H2 = transform(H, random_monomial(H.n, H.q, rng), random_monomial(H.n, H.q, rng))
    a = metrics.covering_radius(build_code(H))
    b = metrics.covering_radius(build_code(H2))
    assert a == pytest.approx(b, abs=1e-9)


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 4), st.integers(1, 3), st.data())
def test_covering_radius_random_codes(q, n, data):
    words = data.draw(st.lists(st.lists(st.integers(0, q - 1), min_size=n, max_size=n), min_size=1, max_size=5))
    C = code_from_words(q, words)
    ref = oracles.covering_radius(words, q)
    assert metrics.covering_radius(C) == pytest.approx(ref, abs=1e-9)
