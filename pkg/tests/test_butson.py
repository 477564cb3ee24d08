import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from butsonbent.butson import (ButsonMatrix, MonomialMatrix, build_code, dephase, fourier_matrix,
                               group_invariant_matrix, is_bush_type, is_regular, kronecker, parse,
                               random_monomial, serialize, transform, verify_butson)
from butsonbent.constructions import bush_example_bh42
from butsonbent.cyclotomic import CycElt
from butsonbent.exceptions import MatrixFormatError


def test_fourier_f3_rows():
    assert fourier_matrix(3).L.tolist() == [[0, 0, 0], [0, 1, 2], [0, 2, 1]]


@pytest.mark.parametrize("M", [fourier_matrix(3), fourier_matrix(6), fourier_matrix(2, 2),
                               fourier_matrix(5, 2), group_invariant_matrix(3, 1),
                               kronecker(fourier_matrix(3), fourier_matrix(3))])
def test_verify_true(M):
    assert verify_butson(M)
    assert oracles.butson_ok(M.L, M.q)


def test_verify_false_all_ones():
    M = ButsonMatrix(3, np.zeros((3, 3), dtype=np.int64))
    assert not verify_butson(M)
    assert not oracles.butson_ok(M.L, 3)


def test_dephase_examples():
    F = fourier_matrix(4)
    assert dephase(F) == F
    shifted = ButsonMatrix(4, (F.L + 1) % 4)
    assert dephase(shifted) == dephase(F)
    D = dephase(group_invariant_matrix(2, 1))
    assert verify_butson(D)
    assert not D.L[0].any() and not D.L[:, 0].any()


def test_kronecker_examples():
    F2 = fourier_matrix(2)
    assert kronecker(F2, F2) == fourier_matrix(2, 2)
    I1 = ButsonMatrix(2, np.zeros((1, 1), dtype=np.int64))
    assert kronecker(F2, I1) == F2
    K = kronecker(fourier_matrix(3), fourier_matrix(3))
    assert K.n == 9 and verify_butson(K)


def test_regular():
    assert is_regular(group_invariant_matrix(2, 1)) == CycElt.integer(2, 2)
    assert is_regular(fourier_matrix(2)) is None


def test_bush_type():
    assert is_bush_type(bush_example_bh42(), 2)
    assert not is_bush_type(fourier_matrix(2, 2), 2)


def test_code_examples():
    C = build_code(fourier_matrix(2))
    assert set(map(tuple, C.as_array().tolist())) == {(0, 0), (0, 1), (1, 1), (1, 0)}
    C4 = build_code(fourier_matrix(4))
    assert len(C4) == 16
    assert set(map(tuple, C4.as_array().tolist())) == oracles.code_words(fourier_matrix(4).L, 4)
    assert C4.is_translation_closed()
    assert len(build_code(fourier_matrix(4), full=False)) == 4


def test_parse_errors():
    with pytest.raises(MatrixFormatError):
        parse("q 3\n0 0\n0 1 2\n")
    with pytest.raises(MatrixFormatError):
        parse("")


def test_monomial_product_and_inverse():
    rng = np.random.default_rng(1)
    for _ in range(20):
        A, B = random_monomial(4, 6, rng), random_monomial(4, 6, rng)
        assert np.allclose((A @ B).to_complex(), A.to_complex() @ B.to_complex())
        assert np.allclose(A.conj_transpose().to_complex(), A.to_complex().conj().T)


@st.composite
def butson_and_monomials(draw):
    H = draw(st.sampled_from([fourier_matrix(2), fourier_matrix(3), fourier_matrix(4),
                              group_invariant_matrix(2, 1), fourier_matrix(2, 2)]))
    seed = draw(st.integers(0, 2**32 - 1))
    rng = np.random.default_rng(seed)
    return H, random_monomial(H.n, H.q, rng), random_monomial(H.n, H.q, rng)


@settings(max_examples=60, deadline=None)
@given(butson_and_monomials())
def test_equivalence_preserves_butson_and_codec(data):
    H, P, Q = data
    H2 = transform(H, P, Q)
    assert verify_butson(H2)
    assert np.allclose(H2.to_complex(), P.to_complex() @ H.to_complex() @ Q.to_complex().conj().T)
    assert parse(serialize(H2)) == H2
    assert dephase(dephase(H2)) == dephase(H2)


def test_monomial_equality():
    assert MonomialMatrix.identity(3, 3) == MonomialMatrix(3, (0, 1, 2), (0, 0, 0))
    assert len({MonomialMatrix.identity(3, 3), MonomialMatrix.scalar(3, 3, 0)}) == 1
