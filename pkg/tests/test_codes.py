import numpy as np
import pytest

from cyclid import gf2
from cyclid.codes import (
    CyclicCode,
    GuardError,
    InvalidGeneratorError,
    in_span,
    make_code,
    p_zero_syndrome_code,
    span_basis,
    syndrome_basis,
)


def P(text):
    return gf2.parse_poly(text)


def example1_code():
    g0 = gf2.mul(gf2.mul(P("x^4+x^3+1"), P("x^4+x^3+x^2+x+1")), P("x+1"))
    return make_code(15, g0)


def test_make_code():
    code = make_code(7, P("x^3+x+1"))
    assert code.k == 4
    assert example1_code().k == 6
    assert make_code(7, 1).k == 7
    assert make_code(7, 1).is_trivial


def test_make_code_rejects_nondivisor():
    with pytest.raises(InvalidGeneratorError):
        make_code(7, P("x^2+x+1"))
    with pytest.raises(InvalidGeneratorError):
        make_code(7, 0)


def test_dual_generator():
    assert example1_code().dual_generator() == gf2.mul(P("x^2+x+1"), P("x^4+x^3+1"))
    code = make_code(7, P("x^3+x^2+1"))
    assert code.dual_generator() == gf2.mul(P("x+1"), P("x^3+x^2+1"))
    # applying the construction to the dual recovers the generator
    for g in gf2.divisors_xn1(15):
        code = make_code(15, g)
        assert make_code(15, code.g_dual).g_dual == g


def test_is_degenerate():
    assert make_code(4, P("x^2+1")).is_degenerate()
    assert not make_code(7, P("x^3+x+1")).is_degenerate()
    assert not example1_code().is_degenerate()
    with pytest.raises(ValueError):
        make_code(7, 1).is_degenerate()


def test_degenerate_matches_repeated_codeword_structure():
    code = make_code(4, P("x^2+1"))
    words = sorted(gf2.poly_to_bits(v, 4) for v in code.codewords())
    assert words == [[0, 0, 0, 0], [0, 1, 0, 1], [1, 0, 1, 0], [1, 1, 1, 1]]


def test_codewords():
    code = make_code(4, P("x^2+1"))
    words = set(code.codewords())
    assert words == {0b0000, 0b0101, 0b1010, 0b1111}
    assert len(list(make_code(7, P("x^3+x+1")).codewords())) == 16
    assert 0 in words
    big = make_code(31, P("x+1"))
    with pytest.raises(GuardError):
        next(big.codewords())


def test_weight_distribution():
    wd = make_code(7, P("x^3+x+1")).weight_distribution()
    assert wd.tolist() == [1, 0, 0, 7, 7, 0, 0, 1]
    for g in gf2.divisors_xn1(15):
        code = make_code(15, g)
        wd = code.weight_distribution()
        assert wd[0] == 1
        assert wd.sum() == 1 << code.k


def test_p_zero_syndrome():
    code = make_code(7, P("x^3+x+1"))
    assert code.p_zero_syndrome(0.0) == 1.0
    assert abs(code.p_zero_syndrome(0.5) - 2.0 ** (code.k - code.n)) < 1e-15
    assert abs(p_zero_syndrome_code(code, 0.01) - 0.93207) < 1e-5
    with pytest.raises(ValueError):
        code.p_zero_syndrome(0.7)


def test_syndrome_basis_paper_values():
    # n=7, f=x^3+x^2+1: rows of the residue map, ascending coordinates
    hs = syndrome_basis(7, P("x^3+x^2+1"))
    as_bits = ["".join(str((h >> i) & 1) for i in range(7)) for h in hs]
    assert as_bits == ["1001110", "0100111", "0011101"]


def test_syndrome_basis_structure():
    f = P("x^3+x+1")
    hs = syndrome_basis(7, f)
    for i in range(3):  # identity block below deg f
        for l in range(3):
            assert (hs[l] >> i) & 1 == (1 if i == l else 0)
    assert syndrome_basis(3, P("x+1")) == [0b111]
    # each row is a multiple of the dual generator of C(n, f)
    code = make_code(7, f)
    assert all(gf2.rem(h, code.g_dual) == 0 for h in hs)
    with pytest.raises(ValueError):
        syndrome_basis(7, 1)
    with pytest.raises(ValueError):
        syndrome_basis(7, gf2.xn1(7))


def test_span_helpers():
    basis = span_basis([0b110, 0b011, 0b101])
    assert len(basis) == 2
    assert in_span(basis, 0b101)
    assert not in_span(basis, 0b100)
    assert span_basis([0, 0]) == []


def test_inner_product_counting_identity():
    # count of codewords orthogonal to h is 2^k iff h is in the dual
    rng = np.random.default_rng(0)
    code = make_code(7, P("x^3+x+1"))
    words = list(code.codewords())
    for h in rng.integers(0, 1 << 7, size=100):
        h = int(h)
        zeros = sum(1 for v in words if int.bit_count(v & h) % 2 == 0)
        if gf2.rem(h, code.g_dual) == 0:
            assert zeros == 1 << code.k
        else:
            assert zeros == 1 << (code.k - 1)
