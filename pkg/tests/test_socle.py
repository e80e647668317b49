import pytest

from packetforge.classical import SIGMA, GenSteinberg, InducedExpr, PMSquare, datum, tempered
from packetforge.core import CuspLine, FormalSum, GLGen, Segment, exp_string, hi, word
from packetforge.errors import PreconditionViolation, UnsupportedStep
from packetforge.socle import UNDECIDABLE, Undecidable, extend, jac, jac_commute_check, jac_strings, leading_jacquet

LINE = CuspLine.of(2)
STEINBERG = tempered(GenSteinberg(Segment.of(2)))


def test_jac_peels_the_steinberg_exponent():
    assert jac(STEINBERG, hi(2), LINE) == FormalSum.single(SIGMA)


def test_jac_without_matching_string_is_zero():
    result = jac(STEINBERG, hi(3), LINE)
    assert not isinstance(result, Undecidable)
    assert result == FormalSum.zero()


def test_jac_at_zero_is_undecidable():
    assert jac(STEINBERG, hi(0), LINE) is UNDECIDABLE
    assert not UNDECIDABLE
    assert Undecidable() is UNDECIDABLE


def test_leading_jacquet_counts_repeated_peels():
    assert leading_jacquet(STEINBERG, hi(2), LINE) == (1, SIGMA)
    assert leading_jacquet(STEINBERG, hi(1), LINE) == (0, STEINBERG)
    assert leading_jacquet(STEINBERG, hi(0), LINE) is UNDECIDABLE


def test_extend_by_alpha_gives_the_steinberg():
    rule, ext = extend(hi(2), SIGMA, LINE)
    assert ext == STEINBERG


def test_extend_by_minus_alpha_gives_the_langlands_quotient():
    rule, ext = extend(hi(-2), SIGMA, LINE)
    assert ext == datum([Segment.of(2)])


def test_extend_by_zero_is_unsupported():
    with pytest.raises(UnsupportedStep):
        extend(hi(0), SIGMA, LINE)


def test_jac_strings_drops_the_leading_letter():
    strings = FormalSum({exp_string(2, 1): 1, exp_string(1, 2): 3, exp_string(2): 1})
    assert jac_strings(strings, hi(2), "rho") == FormalSum({exp_string(1): 1, (): 1})
    assert jac_strings(strings, hi(1), "rho") == FormalSum.single(exp_string(2), 3)


def test_jacquet_functors_commute_on_distant_exponents():
    e = InducedExpr(word(GLGen.point(1), GLGen.point(3)), SIGMA)
    assert jac_commute_check(e, hi(1), hi(3), "rho")
    with pytest.raises(PreconditionViolation):
        jac_commute_check(e, hi(1), hi(2), "rho")


def test_jac_of_minus_square_lowers_the_top():
    line = CuspLine.of("1/2")
    wide = tempered(PMSquare(hi("1/2"), hi("3/2"), -1))
    assert jac(wide, hi("3/2"), line) == FormalSum.single(tempered(PMSquare(hi("1/2"), hi("1/2"), -1)))
