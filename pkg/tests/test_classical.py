import pytest

from packetforge.classical import (
    SIGMA,
    Cusp,
    GenSteinberg,
    LanglandsDatum,
    PMSquare,
    PMZeroChain,
    StronglyPositive,
    TauPM,
    UnitaryInduced,
    casselman_ok,
    datum,
    full_cuspidal_envelope,
    strongly_positive,
    symbol_from_json,
    tempered,
    tr_points,
)
from packetforge.core import CuspLine, FormalSum, GLGen, Segment, exp_string, hi, word
from packetforge.errors import ConfigError, PreconditionViolation, UnsupportedSymbol


def p(x):
    return Segment.of(x)


@pytest.mark.parametrize("seg", [Segment.of(-1, 0), Segment.of(-1, 1), Segment.of("-3/2", "1/2")])
def test_langlands_segments_need_positive_exponent(seg):
    with pytest.raises(PreconditionViolation):
        datum([seg])


def test_datum_is_independent_of_segment_order():
    assert datum([p(1), p(2)]) == datum([p(2), p(1)])
    assert str(datum([p(1), p(2)])) == "L([2],[1];σ)"
    assert datum([]) == SIGMA
    assert SIGMA.is_tempered and str(SIGMA) == "σ"


def test_symbol_rendering():
    assert str(GenSteinberg(Segment.of("5/2"))) == "δ([5/2];σ)"
    assert str(strongly_positive([p("1/2"), p("3/2")])) == "δ_sp([1/2],[3/2];σ)"
    assert str(PMSquare(hi(2), hi(3), -1)) == "δ([-2,3]_−;σ)"
    assert str(PMZeroChain(0, 1)) == "δ([0]_+;σ)"
    assert str(TauPM(-1, 2)) == "τ([0]_−;δ([1,2];σ))"
    assert str(UnitaryInduced(hi(2), Cusp(), 1)) == "([-2,2]⋊σ)_+"
    assert str(UnitaryInduced(hi(0), Cusp())) == "[0]⋊σ"


def test_strongly_positive_normalizes_short_lists():
    assert strongly_positive([]) == Cusp()
    assert isinstance(strongly_positive([p("5/2")]), GenSteinberg)
    assert isinstance(strongly_positive([p("1/2"), p("3/2")]), StronglyPositive)


def test_generalized_steinberg_validation():
    GenSteinberg(Segment.of(2, 3)).validate(CuspLine.of(2))
    with pytest.raises(ConfigError):
        GenSteinberg(p(0)).validate(CuspLine.of(0))
    with pytest.raises(ConfigError):
        GenSteinberg(p(3)).validate(CuspLine.of(2))


def test_strongly_positive_validation():
    line = CuspLine.of("3/2")
    strongly_positive([p("1/2"), p("3/2")]).validate(line)
    with pytest.raises(ConfigError):
        StronglyPositive((Segment.of("1/2", "5/2"), p("3/2"))).validate(line)


def test_unitary_induction_at_alpha_is_reducible():
    line = CuspLine.of(2)
    with pytest.raises(ConfigError):
        UnitaryInduced(hi(2), Cusp()).validate(line)
    UnitaryInduced(hi(2), Cusp(), 1).validate(line)
    UnitaryInduced(hi(1), Cusp()).validate(line)
    with pytest.raises(ConfigError):
        UnitaryInduced(hi(1), Cusp(), 2).validate(line)


def test_family_symbols_need_their_alpha():
    PMZeroChain(2, -1).validate(CuspLine.of(0))
    TauPM(1, 1).validate(CuspLine.of(1))
    with pytest.raises(ConfigError):
        PMZeroChain(2, -1).validate(CuspLine.of(1))
    with pytest.raises(ConfigError):
        TauPM(1, 0).validate(CuspLine.of(1))
    with pytest.raises(ConfigError):
        PMSquare(hi(3), hi(2), 1).validate(CuspLine.of(2))


def test_support_is_sorted_up_to_sign():
    d = datum([Segment.of(1, 2)], GenSteinberg(p(3)))
    assert d.support() == (hi(1), hi(2), hi(3))
    assert d.letters == 3
    assert tempered(PMSquare(hi(1), hi(2), 1)).support() == (hi(0), hi(1), hi(1), hi(2))


def test_tr_points():
    assert tr_points(1, 3) == (p(1), p(2), p(3))
    assert datum(tr_points("1/2", "3/2")) == datum([p("3/2"), p("1/2")])


def test_casselman_criterion():
    assert casselman_ok(exp_string(2, -1), strict=True)
    assert not casselman_ok(exp_string(-1, 2), strict=False)
    assert casselman_ok(exp_string(1, -1), strict=False)
    assert not casselman_ok(exp_string(1, -1), strict=True)


def test_string_sets():
    assert GenSteinberg(Segment.of("3/2", "5/2")).string_set().strings == FormalSum.single(exp_string("5/2", "3/2"))
    assert Cusp().string_set().exact
    assert not PMSquare(hi(1), hi(1), 1).string_set().exact


@pytest.mark.parametrize("x0, y", [("1/2", "1/2"), ("1/2", "3/2"), ("1", "2")])
def test_square_head_occurs_once_per_sign(x0, y):
    for sign in (1, -1):
        sq = PMSquare(hi(x0), hi(y), sign)
        assert sq.string_set().strings.coefficient(sq.head()) == 1


def test_full_cuspidal_envelope():
    env = full_cuspidal_envelope(datum([p(1)], GenSteinberg(p(2))))
    assert env.gl == word(GLGen.point(-1), GLGen.point(2))
    assert env.over_sigma


@pytest.mark.parametrize(
    "d",
    [
        tempered(UnitaryInduced(hi(2), Cusp(), -1)),
        datum([p(1)], PMSquare(hi(2), hi(3), 1)),
        datum([Segment.of("1/2", "3/2")], strongly_positive([p("1/2"), Segment.of("3/2", "5/2")])),
    ],
)
def test_json_roundtrip(d):
    assert LanglandsDatum.from_json(d.to_json()) == d


def test_malformed_symbols():
    with pytest.raises(UnsupportedSymbol):
        symbol_from_json({"tag": "Nope"})
    with pytest.raises(ConfigError):
        symbol_from_json({"args": {}})
    with pytest.raises(ConfigError):
        LanglandsDatum.from_json({"segs": []})
