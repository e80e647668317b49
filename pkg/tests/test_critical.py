import pytest

from packetforge.arthur import base_pair, parse_blocks
from packetforge.classical import (
    SIGMA,
    Cusp,
    GenSteinberg,
    PMSquare,
    PMZeroChain,
    StronglyPositive,
    TauPM,
    UnitaryInduced,
    datum,
    tempered,
    tr_points,
)
from packetforge.core import CuspLine, Segment, exp_string, hi
from packetforge.critical import (
    CATALOG,
    SWAP,
    TEMPERED,
    CriticalCase,
    LabelStatus,
    Op,
    Primitive,
    RecipeKind,
    Subquotient,
    add,
    appendix_lemma,
    appendix_points,
    apply_op,
    build_pair,
    catalog,
    catalog_counts,
    drop,
    expect,
    flip,
    is_critical,
    in_l_packet,
    is_primitive_candidate,
    lparam_of_pair,
    rise,
    speh_shapes,
    speh_string,
    string_capacity,
    tempered_lparam,
    verify_case,
)
from packetforge.errors import ConfigError, PreconditionViolation

ALPHAS = ("0", "1/2", "1", "3/2", "2", "5/2", "3")

KEYS_AT = {
    "0": ["0,1", "0,1,1@0", "0,0,1"],
    "1/2": ["1/2,1/2,3/2@1/2", "1/2,1/2,1/2"],
    "1": ["0,1,1@1"],
    "3/2": ["a-1,a", "a-1,a,a+1", "a-1,a,a", "1/2,1/2,3/2@3/2"],
    "2": ["a-1,a", "a-1,a,a+1", "a-1,a,a", "0,1,2"],
    "5/2": ["a-1,a", "a-1,a,a+1", "a-1,a,a", "a-2,a-1,a"],
    "3": ["a-1,a", "a-1,a,a+1", "a-1,a,a", "a-2,a-1,a"],
}

COUNTS = {
    "a-1,a": 4,
    "0,1": 5,
    "a-1,a,a+1": 4,
    "a-1,a,a": 1,
    "1/2,1/2,3/2@3/2": 8,
    "a-2,a-1,a": 8,
    "0,1,2": 8,
    "0,1,1@1": 7,
    "1/2,1/2,3/2@1/2": 8,
    "1/2,1/2,1/2": 5,
    "0,1,1@0": 6,
    "0,0,1": 6,
}

ALL_CASES = [(alpha, key) for alpha in ALPHAS for key in KEYS_AT[alpha]]


def p(x):
    return Segment.of(x)


@pytest.mark.parametrize(
    "exps, alpha, expected",
    [
        (["1", "2"], "2", True),
        (["2", "3"], "2", True),
        (["1", "1", "2"], "2", True),
        (["0", "1"], "2", False),
        (["1", "3"], "2", False),
        (["1/2", "1/2", "3/2"], "1/2", True),
        (["1/2", "1"], "1", False),
        ([], "1", False),
    ],
)
def test_is_critical(exps, alpha, expected):
    assert is_critical([hi(x) for x in exps], CuspLine.of(alpha)) is expected


@pytest.mark.parametrize("alpha", ALPHAS)
def test_catalog_keys_per_alpha(alpha):
    cases = catalog(CuspLine.of(alpha))
    assert [c.key for c in cases] == KEYS_AT[alpha]
    assert catalog_counts(cases) == {key: COUNTS[key] for key in KEYS_AT[alpha]}


def test_catalog_covers_every_template():
    assert {tpl.key for tpl in CATALOG} == set(COUNTS)


def test_catalog_key_selection():
    line = CuspLine.of(2)
    assert [c.key for c in catalog(line, ["0,1,2"])] == ["0,1,2"]
    assert catalog(line, ["0,1"]) == []
    with pytest.raises(ConfigError):
        catalog(line, ["no-such-case"])


@pytest.mark.parametrize("alpha, key", ALL_CASES)
def test_case_structure(alpha, key):
    line = CuspLine.of(alpha)
    (case,) = catalog(line, [key])
    assert case.expected_count == len(case.labels()) == COUNTS[key]
    assert len(set(case.labels())) == len(case.labels())
    assert is_critical(case.exponents, line)
    support = tuple(sorted(abs(x) for x in case.exponents))
    for sq in case.subquotients:
        sq.datum.validate(line)
        assert sq.datum.support() == support, sq.label
        if sq.dual_partner is not None:
            assert case.get(sq.dual_partner).dual_partner == sq.label
        if sq.recipe.kind == RecipeKind.DUAL:
            assert case.get(sq.recipe.partner).recipe.kind != RecipeKind.DUAL


def test_case_lookup_and_json():
    (case,) = catalog(CuspLine.of(2), ["a-1,a"])
    assert case.get("π4").datum == datum([Segment.of(1, 2)])
    with pytest.raises(ConfigError):
        case.get("π9")
    out = case.to_json()
    assert out["case"] == "a-1,a"
    assert [sq["label"] for sq in out["subquotients"]] == ["π1", "π2", "π3", "π4"]


@pytest.mark.parametrize("alpha, key", ALL_CASES)
def test_catalog_cases_verify(base_at, alpha, key):
    base = base_at(alpha)
    (case,) = catalog(base.main_line, [key])
    report = verify_case(case, base)
    failures = [r.to_json() for r in report.labels if not r.ok]
    assert not failures
    assert all(d["ok"] for d in report.dualities)
    assert report.passed
    assert report.to_json()["pass"] is True


def test_recursion_labels_carry_certificates(base_at):
    base = base_at("5/2")
    (case,) = catalog(base.main_line, ["a-1,a"])
    report = verify_case(case, base)
    first = report.labels[0]
    assert first.status == LabelStatus.PASS
    assert first.infinitesimal_ok
    assert first.certificates > 0 and len(first.digest) == 16
    assert verify_case(case, base).labels[0].digest == first.digest


def test_verify_case_needs_matching_alpha(base_at):
    (case,) = catalog(CuspLine.of(2), ["a-1,a"])
    with pytest.raises(ConfigError):
        verify_case(case, base_at("3"))


def test_apply_op_flip_and_raise(base_at):
    line = CuspLine.of("5/2")
    pp = base_pair(base_at("5/2"))
    assert apply_op(pp, flip(4), line) == parse_blocks("(1,4)+,(2,1)-")
    assert apply_op(pp, flip(1), line) == pp
    assert apply_op(pp, rise(4), line) == parse_blocks("(6,1)+,(2,1)-")
    assert apply_op(apply_op(pp, rise(4), line), rise(2), line) == parse_blocks("(6,1)+,(4,1)-")
    assert apply_op(apply_op(pp, flip(4), line), rise(4), line) == parse_blocks("(1,6)+,(2,1)-")
    with pytest.raises(PreconditionViolation):
        apply_op(pp, flip(6), line)
    with pytest.raises(PreconditionViolation):
        apply_op(pp, rise(3), line)
    with pytest.raises(PreconditionViolation):
        apply_op(pp, rise(2), line)


def test_raise_from_nothing_creates_a_size_two_block(base_at):
    line = CuspLine.of("1/2")
    pp = base_pair(base_at("1/2"))
    assert apply_op(pp, rise(0), line) == parse_blocks("(2,1)+")
    assert apply_op(pp, rise(0, col=True), line) == parse_blocks("(1,2)+")


def test_apply_op_add_drop_swap(base_at):
    line = CuspLine.of("5/2")
    pp = base_pair(base_at("5/2"))
    doubled = apply_op(pp, add(2, 1), line)
    assert [v for b, v in doubled.signed_blocks() if b.c == 2] == [-1, -1]
    assert apply_op(pp, add(1, 1, -1), line) == parse_blocks("(1,1)-,(2,1)-,(4,1)+")
    assert apply_op(pp, drop(2, 1), line) == parse_blocks("(4,1)+")
    assert apply_op(pp, SWAP, line) == parse_blocks("(1,4)+,(1,2)-")
    with pytest.raises(PreconditionViolation):
        apply_op(pp, drop(1, 1), line)
    with pytest.raises(ConfigError):
        apply_op(pp, Op("bogus"), line)


def test_build_pair_checks_expectations(base_at):
    base = base_at("5/2")
    built = build_pair([rise(4), expect(tempered(GenSteinberg(p("5/2"))))], base)
    assert built.pp == parse_blocks("(6,1)+,(2,1)-")
    assert built.expects_ok
    assert len(built.traces) == 1
    wrong = build_pair([rise(4), expect(SIGMA)], base)
    assert not wrong.expects_ok


@pytest.mark.parametrize("alpha, xs", [("1", ["0"]), ("2", ["1", "0"]), ("3", ["2", "1", "0"]), ("5/2", ["3/2", "1/2"])])
def test_appendix_points(alpha, xs):
    assert appendix_points(CuspLine.of(alpha)) == [hi(x) for x in xs]


@pytest.mark.parametrize("alpha, x", [("2", "1"), ("3", "1"), ("3", "2")])
def test_appendix_descent(base_at, alpha, x):
    result = appendix_lemma(hi(x), base_at(alpha))
    assert result.equal, result.to_json()
    assert result.expected == str(datum([p(x)]))
    assert result.detail["route"] == "descent"


@pytest.mark.parametrize("alpha", ["1", "2"])
def test_appendix_at_zero_is_tempered(base_at, alpha):
    result = appendix_lemma(hi(0), base_at(alpha))
    assert result.equal
    assert result.detail["route"] == "tempered"
    assert result.expected == "[0]⋊σ"


@pytest.mark.parametrize("alpha, x", [("1/2", "0"), ("2", "1/2"), ("2", "2"), ("2", "-1"), ("3", "3")])
def test_appendix_preconditions(base_at, alpha, x):
    with pytest.raises(PreconditionViolation):
        appendix_lemma(hi(x), base_at(alpha))


def test_primitive_candidates(base_at):
    base = base_at("2")
    assert is_primitive_candidate(SIGMA, base) == Primitive.YES
    assert is_primitive_candidate(datum([p(1)]), base) == Primitive.YES
    assert is_primitive_candidate(tempered(GenSteinberg(p(2))), base) == Primitive.YES
    assert is_primitive_candidate(tempered(UnitaryInduced(hi(0), Cusp())), base) == Primitive.NO
    assert is_primitive_candidate(datum([p(1), p(2)]), base) == Primitive.YES
    assert is_primitive_candidate(datum([p(1)], UnitaryInduced(hi(0), Cusp())), base) == Primitive.UNKNOWN
    assert is_primitive_candidate(tempered(PMZeroChain(0, 1)), base_at("0")) == Primitive.NO


def test_primitive_search_excludes_every_speh_shape(base_at):
    base = base_at("0")
    pi = datum(tr_points(1, 1), PMZeroChain(1, 1))
    assert speh_string(3, 1, base.main_line.id) == exp_string(1, 0, -1)
    assert speh_string(1, 3, base.main_line.id) == exp_string(-1, 0, 1)
    assert speh_string(2, 2, base.main_line.id) == exp_string(0, -1, 1, 0)
    assert speh_shapes(pi, base.main_line) == []
    assert is_primitive_candidate(pi, base) == Primitive.YES


@pytest.mark.parametrize("sign", [1, -1])
def test_square_of_equal_ends_is_induced(base_at, sign):
    assert is_primitive_candidate(tempered(PMSquare(hi(1), hi(1), sign)), base_at("1")) == Primitive.NO


def test_primitive_needs_the_packet_infinitesimal_character(base_at):
    base = base_at("2")
    assert is_primitive_candidate(SIGMA, base, base_pair(base)) == Primitive.YES
    assert is_primitive_candidate(datum([p(1)]), base, base_pair(base)) == Primitive.UNKNOWN


@pytest.mark.parametrize(
    "alpha, temp, dims",
    [
        ("1", TauPM(1, 2), (1, 1, 5)),
        ("1", GenSteinberg(p(1)), (3,)),
        ("5/2", StronglyPositive((p("3/2"), p("5/2"))), (4, 6)),
        ("2", UnitaryInduced(hi(0), Cusp()), (1, 1, 1, 3)),
        ("1/2", PMSquare(hi("1/2"), hi("3/2"), 1), (2, 4)),
        ("0", PMZeroChain(2, -1), (1, 5)),
    ],
)
def test_tempered_lparam(base_at, alpha, temp, dims):
    assert tempered_lparam(temp, base_at(alpha)) == dims


def test_l_packet_membership(base_at):
    base = base_at("1")
    pp = parse_blocks("(1,3)+,(2,2)+")
    assert lparam_of_pair(pp, base.main_line) == ((Segment.of(0, 1), Segment.of(1)), (1,))
    member, detail = in_l_packet(datum([Segment.of(0, 1), p(1)]), pp, base)
    assert member
    assert detail["phi_tempered"] == [1]
    assert not in_l_packet(datum([Segment.of(0, 1)], GenSteinberg(p(1))), pp, base)[0]


def test_l_packet_labels_are_checked(base_at):
    base = base_at("1")
    (case,) = catalog(base.main_line, ["0,1,1@1"])
    report = verify_case(case, base)
    l_labels = [r for r in report.labels if r.recipe == RecipeKind.L_PACKET.value]
    assert [r.label for r in l_labels] == ["π1", "π3"]
    assert all(r.status == LabelStatus.PASS and r.detail["route"] == "l-packet" for r in l_labels)


def test_every_duality_pair_is_computed(base_at):
    base = base_at("1")
    (case,) = catalog(base.main_line, ["0,1,1@1"])
    routes = {tuple(d["pair"]): d["route"] for d in verify_case(case, base).dualities}
    assert routes == {
        ("π1", "π3"): "jacquet strings",
        ("π2", "π5+"): "jacquet strings",
        ("π4+", "π4+"): "family diagonal duality",
        ("π4-", "π5-"): "family diagonal duality",
    }
    swap = verify_case(*catalog(CuspLine.of("5/2"), ["a-1,a"]), base_at("5/2")).dualities
    assert {d["route"] for d in swap} == {"parameter swap"}
    assert all(d["ok"] for d in swap)


def test_string_capacity(base_at):
    base = base_at("1")
    (case,) = catalog(base.main_line, ["0,1,1@1"])
    fits, detail = string_capacity(case, base)
    assert fits and detail["distinct"]
    assert all(len(row["labels"]) <= row["multiplicity"] for row in detail["heads"])
    steinberg = tempered(GenSteinberg(p(1)))
    doubled = CriticalCase(
        "x", "x", (hi(1),), hi(1), (Subquotient("a", steinberg, TEMPERED), Subquotient("b", steinberg, TEMPERED)), 2
    )
    fits, detail = string_capacity(doubled, base)
    assert not fits
    assert detail["heads"] == [{"head": "(1)", "labels": ["a", "b"], "multiplicity": 1}]
