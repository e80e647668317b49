import pytest
from hypothesis import given, strategies as st

from packetforge.arthur import parse_blocks
from packetforge.classical import SIGMA, GenSteinberg, PMZeroChain, datum, tempered, tr_points
from packetforge.core import CuspLine, Segment, hi
from packetforge.errors import ConfigError
from packetforge.families import (
    CaseKind,
    FamilyCase,
    check_diagonal_duality,
    check_duality_case,
    check_family_case,
    corollary_endpoints,
    default_grid,
    dual_case,
    family_cases,
    family_datum,
    family_packet,
    generic_sign,
    kind_for,
    resolve_one,
    route_for,
    verify_family,
)

grid = st.integers(min_value=1, max_value=6)


@st.composite
def cases(draw):
    kind = draw(st.sampled_from(list(CaseKind)))
    m, n = draw(grid), draw(grid)
    sign = draw(st.sampled_from((1, -1)))
    tau = kind == CaseKind.RED1 and sign == -1 and draw(st.booleans())
    return FamilyCase(kind, m, n, sign, tau)


@given(cases())
def test_dual_case_is_an_involution(case):
    assert dual_case(dual_case(case)) == case
    assert {dual_case(case).m, dual_case(case).n} == {case.m, case.n}


def test_closed_forms():
    line = CuspLine.of(2)
    expected = datum([Segment.of(1), Segment.of(2)], GenSteinberg(Segment.of(2)))
    assert family_datum(FamilyCase(CaseKind.RED_GT1, 0, 0), line) == expected
    assert family_datum(FamilyCase(CaseKind.RED_GT1, -2, -1), line) == SIGMA
    assert family_datum(FamilyCase(CaseKind.RED_GT1, -1, 0), line) == datum([Segment.of(1)], GenSteinberg(Segment.of(2)))
    zero = family_datum(FamilyCase(CaseKind.RED0, 2, 1, -1), CuspLine.of(0))
    assert zero == datum(tr_points(1, 2), PMZeroChain(1, -1))


def test_case_labels():
    assert FamilyCase(CaseKind.RED_GT1, 0, 1).label() == "π_{0,1}"
    assert FamilyCase(CaseKind.RED1, 1, 2, -1, tau=True).label() == "τ^−_{1,2}"
    assert FamilyCase(CaseKind.RED_HALF, 2, 1, 1).to_json()["case"] == "RedHalf"


@pytest.mark.parametrize(
    "case, alpha",
    [
        (FamilyCase(CaseKind.RED_GT1, 0, 0), "1"),
        (FamilyCase(CaseKind.RED_GT1, -3, 0), "2"),
        (FamilyCase(CaseKind.RED_GT1, 0, -2), "2"),
        (FamilyCase(CaseKind.RED0, 0, 0), "1"),
        (FamilyCase(CaseKind.RED_HALF, 0, 1), "1/2"),
        (FamilyCase(CaseKind.RED1, 1, 1, 2), "1"),
        (FamilyCase(CaseKind.RED1, 1, 2, 1, tau=True), "1"),
    ],
)
def test_case_validation(case, alpha):
    with pytest.raises(ConfigError):
        case.validate(CuspLine.of(alpha))


def test_routes():
    assert route_for(FamilyCase(CaseKind.RED_GT1, 1, 1)) is None
    assert route_for(FamilyCase(CaseKind.RED_GT1, 0, 1)) == "eps"
    assert route_for(FamilyCase(CaseKind.RED_GT1, 1, 0)) == "eps'"
    assert route_for(FamilyCase(CaseKind.RED0, 0, 1, 1)) == "+"
    assert route_for(FamilyCase(CaseKind.RED0, 1, 0, 1)) == "-"


def test_generic_sign_setting(restore_settings):
    assert generic_sign() == 1
    restore_settings.ZERO_CHAIN_GENERIC_SIGN = 0
    with pytest.raises(ConfigError):
        generic_sign()


def test_family_packet_above_one(base_at):
    base = base_at("3/2")
    pp = family_packet(FamilyCase(CaseKind.RED_GT1, 0, 1), base, "eps")
    assert pp == parse_blocks("(1,4)+,(6,1)-")
    with pytest.raises(ConfigError):
        family_packet(FamilyCase(CaseKind.RED_GT1, 0, 1), base, "+")


def test_recursion_reaches_the_closed_form(base_at):
    result = check_family_case(FamilyCase(CaseKind.RED_GT1, 0, 1), base_at("3/2"))
    assert result.equal, result.to_json()
    assert result.detail["route"] == "recursion"
    assert result.got == str(datum(tr_points("1/2", "3/2"), GenSteinberg(Segment.of("3/2", "5/2"))))


@pytest.mark.parametrize("sign", [1, -1])
def test_zero_chain_boundary(base_at, sign):
    result = check_family_case(FamilyCase(CaseKind.RED0, 0, 1, sign), base_at("0"))
    assert result.equal
    assert result.got == str(tempered(PMZeroChain(1, sign)))


@pytest.mark.parametrize(
    "alpha, values, expected_len",
    [("0", [0, 1], 8), ("1/2", [1, 2], 8), ("1", [1, 2], 12), ("3/2", [0, 1], 4), ("5/2", [0, 1], 4)],
)
def test_small_grid_agrees(base_at, alpha, values, expected_len):
    base = base_at(alpha)
    results = verify_family(base, values, values)
    assert len(results) == expected_len
    failures = [r.to_json() for r in results if not r.equal]
    assert not failures


def test_errors_become_failed_checks(base_at):
    result = check_family_case(FamilyCase(CaseKind.RED0, 0, 1), base_at("2"))
    assert not result.equal
    assert result.got == "error"
    assert result.detail["error"]["error"] == "ConfigError"
    diagonal = check_duality_case(FamilyCase(CaseKind.RED_GT1, 1, 1), base_at("2"))
    assert not diagonal.equal


def test_grid_helpers():
    assert kind_for(CuspLine.of(0)) == CaseKind.RED0
    assert kind_for(CuspLine.of("1/2")) == CaseKind.RED_HALF
    assert kind_for(CuspLine.of(1)) == CaseKind.RED1
    assert kind_for(CuspLine.of("5/2")) == CaseKind.RED_GT1
    assert default_grid(CaseKind.RED1, 2) == ([1, 2, 3], [1, 2, 3])
    assert default_grid(CaseKind.RED_GT1, 1) == ([0, 1], [0, 1])
    assert len(family_cases(CaseKind.RED1, [1], [2])) == 3
    assert len(family_cases(CaseKind.RED_GT1, [0, 1], [0, 1])) == 4


def test_endpoints_need_alpha_above_one(base_at):
    with pytest.raises(ConfigError):
        corollary_endpoints(base_at("1"), [0])


def test_minus_diagonal_descends_to_the_closed_form(base_at):
    half = check_family_case(FamilyCase(CaseKind.RED_HALF, 2, 2, -1), base_at("1/2"))
    assert half.equal, half.to_json()
    assert half.detail["route"] == "descent"
    tau = check_family_case(FamilyCase(CaseKind.RED1, 2, 2, -1, tau=True), base_at("1"))
    assert tau.equal, tau.to_json()


def test_large_boundary_pairs_reduce_past_the_boundary(base_at):
    base = base_at("1")
    case = FamilyCase(CaseKind.RED1, 1, 3, -1)
    assert resolve_one(family_packet(case, base, route_for(case)), base) is None
    result = check_family_case(case, base)
    assert result.equal, result.to_json()
    trace = result.detail["trace"]
    assert "bypass" in [step["kind"] for step in trace["steps"]]
    assert trace["base"]["provenance"] == "boundary base: π^−_{1,2}"


@pytest.mark.parametrize(
    "alpha, case",
    [
        ("1", FamilyCase(CaseKind.RED1, 1, 1, 1)),
        ("1", FamilyCase(CaseKind.RED1, 1, 1, -1)),
        ("0", FamilyCase(CaseKind.RED0, 1, 1, 1)),
    ],
)
def test_diagonal_duality(base_at, alpha, case):
    result = check_diagonal_duality(case, base_at(alpha))
    assert result.equal, result.to_json()
    assert result.detail["route"] == "dual descent"
    off = check_diagonal_duality(FamilyCase(CaseKind.RED1, 1, 2, 1), base_at("1"))
    assert not off.equal
