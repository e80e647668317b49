import pytest
from hypothesis import given, strategies as st

from packetforge.arthur import (
    AParam,
    BlockOrder,
    EpsChar,
    JordanBlock,
    PacketPair,
    aubert_param,
    b_a_invariants,
    base_pair,
    bypass_step,
    check_eps_product,
    default_base,
    deform,
    dominate_descend,
    dual_of_elementary_ddr,
    is_ddr,
    make_base,
    moeglin_rep,
    parse_blocks,
    reduce_step,
)
from packetforge.classical import SIGMA, GenSteinberg, tempered
from packetforge.core import CuspLine, Segment, hi
from packetforge.errors import BoundaryCase, ConfigError, ParityMismatch, PreconditionViolation, UnsupportedShift

sizes = st.integers(min_value=1, max_value=9)


def blk(a, b, zeta=1):
    return JordanBlock.of(a, b, zeta=zeta)


@given(sizes, sizes)
def test_diagonal_sums_to_the_dimension(a, b):
    assert sum(blk(a, b).diagonal()) == a * b


@given(sizes, sizes, st.sampled_from((1, -1)))
def test_swapping_is_an_involution(a, b, zeta):
    block = blk(a, b, zeta)
    assert block.swapped().swapped() == block
    assert JordanBlock.from_abz(block.A, block.B, block.zeta) == block


def test_block_invariants():
    b = blk(6, 1)
    assert (b.A, b.B, b.zeta, b.c, b.delta) == (hi("5/2"), hi("5/2"), 1, 6, 1)
    assert blk(1, 2).delta == -1
    assert blk(2, 2).zeta == 1 and blk(2, 2, -1).zeta == -1
    with pytest.raises(ConfigError):
        blk(0, 1)


def test_parse_blocks():
    pp = parse_blocks("(6,1)+,(1,2)-")
    assert pp.signed_blocks() == [(blk(1, 2), -1), (blk(6, 1), 1)]
    assert parse_blocks("(6,1),(1,2)", eps=[1, -1]) == pp
    assert parse_blocks("(6,1)−, (1,2)+") != pp
    assert parse_blocks("(3,1)+@tau").psi.on_line("tau") == (JordanBlock("tau", 3, 1),)
    assert str(pp) == "{(1,2)−,(6,1)+}"


@pytest.mark.parametrize("text, eps", [("(6,1)+ junk", None), ("(6,1)", None), ("(6,1),(1,2)", [1])])
def test_parse_blocks_rejects_malformed_input(text, eps):
    with pytest.raises(ConfigError):
        parse_blocks(text, eps=eps)


def test_eps_must_agree_on_equal_blocks():
    with pytest.raises(ConfigError):
        EpsChar(((blk(1, 1), 1), (blk(1, 1), -1)))
    pp = PacketPair.of([(blk(1, 1), -1), (blk(1, 1), -1)])
    assert len(pp.psi.blocks) == 2
    assert pp.eps_product("rho") == 1


def test_eps_must_cover_the_parameter():
    with pytest.raises(ConfigError):
        PacketPair(AParam.of(blk(3, 1)), EpsChar(((blk(1, 1), 1),)))


@pytest.mark.parametrize(
    "alpha, xi, expected",
    [
        ("5/2", 1, [(blk(2, 1), -1), (blk(4, 1), 1)]),
        ("2", 1, [(blk(1, 1), -1), (blk(3, 1), 1)]),
        ("1", 1, [(blk(1, 1), 1)]),
        ("1", -1, [(blk(1, 1), -1)]),
        ("3/2", 1, [(blk(2, 1), -1)]),
        ("1/2", 1, []),
        ("0", 1, []),
    ],
)
def test_default_base(alpha, xi, expected):
    assert base_pair(default_base(hi(alpha), xi)).signed_blocks() == expected


def test_make_base_rejects_non_cuspidal_characters():
    with pytest.raises(ConfigError):
        make_base([CuspLine.of("5/2")], [(blk(4, 1), 1), (blk(2, 1), 1)])
    with pytest.raises(ParityMismatch):
        make_base([CuspLine.of(2)], [(blk(2, 1), -1)])


def test_cuspidal_chain_invariants(base_at):
    assert b_a_invariants(base_pair(base_at("2")), CuspLine.of(2)) == (3, None, False)
    assert b_a_invariants(parse_blocks("(6,1)+,(1,2)-"), CuspLine.of("5/2")) == (2, 6, False)
    assert b_a_invariants(parse_blocks("(1,2)-,(4,1)-"), CuspLine.of("5/2")) == (2, 4, True)
    with pytest.raises(PreconditionViolation):
        b_a_invariants(parse_blocks("(3,1)+,(1,3)+"), CuspLine.of(2))


def test_reduce_step_lowers_the_first_block_above_the_chain():
    x, after, move = reduce_step(parse_blocks("(6,1)+,(1,2)-"), CuspLine.of("5/2"))
    assert x == hi("5/2")
    assert after == parse_blocks("(4,1)+,(1,2)-")
    assert move.kind == "reduce"


def test_packet_of_a_raised_base_block(base_at):
    trace = moeglin_rep(parse_blocks("(6,1)+,(1,2)-"), base_at("5/2"))
    assert trace.result == tempered(GenSteinberg(Segment.of("5/2")))
    assert str(trace.result) == "δ([5/2];σ)"
    assert trace.exponents == (hi("5/2"),)
    assert len(trace.certificates) == 1 and not trace.uncertified
    assert trace.base_kind == "sigma"
    assert trace.to_json()["result"] == "δ([5/2];σ)"


def test_base_pair_represents_sigma(base_at):
    base = base_at("5/2")
    trace = moeglin_rep(base_pair(base), base)
    assert trace.result == SIGMA
    assert trace.steps == ()


def test_eps_product_mismatch(base_at, restore_settings):
    base = base_at("5/2")
    bad = parse_blocks("(6,1)+,(1,2)+")
    with pytest.raises(ConfigError):
        moeglin_rep(bad, base)
    assert check_eps_product(bad, base, override=True)
    restore_settings.EPS_PRODUCT_OVERRIDE = True
    assert check_eps_product(bad, base)
    assert not check_eps_product(parse_blocks("(6,1)+,(1,2)-"), base)


def test_moeglin_rep_preconditions(base_at):
    with pytest.raises(PreconditionViolation):
        moeglin_rep(parse_blocks("(2,2)+"), base_at("1/2"))
    with pytest.raises(ParityMismatch):
        moeglin_rep(parse_blocks("(2,1)+"), base_at("2"))


def test_deform():
    pp = parse_blocks("(6,1)+,(1,2)-")
    assert deform(pp, blk(6, 1), blk(8, 1)) == parse_blocks("(8,1)+,(1,2)-")
    assert deform(pp, blk(1, 2), None) == parse_blocks("(6,1)+")
    with pytest.raises(ParityMismatch):
        deform(pp, blk(6, 1), blk(5, 1))
    with pytest.raises(PreconditionViolation):
        deform(pp, blk(4, 1), blk(2, 1))
    with pytest.raises(PreconditionViolation):
        deform(parse_blocks("(4,1)+,(2,1)-"), blk(4, 1), blk(2, 1))


def test_aubert_param_is_an_involution():
    pp = parse_blocks("(6,1)+,(1,2)-,(2,2)+")
    assert aubert_param(pp) == PacketPair.of([(blk(1, 6), 1), (blk(2, 1), -1), (blk(2, 2, -1), 1)])
    assert aubert_param(aubert_param(pp)) == pp


def test_dual_needs_an_elementary_ddr_parameter(base_at):
    with pytest.raises(PreconditionViolation):
        dual_of_elementary_ddr(parse_blocks("(3,1)+,(1,3)-"), base_at("2"))
    assert not is_ddr(parse_blocks("(3,1)+,(1,3)-").psi)


def test_block_orders():
    psi = parse_blocks("(6,1)+,(1,2)-,(4,1)+").psi
    natural = BlockOrder.natural(psi)
    assert natural.blocks == (blk(6, 1), blk(4, 1), blk(1, 2))
    assert natural.is_admissible()
    assert not BlockOrder((blk(2, 1), blk(4, 1))).is_admissible()


def test_dominate_descend_checks_its_order(base_at):
    base = base_at("5/2")
    pp = parse_blocks("(6,1)+,(1,2)-")
    order = BlockOrder((blk(4, 1), blk(1, 2)))
    with pytest.raises(ConfigError):
        dominate_descend(pp, order, AParam.of(blk(6, 1), blk(1, 2)), SIGMA, base)


def test_dominate_descend_rejects_non_elementary_shifts(base_at):
    pp_high = PacketPair.of([(blk(4, 2), 1), (blk(1, 1), 1)])
    order = BlockOrder((blk(2, 2), blk(1, 1)))
    with pytest.raises(UnsupportedShift):
        dominate_descend(pp_high, order, AParam(order.blocks), SIGMA, base_at("1"))


def test_bypass_step_lowers_a_block_above_the_boundary():
    line = CuspLine.of("5/2")
    pp = parse_blocks("(1,2)-,(4,1)-,(8,1)+")
    with pytest.raises(BoundaryCase):
        reduce_step(pp, line)
    x, after, move = bypass_step(pp, line)
    assert x == hi("7/2")
    assert after == parse_blocks("(1,2)-,(4,1)-,(6,1)+")
    assert move.kind == "bypass"
    with pytest.raises(PreconditionViolation):
        bypass_step(parse_blocks("(6,1)+,(1,2)-"), line)


def test_boundary_without_a_movable_block(base_at):
    with pytest.raises(BoundaryCase):
        moeglin_rep(parse_blocks("(1,2)-,(4,1)-,(6,1)-"), base_at("5/2"))
