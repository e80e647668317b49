# File: packetforge/packetforge/critical.py
# This file defines the critical-type predicate, the catalog of unitarizable subquotients
# at critical points of corank two and three with the parameter recipe for each one,
# the catalog verifier, the complementary-series descent lemma and the primitive
# representation predicate.

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence, Tuple
import hashlib
import json
import logging

from packetforge.arthur import (
    AParam,
    BlockOrder,
    BoundaryRegistry,
    JordanBlock,
    PacketPair,
    ReductionTrace,
    aubert_param,
    base_pair,
    deform,
    dominate_descend,
    dual_of_elementary_ddr,
    moeglin_rep,
)
from packetforge.classical import (
    SIGMA,
    BaseCusp,
    Cusp,
    GenSteinberg,
    InducedExpr,
    LanglandsDatum,
    PMSquare,
    PMZeroChain,
    StronglyPositive,
    TauPM,
    TemperedSymbol,
    UnitaryInduced,
    datum,
    strongly_positive,
    tempered,
)
from packetforge.core import (
    CuspLine,
    ExpString,
    FormalSum,
    GLGen,
    HalfInt,
    Letter,
    Segment,
    hi,
    render_string,
    word_canon,
)
from packetforge.errors import ConfigError, PacketForgeError, PreconditionViolation
from packetforge.families import (
    CaseKind,
    CheckResult,
    FamilyCase,
    check_diagonal_duality,
    check_duality_case,
    check_family_case,
    dual_case,
    family_datum,
    family_registry,
)
from packetforge.gl_hopf import count_string
from packetforge.socle import Undecidable, has_prefix, standard_envelope

# Configure logging
logger = logging.getLogger(__name__)


def is_critical(exps: Iterable[HalfInt], line: CuspLine) -> bool:
    """ν^{x_1}ρ × ... × ν^{x_k}ρ ⋊ σ is of critical type.

    The distinct exponents must form a ℤ-segment containing α; repeats are allowed.
    """
    values = sorted({hi(x) for x in exps})
    if not values:
        return False
    for lo, up in zip(values, values[1:]):
        if up.twice - lo.twice != 2:
            return False
    return line.alpha in values


# Recipes


class RecipeKind(str, Enum):
    RECURSION = "recursion"
    DUAL = "dual"
    DESCENT = "descent"
    FAMILY = "family"
    L_PACKET = "l-packet"
    EXTERNAL = "external-result"
    TEMPERED = "tempered"
    COTEMPERED = "cotempered"


@dataclass(frozen=True)
class Op:
    """One move on (ψ, ε) for the main line.

    flip: (c,1) → (1,c); raise: c → c+2 keeping the shape, creating (2,1) or (1,2)
    with ε = +1 when c = 0; add / drop: one block (a,b); swap: (a,b) → (b,a) everywhere;
    expect: the Mœglin representation of the current pair must be `expect`.
    """
    name: str
    c: int = 0
    col: bool = False
    a: int = 0
    b: int = 0
    sign: int = 1
    expect: Optional[LanglandsDatum] = None

    def __str__(self) -> str:
        if self.name in ("flip", "raise"):
            shape = "(1,c)" if self.col else "(c,1)"
            return f"{self.name} c={self.c}" + (f" {shape}" if self.name == "raise" else "")
        if self.name in ("add", "drop"):
            return f"{self.name} ({self.a},{self.b}){'+' if self.sign > 0 else '−'}"
        if self.name == "expect":
            return f"expect {self.expect}"
        return self.name


def flip(c: int) -> Op:
    return Op("flip", c=c)


def rise(c: int, col: bool = False) -> Op:
    return Op("raise", c=c, col=col)


def add(a: int, b: int, sign: int = 1) -> Op:
    return Op("add", a=a, b=b, sign=sign)


def drop(a: int, b: int) -> Op:
    return Op("drop", a=a, b=b)


SWAP = Op("swap")


def expect(d: LanglandsDatum) -> Op:
    return Op("expect", expect=d)


@dataclass(frozen=True)
class Recipe:
    """How a catalog member is reached: a parameter construction plus a route."""
    kind: RecipeKind
    ops: Tuple[Op, ...] = ()
    partner: Optional[str] = None
    family: Optional[FamilyCase] = None
    order: Tuple[Tuple[int, int], ...] = ()
    note: str = ""

    def to_json(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {"kind": self.kind.value, "ops": [str(op) for op in self.ops]}
        if self.partner:
            out["partner"] = self.partner
        if self.family is not None:
            out["family"] = self.family.to_json()
        if self.order:
            out["order"] = [f"({a},{b})" for a, b in self.order]
        if self.note:
            out["note"] = self.note
        return out


@dataclass(frozen=True)
class Subquotient:
    label: str
    datum: LanglandsDatum
    recipe: Recipe
    dual_partner: Optional[str] = None


@dataclass(frozen=True)
class CriticalCase:
    """A critical exponent multiset with the unitarizable subquotients of its induced representation."""
    key: str
    name: str
    exponents: Tuple[HalfInt, ...]
    alpha: HalfInt
    subquotients: Tuple[Subquotient, ...]
    expected_count: int

    def labels(self) -> Tuple[str, ...]:
        return tuple(sq.label for sq in self.subquotients)

    def get(self, label: str) -> Subquotient:
        for sq in self.subquotients:
            if sq.label == label:
                return sq
        raise ConfigError(f"Case {self.key} has no subquotient {label!r}")

    def to_json(self) -> Dict[str, Any]:
        return {
            "case": self.key,
            "name": self.name,
            "alpha": str(self.alpha),
            "exponents": [str(x) for x in self.exponents],
            "subquotients": [
                {"label": sq.label, "datum": str(sq.datum), "recipe": sq.recipe.to_json(), "dual": sq.dual_partner}
                for sq in self.subquotients
            ],
        }


def _pairs(*pairs: Tuple[str, str]) -> Dict[str, str]:
    out: Dict[str, str] = {}
    for a, b in pairs:
        out[a] = b
        out[b] = a
    return out


def _case(
    key: str,
    name: str,
    line: CuspLine,
    exps: Sequence[HalfInt],
    rows: Sequence[Tuple[str, LanglandsDatum, Recipe]],
    duals: Dict[str, str],
    expected_count: int,
) -> CriticalCase:
    subs = tuple(Subquotient(label, d, recipe, duals.get(label)) for label, d, recipe in rows)
    return CriticalCase(key, name, tuple(sorted(hi(x) for x in exps)), line.alpha, subs, expected_count)


def _rec(*ops: Op, note: str = "") -> Recipe:
    return Recipe(RecipeKind.RECURSION, tuple(ops), note=note)


def _dual(partner: str) -> Recipe:
    return Recipe(RecipeKind.DUAL, partner=partner)


def _fam(case: FamilyCase) -> Recipe:
    return Recipe(RecipeKind.FAMILY, family=case)


def _lpacket(*ops: Op) -> Recipe:
    return Recipe(RecipeKind.L_PACKET, tuple(ops), note="L-packet inside the A-packet")


def _external(*ops: Op, note: str) -> Recipe:
    return Recipe(RecipeKind.EXTERNAL, tuple(ops), note=note)


TEMPERED = Recipe(RecipeKind.TEMPERED, note="tempered: in the packet of its L-parameter")
COTEMPERED = Recipe(RecipeKind.COTEMPERED, note="Aubert dual of a tempered member")


# Catalog


def _alpha_minus_one_alpha(line: CuspLine) -> CriticalCase:
    a, t, lid = line.alpha, line.alpha.twice, line.id
    p = lambda x: Segment.of(x, x, lid)
    rows = [
        ("π1", tempered(strongly_positive([p(a - 1), p(a)])), _rec(rise(t - 1), rise(t - 3))),
        ("π2", datum([p(a - 1)], GenSteinberg(p(a))), _rec(flip(t - 3), rise(t - 1), rise(t - 3, col=True))),
        ("π3", datum([p(a - 1), p(a)]), _dual("π2")),
        ("π4", datum([Segment.of(a - 1, a, lid)]), _dual("π1")),
    ]
    return _case("a-1,a", "(α−1,α), α>1", line, (a - 1, a), rows, _pairs(("π1", "π4"), ("π2", "π3")), 4)


def _zero_one(line: CuspLine) -> CriticalCase:
    lid = line.id
    rows = [
        ("π1+", family_datum(FamilyCase(CaseKind.RED0, 0, 1, 1), line), _fam(FamilyCase(CaseKind.RED0, 0, 1, 1))),
        ("π1-", family_datum(FamilyCase(CaseKind.RED0, 0, 1, -1), line), _fam(FamilyCase(CaseKind.RED0, 0, 1, -1))),
        ("π2", datum([Segment.of(0, 1, lid)]), _lpacket(add(2, 2))),
        ("π3+", family_datum(FamilyCase(CaseKind.RED0, 1, 0, 1), line), _fam(FamilyCase(CaseKind.RED0, 1, 0, 1))),
        ("π3-", family_datum(FamilyCase(CaseKind.RED0, 1, 0, -1), line), _fam(FamilyCase(CaseKind.RED0, 1, 0, -1))),
    ]
    duals = {**_pairs(("π1+", "π3-"), ("π1-", "π3+")), "π2": "π2"}
    return _case("0,1", "(0,1), α=0", line, (hi(0), hi(1)), rows, duals, 5)


def _alpha_minus_one_to_plus_one(line: CuspLine) -> CriticalCase:
    a, t, lid = line.alpha, line.alpha.twice, line.id
    p = lambda x: Segment.of(x, x, lid)
    rows = [
        ("π1", tempered(strongly_positive([p(a - 1), Segment.of(a, a + 1, lid)])), _rec(rise(t - 1), rise(t + 1), rise(t - 3))),
        ("π2", datum([p(a + 1), Segment.of(a - 1, a, lid)]), _dual("π1")),
        (
            "π3",
            datum([p(a - 1)], GenSteinberg(Segment.of(a, a + 1, lid))),
            _rec(flip(t - 3), rise(t - 1), rise(t + 1), rise(t - 3, col=True)),
        ),
        ("π4", datum([p(a + 1), p(a), p(a - 1)]), _dual("π3")),
    ]
    return _case("a-1,a,a+1", "(α−1,α,α+1), α>1", line, (a - 1, a, a + 1), rows, _pairs(("π1", "π2"), ("π3", "π4")), 4)


def _alpha_minus_one_alpha_alpha(line: CuspLine) -> CriticalCase:
    a = line.alpha
    diag = FamilyCase(CaseKind.RED_GT1, 0, 0)
    rows = [("π0", family_datum(diag, line), _fam(diag))]
    return _case("a-1,a,a", "(α−1,α,α), α>1", line, (a - 1, a, a), rows, {}, 1)


def _half_half_three_halves_at_three_halves(line: CuspLine) -> CriticalCase:
    lid = line.id
    p = lambda x: Segment.of(x, x, lid)
    half, three = hi("1/2"), hi("3/2")
    gs = GenSteinberg(p(three))
    rows = [
        ("π1", tempered(UnitaryInduced(half, gs, 1)), TEMPERED),
        ("π2", tempered(UnitaryInduced(half, gs, -1)), TEMPERED),
        ("π3", datum([p(half), Segment.of(half, three, lid)]), COTEMPERED),
        ("π4", datum([p(half), p(half), p(three)]), COTEMPERED),
        (
            "π5",
            datum([p(three)], UnitaryInduced(half, Cusp())),
            _external(flip(2), rise(2, col=True), expect(datum([p(three)])), add(2, 1), add(2, 1),
                      note="constituent of u(2,1) ⋊ L([3/2];σ)"),
        ),
        (
            "π6",
            datum([p(half), p(half)], gs),
            _external(rise(2), expect(tempered(gs)), add(1, 2), add(1, 2), note="constituent of u(1,2) ⋊ δ([3/2];σ)"),
        ),
        ("π7", datum([Segment.of(-half, three, lid)]), _lpacket(add(3, 2))),
        (
            "π8",
            datum([p(half)], strongly_positive([p(half), p(three)])),
            Recipe(
                RecipeKind.DESCENT,
                (
                    rise(2),
                    rise(4),
                    add(2, 1),
                    rise(2),
                    add(1, 2),
                    expect(datum([p(half)], strongly_positive([Segment.of(half, three, lid), Segment.of(three, hi("5/2"), lid)]))),
                ),
                order=((4, 1), (2, 1), (1, 2)),
            ),
        ),
    ]
    return _case("1/2,1/2,3/2@3/2", "(½,½,3/2), α=3/2", line, (half, half, three), rows, {}, 8)


def _alpha_minus_two_to_alpha(line: CuspLine) -> CriticalCase:
    a, t, lid = line.alpha, line.alpha.twice, line.id
    p = lambda x: Segment.of(x, x, lid)
    gs = GenSteinberg(p(a))
    rows = [
        ("π1", tempered(strongly_positive([p(a - 2), p(a - 1), p(a)])), _rec(rise(t - 1), rise(t - 3), rise(t - 5))),
        (
            "π2",
            datum([p(a - 2)], strongly_positive([p(a - 1), p(a)])),
            _rec(flip(t - 5), rise(t - 1), rise(t - 3), rise(t - 5, col=True)),
        ),
        ("π3", datum([p(a - 1), p(a - 2)], gs), _dual("π6")),
        (
            "π4",
            datum([Segment.of(a - 2, a - 1, lid)], gs),
            _rec(flip(t - 5), flip(t - 3), rise(t - 1), rise(t - 3, col=True), rise(t - 5, col=True)),
        ),
        ("π5", datum([p(a), p(a - 1), p(a - 2)]), _dual("π4")),
        (
            "π6",
            datum([p(a), Segment.of(a - 2, a - 1, lid)]),
            _rec(flip(t - 3), rise(t - 1), rise(t - 3, col=True), SWAP, rise(t - 5, col=True)),
        ),
        ("π7", datum([Segment.of(a - 1, a, lid), p(a - 2)]), _dual("π2")),
        ("π8", datum([Segment.of(a - 2, a, lid)]), _dual("π1")),
    ]
    duals = _pairs(("π1", "π8"), ("π2", "π7"), ("π3", "π6"), ("π4", "π5"))
    return _case("a-2,a-1,a", "(α−2,α−1,α), α>2", line, (a - 2, a - 1, a), rows, duals, 8)


def _zero_one_two(line: CuspLine) -> CriticalCase:
    lid = line.id
    p = lambda x: Segment.of(x, x, lid)
    zero = UnitaryInduced(hi(0), Cusp())
    member = (flip(1), rise(3), rise(1, col=True), expect(datum([p(1)], GenSteinberg(p(2)))), add(1, 1), add(1, 1))
    cotemp = (flip(1), rise(3), rise(1, col=True), SWAP, expect(datum([p(2), p(1)])), add(1, 1), add(1, 1))
    note = "constituent of u(1,1) ⋊ π0"
    rows = [
        ("π1", tempered(UnitaryInduced(hi(0), strongly_positive([p(1), p(2)]), 1)), TEMPERED),
        ("π2", tempered(UnitaryInduced(hi(0), strongly_positive([p(1), p(2)]), -1)), TEMPERED),
        ("π3", datum([Segment.of(0, 2, lid)]), COTEMPERED),
        ("π4", datum([Segment.of(1, 2, lid)], zero), COTEMPERED),
        ("π5", datum([p(1)], UnitaryInduced(hi(0), GenSteinberg(p(2)))), _external(*member, note=note)),
        ("π6", datum([p(2), Segment.of(0, 1, lid)]), _external(*cotemp, note=note)),
        ("π7", datum([Segment.of(0, 1, lid)], GenSteinberg(p(2))), _external(*member, note=note)),
        ("π8", datum([p(2), p(1)], zero), _external(*cotemp, note=note)),
    ]
    return _case("0,1,2", "(0,1,2), α=2", line, (hi(0), hi(1), hi(2)), rows, _pairs(("π5", "π6"), ("π7", "π8")), 8)


def _zero_one_one_at_one(line: CuspLine) -> CriticalCase:
    lid = line.id
    p = lambda x: Segment.of(x, x, lid)
    rows = [
        ("π1", datum([Segment.of(0, 1, lid), p(1)]), _lpacket(drop(1, 1), add(1, 3), add(2, 2))),
        ("π2", datum([p(1), p(1)], UnitaryInduced(hi(0), Cusp())), COTEMPERED),
        ("π3", datum([Segment.of(0, 1, lid)], GenSteinberg(p(1))), _lpacket(drop(1, 1), add(3, 1), add(2, 2))),
        ("π4+", datum([p(1)], TauPM(1, 1, lid)), _fam(FamilyCase(CaseKind.RED1, 1, 1, 1))),
        ("π4-", datum([p(1)], TauPM(-1, 1, lid)), _fam(FamilyCase(CaseKind.RED1, 1, 1, -1))),
        ("π5+", tempered(PMSquare(hi(1), hi(1), 1, lid)), TEMPERED),
        ("π5-", tempered(PMSquare(hi(1), hi(1), -1, lid)), _fam(FamilyCase(CaseKind.RED1, 1, 1, -1, tau=True))),
    ]
    duals = {**_pairs(("π1", "π3"), ("π4-", "π5-"), ("π5+", "π2")), "π4+": "π4+"}
    return _case("0,1,1@1", "(0,1,1), α=1", line, (hi(0), hi(1), hi(1)), rows, duals, 7)


def _half_half_three_halves_at_half(line: CuspLine) -> CriticalCase:
    lid = line.id
    p = lambda x: Segment.of(x, x, lid)
    half, three = hi("1/2"), hi("3/2")
    fam = lambda m, n, s: FamilyCase(CaseKind.RED_HALF, m, n, s)
    rows = [
        ("π1", tempered(PMSquare(half, three, 1, lid)), TEMPERED),
        ("π2", family_datum(fam(1, 2, -1), line), _fam(fam(1, 2, -1))),
        ("π3", datum([Segment.of(-half, three, lid)]), _lpacket(add(3, 2))),
        ("π4", datum([Segment.of(half, three, lid)], GenSteinberg(p(half))), _lpacket(add(2, 3))),
        ("π5", family_datum(fam(2, 1, 1), line), _fam(fam(2, 1, 1))),
        ("π6", datum([p(half), p(half), p(three)]), COTEMPERED),
        ("π7", family_datum(fam(1, 2, 1), line), _fam(fam(1, 2, 1))),
        ("π8", family_datum(fam(2, 1, -1), line), _fam(fam(2, 1, -1))),
    ]
    duals = _pairs(("π1", "π6"), ("π2", "π5"), ("π3", "π4"), ("π7", "π8"))
    return _case("1/2,1/2,3/2@1/2", "(½,½,3/2), α=½", line, (half, half, three), rows, duals, 8)


def _three_halves(line: CuspLine) -> CriticalCase:
    lid = line.id
    p = lambda x: Segment.of(x, x, lid)
    half = hi("1/2")
    gs = GenSteinberg(p(half))
    rows = [
        ("π1", tempered(UnitaryInduced(half, gs)), TEMPERED),
        ("π2", datum([p(half)], PMSquare(half, half, -1, lid)), _lpacket(add(1, 2), add(2, 1), add(2, 1))),
        ("π3", datum([p(half), p(half)], gs), _lpacket(add(2, 1), add(1, 2), add(1, 2))),
        ("π4", datum([p(half), p(half), p(half)]), COTEMPERED),
        ("π5", datum([p(half)], PMSquare(half, half, 1, lid)), _lpacket(add(1, 2), add(2, 1), add(2, 1))),
    ]
    duals = {**_pairs(("π1", "π4"), ("π2", "π3")), "π5": "π5"}
    return _case("1/2,1/2,1/2", "(½,½,½), α=½", line, (half, half, half), rows, duals, 5)


def _zero_one_one_at_zero(line: CuspLine) -> CriticalCase:
    lid = line.id
    p = lambda x: Segment.of(x, x, lid)
    rows = []
    for s, tag in ((1, "+"), (-1, "-")):
        rows.append((f"π1{tag}", tempered(UnitaryInduced(hi(1), Cusp(), s)), TEMPERED))
    for s, tag in ((1, "+"), (-1, "-")):
        rows.append((f"π2{tag}", datum([p(1), p(1)], PMZeroChain(0, s, lid)), COTEMPERED))
    for s, tag in ((1, "+"), (-1, "-")):
        case = FamilyCase(CaseKind.RED0, 1, 1, s)
        rows.append((f"π3{tag}", family_datum(case, line), _fam(case)))
    return _case("0,1,1@0", "(0,1,1), α=0", line, (hi(0), hi(1), hi(1)), rows, _pairs(("π3+", "π3-")), 6)


def _zero_zero_one(line: CuspLine) -> CriticalCase:
    lid = line.id
    rows = []
    for s, tag in ((1, "+"), (-1, "-")):
        rows.append((f"π1{tag}", tempered(UnitaryInduced(hi(0), PMZeroChain(1, s, lid))), TEMPERED))
    for s, tag in ((1, "+"), (-1, "-")):
        rows.append(
            (f"π2{tag}", datum([Segment.of(0, 1, lid)], PMZeroChain(0, s, lid)), _lpacket(add(2, 2), add(1, 1), add(1, 1)))
        )
    for s, tag in ((1, "+"), (-1, "-")):
        rows.append((f"π3{tag}", datum([Segment.of(1, 1, lid)], UnitaryInduced(hi(0), PMZeroChain(0, s, lid))), COTEMPERED))
    return _case("0,0,1", "(0,0,1), α=0", line, (hi(0), hi(0), hi(1)), rows, _pairs(("π2+", "π2-")), 6)


@dataclass(frozen=True)
class CaseTemplate:
    key: str
    applies: Callable[[int], bool]
    build: Callable[[CuspLine], CriticalCase]


CATALOG: Tuple[CaseTemplate, ...] = (
    CaseTemplate("a-1,a", lambda t: t >= 3, _alpha_minus_one_alpha),
    CaseTemplate("0,1", lambda t: t == 0, _zero_one),
    CaseTemplate("a-1,a,a+1", lambda t: t >= 3, _alpha_minus_one_to_plus_one),
    CaseTemplate("a-1,a,a", lambda t: t >= 3, _alpha_minus_one_alpha_alpha),
    CaseTemplate("1/2,1/2,3/2@3/2", lambda t: t == 3, _half_half_three_halves_at_three_halves),
    CaseTemplate("a-2,a-1,a", lambda t: t >= 5, _alpha_minus_two_to_alpha),
    CaseTemplate("0,1,2", lambda t: t == 4, _zero_one_two),
    CaseTemplate("0,1,1@1", lambda t: t == 2, _zero_one_one_at_one),
    CaseTemplate("1/2,1/2,3/2@1/2", lambda t: t == 1, _half_half_three_halves_at_half),
    CaseTemplate("1/2,1/2,1/2", lambda t: t == 1, _three_halves),
    CaseTemplate("0,1,1@0", lambda t: t == 0, _zero_one_one_at_zero),
    CaseTemplate("0,0,1", lambda t: t == 0, _zero_zero_one),
)


def catalog(line: CuspLine, keys: Optional[Sequence[str]] = None) -> List[CriticalCase]:
    """Catalog cases applicable at the line's α, optionally restricted to the given keys."""
    if keys:
        unknown = set(keys) - {tpl.key for tpl in CATALOG}
        if unknown:
            raise ConfigError(f"Unknown critical case(s): {', '.join(sorted(unknown))}")
    out = []
    for tpl in CATALOG:
        if keys and tpl.key not in keys:
            continue
        if tpl.applies(line.alpha.twice):
            out.append(tpl.build(line))
    return out


# Parameter construction


def _find(pp: PacketPair, line_id: str, c: int) -> Optional[JordanBlock]:
    return next((blk for cc, _, blk in pp.line_data(line_id) if cc == c), None)


def _swap_shape(pp: PacketPair, old: JordanBlock, new: JordanBlock) -> PacketPair:
    signed = pp.signed_blocks()
    value = dict(signed)[old]
    signed.remove((old, value))
    signed.append((new, value))
    return PacketPair.of(signed)


def apply_op(pp: PacketPair, op: Op, line: CuspLine) -> PacketPair:
    lid = line.id
    if op.name == "flip":
        blk = _find(pp, lid, op.c)
        if op.c <= 1 and blk is None:
            return pp
        if blk is None:
            raise PreconditionViolation(f"No block with c={op.c} to flip in {pp}")
        if blk.a == blk.b:
            return pp
        return _swap_shape(pp, blk, JordanBlock(lid, blk.b, blk.a))
    if op.name == "raise":
        blk = _find(pp, lid, op.c)
        if blk is None:
            if op.c != 0:
                raise PreconditionViolation(f"No block with c={op.c} to raise in {pp}")
            new = JordanBlock(lid, 1, 2) if op.col else JordanBlock(lid, 2, 1)
            return PacketPair.of(pp.signed_blocks() + [(new, 1)])
        col = op.col if blk.a == blk.b else blk.a == 1
        new = JordanBlock(lid, 1, op.c + 2) if col else JordanBlock(lid, op.c + 2, 1)
        return deform(pp, blk, new)
    if op.name == "add":
        blk = JordanBlock(lid, op.a, op.b)
        # equal blocks share one ε value
        sign = pp.eps.as_dict().get(blk, op.sign)
        return PacketPair.of(pp.signed_blocks() + [(blk, sign)])
    if op.name == "drop":
        target = JordanBlock(lid, op.a, op.b)
        signed = [(blk, v) for blk, v in pp.signed_blocks() if blk != target]
        if len(signed) == len(pp.psi.blocks):
            raise PreconditionViolation(f"No block {target} to drop in {pp}")
        return PacketPair.of(signed)
    if op.name == "swap":
        return aubert_param(pp)
    raise ConfigError(f"Unknown recipe op {op.name!r}")


@dataclass
class Built:
    pp: PacketPair
    expects: List[Dict[str, Any]] = field(default_factory=list)
    traces: List[ReductionTrace] = field(default_factory=list)

    @property
    def expects_ok(self) -> bool:
        return all(e["equal"] for e in self.expects)


def build_pair(
    ops: Sequence[Op],
    base: BaseCusp,
    registry: Optional[BoundaryRegistry] = None,
    strict: Optional[bool] = None,
) -> Built:
    """Run recipe ops from (ψ_σ, ε_σ); expect ops are checked by the Mœglin recursion."""
    line = base.main_line
    out = Built(base_pair(base))
    for op in ops:
        if op.name == "expect":
            trace = moeglin_rep(out.pp, base, registry, strict)
            out.traces.append(trace)
            out.expects.append(
                {"pp": str(out.pp), "expected": str(op.expect), "got": str(trace.result), "equal": trace.result == op.expect}
            )
            continue
        out.pp = apply_op(out.pp, op, line)
    return out


# Infinitesimal characters


def psi_infinitesimal(psi: AParam, line_id: str) -> Tuple[HalfInt, ...]:
    """Exponents (d−1)/2, ..., −(d−1)/2 for every d in the diagonal restriction."""
    out: List[HalfInt] = []
    for blk in psi.on_line(line_id):
        for d in blk.diagonal():
            out.extend(HalfInt(k) for k in range(d - 1, -d, -2))
    return tuple(sorted(out))


def datum_infinitesimal(d: LanglandsDatum, base: BaseCusp, line_id: str) -> Tuple[HalfInt, ...]:
    """±(cuspidal support of d) together with the infinitesimal character of σ."""
    out = list(psi_infinitesimal(base.psi_sigma, line_id))
    for x in d.support():
        out.extend((x, -x))
    return tuple(sorted(out))


# L-parameters


def _drop_dim(dims: List[int], c: int, temp: TemperedSymbol) -> None:
    if c <= 0:
        return
    if c not in dims:
        raise PreconditionViolation(f"φ_σ has no E_{c} to replace in {temp}")
    dims.remove(c)


def tempered_lparam(temp: TemperedSymbol, base: BaseCusp) -> Tuple[int, ...]:
    """Dimensions of the irreducible summands of the L-parameter of a tempered symbol, on the main line."""
    line = base.main_line
    dims = [blk.c for blk in base.psi_sigma.on_line(line.id)]
    top = line.alpha.twice - 1
    if isinstance(temp, Cusp):
        pass
    elif isinstance(temp, GenSteinberg):
        _drop_dim(dims, top, temp)
        dims.append(temp.seg.y.twice + 1)
    elif isinstance(temp, StronglyPositive):
        for i, seg in enumerate(temp.segs):
            _drop_dim(dims, top - 2 * i, temp)
            dims.append(seg.y.twice + 1)
    elif isinstance(temp, PMSquare):
        dims.extend((temp.x0.twice + 1, temp.y.twice + 1))
    elif isinstance(temp, (PMZeroChain, TauPM)):
        dims.extend((1, 2 * temp.n + 1))
    elif isinstance(temp, UnitaryInduced):
        dims = list(tempered_lparam(temp.inner, base))
        dims.extend((temp.h.twice + 1, temp.h.twice + 1))
    else:
        raise PreconditionViolation(f"No L-parameter rule for {temp}")
    return tuple(sorted(dims))


def lparam_of_pair(pp: PacketPair, line: CuspLine) -> Tuple[Tuple[Segment, ...], Tuple[int, ...]]:
    """φ_ψ on the line: segments ν^k δ_a for k > 0 and the tempered dimensions a for k = 0."""
    segs: List[Segment] = []
    dims: List[int] = []
    for blk in pp.psi.on_line(line.id):
        half_width = HalfInt(blk.a - 1)
        for k2 in range(blk.b - 1, -blk.b, -2):
            if k2 > 0:
                k = HalfInt(k2)
                segs.append(Segment(line.id, k - half_width, k + half_width))
            elif k2 == 0:
                dims.append(blk.a)
    return tuple(sorted(segs, key=lambda s: (s.x.twice, s.y.twice))), tuple(sorted(dims))


def in_l_packet(d: LanglandsDatum, pp: PacketPair, base: BaseCusp) -> Tuple[bool, Dict[str, Any]]:
    """Whether d has the L-parameter φ_ψ of the pair; the character inside the L-packet is not fixed."""
    line = base.main_line
    segs, dims = lparam_of_pair(pp, line)
    own = tuple(sorted((s for s in d.segs if s.line == line.id), key=lambda s: (s.x.twice, s.y.twice)))
    temp_dims = tempered_lparam(d.temp, base)
    detail = {
        "phi_segments": [str(s) for s in segs],
        "phi_tempered": list(dims),
        "datum_tempered": list(temp_dims),
    }
    return segs == own and dims == temp_dims, detail


# Verification


class LabelStatus(str, Enum):
    PASS = "pass"
    FAIL = "fail"
    EXTERNAL = "external-result"
    REMARK = "remark"


@dataclass
class LabelReport:
    label: str
    datum: str
    recipe: str
    status: LabelStatus
    support_ok: bool
    infinitesimal_ok: Optional[bool] = None
    got: Optional[str] = None
    certificates: int = 0
    uncertified: int = 0
    digest: Optional[str] = None
    detail: Dict[str, Any] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.status != LabelStatus.FAIL and self.support_ok and self.infinitesimal_ok is not False

    def to_json(self) -> Dict[str, Any]:
        return {
            "label": self.label,
            "datum": self.datum,
            "recipe": self.recipe,
            "status": self.status.value,
            "support_ok": self.support_ok,
            "infinitesimal_ok": self.infinitesimal_ok,
            "got": self.got,
            "certificates": self.certificates,
            "uncertified": self.uncertified,
            "digest": self.digest,
            **self.detail,
        }


@dataclass
class CaseReport:
    case: CriticalCase
    labels: List[LabelReport]
    dualities: List[Dict[str, Any]]
    count_ok: bool
    critical_ok: bool
    capacity: Dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return (
            self.count_ok
            and self.critical_ok
            and all(r.ok for r in self.labels)
            and all(d["ok"] for d in self.dualities)
        )

    def to_json(self) -> Dict[str, Any]:
        return {
            "case": self.case.key,
            "name": self.case.name,
            "alpha": str(self.case.alpha),
            "exponents": [str(x) for x in self.case.exponents],
            "count": len(self.labels),
            "expected_count": self.case.expected_count,
            "count_ok": self.count_ok,
            "capacity": self.capacity,
            "critical_ok": self.critical_ok,
            "labels": [r.to_json() for r in self.labels],
            "dualities": self.dualities,
            "pass": self.passed,
        }


def _digest(traces: Sequence[ReductionTrace]) -> Tuple[int, int, Optional[str]]:
    certs = [c.to_json() for t in traces for c in t.certificates]
    missing = sum(len(t.uncertified) for t in traces)
    if not traces:
        return 0, 0, None
    blob = json.dumps(certs, sort_keys=True, ensure_ascii=False).encode("utf-8")
    return len(certs), missing, hashlib.sha256(blob).hexdigest()[:16]


def _render(result: Any) -> str:
    if isinstance(result, Undecidable):
        return "Undecidable"
    if isinstance(result, FormalSum):
        return " + ".join(str(d) for d in result.keys()) or "0"
    return str(result)


def _verify_label(
    sq: Subquotient,
    case: CriticalCase,
    base: BaseCusp,
    registry: BoundaryRegistry,
    strict: Optional[bool],
) -> LabelReport:
    line = base.main_line
    recipe = sq.recipe
    support_ok = tuple(sorted(abs(x) for x in case.exponents)) == sq.datum.support()
    report = LabelReport(sq.label, str(sq.datum), recipe.kind.value, LabelStatus.FAIL, support_ok)
    traces: List[ReductionTrace] = []
    psi: Optional[AParam] = None

    if recipe.kind in (RecipeKind.RECURSION, RecipeKind.DESCENT, RecipeKind.L_PACKET, RecipeKind.EXTERNAL):
        built = build_pair(recipe.ops, base, registry, strict)
        traces.extend(built.traces)
        report.detail["pp"] = str(built.pp)
        report.detail["expects"] = built.expects
        psi = built.pp.psi
        if recipe.kind == RecipeKind.RECURSION:
            trace = moeglin_rep(built.pp, base, registry, strict)
            traces.append(trace)
            report.got = str(trace.result)
            report.detail["trace"] = trace.to_json()
            ok = trace.result == sq.datum and built.expects_ok
            report.status = LabelStatus.PASS if ok else LabelStatus.FAIL
        elif recipe.kind == RecipeKind.DESCENT:
            trace = moeglin_rep(built.pp, base, registry, strict)
            traces.append(trace)
            target_blocks = tuple(JordanBlock(line.id, a, b) for a, b in recipe.order)
            others = tuple(blk for blk in built.pp.psi.blocks if blk.line != line.id)
            order = BlockOrder(target_blocks + others)
            target = AParam(order.blocks)
            result = dominate_descend(built.pp, order, target, trace.result, base)
            psi = target
            report.got = _render(result)
            report.detail.update({"high": str(trace.result), "order": str(order), "trace": trace.to_json()})
            ok = isinstance(result, FormalSum) and result == FormalSum.single(sq.datum) and built.expects_ok
            report.status = LabelStatus.PASS if ok else LabelStatus.FAIL
        elif recipe.kind == RecipeKind.L_PACKET:
            member, lparam = in_l_packet(sq.datum, built.pp, base)
            report.got = str(sq.datum) if member else "outside the L-packet of φ_ψ"
            report.detail.update({"route": "l-packet", **lparam})
            report.status = LabelStatus.PASS if member and built.expects_ok else LabelStatus.FAIL
        else:
            report.status = LabelStatus.EXTERNAL if built.expects_ok else LabelStatus.FAIL
            report.detail["note"] = recipe.note
    elif recipe.kind == RecipeKind.DUAL:
        partner = case.get(recipe.partner)
        built = build_pair(partner.recipe.ops, base, registry, strict)
        traces.extend(built.traces)
        trace = dual_of_elementary_ddr(built.pp, base, registry, strict)
        traces.append(trace)
        psi = aubert_param(built.pp).psi
        report.got = str(trace.result)
        report.detail.update({"pp": str(aubert_param(built.pp)), "dual_of": partner.label, "trace": trace.to_json()})
        report.status = LabelStatus.PASS if trace.result == sq.datum and built.expects_ok else LabelStatus.FAIL
    elif recipe.kind == RecipeKind.FAMILY:
        fam = recipe.family
        consistent = family_datum(fam, line) == sq.datum
        check: CheckResult = check_family_case(fam, base, registry)
        report.got = check.got
        report.detail.update({"family": fam.label(), "route": check.detail.get("route")})
        trace_json = check.detail.get("trace")
        if trace_json:
            report.detail["trace"] = trace_json
        if "error" in check.detail:
            report.detail["error"] = check.detail["error"]
        report.status = LabelStatus.PASS if check.equal and consistent else LabelStatus.FAIL
    elif recipe.kind == RecipeKind.TEMPERED:
        report.status = LabelStatus.REMARK if sq.datum.is_tempered else LabelStatus.FAIL
        report.detail["note"] = recipe.note
    else:
        report.status = LabelStatus.REMARK if not sq.datum.is_tempered else LabelStatus.FAIL
        report.detail["note"] = recipe.note

    if psi is not None:
        report.infinitesimal_ok = psi_infinitesimal(psi, line.id) == datum_infinitesimal(sq.datum, base, line.id)
    report.certificates, report.uncertified, report.digest = _digest(traces)
    return report


def _negated(s: ExpString) -> ExpString:
    return tuple(Letter(letter.line, -letter.x) for letter in s)


def _dual_strings(a: LanglandsDatum, b: LanglandsDatum) -> Tuple[int, int]:
    """Multiplicity of each datum's negated head among the other's Jacquet strings."""
    env_a, env_b = standard_envelope(a), standard_envelope(b)
    return (
        count_string(env_a.string_factors(), _negated(env_b.head)),
        count_string(env_b.string_factors(), _negated(env_a.head)),
    )


def _check_duality(
    case: CriticalCase,
    labels: Dict[str, LabelReport],
    base: BaseCusp,
    registry: BoundaryRegistry,
) -> List[Dict[str, Any]]:
    out: List[Dict[str, Any]] = []
    seen = set()
    for sq in case.subquotients:
        if sq.dual_partner is None or (sq.dual_partner, sq.label) in seen:
            continue
        seen.add((sq.label, sq.dual_partner))
        entry: Dict[str, Any] = {"pair": [sq.label, sq.dual_partner]}
        try:
            partner = case.get(sq.dual_partner)
        except ConfigError as e:
            out.append({**entry, "ok": False, "route": "missing", "error": str(e)})
            continue
        if partner.dual_partner != sq.label:
            out.append({**entry, "ok": False, "route": "not an involution"})
            continue
        kinds = (sq.recipe.kind, partner.recipe.kind)
        if RecipeKind.DUAL in kinds:
            swapped = sq if sq.recipe.kind == RecipeKind.DUAL else partner
            report = labels.get(swapped.label)
            out.append({**entry, "ok": report is not None and report.ok, "route": "parameter swap", "via": swapped.label})
        elif kinds == (RecipeKind.FAMILY, RecipeKind.FAMILY):
            fam = sq.recipe.family
            closed = dual_case(fam) == partner.recipe.family
            if fam.m != fam.n:
                check, route = check_duality_case(fam, base, registry), "family duality"
            else:
                check, route = check_diagonal_duality(fam, base, registry), "family diagonal duality"
            out.append({**entry, "ok": closed and check.equal, "route": route, "got": check.got})
        else:
            try:
                forward, backward = _dual_strings(sq.datum, partner.datum)
            except PacketForgeError as e:
                logger.error(f"Duality {case.key}/{sq.label} failed: {str(e)}")
                out.append({**entry, "ok": False, "route": "jacquet strings", "error": e.to_dict()})
                continue
            out.append(
                {**entry, "ok": forward > 0 and backward > 0, "route": "jacquet strings", "counts": [forward, backward]}
            )
    return out


def string_capacity(case: CriticalCase, base: BaseCusp) -> Tuple[bool, Dict[str, Any]]:
    """Labels sharing a head string must fit inside its multiplicity in ν^{x_1} × ... ⋊ σ."""
    lid = base.main_line.id
    induced = InducedExpr(word_canon([GLGen.point(x, lid) for x in case.exponents]), base)
    factors = induced.factors()
    distinct = len({sq.datum for sq in case.subquotients}) == len(case.subquotients)
    heads: Dict[ExpString, List[str]] = {}
    for sq in case.subquotients:
        heads.setdefault(standard_envelope(sq.datum).head, []).append(sq.label)
    rows = []
    fits = distinct
    for head, owners in heads.items():
        available = count_string(factors, head)
        fits = fits and len(owners) <= available
        rows.append({"head": render_string(head), "labels": owners, "multiplicity": available})
    return fits, {"distinct": distinct, "heads": rows}

def verify_case(
    case: CriticalCase,
    base: BaseCusp,
    registry: Optional[BoundaryRegistry] = None,
    strict: Optional[bool] = None,
) -> CaseReport:
    """Replay every recipe of a case, then check its counts and dual pairings."""
    registry = registry or family_registry()
    line = base.main_line
    if line.alpha != case.alpha:
        raise ConfigError(f"Case {case.key} was built for α={case.alpha}, base has α={line.alpha}")
    labels: List[LabelReport] = []
    for sq in case.subquotients:
        try:
            labels.append(_verify_label(sq, case, base, registry, strict))
        except PacketForgeError as e:
            logger.error(f"Critical label {case.key}/{sq.label} failed: {str(e)}")
            support_ok = tuple(sorted(abs(x) for x in case.exponents)) == sq.datum.support()
            labels.append(
                LabelReport(sq.label, str(sq.datum), sq.recipe.kind.value, LabelStatus.FAIL, support_ok, detail={"error": e.to_dict()})
            )
    dualities = _check_duality(case, {r.label: r for r in labels}, base, registry)
    fits, capacity = string_capacity(case, base)
    report = CaseReport(
        case,
        labels,
        dualities,
        fits and len(labels) == case.expected_count,
        is_critical(case.exponents, line),
        capacity,
    )
    logger.info(f"verify_case {case.key} at α={line.alpha}: {'pass' if report.passed else 'FAIL'}")
    return report


# Complementary-series descent


def appendix_lemma(
    x: HalfInt,
    base: BaseCusp,
    registry: Optional[BoundaryRegistry] = None,
    strict: Optional[bool] = None,
) -> CheckResult:
    """[x] ⋊ σ lies in an A-packet, for α ≥ 1, x ≥ 0 and α − x ∈ ℤ>0.

    The member L([x]; δ_sp([x+1],...,[α];σ)) of a raised parameter is pushed down one
    row per block by Jac_{x+1}, ..., Jac_α with (2x+1,1) placed before (1,2x+1).
    """
    x = hi(x)
    line = base.main_line
    alpha, lid = line.alpha, line.id
    k = alpha - x
    if alpha.twice < 2 or x.twice < 0 or not k.is_integer or k.twice <= 0:
        raise PreconditionViolation(f"Need α ≥ 1, x ≥ 0 and α − x ∈ ℤ>0; got α={alpha}, x={x}")
    registry = registry or family_registry()
    inputs = {"alpha": str(alpha), "x": str(x)}
    p = lambda e: Segment.of(e, e, lid)

    if x.twice == 0:
        expected = tempered(UnitaryInduced(x, Cusp()))
        pp = apply_op(apply_op(base_pair(base), add(1, 1), line), add(1, 1), line)
        ok = psi_infinitesimal(pp.psi, lid) == datum_infinitesimal(expected, base, lid)
        return CheckResult("appendix", inputs, str(expected), str(expected) if ok else "infinitesimal mismatch", ok,
                           {"route": "tempered", "pp": str(pp)})

    low = x.twice - 1
    raised = list(range(alpha.twice - 1, x.twice, -2))
    ops: List[Op] = [flip(low)] + [rise(c) for c in raised]
    top_rep = tempered(strongly_positive([p(x + 1 + i) for i in range(len(raised))]))
    ops.append(expect(top_rep))
    ops.append(rise(low, col=True))
    member = datum([p(x)], top_rep.temp)
    ops.append(expect(member))
    expected = datum([p(x)])
    try:
        built = build_pair(ops, base, registry, strict)
        high = built.traces[-1]
        lowered = {c + 2 for c in raised}
        order = BlockOrder(
            tuple(
                JordanBlock(lid, blk.c - 2, 1) if blk.line == lid and blk.b == 1 and blk.c in lowered else blk
                for blk in BlockOrder.natural(built.pp.psi).blocks
            )
        )
        result = dominate_descend(built.pp, order, AParam(order.blocks), high.result, base)
    except PacketForgeError as e:
        logger.error(f"appendix_lemma failed: {str(e)}")
        err = e.to_dict()
        return CheckResult("appendix", inputs, str(expected), "error", False, {"error": err})
    equal = isinstance(result, FormalSum) and result == FormalSum.single(expected) and built.expects_ok
    jac_chain = [str(x + 1 + i) for i in range(len(raised))]
    return CheckResult(
        "appendix",
        inputs,
        str(expected),
        _render(result),
        equal,
        {
            "route": "descent",
            "pp": str(built.pp),
            "expects": built.expects,
            "order": str(order),
            "jac": jac_chain,
            "trace": high.to_json(),
        },
    )


def appendix_points(line: CuspLine) -> List[HalfInt]:
    """Every admissible x at this α."""
    return [HalfInt(t) for t in range(line.alpha.twice - 2, -1, -2)]


# Primitive representations


class Primitive(str, Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


def speh_string(a: int, b: int, line_id: str) -> ExpString:
    """Jacquet head of u(a,b): the rows ν^k δ_a for k = −(b−1)/2, ..., (b−1)/2, each read downward."""
    out: List[Letter] = []
    for k2 in range(-(b - 1), b, 2):
        out.extend(Letter(line_id, HalfInt(t)) for t in range(k2 + a - 1, k2 - a, -2))
    return tuple(out)


def _structural_factor(temp: TemperedSymbol) -> Optional[str]:
    """The Speh factor a tempered symbol is a constituent of by definition, if any."""
    if isinstance(temp, UnitaryInduced):
        return f"u({temp.h.twice + 1},1) ⋊ {temp.inner}"
    if isinstance(temp, TauPM):
        return f"u(1,1) ⋊ {temp.inner()}"
    if isinstance(temp, PMZeroChain) and temp.n == 0:
        return "u(1,1) ⋊ σ"
    if isinstance(temp, PMSquare) and temp.x0 == temp.y:
        return f"u({temp.x0.twice + 1},1) ⋊ σ"
    return None


def speh_shapes(pi: LanglandsDatum, line: CuspLine) -> List[Tuple[int, int]]:
    """Shapes (a,b) for which u(a,b) ⋊ π0 could contain pi, after the Jacquet-string exclusions."""
    factors = standard_envelope(pi).string_factors()
    letters = pi.letters
    open_shapes = []
    for a in range(1, letters + 1):
        for b in range(1, letters // a + 1):
            if (a + b) % 2 != line.alpha.twice % 2:
                continue
            # u(a,1) ⋊ σ is tempered
            if a * b == letters and b == 1 and not pi.is_tempered:
                continue
            if has_prefix(factors, speh_string(a, b, line.id)):
                open_shapes.append((a, b))
    return open_shapes


def is_primitive_candidate(pi: LanglandsDatum, base: BaseCusp, packet: Optional[PacketPair] = None) -> Primitive:
    """Whether pi admits no embedding u(a,b) ⋊ π0 with π0 in a packet of smaller rank.

    NO when the symbol is a constituent of such an induced representation by definition;
    YES when the Jacquet strings of pi exclude every Speh shape; UNKNOWN otherwise.
    """
    line = base.main_line
    lid = line.id
    if packet is not None and psi_infinitesimal(packet.psi, lid) != datum_infinitesimal(pi, base, lid):
        logger.warning(f"{pi} does not have the infinitesimal character of {packet}")
        return Primitive.UNKNOWN
    if pi == SIGMA:
        return Primitive.YES
    if pi.is_tempered and _structural_factor(pi.temp) is not None:
        logger.debug(f"{pi} is a constituent of {_structural_factor(pi.temp)}")
        return Primitive.NO
    shapes = speh_shapes(pi, line)
    logger.debug(f"is_primitive_candidate: {pi} leaves shapes {shapes}")
    return Primitive.UNKNOWN if shapes else Primitive.YES


def catalog_counts(cases: Iterable[CriticalCase]) -> Dict[str, int]:
    return dict(Counter({c.key: len(c.subquotients) for c in cases}))
