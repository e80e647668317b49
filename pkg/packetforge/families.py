# File: packetforge/packetforge/families.py
# This file defines the two-parameter families of representations at α > 1, α = 0,
# α = ½ and α = 1, the packet parameters whose Mœglin representation they are,
# the hand-resolved boundary bases, and the family, duality and endpoint verifiers.

from __future__ import annotations

from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple
import logging

from packetforge.arthur import (
    AParam,
    BaseEntry,
    BlockOrder,
    BoundaryRegistry,
    JordanBlock,
    PacketPair,
    aubert_param,
    base_pair,
    dominate_descend,
    dual_of_elementary_ddr,
    moeglin_rep,
)
from packetforge.classical import (
    SIGMA,
    BaseCusp,
    Cusp,
    GenSteinberg,
    LanglandsDatum,
    PMSquare,
    PMZeroChain,
    TauPM,
    TemperedSymbol,
    datum,
    tr_points,
)
from packetforge.config import settings
from packetforge.core import CuspLine, FormalSum, HalfInt, Segment, exp_string
from packetforge.errors import ConfigError, PacketForgeError
from packetforge.socle import KnownRep

# Configure logging
logger = logging.getLogger(__name__)


class CaseKind(str, Enum):
    RED_GT1 = "RedGt1"
    RED0 = "Red0"
    RED_HALF = "RedHalf"
    RED1 = "Red1"


_KIND_ALPHA = {CaseKind.RED0: 0, CaseKind.RED_HALF: 1, CaseKind.RED1: 2}


@dataclass(frozen=True)
class FamilyCase:
    """A family member: π_{m,n}, π^±_{m,n} or τ^−_{m,n} (tau=True)."""
    kind: CaseKind
    m: int
    n: int
    sign: int = 1
    tau: bool = False

    def validate(self, line: CuspLine) -> "FamilyCase":
        twice = line.alpha.twice
        if self.kind == CaseKind.RED_GT1:
            if twice < 3:
                raise ConfigError("RedGt1 needs α ≥ 3/2")
            if self.m < -2 or self.n < -1:
                raise ConfigError("RedGt1 needs m ≥ −2 and n ≥ −1")
        else:
            if twice != _KIND_ALPHA[self.kind]:
                raise ConfigError(f"{self.kind.value} does not apply at α={line.alpha}")
            low = 0 if self.kind == CaseKind.RED0 else 1
            if self.m < low or self.n < low:
                raise ConfigError(f"{self.kind.value} needs m, n ≥ {low}")
        if self.sign not in (1, -1):
            raise ConfigError("Sign must be ±1")
        if self.tau and (self.kind != CaseKind.RED1 or self.sign != -1):
            raise ConfigError("τ-members exist only as τ^−_{m,n} at α = 1")
        return self

    def label(self) -> str:
        if self.kind == CaseKind.RED_GT1:
            return f"π_{{{self.m},{self.n}}}"
        head = "τ" if self.tau else "π"
        return f"{head}^{'+' if self.sign > 0 else '−'}_{{{self.m},{self.n}}}"

    def to_json(self) -> Dict[str, Any]:
        return {"case": self.kind.value, "m": self.m, "n": self.n, "sign": self.sign, "tau": self.tau, "label": self.label()}


def _half(twice: int) -> HalfInt:
    return HalfInt(twice)


def family_datum(case: FamilyCase, line: CuspLine) -> LanglandsDatum:
    """The Langlands datum a family member is defined as."""
    case.validate(line)
    alpha, lid, m, n = line.alpha, line.id, case.m, case.n
    if case.kind == CaseKind.RED_GT1:
        temp: TemperedSymbol = Cusp() if n == -1 else GenSteinberg(Segment(lid, alpha, alpha + n))
        return datum(tr_points(alpha - 1, alpha + m, lid), temp)
    if case.kind == CaseKind.RED0:
        return datum(tr_points(1, m, lid), PMZeroChain(n, case.sign, lid))
    if case.kind == CaseKind.RED_HALF:
        top_m, top_n = _half(2 * m - 1), _half(2 * n - 1)
        if case.sign > 0:
            return datum(tr_points(_half(1), top_m, lid), GenSteinberg(Segment(lid, _half(1), top_n)))
        return datum(tr_points(_half(3), top_m, lid), PMSquare(_half(1), top_n, -1, lid))
    if case.tau:
        return datum(tr_points(2, m, lid), PMSquare(HalfInt(2), HalfInt(2 * n), -1, lid))
    return datum(tr_points(1, m, lid), TauPM(case.sign, n, lid))


def dual_case(case: FamilyCase) -> FamilyCase:
    """Closed-form Aubert dual of a family member."""
    swapped = replace(case, m=case.n, n=case.m)
    if case.kind == CaseKind.RED_GT1:
        return swapped
    if case.kind in (CaseKind.RED0, CaseKind.RED_HALF):
        return replace(swapped, sign=-case.sign)
    if case.tau:
        return replace(swapped, tau=False)
    if case.sign < 0:
        return replace(swapped, tau=True)
    return swapped


def generic_sign() -> int:
    g = settings.ZERO_CHAIN_GENERIC_SIGN
    if g not in (1, -1):
        raise ConfigError(f"ZERO_CHAIN_GENERIC_SIGN must be ±1, got {g}")
    return g


# Packet parameters


def _sigma_value(base: BaseCusp, line: CuspLine, c: int) -> Optional[int]:
    for blk, v in base_pair(base).signed_blocks():
        if blk.line == line.id and blk.c == c:
            return v
    return None


def _without_c(base: BaseCusp, line: CuspLine, drop: Iterable[int]) -> List[Tuple[JordanBlock, int]]:
    drop = set(drop)
    return [(blk, v) for blk, v in base_pair(base).signed_blocks() if not (blk.line == line.id and blk.c in drop)]


def xi_of(base: BaseCusp, line: CuspLine) -> int:
    """ε_σ on E_{1,1}; required for the α = 1 families."""
    value = _sigma_value(base, line, 1)
    if value is None:
        raise ConfigError("The α = 1 families need E_{1,1} in ψ_σ")
    return value


def _add(signed: List[Tuple[JordanBlock, int]], line: CuspLine, a: int, b: int, sign: int) -> None:
    if a >= 1 and b >= 1:
        signed.append((JordanBlock(line.id, a, b), sign))


def family_packet(case: FamilyCase, base: BaseCusp, variant: str) -> PacketPair:
    """(ψ, ε) for the grid point (m, n) of the case's family, with the named ε.

    Variants: "eps" and "eps'" at α > 1; "+" and "-" for ε^± at α ∈ {0, ½, 1}
    (at α = 0 the sign is ξ); "+--" for ε^{+,−,−} at α = 1.
    """
    line = base.main_line
    case.validate(line)
    m, n = case.m, case.n
    if case.kind == CaseKind.RED_GT1:
        top = line.alpha.twice - 1
        e1 = _sigma_value(base, line, top)
        e3 = _sigma_value(base, line, top - 2) if top - 2 > 0 else 1
        if e1 is None or e3 is None:
            raise ConfigError("ψ_σ must contain E_{2α−1,1} and E_{2α−3,1}")
        if variant not in ("eps", "eps'"):
            raise ConfigError(f"Unknown ε variant {variant!r} at α > 1")
        k_sign, l_sign = (e1, e3) if variant == "eps" else (e3, e1)
        signed = _without_c(base, line, (top, top - 2))
        _add(signed, line, top + 2 + 2 * n, 1, k_sign)
        _add(signed, line, 1, top + 2 + 2 * m, l_sign)
        return PacketPair.of(signed)
    if variant not in ("+", "-", "+--"):
        raise ConfigError(f"Unknown ε variant {variant!r}")
    s = 1 if variant == "+" else -1
    signed = list(base_pair(base).signed_blocks())
    if case.kind == CaseKind.RED0:
        _add(signed, line, 2 * n + 1, 1, s)
        _add(signed, line, 1, 2 * m + 1, s)
        return PacketPair.of(signed)
    if case.kind == CaseKind.RED_HALF:
        _add(signed, line, 2 * n, 1, s)
        _add(signed, line, 1, 2 * m, s)
        return PacketPair.of(signed)
    xi = xi_of(base, line)
    one = JordanBlock(line.id, 1, 1)
    signed = [(blk, v) for blk, v in signed if blk != one]
    if variant == "+--":
        one_sign, min_sign, max_sign = xi, -xi, -xi
    else:
        one_sign, min_sign, max_sign = s * xi, s * xi, xi
    k_sign, l_sign = (min_sign, max_sign) if n < m else (max_sign, min_sign)
    if n == m:
        k_sign = l_sign = max_sign
    signed.append((one, one_sign))
    _add(signed, line, 2 * n + 1, 1, k_sign)
    _add(signed, line, 1, 2 * m + 1, l_sign)
    return PacketPair.of(signed)


def route_for(case: FamilyCase) -> Optional[str]:
    """The ε variant whose Mœglin representation is the case, when m ≠ n."""
    m, n = case.m, case.n
    if m == n:
        return None
    if case.kind == CaseKind.RED_GT1:
        return "eps" if m < n else "eps'"
    if case.kind == CaseKind.RED0:
        xi = case.sign * (1 if n > m else -1) * generic_sign()
        return "+" if xi > 0 else "-"
    if case.kind == CaseKind.RED_HALF:
        same = (case.sign > 0) == (m < n)
        return "+" if same else "-"
    if case.tau:
        return "+--" if m < n else "+"
    if case.sign > 0:
        return "-"
    return "+" if m < n else "+--"


# Boundary bases


def _line_signed(pp: PacketPair, line_id: str) -> List[Tuple[JordanBlock, int]]:
    return sorted((blk, v) for blk, v in pp.signed_blocks() if blk.line == line_id)


def _others_match(pp: PacketPair, base: BaseCusp, line_id: str) -> bool:
    mine = [(blk, v) for blk, v in pp.signed_blocks() if blk.line != line_id]
    theirs = [(blk, v) for blk, v in base_pair(base).signed_blocks() if blk.line != line_id]
    return sorted(mine) == sorted(theirs)


def _shape(pp: PacketPair, line_id: str) -> Dict[Tuple[int, int], int]:
    return {(blk.a, blk.b): v for blk, v in _line_signed(pp, line_id)}


def resolve_zero(pp: PacketPair, base: BaseCusp) -> Optional[BaseEntry]:
    """α = 0: {(3,1),(1,1)} with ε ≡ ξ is δ([0,1]); {(1,1),(1,3)} is L([1];δ([0])) of the other sign."""
    line = base.main_line
    if line.alpha.twice != 0 or not _others_match(pp, base, line.id):
        return None
    shape = _shape(pp, line.id)
    if len(shape) != 2 or len(set(shape.values())) != 1 or len(_line_signed(pp, line.id)) != 2:
        return None
    xi = next(iter(shape.values())) * generic_sign()
    if set(shape) == {(3, 1), (1, 1)}:
        return BaseEntry(datum((), PMZeroChain(1, xi, line.id)), "boundary base: δ([0,1]_ξ;σ)")
    if set(shape) == {(1, 1), (1, 3)}:
        d = datum(tr_points(1, 1, line.id), PMZeroChain(0, -xi, line.id))
        strings = FormalSum(
            (s, 1) for s in (exp_string(-1, 0, line=line.id), exp_string(0, 1, line=line.id), exp_string(0, -1, line=line.id))
        )
        known = KnownRep(d, "ν^{-1}⋊δ([0]) minus δ([0,1])", strings, exp_string(-1, 0, line=line.id))
        return BaseEntry(d, "boundary base: L([1];δ([0]_{−ξ};σ))", known)
    return None


def resolve_half(pp: PacketPair, base: BaseCusp) -> Optional[BaseEntry]:
    """α = ½ with ε^−: the two pairs where c = 2 and c = 4 both carry −1."""
    line = base.main_line
    if line.alpha.twice != 1 or not _others_match(pp, base, line.id):
        return None
    shape = _shape(pp, line.id)
    if set(shape.values()) != {-1} or len(shape) != 2:
        return None
    lid = line.id
    if set(shape) == {(1, 2), (4, 1)}:
        return BaseEntry(datum((), PMSquare(HalfInt(1), HalfInt(3), -1, lid)), "boundary base: δ([−½,3/2]_−;σ)")
    if set(shape) == {(2, 1), (1, 4)}:
        d = datum(tr_points(HalfInt(1), HalfInt(3), lid), GenSteinberg(Segment(lid, HalfInt(1), HalfInt(1))))
        return BaseEntry(d, "boundary base: L([½,3/2]^tr;δ([½];σ))")
    return None


def resolve_one(pp: PacketPair, base: BaseCusp) -> Optional[BaseEntry]:
    """α = 1: boundary pairs with blocks E_{1,1}, a size-3 block and a size-5 block.

    Only the grid points (1, 2) and (2, 1) are registered; larger pairs reduce past
    the boundary down to one of these.
    """
    line = base.main_line
    if line.alpha.twice != 2 or not _others_match(pp, base, line.id):
        return None
    try:
        xi = xi_of(base, line)
    except ConfigError:
        return None
    signed = _line_signed(pp, line.id)
    if len(signed) != 3:
        return None
    shape = {(blk.a, blk.b): v for blk, v in signed}
    if (1, 1) not in shape or len(shape) != 3:
        return None
    one = shape.pop((1, 1))
    small = [k for k in shape if 3 in k]
    if len(small) != 1:
        return None
    (s_key,) = small
    (big_key,) = [k for k in shape if k != s_key]
    s_val, big_val = shape[s_key], shape[big_key]
    big = max(big_key)
    lid = line.id
    if big != 5:
        return None
    small_low = s_key == (1, 3)
    big_high = big_key == (big, 1)
    if small_low != big_high:
        return None
    if one == xi and s_val == xi and big_val == xi:
        if small_low:
            case = FamilyCase(CaseKind.RED1, 1, 2, -1)
        else:
            case = FamilyCase(CaseKind.RED1, 2, 1, -1, tau=True)
    elif one == -xi and s_val == -xi and big_val == xi:
        case = FamilyCase(CaseKind.RED1, 1, 2, 1) if small_low else FamilyCase(CaseKind.RED1, 2, 1, 1)
    elif one == xi and s_val == -xi and big_val == -xi:
        case = FamilyCase(CaseKind.RED1, 1, 2, -1, tau=True) if small_low else FamilyCase(CaseKind.RED1, 2, 1, -1)
    else:
        return None
    return BaseEntry(family_datum(case, line), f"boundary base: {case.label()}")


def family_registry() -> BoundaryRegistry:
    """Resolvers for every boundary pair the families reach."""
    return BoundaryRegistry([resolve_zero, resolve_half, resolve_one])


# Verification


@dataclass(frozen=True)
class CheckResult:
    """One comparison of two routes to the same representation."""
    name: str
    inputs: Dict[str, Any]
    expected: str
    got: str
    equal: bool
    detail: Dict[str, Any] = field(default_factory=dict)

    def to_json(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "inputs": self.inputs,
            "route_a": self.expected,
            "route_b": self.got,
            "equal": self.equal,
            **self.detail,
        }


def _failure(name: str, inputs: Dict[str, Any], expected: str, e: Exception) -> CheckResult:
    logger.error(f"{name} failed: {str(e)}")
    err = e.to_dict() if isinstance(e, PacketForgeError) else {"error": type(e).__name__, "message": str(e)}
    return CheckResult(name, inputs, expected, "error", False, {"error": err})


def _high_size(case: FamilyCase, line: CuspLine) -> int:
    """Size of the E_{k,1} block of the (m, m+1) member above a diagonal case."""
    if case.kind == CaseKind.RED_GT1:
        return line.alpha.twice + 3 + 2 * case.n
    return 2 * (case.n + 1) + (0 if case.kind == CaseKind.RED_HALF else 1)


def _summands(result: Any) -> str:
    if not isinstance(result, FormalSum):
        return str(result)
    return " + ".join(str(d) for d in result.keys()) or "0"


def _diagonal_descent(case: FamilyCase, base: BaseCusp, registry: BoundaryRegistry) -> CheckResult:
    """m = n: one Jac step from the (m, m+1) member."""
    line = base.main_line
    high = replace(case, n=case.n + 1)
    variant = route_for(high)
    pp_high = family_packet(high, base, variant)
    trace = moeglin_rep(pp_high, base, registry)
    k_high = _high_size(case, line)
    old = JordanBlock(line.id, k_high, 1)
    new = JordanBlock(line.id, k_high - 2, 1)
    order = BlockOrder(tuple(new if blk == old else blk for blk in BlockOrder.natural(pp_high.psi).blocks))
    target = AParam(order.blocks)
    result = dominate_descend(pp_high, order, target, trace.result, base)
    expected = family_datum(case, line)
    got = _summands(result)
    equal = isinstance(result, FormalSum) and result == FormalSum.single(expected)
    return CheckResult(
        "family",
        case.to_json(),
        str(expected),
        got,
        equal,
        {"route": "descent", "from": high.label(), "variant": variant, "order": str(order), "trace": trace.to_json()},
    )


def check_family_case(case: FamilyCase, base: BaseCusp, registry: Optional[BoundaryRegistry] = None) -> CheckResult:
    """Recursion route against the closed form for one grid point."""
    registry = registry or family_registry()
    line = base.main_line
    try:
        expected = family_datum(case, line)
        if case.m == case.n:
            return _diagonal_descent(case, base, registry)
        variant = route_for(case)
        pp = family_packet(case, base, variant)
        trace = moeglin_rep(pp, base, registry)
        return CheckResult(
            "family",
            case.to_json(),
            str(expected),
            str(trace.result),
            trace.result == expected,
            {"route": "recursion", "variant": variant, "pp": str(pp), "trace": trace.to_json()},
        )
    except PacketForgeError as e:
        return _failure("family", case.to_json(), "", e)


def family_cases(kind: CaseKind, ms: Sequence[int], ns: Sequence[int], signs: Sequence[int] = (1, -1)) -> List[FamilyCase]:
    """Every labelled member of a family on the (m, n) grid."""
    out: List[FamilyCase] = []
    for m in ms:
        for n in ns:
            if kind == CaseKind.RED_GT1:
                out.append(FamilyCase(kind, m, n))
            elif kind == CaseKind.RED1:
                out.extend(FamilyCase(kind, m, n, s) for s in signs)
                if -1 in signs:
                    out.append(FamilyCase(kind, m, n, -1, tau=True))
            else:
                out.extend(FamilyCase(kind, m, n, s) for s in signs)
    return out


def kind_for(line: CuspLine) -> CaseKind:
    twice = line.alpha.twice
    for kind, value in _KIND_ALPHA.items():
        if value == twice:
            return kind
    if twice >= 3:
        return CaseKind.RED_GT1
    raise ConfigError(f"No two-parameter family at α={line.alpha}")


def default_grid(kind: CaseKind, size: int) -> Tuple[List[int], List[int]]:
    low = 0 if kind in (CaseKind.RED_GT1, CaseKind.RED0) else 1
    values = list(range(low, low + size + 1))
    return values, values


def verify_family(
    base: BaseCusp,
    ms: Sequence[int],
    ns: Sequence[int],
    signs: Sequence[int] = (1, -1),
    registry: Optional[BoundaryRegistry] = None,
) -> List[CheckResult]:
    """Recursion route = closed form over a grid; m = n via descent."""
    kind = kind_for(base.main_line)
    registry = registry or family_registry()
    results = [check_family_case(c, base, registry) for c in family_cases(kind, ms, ns, signs)]
    logger.info(f"verify_family: {sum(r.equal for r in results)}/{len(results)} cases agree at α={base.main_line.alpha}")
    return results


def check_duality_case(case: FamilyCase, base: BaseCusp, registry: Optional[BoundaryRegistry] = None) -> CheckResult:
    """Dual by parameter swap against the closed-form dual."""
    registry = registry or family_registry()
    line = base.main_line
    try:
        partner = dual_case(case)
        expected = family_datum(partner, line)
        variant = route_for(case)
        if variant is None:
            raise ConfigError("Duality is checked off the diagonal only")
        pp = family_packet(case, base, variant)
        trace = dual_of_elementary_ddr(pp, base, registry)
        return CheckResult(
            "duality",
            {**case.to_json(), "dual": partner.label()},
            str(expected),
            str(trace.result),
            trace.result == expected,
            {"variant": variant, "pp": str(pp), "trace": trace.to_json()},
        )
    except PacketForgeError as e:
        return _failure("duality", case.to_json(), "", e)


def check_diagonal_duality(case: FamilyCase, base: BaseCusp, registry: Optional[BoundaryRegistry] = None) -> CheckResult:
    """m = n: the dual of the (m, m+1) member, descended one step, against the closed-form dual."""
    registry = registry or family_registry()
    line = base.main_line
    try:
        if case.m != case.n:
            raise ConfigError("Diagonal duality needs m = n")
        partner = dual_case(case)
        expected = family_datum(partner, line)
        high = replace(case, n=case.n + 1)
        variant = route_for(high)
        dual_pp = aubert_param(family_packet(high, base, variant))
        trace = moeglin_rep(dual_pp, base, registry)
        k_high = _high_size(case, line)
        old = JordanBlock(line.id, k_high, 1).swapped()
        new = JordanBlock(line.id, 1, k_high - 2)
        order = BlockOrder(tuple(new if blk == old else blk for blk in BlockOrder.natural(dual_pp.psi).blocks))
        result = dominate_descend(dual_pp, order, AParam(order.blocks), trace.result, base)
        return CheckResult(
            "duality",
            {**case.to_json(), "dual": partner.label()},
            str(expected),
            _summands(result),
            isinstance(result, FormalSum) and result == FormalSum.single(expected),
            {"route": "dual descent", "from": high.label(), "variant": variant, "order": str(order), "trace": trace.to_json()},
        )
    except PacketForgeError as e:
        return _failure("duality", case.to_json(), "", e)


def verify_duality(
    base: BaseCusp,
    ms: Sequence[int],
    ns: Sequence[int],
    signs: Sequence[int] = (1, -1),
    registry: Optional[BoundaryRegistry] = None,
) -> List[CheckResult]:
    kind = kind_for(base.main_line)
    registry = registry or family_registry()
    cases = [c for c in family_cases(kind, ms, ns, signs) if c.m != c.n]
    results = [check_duality_case(c, base, registry) for c in cases]
    logger.info(f"verify_duality: {sum(r.equal for r in results)}/{len(results)} cases agree")
    return results


def _endpoint_pair(base: BaseCusp, n: int, cotempered: bool) -> PacketPair:
    """ψ_− ⊕ E_{2α−3} ⊕ E_{2α+1+2n}, tempered or cotempered shape, with ε_σ's values."""
    line = base.main_line
    top = line.alpha.twice - 1
    e1 = _sigma_value(base, line, top)
    e3 = _sigma_value(base, line, top - 2) if top - 2 > 0 else 1
    signed = _without_c(base, line, (top, top - 2))
    if cotempered:
        _add(signed, line, 1, top - 2, e3)
        _add(signed, line, 1, top + 2 + 2 * n, e1)
    else:
        _add(signed, line, top - 2, 1, e3)
        _add(signed, line, top + 2 + 2 * n, 1, e1)
    return PacketPair.of(signed)


def corollary_endpoints(base: BaseCusp, ns: Sequence[int], registry: Optional[BoundaryRegistry] = None) -> List[CheckResult]:
    """Endpoint members (m = −2, −1 or n = −1) and their duals at α ≥ 3/2."""
    line = base.main_line
    if line.alpha.twice < 3:
        raise ConfigError("Endpoint identities need α ≥ 3/2")
    registry = registry or family_registry()
    lid, alpha = line.id, line.alpha
    out: List[CheckResult] = []
    for n in ns:
        steinberg = datum((), Cusp() if n == -1 else GenSteinberg(Segment(lid, alpha, alpha + n)))
        cotemp = datum(tr_points(alpha, alpha + n, lid))
        checks = [
            ("steinberg-member", lambda: moeglin_rep(_endpoint_pair(base, n, False), base, registry), steinberg),
            ("cotempered-member", lambda: moeglin_rep(_endpoint_pair(base, n, True), base, registry), cotemp),
            ("steinberg-dual", lambda: dual_of_elementary_ddr(_endpoint_pair(base, n, False), base, registry), cotemp),
        ]
        if n >= 0:
            low = FamilyCase(CaseKind.RED_GT1, -1, n)
            upper = FamilyCase(CaseKind.RED_GT1, n, -1)
            checks.append(("lower-member", lambda: moeglin_rep(family_packet(low, base, "eps"), base, registry), family_datum(low, line)))
            checks.append(("upper-member", lambda: moeglin_rep(family_packet(upper, base, "eps'"), base, registry), family_datum(upper, line)))
            checks.append(("lower-dual", lambda: dual_of_elementary_ddr(family_packet(low, base, "eps"), base, registry), family_datum(upper, line)))
        for name, run, expected in checks:
            inputs = {"n": n, "alpha": str(alpha)}
            try:
                trace = run()
                out.append(CheckResult(name, inputs, str(expected), str(trace.result), trace.result == expected, {"trace": trace.to_json()}))
            except PacketForgeError as e:
                out.append(_failure(name, inputs, str(expected), e))
    return out
