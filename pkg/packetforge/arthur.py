# File: packetforge/packetforge/arthur.py
# This file defines Jordan-block A-parameters, ε-characters, the b/a invariants,
# deformation and the simple reduction step, the Mœglin recursion producing Langlands
# data with socle certificates, Aubert duality on parameters and domination descent.

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple
import logging
import re

from packetforge.classical import SIGMA, BaseCusp, LanglandsDatum
from packetforge.config import settings
from packetforge.core import DEFAULT_LINE, CuspLine, FormalSum, HalfInt, Parity
from packetforge.errors import (
    BaseMismatch,
    BoundaryCase,
    CertificateFailure,
    ConfigError,
    NothingToReduce,
    ParityMismatch,
    PacketForgeError,
    PreconditionViolation,
    UnsupportedShift,
)
from packetforge.socle import (
    Envelope,
    JacResult,
    KnownRep,
    SocleCertificate,
    Undecidable,
    chain_envelope,
    extend,
    jac,
    socle_of,
    standard_envelope,
)

# Configure logging
logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class JordanBlock:
    """ρ ⊗ E_a ⊗ E_b; zeta_choice only matters when a = b."""
    line: str
    a: int
    b: int
    zeta_choice: int = 1

    def __post_init__(self):
        if self.a < 1 or self.b < 1:
            raise ConfigError(f"Block ({self.a},{self.b}) needs a, b ≥ 1")
        if self.zeta_choice not in (1, -1):
            raise ConfigError("zeta_choice must be ±1")
        if self.a != self.b:
            object.__setattr__(self, "zeta_choice", 1 if self.a > self.b else -1)

    @classmethod
    def of(cls, a: int, b: int, line: str = DEFAULT_LINE, zeta: int = 1) -> "JordanBlock":
        return cls(line, a, b, zeta)

    @classmethod
    def from_abz(cls, A: HalfInt, B: HalfInt, zeta: int, line: str = DEFAULT_LINE) -> "JordanBlock":
        """Inverse of (A, B, ζ): a = A+1+ζB, b = A+1−ζB."""
        a2 = A.twice + 2 + zeta * B.twice
        b2 = A.twice + 2 - zeta * B.twice
        if a2 % 2 or b2 % 2:
            raise ConfigError(f"(A,B)=({A},{B}) does not give integral a, b")
        return cls(line, a2 // 2, b2 // 2, zeta)

    @property
    def A(self) -> HalfInt:
        return HalfInt(self.a + self.b - 2)

    @property
    def B(self) -> HalfInt:
        return HalfInt(abs(self.a - self.b))

    @property
    def zeta(self) -> int:
        return self.zeta_choice

    @property
    def is_elementary(self) -> bool:
        return 1 in (self.a, self.b)

    @property
    def c(self) -> int:
        return max(self.a, self.b)

    @property
    def delta(self) -> int:
        return 1 if self.b == 1 else -1

    @property
    def weight(self) -> int:
        return self.a * self.b

    def diagonal(self) -> Tuple[int, ...]:
        """2j+1 for j = B, B+1, ..., A."""
        return tuple(range(self.B.twice + 1, self.A.twice + 2, 2))

    def swapped(self) -> "JordanBlock":
        return JordanBlock(self.line, self.b, self.a, -self.zeta_choice)

    def to_json(self) -> Dict[str, Any]:
        out = {"line": self.line, "a": self.a, "b": self.b}
        if self.a == self.b:
            out["zeta"] = self.zeta_choice
        return out

    def __str__(self) -> str:
        tail = "" if self.line == DEFAULT_LINE else f"@{self.line}"
        return f"({self.a},{self.b}){tail}"


@dataclass(frozen=True)
class AParam:
    """A multiset of Jordan blocks, kept sorted."""
    blocks: Tuple[JordanBlock, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "blocks", tuple(sorted(self.blocks)))

    @classmethod
    def of(cls, *blocks: JordanBlock) -> "AParam":
        return cls(tuple(blocks))

    def lines(self) -> Tuple[str, ...]:
        return tuple(sorted({blk.line for blk in self.blocks}))

    def on_line(self, line_id: str) -> Tuple[JordanBlock, ...]:
        return tuple(blk for blk in self.blocks if blk.line == line_id)

    def weight(self, line_id: str) -> int:
        return sum(blk.weight for blk in self.on_line(line_id))

    def __add__(self, other: "AParam") -> "AParam":
        return AParam(self.blocks + other.blocks)

    def __contains__(self, blk: JordanBlock) -> bool:
        return blk in self.blocks

    def replace(self, old: JordanBlock, new: Optional[JordanBlock]) -> "AParam":
        blocks = list(self.blocks)
        blocks.remove(old)
        if new is not None:
            blocks.append(new)
        return AParam(tuple(blocks))

    def validate(self, lines: Mapping[str, CuspLine]) -> "AParam":
        """Good parity: |a−b|+1 has the parity of the line."""
        for blk in self.blocks:
            line = lines.get(blk.line)
            if line is None:
                raise ConfigError(f"Block {blk} refers to unknown line {blk.line!r}")
            if Parity.of(abs(blk.a - blk.b) + 1) != line.parity:
                raise ParityMismatch(f"Block {blk} does not have good parity on line {line.id} (α={line.alpha})")
        return self

    def to_json(self) -> Dict[str, Any]:
        return {"blocks": [blk.to_json() for blk in self.blocks]}

    def __str__(self) -> str:
        return "⊕".join(f"E{blk}" for blk in self.blocks) or "0"


def psi_d(p: AParam) -> Tuple[Tuple[str, int], ...]:
    """Diagonal restriction: (line, 2j+1) for j ∈ [B, A] of every block, sorted."""
    return tuple(sorted((blk.line, d) for blk in p.blocks for d in blk.diagonal()))


def is_ddr(p: AParam) -> bool:
    diag = psi_d(p)
    return len(diag) == len(set(diag))


def is_elementary(p: AParam) -> bool:
    return all(blk.is_elementary for blk in p.blocks)


def attach_gl_rep(p: AParam) -> Tuple[Tuple[str, int, int], ...]:
    """Speh labels u(a,b) of π_ψ, one per block."""
    return tuple((blk.line, blk.a, blk.b) for blk in p.blocks)


@dataclass(frozen=True)
class EpsChar:
    """±1 values on the distinct blocks of a parameter."""
    values: Tuple[Tuple[JordanBlock, int], ...] = ()

    def __post_init__(self):
        seen: Dict[JordanBlock, int] = {}
        for blk, v in self.values:
            if v not in (1, -1):
                raise ConfigError(f"ε({blk}) must be ±1, got {v}")
            if seen.get(blk, v) != v:
                raise ConfigError(f"Equal blocks {blk} carry different ε values")
            seen[blk] = v
        object.__setattr__(self, "values", tuple(sorted(seen.items())))

    @classmethod
    def of(cls, mapping: Mapping[JordanBlock, int]) -> "EpsChar":
        return cls(tuple(mapping.items()))

    def __getitem__(self, blk: JordanBlock) -> int:
        for b, v in self.values:
            if b == blk:
                return v
        raise KeyError(blk)

    def as_dict(self) -> Dict[JordanBlock, int]:
        return dict(self.values)

    def domain(self) -> Tuple[JordanBlock, ...]:
        return tuple(b for b, _ in self.values)

    def to_json(self) -> List[int]:
        return [v for _, v in self.values]


@dataclass(frozen=True)
class PacketPair:
    """(ψ, ε), labelling π(ψ, ε)."""
    psi: AParam
    eps: EpsChar

    def __post_init__(self):
        if set(self.psi.blocks) != set(self.eps.domain()):
            raise ConfigError("ε must be defined exactly on the blocks of ψ")

    @classmethod
    def of(cls, signed: Iterable[Tuple[JordanBlock, int]]) -> "PacketPair":
        signed = list(signed)
        return cls(AParam(tuple(b for b, _ in signed)), EpsChar(tuple(signed)))

    def signed_blocks(self) -> List[Tuple[JordanBlock, int]]:
        eps = self.eps.as_dict()
        return [(blk, eps[blk]) for blk in self.psi.blocks]

    def line_data(self, line_id: str) -> List[Tuple[int, int, JordanBlock]]:
        """(c, ε, block) for the elementary blocks on a line, by increasing c."""
        eps = self.eps.as_dict()
        return sorted(((blk.c, eps[blk], blk) for blk in self.psi.on_line(line_id)), key=lambda t: (t[0], t[2]))

    def eps_product(self, line_id: str) -> int:
        eps = self.eps.as_dict()
        out = 1
        for blk in self.psi.on_line(line_id):
            out *= eps[blk]
        return out

    def to_json(self) -> Dict[str, Any]:
        return {**self.psi.to_json(), "eps": [v for _, v in self.signed_blocks()]}

    def __str__(self) -> str:
        parts = [f"{blk}{'+' if v > 0 else '−'}" for blk, v in self.signed_blocks()]
        return "{" + ",".join(parts) + "}"


_BLOCK_RE = re.compile(r"\(\s*(\d+)\s*,\s*(\d+)\s*\)\s*([+\-−])?\s*(?:@(\w+))?")


def parse_blocks(text: str, line_id: str = DEFAULT_LINE, eps: Optional[Sequence[int]] = None) -> PacketPair:
    """Parse "(6,1)+,(1,2)-"; signs may instead come from the eps list."""
    found = list(_BLOCK_RE.finditer(text or ""))
    rest = _BLOCK_RE.sub("", text or "").replace(",", "").strip()
    if rest:
        raise ConfigError(f"Cannot parse block list {text!r}")
    if eps is not None and len(eps) != len(found):
        raise ConfigError(f"{len(found)} blocks but {len(eps)} ε values")
    signed = []
    for i, m in enumerate(found):
        blk = JordanBlock(m.group(4) or line_id, int(m.group(1)), int(m.group(2)))
        if eps is not None:
            sign = int(eps[i])
        elif m.group(3):
            sign = 1 if m.group(3) == "+" else -1
        else:
            raise ConfigError(f"Block {blk} has no ε sign")
        signed.append((blk, sign))
    return PacketPair.of(signed)


def make_base(lines: Sequence[CuspLine], signed: Iterable[Tuple[JordanBlock, int]], sigma_id: str = "sigma") -> BaseCusp:
    """Validated cuspidal base: good parity and a cuspidal ε_σ on every line."""
    pp = PacketPair.of(signed)
    base = BaseCusp(sigma_id, tuple(lines), pp.psi, pp.eps)
    pp.psi.validate({ln.id: ln for ln in lines})
    for ln in lines:
        b, a, _ = b_a_invariants(pp, ln)
        if a is not None:
            raise ConfigError(f"ε_σ is not cuspidal on line {ln.id}: chain stops at {b}, next block {a}")
    return base


def default_base(alpha, xi: int = 1, line_id: str = DEFAULT_LINE) -> BaseCusp:
    """Standard σ on one line: E_{c,1} for c = 2α−1, 2α−3, ... with alternating ε.

    On odd lines ε_σ(2α−1) = +1, except at α = 1 where ε_σ(1) = ξ; on even lines
    the c = 2 block carries −1.
    """
    line = CuspLine.of(alpha, line_id)
    top = line.alpha.twice - 1
    signed = []
    for c in range(top, 0, -2):
        if line.parity == Parity.EVEN:
            sign = -1 if (c // 2) % 2 else 1
        else:
            sign = 1 if ((top - c) // 2) % 2 == 0 else -1
        signed.append((JordanBlock(line_id, c, 1), sign))
    if line.alpha.twice == 2:
        signed = [(JordanBlock(line_id, 1, 1), xi)]
    return make_base([line], signed)


def base_pair(base: BaseCusp) -> PacketPair:
    return PacketPair(base.psi_sigma, base.eps_sigma)


def _lines_of(base: BaseCusp) -> Dict[str, CuspLine]:
    return {ln.id: ln for ln in base.lines}


def check_eps_product(pp: PacketPair, base: BaseCusp, override: Optional[bool] = None) -> bool:
    """Π ε over each line must equal Π ε_σ over it; returns True when the override was used."""
    override = settings.EPS_PRODUCT_OVERRIDE if override is None else override
    bp = base_pair(base)
    for ln in base.lines:
        if pp.eps_product(ln.id) != bp.eps_product(ln.id):
            if override:
                logger.warning(f"ε product on line {ln.id} differs from ε_σ; continuing under override")
                return True
            raise ConfigError(f"ε product on line {ln.id} differs from the product of ε_σ")
    return False


def b_a_invariants(pp: PacketPair, line: CuspLine) -> Tuple[int, Optional[int], bool]:
    """(b, a, boundary): cuspidal prefix end, next block size (None for ∞), a = b+2 with b > 0."""
    data = pp.line_data(line.id)
    if any(not blk.is_elementary for _, _, blk in data):
        raise PreconditionViolation(f"Parameter {pp} is not elementary on line {line.id}")
    cs = [c for c, _, _ in data]
    if len(cs) != len(set(cs)):
        raise PreconditionViolation(f"Repeated block sizes on line {line.id} in {pp}")
    even = line.parity == Parity.EVEN
    b = 0 if even else -1
    expect, last_eps = (2 if even else 1), None
    for c, eps, _ in data:
        if c != expect:
            break
        if last_eps is None and even and eps != -1:
            break
        if last_eps is not None and eps != -last_eps:
            break
        b, last_eps, expect = c, eps, c + 2
    a = next((c for c in cs if c > b), None)
    boundary = a is not None and b > 0 and a == b + 2
    return b, a, boundary


def deform(pp: PacketPair, old: JordanBlock, new: Optional[JordanBlock]) -> PacketPair:
    """Replace a block (None deletes it) and transport its ε value."""
    if old not in pp.psi:
        raise PreconditionViolation(f"Block {old} is not in {pp}")
    eps = pp.eps.as_dict()
    value = eps[old]
    signed = [(blk, eps[blk]) for blk in pp.psi.blocks]
    signed.remove((old, value))
    if new is not None:
        if (new.a - old.a) % 2 or (new.b - old.b) % 2 or new.line != old.line:
            raise ParityMismatch(f"Cannot deform {old} to {new}: parities differ")
        if new in pp.psi:
            raise PreconditionViolation(f"Block {new} is already present in {pp}")
        signed.append((new, value))
    return PacketPair.of(signed)


@dataclass(frozen=True)
class StepMove:
    kind: str
    line: str
    before: JordanBlock
    after: Optional[JordanBlock]
    exponent: HalfInt


def reduce_step(pp: PacketPair, line: CuspLine) -> Tuple[HalfInt, PacketPair, StepMove]:
    """One simple reduction step on a line: π(ψ,ε) ↪ ν^x ⋊ π(ψ′,ε′)."""
    b, a, boundary = b_a_invariants(pp, line)
    if a is None:
        raise NothingToReduce(f"No block above the cuspidal chain on line {line.id}")
    if boundary:
        raise BoundaryCase(f"Boundary case a={a}=b+2 on line {line.id} for {pp}", {"a": a, "b": b})
    blk = next(blk for c, _, blk in pp.line_data(line.id) if c == a)
    exponent, result, move = _lower(pp, blk, "reduce")
    logger.debug(f"reduce_step: {pp} line={line.id} b={b} a={a} -> x={exponent}, {result}")
    return exponent, result, move


def bypass_step(pp: PacketPair, line: CuspLine) -> Tuple[HalfInt, PacketPair, StepMove]:
    """Reduction past a boundary line: lower the largest block c > a with c−2 free."""
    b, a, boundary = b_a_invariants(pp, line)
    if not boundary:
        raise PreconditionViolation(f"Line {line.id} of {pp} is not a boundary line")
    data = pp.line_data(line.id)
    sizes = {c for c, _, _ in data}
    movable = [blk for c, _, blk in data if c > a and c - 2 not in sizes]
    if not movable:
        raise BoundaryCase(
            f"Boundary case a={a}=b+2 on line {line.id} at {pp} with no registered resolution", {"a": a, "b": b}
        )
    blk = max(movable, key=lambda blk: blk.c)
    exponent, result, move = _lower(pp, blk, "bypass")
    logger.debug(f"bypass_step: {pp} line={line.id} b={b} a={a} c={blk.c} -> x={exponent}, {result}")
    return exponent, result, move


def _lower(pp: PacketPair, blk: JordanBlock, kind: str) -> Tuple[HalfInt, PacketPair, StepMove]:
    c = blk.c
    exponent = HalfInt(blk.delta * (c - 1))
    if c == 2:
        after, kind = None, "delete"
    elif blk.b == 1:
        after = JordanBlock(blk.line, c - 2, 1)
    else:
        after = JordanBlock(blk.line, 1, c - 2)
    return exponent, deform(pp, blk, after), StepMove(kind, blk.line, blk, after, exponent)


def matches_base(pp: PacketPair, base: BaseCusp) -> bool:
    """Same (c, ε) data as (ψ_σ, ε_σ) on every line."""
    bp = base_pair(base)
    lines = set(pp.psi.lines()) | set(bp.psi.lines())
    for lid in lines:
        mine = [(c, e) for c, e, _ in pp.line_data(lid)]
        theirs = [(c, e) for c, e, _ in bp.line_data(lid)]
        if mine != theirs:
            return False
    return True


@dataclass(frozen=True)
class BaseEntry:
    """A pair whose representation is fixed by hand rather than by further reduction."""
    datum: LanglandsDatum
    provenance: str
    known: Optional[KnownRep] = None


Resolver = Callable[[PacketPair, BaseCusp], Optional[BaseEntry]]


class BoundaryRegistry:
    """Ordered resolvers consulted before each reduction step."""

    def __init__(self, resolvers: Iterable[Resolver] = ()):
        self._resolvers: List[Resolver] = list(resolvers)

    def register(self, resolver: Resolver) -> Resolver:
        self._resolvers.append(resolver)
        return resolver

    def resolve(self, pp: PacketPair, base: BaseCusp) -> Optional[BaseEntry]:
        for resolver in self._resolvers:
            entry = resolver(pp, base)
            if entry is not None:
                return entry
        return None

    def __len__(self) -> int:
        return len(self._resolvers)


@dataclass(frozen=True)
class ReductionStep:
    """One reduction move with its upward identification."""
    kind: str
    line: str
    before: JordanBlock
    after: Optional[JordanBlock]
    exponent: HalfInt
    parent: LanglandsDatum
    result: LanglandsDatum
    rule: str
    certificate: Optional[SocleCertificate] = None
    uncertified_reason: Optional[str] = None

    def to_json(self) -> Dict[str, Any]:
        return {
            "kind": self.kind,
            "line": self.line,
            "before": str(self.before),
            "after": str(self.after) if self.after is not None else None,
            "exponent": str(self.exponent),
            "parent": str(self.parent),
            "result": str(self.result),
            "rule": self.rule,
            "certificate": self.certificate.to_json() if self.certificate else None,
            "uncertified": self.uncertified_reason,
        }


@dataclass(frozen=True)
class ReductionTrace:
    """Reduction steps in the order they were taken, the base reached and the result."""
    pp: PacketPair
    steps: Tuple[ReductionStep, ...]
    base_kind: str
    base_datum: LanglandsDatum
    base_provenance: str
    result: LanglandsDatum
    eps_override: bool = False

    @property
    def certificates(self) -> List[SocleCertificate]:
        return [s.certificate for s in self.steps if s.certificate is not None]

    @property
    def uncertified(self) -> List[ReductionStep]:
        return [s for s in self.steps if s.certificate is None]

    @property
    def exponents(self) -> Tuple[HalfInt, ...]:
        return tuple(s.exponent for s in self.steps)

    def replay(self, base: BaseCusp, known: Optional[Mapping[LanglandsDatum, KnownRep]] = None) -> LanglandsDatum:
        """Rebuild the result from the base by re-running the identification rules."""
        d = self.base_datum
        for step in reversed(self.steps):
            _, d = extend(step.exponent, d, base.line(step.line), known)
        return d

    def to_json(self) -> Dict[str, Any]:
        return {
            "pp": self.pp.to_json(),
            "pp_str": str(self.pp),
            "steps": [s.to_json() for s in self.steps],
            "base": {"kind": self.base_kind, "datum": str(self.base_datum), "provenance": self.base_provenance},
            "result": str(self.result),
            "result_json": self.result.to_json(),
            "eps_override": self.eps_override,
        }


def _reducible_line(pp: PacketPair, base: BaseCusp) -> Tuple[CuspLine, bool]:
    """Least line with a block above its chain, and whether it is a boundary line."""
    for ln in base.lines:
        b, a, boundary = b_a_invariants(pp, ln)
        if a is not None:
            return ln, boundary
    raise BaseMismatch(f"Recursion bottomed at {pp}, which is not the configured base", {"pp": str(pp)})


def moeglin_rep(
    pp: PacketPair,
    base: BaseCusp,
    registry: Optional[BoundaryRegistry] = None,
    strict: Optional[bool] = None,
    eps_override: Optional[bool] = None,
) -> ReductionTrace:
    """π(ψ, ε) as a Langlands datum, by simple reduction steps down to σ or a registered base."""
    strict = settings.STRICT_CERTIFICATES if strict is None else strict
    if not is_elementary(pp.psi):
        raise PreconditionViolation(f"{pp} is not elementary")
    pp.psi.validate(_lines_of(base))
    overridden = check_eps_product(pp, base, eps_override)

    moves: List[StepMove] = []
    cur = pp
    known: Dict[LanglandsDatum, KnownRep] = {}
    while True:
        if matches_base(cur, base):
            base_kind, base_datum, provenance = "sigma", SIGMA, "cuspidal base"
            break
        entry = registry.resolve(cur, base) if registry is not None else None
        if entry is not None:
            base_kind, base_datum, provenance = "registered", entry.datum, entry.provenance
            if entry.known is not None:
                known[entry.datum] = entry.known
            break
        line, boundary = _reducible_line(cur, base)
        if boundary:
            _, cur, move = bypass_step(cur, line)
        else:
            _, cur, move = reduce_step(cur, line)
        moves.append(move)

    d = base_datum
    env: Envelope = standard_envelope(d, known)
    built: List[ReductionStep] = []
    for move in reversed(moves):
        line = base.line(move.line)
        rule, nxt = extend(move.exponent, d, line, known)
        cert, reason = None, None
        try:
            cert = socle_of(move.exponent, d, nxt, line, known, [env])
        except PacketForgeError as e:
            if strict:
                raise CertificateFailure(
                    f"Step ν^{move.exponent} ⋊ {d} could not be certified: {str(e)}",
                    {"parent": str(d), "x": str(move.exponent)},
                )
            reason = f"{type(e).__name__}: {str(e)}"
            logger.warning(f"Uncertified step ν^{move.exponent} ⋊ {d} -> {nxt}: {reason}")
        built.append(
            ReductionStep(move.kind, move.line, move.before, move.after, move.exponent, d, nxt, rule, cert, reason)
        )
        env = chain_envelope((move.exponent,), env, move.line)
        d = nxt
    trace = ReductionTrace(pp, tuple(reversed(built)), base_kind, base_datum, provenance, d, overridden)
    logger.debug(f"moeglin_rep: {pp} -> {d} ({len(built)} steps, base {base_kind})")
    return trace


def aubert_param(pp: PacketPair) -> PacketPair:
    """Swap (a, b) in every block, carrying ε along."""
    return PacketPair.of((blk.swapped(), v) for blk, v in pp.signed_blocks())


def dual_of_elementary_ddr(
    pp: PacketPair,
    base: BaseCusp,
    registry: Optional[BoundaryRegistry] = None,
    strict: Optional[bool] = None,
) -> ReductionTrace:
    """π(ψ, ε)^t = π(ψ^t, ε): the trace of the swapped parameter."""
    if not is_elementary(pp.psi) or not is_ddr(pp.psi):
        raise PreconditionViolation(f"{pp} is not an elementary DDR parameter")
    return moeglin_rep(aubert_param(pp), base, registry, strict)


@dataclass(frozen=True)
class BlockOrder:
    """A total order on the blocks of a parameter, largest first."""
    blocks: Tuple[JordanBlock, ...]

    @classmethod
    def natural(cls, p: AParam) -> "BlockOrder":
        return cls(tuple(sorted(p.blocks, key=lambda blk: (blk.a + blk.b, blk.B.twice, blk.zeta), reverse=True)))

    def is_admissible(self) -> bool:
        """No block strictly dominates (A, B, ζ) a block placed before it."""
        for i, hi_blk in enumerate(self.blocks):
            for lo_blk in self.blocks[i + 1:]:
                if lo_blk.line != hi_blk.line or lo_blk.zeta != hi_blk.zeta:
                    continue
                if lo_blk.A > hi_blk.A and lo_blk.B > hi_blk.B:
                    return False
        return True

    def __str__(self) -> str:
        return " > ".join(str(b) for b in self.blocks)


def dominate_descend(
    pp_high: PacketPair,
    order: BlockOrder,
    target: AParam,
    rep: LanglandsDatum,
    base: BaseCusp,
    known: Optional[Mapping[LanglandsDatum, KnownRep]] = None,
) -> JacResult:
    """Descend from a member of Π_{ψ_high} to Π_target by one-step Jac chains."""
    if not is_ddr(pp_high.psi):
        raise PreconditionViolation(f"{pp_high} is not DDR")
    if AParam(order.blocks) != target:
        raise ConfigError("The order must list exactly the blocks of the target")
    if not order.is_admissible():
        raise ConfigError(f"Order {order} is not admissible")
    natural = BlockOrder.natural(pp_high.psi).blocks
    if len(natural) != len(order.blocks):
        raise UnsupportedShift("Domination needs a block-for-block bijection")
    shifted: List[JordanBlock] = []
    for high, low in zip(natural, order.blocks):
        if high.line != low.line or high.zeta != low.zeta:
            raise UnsupportedShift(f"{high} cannot dominate {low}")
        t_a = high.A - low.A
        t_b = high.B - low.B
        if t_a != t_b or t_a.twice not in (0, 2):
            raise UnsupportedShift(f"Shift from {low} to {high} is not a single one-step row")
        if t_a.twice:
            if high.A != high.B:
                raise UnsupportedShift(f"{high} is not elementary; shifting it needs a chain of Jacs")
            shifted.append(high)
    current: JacResult = FormalSum.single(rep)
    for high in reversed(shifted):
        x = high.B if high.zeta > 0 else -high.B
        (d,) = tuple(current.keys())
        current = jac(d, x, base.line(high.line), known)
        logger.debug(f"dominate_descend: Jac_{x}({d}) = {current}")
        if isinstance(current, Undecidable) or not current:
            return current
    return current
