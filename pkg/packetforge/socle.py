# File: packetforge/packetforge/socle.py
# This file defines socle certificates for ν^x ⋊ π, the identification rules for the
# unique irreducible subrepresentation, and the Jac_x operators built on them.

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union
import logging

from packetforge.classical import (
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
    mu_star_cuspidal,
    strongly_positive,
)
from packetforge.core import (
    CuspLine,
    ExpString,
    FormalSum,
    GenKind,
    GLGen,
    HalfInt,
    Letter,
    Segment,
    render_string,
)
from packetforge.errors import (
    CandidateMismatch,
    ConfigError,
    MultiplicityNotOne,
    PacketForgeError,
    PreconditionViolation,
    UnsupportedStep,
    UnsupportedSymbol,
)
from packetforge.gl_hopf import Factor, count_string, gl_factor, string_set_factor

# Configure logging
logger = logging.getLogger(__name__)


class Undecidable:
    """Result of a Jacquet computation the certificate layer cannot settle."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "Undecidable"

    def __bool__(self) -> bool:
        return False


UNDECIDABLE = Undecidable()

JacResult = Union[FormalSum, Undecidable]


@dataclass(frozen=True)
class KnownRep:
    """A representation registered by hand, optionally with its exact cuspidal strings."""
    datum: LanglandsDatum
    provenance: str
    strings: Optional[FormalSum] = None
    head: Optional[ExpString] = None


Known = Mapping[LanglandsDatum, KnownRep]


@dataclass(frozen=True)
class Envelope:
    """An induced representation W = factors ⋊ T with π ↪ W; T given by a string set."""
    kind: str
    factors: Tuple[GLGen, ...]
    tail: FormalSum
    head: ExpString

    def string_factors(self) -> List[Factor]:
        out: List[Factor] = [gl_factor(g) for g in self.factors]
        out.append(string_set_factor(self.tail))
        return out

    def describe(self) -> str:
        gl = "×".join(str(g) for g in self.factors) or "1"
        return f"{self.kind}: {gl}⋊T, head {render_string(self.head)}"


def _neg(s: Segment) -> Segment:
    return s.contragredient()


def standard_envelope(d: LanglandsDatum, known: Optional[Known] = None) -> Envelope:
    """Negated segments by increasing exponent over the tempered string set.

    Runs of one-point segments with exponents c, c+1, ... are grouped into ζ([c, ...]).
    """
    k = known.get(d) if known else None
    if k is not None and k.strings is not None:
        return Envelope("registered", (), k.strings, k.head)
    negated = sorted((_neg(s) for s in d.segs), key=lambda s: (s.exponent, s.x.twice, s.y.twice))
    factors: List[GLGen] = []
    run: List[Segment] = []

    def flush():
        if run:
            factors.append(GLGen(GenKind.ZETA, Segment(run[0].line, run[0].x, run[-1].x)))
            run.clear()

    for s in negated:
        if s.length == 1:
            if run and (s.x.twice != run[-1].x.twice + 2 or s.line != run[-1].line):
                flush()
            run.append(s)
        else:
            flush()
            factors.append(GLGen(GenKind.DELTA, s))
    flush()
    head: ExpString = tuple(l for g in factors for l in g.string()) + d.temp.head()
    return Envelope("standard", tuple(factors), d.temp.string_set().strings, head)


def chain_envelope(exponents: Sequence[HalfInt], base: Envelope, line: str) -> Envelope:
    """ν^{x_k} × ... × ν^{x_1} ⋊ base, exponents given outermost first."""
    points = tuple(GLGen.point(x, line) for x in exponents)
    head = tuple(Letter(line, x) for x in exponents) + base.head
    return Envelope("chain", points + base.factors, base.tail, head)


def envelopes_of(d: LanglandsDatum, known: Optional[Known] = None, extra: Iterable[Envelope] = ()) -> List[Envelope]:
    envs = [standard_envelope(d, known)]
    envs.extend(e for e in extra if e is not None)
    return envs


def _x_factor(x: HalfInt, line: str) -> Factor:
    return gl_factor(GLGen.point(x, line))


def envelope_count(x: HalfInt, env: Envelope, line: str) -> int:
    """Multiplicity of x·head in the strings of ν^x × env."""
    target = (Letter(line, x),) + env.head
    return count_string([_x_factor(x, line)] + env.string_factors(), target)


def has_prefix(factors: Sequence[Factor], prefix: ExpString) -> bool:
    """Whether some string of the product of factors starts with prefix."""
    factors = [f for f in factors if f and f[0].letters > 0]

    def step(pos: int, state: Tuple) -> bool:
        if pos == len(prefix):
            return True
        letter = prefix[pos]
        for fi, (choice, progress) in enumerate(state):
            factor = factors[fi]
            if choice >= 0:
                for si, strand in enumerate(factor[choice].strands):
                    p = progress[si]
                    if p < len(strand) and strand[p] == letter:
                        moved = progress[:si] + (p + 1,) + progress[si + 1:]
                        if step(pos + 1, state[:fi] + ((choice, moved),) + state[fi + 1:]):
                            return True
            else:
                for ai, alt in enumerate(factor):
                    for si, strand in enumerate(alt.strands):
                        if strand and strand[0] == letter:
                            moved = tuple(1 if k == si else 0 for k in range(len(alt.strands)))
                            if step(pos + 1, state[:fi] + ((ai, moved),) + state[fi + 1:]):
                                return True
        return False

    return step(0, tuple((-1, ()) for _ in factors))


@dataclass(frozen=True)
class SocleCertificate:
    """ν^x ⋊ parent has a unique irreducible subrepresentation, identified as target."""
    target: LanglandsDatum
    x: HalfInt
    parent: LanglandsDatum
    leading_string: ExpString
    multiplicity: int
    envelope: str

    def to_json(self) -> Dict[str, Any]:
        return {
            "x": str(self.x),
            "parent": str(self.parent),
            "target": str(self.target),
            "leading_string": render_string(self.leading_string),
            "mult": self.multiplicity,
            "envelope": self.envelope,
        }


def socle_of(
    x: HalfInt,
    pi: LanglandsDatum,
    candidate: LanglandsDatum,
    line: CuspLine,
    known: Optional[Known] = None,
    parent_envelopes: Iterable[Envelope] = (),
) -> SocleCertificate:
    """Certify that candidate is the unique irreducible subrepresentation of ν^x ⋊ pi."""
    best: Optional[Tuple[int, Envelope]] = None
    for env in envelopes_of(pi, known, parent_envelopes):
        count = envelope_count(x, env, line.id)
        logger.debug(f"socle_of: x={x} parent={pi} {env.kind} count={count}")
        if best is None or count < best[0]:
            best = (count, env)
        if count == 1:
            break
    count, env = best
    leading = (Letter(line.id, x),) + env.head
    if count != 1:
        raise MultiplicityNotOne(
            count,
            f"ν^{x} ⋊ {pi}: leading string {render_string(leading)} occurs {count} times",
            {"x": str(x), "parent": str(pi)},
        )
    cand_env = standard_envelope(candidate, known)
    if count_string(cand_env.string_factors(), leading) == 0:
        raise CandidateMismatch(
            f"{candidate} does not contain {render_string(leading)}; it is not the socle of ν^{x} ⋊ {pi}",
            {"x": str(x), "parent": str(pi), "candidate": str(candidate)},
        )
    return SocleCertificate(candidate, x, pi, leading, count, env.describe())


# Identification rules


def _linked_with_point(x: HalfInt, s: Segment) -> bool:
    """[x] and s are linked: x sits right before or right after s."""
    return x == s.x - 1 or x == s.y + 1


def _unlinked(x: HalfInt, segs: Iterable[Segment]) -> bool:
    return not any(_linked_with_point(x, _neg(s)) for s in segs)


def extend_tempered(tau: TemperedSymbol, x: HalfInt, line: CuspLine) -> Optional[TemperedSymbol]:
    """The unique irreducible subrepresentation of ν^x ⋊ τ, when it is tempered and known."""
    alpha = line.alpha
    if isinstance(tau, Cusp):
        if alpha.twice > 0 and x == alpha:
            return GenSteinberg(Segment(line.id, alpha, alpha))
        return None
    if isinstance(tau, GenSteinberg):
        if x == tau.seg.y + 1:
            return GenSteinberg(Segment(line.id, tau.seg.x, x))
        if x == alpha - 1 and x.twice > 0:
            return StronglyPositive((Segment(line.id, x, x), tau.seg))
        return None
    if isinstance(tau, StronglyPositive):
        segs = list(tau.segs)
        for i, s in enumerate(segs):
            if x == s.y + 1 and (i == len(segs) - 1 or x < segs[i + 1].y):
                segs[i] = Segment(s.line, s.x, x)
                return StronglyPositive(tuple(segs))
        if x == segs[0].x - 1 and x.twice > 0:
            return StronglyPositive((Segment(line.id, x, x),) + tuple(segs))
        return None
    if isinstance(tau, PMZeroChain):
        if x.twice == 2 * (tau.n + 1):
            return PMZeroChain(tau.n + 1, tau.sign, tau.line_id)
        return None
    if isinstance(tau, PMSquare):
        if x == tau.y + 1:
            return PMSquare(tau.x0, x, tau.sign, tau.line_id)
        return None
    if isinstance(tau, TauPM):
        if x.twice == 2 * (tau.n + 1):
            return TauPM(tau.sign, tau.n + 1, tau.line_id)
        return None
    if isinstance(tau, UnitaryInduced):
        if x == tau.h + 1 or x == -(tau.h + 1):
            return None
        inner = extend_tempered(tau.inner, x, line)
        return UnitaryInduced(tau.h, inner, tau.sign) if inner is not None else None
    raise UnsupportedSymbol(f"No extension rule for {tau}")


def shrink_tempered(tau: TemperedSymbol, x: HalfInt, line: CuspLine) -> List[TemperedSymbol]:
    """Tempered symbols τ0 with extend_tempered(τ0, x) possibly equal to τ."""
    out: List[TemperedSymbol] = []
    if isinstance(tau, GenSteinberg) and x == tau.seg.y:
        out.append(Cusp() if tau.seg.length == 1 else GenSteinberg(Segment(tau.line, tau.seg.x, x - 1)))
    elif isinstance(tau, StronglyPositive):
        segs = list(tau.segs)
        if segs[0].length == 1 and x == segs[0].x:
            out.append(strongly_positive(segs[1:]))
        for i, s in enumerate(segs):
            if x == s.y and s.length > 1:
                trial = segs[:i] + [Segment(s.line, s.x, x - 1)] + segs[i + 1:]
                out.append(strongly_positive(trial))
    elif isinstance(tau, PMZeroChain) and tau.n >= 1 and x.twice == 2 * tau.n:
        out.append(PMZeroChain(tau.n - 1, tau.sign, tau.line_id))
    elif isinstance(tau, PMSquare) and x == tau.y and tau.y > tau.x0:
        out.append(PMSquare(tau.x0, x - 1, tau.sign, tau.line_id))
    elif isinstance(tau, TauPM) and tau.n >= 2 and x.twice == 2 * tau.n:
        out.append(TauPM(tau.sign, tau.n - 1, tau.line_id))
    elif isinstance(tau, UnitaryInduced):
        out.extend(UnitaryInduced(tau.h, inner, tau.sign) for inner in shrink_tempered(tau.inner, x, line))
    valid = []
    for t in out:
        try:
            t.validate(line)
            valid.append(t)
        except ConfigError:
            continue
    return valid


def _with_segs(d: LanglandsDatum, segs: Iterable[Segment], temp: Optional[TemperedSymbol] = None) -> LanglandsDatum:
    return LanglandsDatum(tuple(segs), temp if temp is not None else d.temp)


def _remove_one(segs: Sequence[Segment], target: Segment) -> List[Segment]:
    out = list(segs)
    out.remove(target)
    return out


def extension_candidates(x: HalfInt, parent: LanglandsDatum, line: CuspLine) -> List[Tuple[str, LanglandsDatum]]:
    """Candidate data for the socle of ν^x ⋊ parent, in priority order."""
    alpha = line.alpha
    segs = list(parent.segs)
    tau = parent.temp
    out: List[Tuple[str, LanglandsDatum]] = []
    lid = line.id

    ext = extend_tempered(tau, x, line)
    if ext is not None and _unlinked(x, segs):
        out.append(("tempered-extension", _with_segs(parent, segs, ext)))

    half = HalfInt(1)
    if alpha == half and x == half and isinstance(tau, Cusp):
        point = Segment(lid, half, half)
        if point in segs:
            out.append(("half-square", _with_segs(parent, _remove_one(segs, point), PMSquare(half, half, -1, lid))))

    if x.twice < 0:
        lower = [s for s in segs if _neg(s).exponent < x.as_fraction()]
        if _unlinked(x, lower):
            out.append(("negative-point", _with_segs(parent, segs + [Segment(lid, -x, -x)])))
        for s in segs:
            if s.x == -x + 1:
                merged = _remove_one(segs, s) + [Segment(lid, -x, s.y)]
                out.append(("negative-merge", _with_segs(parent, merged)))
                break

    generic = (isinstance(tau, Cusp) and x != alpha) or (isinstance(tau, GenSteinberg) and x <= alpha - 2)
    if x.twice > 0 and generic:
        small = all(x.as_fraction() <= s.exponent for s in segs)
        if small and _unlinked(x, segs):
            out.append(("flip", _with_segs(parent, segs + [Segment(lid, x, x)])))
    return out


def extend(
    x: HalfInt,
    parent: LanglandsDatum,
    line: CuspLine,
    known: Optional[Known] = None,
) -> Tuple[str, LanglandsDatum]:
    """Identify the unique irreducible subrepresentation of ν^x ⋊ parent.

    The first candidate whose strings contain x·head(parent) wins.
    """
    if x.twice == 0:
        raise UnsupportedStep(f"ν^0 ⋊ {parent} is not covered by the identification rules")
    leading = (Letter(line.id, x),) + standard_envelope(parent, known).head
    candidates = extension_candidates(x, parent, line)
    for rule, cand in candidates:
        try:
            cand.validate(line)
        except ConfigError:
            continue
        env = standard_envelope(cand, known)
        if count_string(env.string_factors(), leading) > 0:
            logger.debug(f"extend: ν^{x} ⋊ {parent} -> {cand} ({rule})")
            return rule, cand
    raise UnsupportedStep(
        f"No identification rule for the socle of ν^{x} ⋊ {parent}",
        {"x": str(x), "parent": str(parent), "tried": [r for r, _ in candidates]},
    )


def peel_candidates(x: HalfInt, pi: LanglandsDatum, line: CuspLine) -> List[LanglandsDatum]:
    """Data π0 that some identification rule could extend by ν^x to pi."""
    segs = list(pi.segs)
    lid = line.id
    out: List[LanglandsDatum] = []
    for t in shrink_tempered(pi.temp, x, line):
        out.append(_with_segs(pi, segs, t))
    half = HalfInt(1)
    if line.alpha == half and x == half and pi.temp == PMSquare(half, half, -1, lid):
        out.append(_with_segs(pi, segs + [Segment(lid, half, half)], Cusp()))
    point = Segment(lid, abs(x), abs(x))
    if point in segs:
        out.append(_with_segs(pi, _remove_one(segs, point)))
    if x.twice < 0:
        for s in segs:
            if s.x == -x and s.length > 1:
                out.append(_with_segs(pi, _remove_one(segs, s) + [Segment(lid, -x + 1, s.y)]))
    return out


def jac(
    pi: LanglandsDatum,
    x: HalfInt,
    line: CuspLine,
    known: Optional[Known] = None,
    envelopes: Iterable[Envelope] = (),
) -> JacResult:
    """Jac_x(pi): {π0: 1} when certified, 0 when no string starts with x, else Undecidable."""
    if x.twice == 0:
        return UNDECIDABLE
    pi_env = standard_envelope(pi, known)
    factors = pi_env.string_factors()
    letter = Letter(line.id, x)
    if not has_prefix(factors, (letter,)):
        return FormalSum.zero()
    if has_prefix(factors, (letter, letter)):
        logger.debug(f"jac: {pi} has a string starting with ({x},{x})")
        return UNDECIDABLE
    for pi0 in peel_candidates(x, pi, line):
        try:
            pi0.validate(line)
            rule, ext = extend(x, pi0, line, known)
            if ext != pi:
                continue
            socle_of(x, pi0, pi, line, known, envelopes)
        except PacketForgeError as e:
            logger.debug(f"jac: candidate {pi0} rejected: {str(e)}")
            continue
        return FormalSum.single(pi0)
    return UNDECIDABLE


def leading_jacquet(
    pi: LanglandsDatum, x: HalfInt, line: CuspLine, known: Optional[Known] = None
) -> Union[Tuple[int, LanglandsDatum], Undecidable]:
    """Largest f with ν^x ⊗ ... ⊗ ν^x ⊗ θ in the Jacquet module, together with θ."""
    if x.twice == 0:
        return UNDECIDABLE
    f, theta = 0, pi
    while True:
        result = jac(theta, x, line, known)
        if isinstance(result, Undecidable):
            return UNDECIDABLE
        if not result:
            return f, theta
        (theta,) = tuple(result.keys())
        f += 1


def jac_strings(strings: FormalSum, x: HalfInt, line: str) -> FormalSum:
    """Jac_x on the string level: keep strings starting with x and drop that letter."""
    letter = Letter(line, x)
    return FormalSum((s[1:], c) for s, c in strings.items() if s and s[0] == letter)


def jac_commute_check(e: InducedExpr, x: HalfInt, y: HalfInt, line: str) -> bool:
    """Jac_y∘Jac_x and Jac_x∘Jac_y agree on the strings of e (|x − y| ≠ 1)."""
    if abs(x - y).twice == 2:
        raise PreconditionViolation(f"Exponents {x} and {y} are adjacent")
    strings = mu_star_cuspidal(e)
    one = jac_strings(jac_strings(strings, x, line), y, line)
    two = jac_strings(jac_strings(strings, y, line), x, line)
    return one == two
