# File: packetforge/packetforge/classical.py
# This file defines symbolic labels for irreducible representations of the classical
# group (tempered symbols, Langlands data), induced expressions over the cuspidal base,
# and their expansion to cuspidal exponent strings.

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import TYPE_CHECKING, Any, Dict, Iterable, List, Optional, Tuple, Union
import logging

from packetforge.config import settings
from packetforge.core import (
    DEFAULT_LINE,
    CuspLine,
    ExpString,
    FormalSum,
    GenKind,
    GLGen,
    GLWord,
    HalfInt,
    Letter,
    Segment,
    UNIT_WORD,
    hi,
    word_canon,
)
from packetforge.errors import ConfigError, PreconditionViolation, UnsupportedSymbol
from packetforge.gl_hopf import (
    Factor,
    expand_factors,
    gl_factor,
    plain_factor,
    string_set_factor,
)

if TYPE_CHECKING:
    from packetforge.arthur import AParam, EpsChar

# Configure logging
logger = logging.getLogger(__name__)


def _desc(line: str, top: HalfInt, bottom: HalfInt) -> ExpString:
    return tuple(Letter(line, HalfInt(t)) for t in range(top.twice, bottom.twice - 1, -2))


def casselman_ok(s: ExpString, strict: bool) -> bool:
    """Partial sums of exponents read left to right are positive (strict) or nonnegative."""
    total = 0
    for letter in s:
        total += letter.x.twice
        if total < 0 or (strict and total == 0):
            return False
    return True


@dataclass(frozen=True)
class StringSet:
    """Cuspidal strings of a tempered symbol over σ; exact or an over-approximation."""
    strings: FormalSum
    exact: bool


class TemperedSymbol(ABC):
    """Irreducible tempered representation of the classical group, as a label."""

    tag: str = ""

    @abstractmethod
    def validate(self, line: CuspLine) -> None:
        ...

    @abstractmethod
    def head(self) -> ExpString:
        """String read off the defining embedding chain, outermost first."""

    @abstractmethod
    def chain(self) -> Tuple[GLGen, ...]:
        """Defining embedding into an induced representation from σ, outermost first."""

    @abstractmethod
    def _string_set(self) -> StringSet:
        ...

    @abstractmethod
    def args(self) -> Dict[str, Any]:
        ...

    def string_set(self) -> StringSet:
        return _cached_string_set(self)

    @property
    def line(self) -> str:
        return DEFAULT_LINE

    def support(self) -> Tuple[HalfInt, ...]:
        """Cuspidal support up to sign."""
        return tuple(sorted(abs(l.x) for l in self.head()))

    def to_json(self) -> Dict[str, Any]:
        return {"tag": self.tag, "args": self.args()}

    def sort_key(self) -> Tuple:
        return (self.tag, str(self.args()))


@lru_cache(maxsize=None)
def _cached_string_set(symbol: TemperedSymbol) -> StringSet:
    return symbol._string_set()


def _sign(sign: int) -> str:
    return "+" if sign > 0 else "−"


@dataclass(frozen=True)
class Cusp(TemperedSymbol):
    line_id: str = DEFAULT_LINE
    tag = "Cusp"

    def validate(self, line: CuspLine) -> None:
        return None

    def head(self) -> ExpString:
        return ()

    def chain(self) -> Tuple[GLGen, ...]:
        return ()

    def _string_set(self) -> StringSet:
        return StringSet(FormalSum.single(()), True)

    def args(self) -> Dict[str, Any]:
        return {}

    def __str__(self) -> str:
        return "σ"


@dataclass(frozen=True)
class GenSteinberg(TemperedSymbol):
    """δ([α, α+n]; σ)."""
    seg: Segment
    tag = "GenSteinberg"

    @property
    def line(self) -> str:
        return self.seg.line

    def validate(self, line: CuspLine) -> None:
        if line.alpha.twice <= 0:
            raise ConfigError("Generalized Steinberg needs α > 0")
        if self.seg.is_empty or self.seg.x != line.alpha:
            raise ConfigError(f"Generalized Steinberg segment {self.seg} must start at α={line.alpha}")

    def head(self) -> ExpString:
        return _desc(self.line, self.seg.y, self.seg.x)

    def chain(self) -> Tuple[GLGen, ...]:
        return tuple(GLGen.point(p, self.line) for p in reversed(self.seg.points()))

    def _string_set(self) -> StringSet:
        return StringSet(FormalSum.single(self.head()), True)

    def args(self) -> Dict[str, Any]:
        return {"seg": self.seg.to_json()}

    def __str__(self) -> str:
        return f"δ({self.seg};σ)"


@dataclass(frozen=True)
class StronglyPositive(TemperedSymbol):
    """δ_sp([s_1,t_1],…,[s_k,t_k]; σ) with s_i = α−k+i, t_i increasing, s_1 > 0."""
    segs: Tuple[Segment, ...]
    tag = "StronglyPositive"

    @property
    def line(self) -> str:
        return self.segs[0].line

    def validate(self, line: CuspLine) -> None:
        k = len(self.segs)
        if k < 2:
            raise ConfigError("Strongly positive symbol needs at least two segments")
        for i, s in enumerate(self.segs, start=1):
            if s.is_empty or s.x != line.alpha - (k - i):
                raise ConfigError(f"Segment {s} does not start at α−{k - i}")
        if self.segs[0].x.twice <= 0:
            raise ConfigError("Strongly positive segments must start above 0")
        tops = [s.y.twice for s in self.segs]
        if any(a >= b for a, b in zip(tops, tops[1:])):
            raise ConfigError("Strongly positive segment ends must strictly increase")

    def rest(self) -> TemperedSymbol:
        return strongly_positive(self.segs[1:])

    def head(self) -> ExpString:
        first = self.segs[0]
        return _desc(self.line, first.y, first.x) + self.rest().head()

    def chain(self) -> Tuple[GLGen, ...]:
        return (GLGen(GenKind.DELTA, self.segs[0]),) + self.rest().chain()

    def _string_set(self) -> StringSet:
        inner = self.rest().string_set()
        full = expand_factors([gl_factor(GLGen(GenKind.DELTA, self.segs[0])), string_set_factor(inner.strings)])
        kept = FormalSum((s, c) for s, c in full.items() if casselman_ok(s, strict=True))
        return StringSet(kept, False)

    def args(self) -> Dict[str, Any]:
        return {"segs": [s.to_json() for s in self.segs]}

    def __str__(self) -> str:
        return "δ_sp(" + ",".join(str(s) for s in self.segs) + ";σ)"


def strongly_positive(segs: Iterable[Segment]) -> TemperedSymbol:
    """Normalizes a one-segment list to a generalized Steinberg symbol."""
    segs = tuple(segs)
    if not segs:
        return Cusp()
    if len(segs) == 1:
        return GenSteinberg(segs[0])
    return StronglyPositive(segs)


@dataclass(frozen=True)
class PMSquare(TemperedSymbol):
    """δ([−x0, y]_±; σ) with x0 ≤ y, both ≡ α and ≥ α."""
    x0: HalfInt
    y: HalfInt
    sign: int
    line_id: str = DEFAULT_LINE
    tag = "PMSquare"

    @property
    def line(self) -> str:
        return self.line_id

    def validate(self, line: CuspLine) -> None:
        if line.alpha.twice <= 0:
            raise ConfigError("δ([−x,y]_±;σ) needs α > 0")
        if (self.x0 - line.alpha).twice < 0 or not (self.x0 - line.alpha).is_integer:
            raise ConfigError(f"x={self.x0} must satisfy x−α ∈ ℤ≥0")
        if (self.y - self.x0).twice < 0 or not (self.y - self.x0).is_integer:
            raise ConfigError(f"Need x ≤ y, got {self.x0} > {self.y}")
        if self.sign not in (1, -1):
            raise ConfigError("Sign must be ±1")

    def segment(self) -> Segment:
        return Segment(self.line, -self.x0, self.y)

    def head(self) -> ExpString:
        return _desc(self.line, self.y, -self.x0)

    def chain(self) -> Tuple[GLGen, ...]:
        return (GLGen(GenKind.DELTA, self.segment()),)

    def _string_set(self) -> StringSet:
        full = expand_factors([gl_factor(GLGen(GenKind.DELTA, self.segment()))])
        strict = self.x0 != self.y
        terms = {s: c for s, c in full.items() if casselman_ok(s, strict=strict)}
        # δ([−x,y])⋊σ holds the head twice, once in each sign.
        head = self.head()
        terms[head] = min(terms.get(head, 0), 1)
        return StringSet(FormalSum(terms), False)

    def args(self) -> Dict[str, Any]:
        return {"x0": str(self.x0), "y": str(self.y), "sign": self.sign}

    def __str__(self) -> str:
        return f"δ([{-self.x0},{self.y}]_{_sign(self.sign)};σ)"


@dataclass(frozen=True)
class PMZeroChain(TemperedSymbol):
    """δ([0, n]_±; σ) at α = 0."""
    n: int
    sign: int
    line_id: str = DEFAULT_LINE
    tag = "PMZeroChain"

    @property
    def line(self) -> str:
        return self.line_id

    def validate(self, line: CuspLine) -> None:
        if line.alpha.twice != 0:
            raise ConfigError("δ([0,n]_±;σ) needs α = 0")
        if self.n < 0 or self.sign not in (1, -1):
            raise ConfigError("Need n ≥ 0 and sign ±1")

    def head(self) -> ExpString:
        return _desc(self.line, HalfInt(2 * self.n), HalfInt(0))

    def chain(self) -> Tuple[GLGen, ...]:
        return tuple(GLGen.point(k, self.line) for k in range(self.n, -1, -1))

    def _string_set(self) -> StringSet:
        return StringSet(FormalSum.single(self.head()), True)

    def args(self) -> Dict[str, Any]:
        return {"n": self.n, "sign": self.sign}

    def __str__(self) -> str:
        if self.n == 0:
            return f"δ([0]_{_sign(self.sign)};σ)"
        return f"δ([0,{self.n}]_{_sign(self.sign)};σ)"


@dataclass(frozen=True)
class TauPM(TemperedSymbol):
    """τ([0]_±; δ([1, n]; σ)) at α = 1."""
    sign: int
    n: int
    line_id: str = DEFAULT_LINE
    tag = "TauPM"

    @property
    def line(self) -> str:
        return self.line_id

    def validate(self, line: CuspLine) -> None:
        if line.alpha.twice != 2:
            raise ConfigError("τ([0]_±;δ([1,n];σ)) needs α = 1")
        if self.n < 1 or self.sign not in (1, -1):
            raise ConfigError("Need n ≥ 1 and sign ±1")

    def inner(self) -> GenSteinberg:
        return GenSteinberg(Segment.of(1, self.n, self.line))

    def head(self) -> ExpString:
        return (Letter(self.line, HalfInt(0)),) + self.inner().head()

    def chain(self) -> Tuple[GLGen, ...]:
        return (GLGen.point(0, self.line),) + self.inner().chain()

    def _string_set(self) -> StringSet:
        # [0]⋊δ([1,n];σ) splits its two copies of every string between τ_+ and τ_−
        full = expand_factors([plain_factor(GLGen.point(0, self.line)), string_set_factor(self.inner().string_set().strings)])
        kept = FormalSum((s, c) for s, c in full.items() if casselman_ok(s, strict=False))
        return StringSet(kept, False)

    def args(self) -> Dict[str, Any]:
        return {"sign": self.sign, "n": self.n}

    def __str__(self) -> str:
        return f"τ([0]_{_sign(self.sign)};δ([1,{self.n}];σ))" if self.n > 1 else f"τ([0]_{_sign(self.sign)};δ([1];σ))"


@dataclass(frozen=True)
class UnitaryInduced(TemperedSymbol):
    """δ([−h, h]) ⋊ τ when irreducible (sign 0), else one of its two constituents."""
    h: HalfInt
    inner: TemperedSymbol
    sign: int = 0
    tag = "UnitaryInduced"

    @property
    def line(self) -> str:
        return self.inner.line

    def validate(self, line: CuspLine) -> None:
        if self.h.twice < 0:
            raise ConfigError("Need h ≥ 0")
        if self.sign not in (-1, 0, 1):
            raise ConfigError("Sign must be 0 or ±1")
        if self.sign == 0 and self.h == line.alpha and isinstance(self.inner, Cusp):
            raise ConfigError(f"δ([−α,α])⋊σ is reducible at α={line.alpha}")
        self.inner.validate(line)

    def segment(self) -> Segment:
        return Segment(self.line, -self.h, self.h)

    def head(self) -> ExpString:
        return _desc(self.line, self.h, -self.h) + self.inner.head()

    def chain(self) -> Tuple[GLGen, ...]:
        return (GLGen(GenKind.DELTA, self.segment()),) + self.inner.chain()

    def _string_set(self) -> StringSet:
        inner = self.inner.string_set()
        full = expand_factors([gl_factor(GLGen(GenKind.DELTA, self.segment())), string_set_factor(inner.strings)])
        return StringSet(full, inner.exact and self.sign == 0)

    def args(self) -> Dict[str, Any]:
        return {"h": str(self.h), "inner": self.inner.to_json(), "sign": self.sign}

    def __str__(self) -> str:
        seg = f"[{-self.h},{self.h}]" if self.h.twice else "[0]"
        if self.sign:
            return f"({seg}⋊{self.inner})_{_sign(self.sign)}"
        return f"{seg}⋊{self.inner}"


_SYMBOLS = {
    cls.tag: cls for cls in (Cusp, GenSteinberg, StronglyPositive, PMSquare, PMZeroChain, TauPM, UnitaryInduced)
}


def symbol_from_json(data: Dict[str, Any]) -> TemperedSymbol:
    """Inverse of TemperedSymbol.to_json."""
    try:
        tag, args = data["tag"], data.get("args", {})
        if tag == "Cusp":
            return Cusp()
        if tag == "GenSteinberg":
            return GenSteinberg(Segment.from_json(args["seg"]))
        if tag == "StronglyPositive":
            return StronglyPositive(tuple(Segment.from_json(s) for s in args["segs"]))
        if tag == "PMSquare":
            return PMSquare(hi(args["x0"]), hi(args["y"]), int(args["sign"]))
        if tag == "PMZeroChain":
            return PMZeroChain(int(args["n"]), int(args["sign"]))
        if tag == "TauPM":
            return TauPM(int(args["sign"]), int(args["n"]))
        if tag == "UnitaryInduced":
            return UnitaryInduced(hi(args["h"]), symbol_from_json(args["inner"]), int(args.get("sign", 0)))
    except (KeyError, TypeError) as e:
        raise ConfigError(f"Malformed tempered symbol: {str(e)}")
    raise UnsupportedSymbol(f"Unknown tempered symbol tag {data.get('tag')!r}")


def _seg_key(s: Segment) -> Tuple:
    return (-s.exponent, s.line, s.x.twice, s.y.twice)


@dataclass(frozen=True)
class LanglandsDatum:
    """L(a; τ): a multiset of segments with positive exponent and a tempered symbol."""
    segs: Tuple[Segment, ...]
    temp: TemperedSymbol

    def __post_init__(self):
        for s in self.segs:
            if s.is_empty or s.exponent <= 0:
                raise PreconditionViolation(f"Langlands segment {s} needs x+y > 0")
        object.__setattr__(self, "segs", tuple(sorted(self.segs, key=_seg_key)))

    @property
    def is_tempered(self) -> bool:
        return not self.segs

    @property
    def letters(self) -> int:
        return sum(s.length for s in self.segs) + len(self.temp.head())

    def validate(self, line: CuspLine) -> "LanglandsDatum":
        self.temp.validate(line)
        return self

    def support(self) -> Tuple[HalfInt, ...]:
        """Cuspidal support up to sign, sorted."""
        pts = [abs(p) for s in self.segs for p in s.points()]
        return tuple(sorted(pts + list(self.temp.support())))

    def sort_key(self) -> Tuple:
        return (tuple((s.line, s.x.twice, s.y.twice) for s in self.segs), self.temp.sort_key())

    def to_json(self) -> Dict[str, Any]:
        return {"segs": [s.to_json() for s in self.segs], "temp": self.temp.to_json()}

    @classmethod
    def from_json(cls, data: Dict[str, Any]) -> "LanglandsDatum":
        try:
            return cls(tuple(Segment.from_json(s) for s in data["segs"]), symbol_from_json(data["temp"]))
        except KeyError as e:
            raise ConfigError(f"Malformed Langlands datum: missing {str(e)}")

    def __str__(self) -> str:
        if not self.segs:
            return str(self.temp)
        return "L(" + ",".join(str(s) for s in self.segs) + ";" + str(self.temp) + ")"


SIGMA = LanglandsDatum((), Cusp())


def tempered(symbol: TemperedSymbol) -> LanglandsDatum:
    return LanglandsDatum((), symbol)


def datum(segs: Iterable[Segment], temp: Optional[TemperedSymbol] = None) -> LanglandsDatum:
    return LanglandsDatum(tuple(segs), temp or Cusp())


def tr_points(x, y, line: str = DEFAULT_LINE) -> Tuple[Segment, ...]:
    """[x,y]^tr as the multiset of its one-point segments."""
    return tuple(Segment.of(p, p, line) for p in Segment.of(x, y, line).points())


@dataclass(frozen=True)
class BaseCusp:
    """The cuspidal base σ with its tempered A-parameter and character."""
    sigma_id: str
    lines: Tuple[CuspLine, ...]
    psi_sigma: "AParam"
    eps_sigma: "EpsChar"

    def line(self, line_id: str = DEFAULT_LINE) -> CuspLine:
        for ln in self.lines:
            if ln.id == line_id:
                return ln
        raise ConfigError(f"Unknown cuspidal line {line_id!r}")

    @property
    def main_line(self) -> CuspLine:
        return self.lines[0]

    def __str__(self) -> str:
        return "σ"


@dataclass(frozen=True)
class InducedExpr:
    """π ⋊ τ at Grothendieck level: a GL word over a tempered datum or over σ."""
    gl: GLWord
    base: Union[LanglandsDatum, BaseCusp]

    def ordered_factors(self) -> Tuple[GLGen, ...]:
        """Factors arranged by decreasing exponent, as in a standard module."""
        return tuple(sorted(self.gl.factors, key=lambda g: (-g.seg.exponent, g.sort_key())))

    @property
    def over_sigma(self) -> bool:
        return isinstance(self.base, BaseCusp) or self.base == SIGMA

    def factors(self) -> List[Factor]:
        """String factors: M*_GL of every GL generator, then the tempered string set."""
        out: List[Factor] = [gl_factor(g) for g in self.gl.factors]
        if isinstance(self.base, LanglandsDatum):
            if not self.base.is_tempered:
                raise PreconditionViolation("Induction over a non-tempered datum has no string set")
            out.append(string_set_factor(self.base.temp.string_set().strings))
        return out

    def __str__(self) -> str:
        gl = "×".join(str(g) for g in self.ordered_factors()) or "1"
        return f"{gl}⋊{self.base}"


def mu_star_cuspidal(expr: InducedExpr) -> FormalSum:
    """Cuspidal strings (over σ) of an induced expression, with multiplicity."""
    return expand_factors(expr.factors())


def standard_module(d: LanglandsDatum) -> InducedExpr:
    """λ(a;τ): δ(Δ)'s in decreasing exponent order over the tempered symbol."""
    return InducedExpr(word_canon(GLGen(GenKind.DELTA, s) for s in d.segs), tempered(d.temp))


def full_cuspidal_envelope(d: LanglandsDatum) -> InducedExpr:
    """An induced representation from σ containing d: negated segments, then the tempered chain."""
    gens = [GLGen(GenKind.DELTA, s.contragredient()) for s in d.segs]
    gens.extend(d.temp.chain())
    return InducedExpr(word_canon(gens), SIGMA)
