# File: packetforge/packetforge/core.py
# This file defines the exact value types shared by every module: half-integers,
# cuspidal lines, segments, segment generators, commutative words, formal sums
# and cuspidal exponent strings.

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any, Callable, Dict, Generic, Iterable, Iterator, NamedTuple, Optional, Tuple, TypeVar, Union
import logging

from packetforge.errors import ConfigError, PreconditionViolation

# Configure logging
logger = logging.getLogger(__name__)

DEFAULT_LINE = "rho"

B = TypeVar("B")
C = TypeVar("C")


@dataclass(frozen=True, order=True)
class HalfInt:
    """An element of ½ℤ stored as its double."""
    twice: int

    @classmethod
    def parse(cls, value: Union["HalfInt", int, str, Fraction, float]) -> "HalfInt":
        """Accept 5/2, "5/2", "2.5", Fraction(5, 2) or an existing HalfInt."""
        if isinstance(value, HalfInt):
            return value
        if isinstance(value, bool):
            raise ConfigError(f"Not a half-integer: {value!r}")
        try:
            if isinstance(value, str):
                value = Fraction(value.strip())
            doubled = Fraction(value) * 2
        except (ValueError, ZeroDivisionError, TypeError) as e:
            raise ConfigError(f"Not a half-integer: {value!r} ({str(e)})")
        if doubled.denominator != 1:
            raise ConfigError(f"Not a half-integer: {value!r}")
        return cls(int(doubled))

    @property
    def is_integer(self) -> bool:
        return self.twice % 2 == 0

    def as_fraction(self) -> Fraction:
        return Fraction(self.twice, 2)

    def __add__(self, other: Union["HalfInt", int]) -> "HalfInt":
        return HalfInt(self.twice + _twice(other))

    __radd__ = __add__

    def __sub__(self, other: Union["HalfInt", int]) -> "HalfInt":
        return HalfInt(self.twice - _twice(other))

    def __rsub__(self, other: Union["HalfInt", int]) -> "HalfInt":
        return HalfInt(_twice(other) - self.twice)

    def __neg__(self) -> "HalfInt":
        return HalfInt(-self.twice)

    def __abs__(self) -> "HalfInt":
        return HalfInt(abs(self.twice))

    def __str__(self) -> str:
        if self.twice % 2 == 0:
            return str(self.twice // 2)
        return f"{self.twice}/2"

    def __repr__(self) -> str:
        return f"HalfInt({self})"


def _twice(value: Union[HalfInt, int]) -> int:
    if isinstance(value, HalfInt):
        return value.twice
    if isinstance(value, int) and not isinstance(value, bool):
        return 2 * value
    raise TypeError(f"Cannot combine HalfInt with {type(value).__name__}")


def hi(value: Union[HalfInt, int, str, Fraction, float]) -> HalfInt:
    """Shorthand for HalfInt.parse."""
    return HalfInt.parse(value)


ZERO = HalfInt(0)
HALF = HalfInt(1)
ONE = HalfInt(2)


class Parity(str, Enum):
    ODD = "odd"
    EVEN = "even"

    @classmethod
    def of(cls, value: int) -> "Parity":
        return cls.ODD if value % 2 else cls.EVEN


@dataclass(frozen=True)
class CuspLine:
    """A selfcontragredient cuspidal ρ with its reducibility exponent α against σ.

    Good-parity blocks on the line have c ≡ 2α+1 (mod 2), so the parity is
    derived from α whenever it is not given.
    """
    id: str = DEFAULT_LINE
    alpha: HalfInt = ZERO
    parity: Optional[Parity] = None
    dim_hint: Optional[int] = None

    def __post_init__(self):
        if self.alpha.twice < 0:
            raise ConfigError(f"Reducibility exponent must be nonnegative, got {self.alpha}")
        expected = Parity.of(self.alpha.twice + 1)
        if self.parity is None:
            object.__setattr__(self, "parity", expected)
        elif self.parity != expected and self.alpha.twice >= 2:
            raise ConfigError(
                f"Line {self.id}: parity {self.parity.value} incompatible with alpha={self.alpha}"
            )
        if self.dim_hint is not None and self.dim_hint < 1:
            raise ConfigError(f"Line {self.id}: dim_hint must be positive")

    @classmethod
    def of(cls, alpha: Union[HalfInt, int, str, Fraction], line_id: str = DEFAULT_LINE) -> "CuspLine":
        return cls(id=line_id, alpha=hi(alpha))

    def to_json(self) -> Dict[str, Any]:
        return {"id": self.id, "alpha": str(self.alpha), "parity": self.parity.value, "dim_hint": self.dim_hint}


@dataclass(frozen=True, order=True)
class Segment:
    """[x,y] on a line. Every empty segment is stored as [0,-1], the unit of R."""
    line: str
    x: HalfInt
    y: HalfInt

    def __post_init__(self):
        gap = self.y.twice - self.x.twice
        if gap % 2:
            raise PreconditionViolation(f"Segment endpoints {self.x}, {self.y} differ by a non-integer")
        if gap < -2:
            raise PreconditionViolation(f"Segment [{self.x},{self.y}] has negative length")
        if gap == -2 and self.x.twice != 0:
            object.__setattr__(self, "x", ZERO)
            object.__setattr__(self, "y", HalfInt(-2))

    @classmethod
    def of(cls, x, y=None, line: str = DEFAULT_LINE) -> "Segment":
        x = hi(x)
        return cls(line, x, x if y is None else hi(y))

    @classmethod
    def empty(cls, line: str = DEFAULT_LINE) -> "Segment":
        return cls(line, ZERO, HalfInt(-2))

    @property
    def is_empty(self) -> bool:
        return self.y.twice < self.x.twice

    @property
    def length(self) -> int:
        return (self.y.twice - self.x.twice) // 2 + 1

    @property
    def exponent(self) -> Fraction:
        """e(δ([x,y])) = (x+y)/2."""
        return Fraction(self.x.twice + self.y.twice, 4)

    def points(self) -> Tuple[HalfInt, ...]:
        """Exponents x, x+1, ..., y."""
        return tuple(HalfInt(t) for t in range(self.x.twice, self.y.twice + 1, 2))

    def contragredient(self) -> "Segment":
        return seg_contragredient(self)

    def to_json(self) -> Dict[str, Any]:
        return {"line": self.line, "x2": self.x.twice, "y2": self.y.twice}

    @classmethod
    def from_json(cls, data: Dict[str, Any]) -> "Segment":
        return cls(str(data["line"]), HalfInt(int(data["x2"])), HalfInt(int(data["y2"])))

    def __str__(self) -> str:
        if self.is_empty:
            return "[]"
        if self.x == self.y:
            return f"[{self.x}]"
        return f"[{self.x},{self.y}]"


def seg_contragredient(s: Segment) -> Segment:
    """[x,y] ↦ [−y,−x]; the empty segment is its own contragredient."""
    if s.is_empty:
        return s
    return Segment(s.line, -s.y, -s.x)


class GenKind(str, Enum):
    DELTA = "delta"
    ZETA = "zeta"


@dataclass(frozen=True)
class GLGen:
    """δ(Δ) or ζ(Δ) for a nonempty segment; one-point generators are tagged DELTA."""
    kind: GenKind
    seg: Segment

    def __post_init__(self):
        if self.seg.is_empty:
            raise PreconditionViolation("A generator needs a nonempty segment")
        if self.kind == GenKind.ZETA and self.seg.length == 1:
            object.__setattr__(self, "kind", GenKind.DELTA)

    @classmethod
    def delta(cls, x, y=None, line: str = DEFAULT_LINE) -> "GLGen":
        return cls(GenKind.DELTA, Segment.of(x, y, line))

    @classmethod
    def zeta(cls, x, y=None, line: str = DEFAULT_LINE) -> "GLGen":
        return cls(GenKind.ZETA, Segment.of(x, y, line))

    @classmethod
    def point(cls, x, line: str = DEFAULT_LINE) -> "GLGen":
        return cls.delta(x, x, line)

    def sort_key(self) -> Tuple:
        return (self.seg.line, self.seg.x.twice, self.seg.y.twice, self.kind.value)

    def __lt__(self, other: "GLGen") -> bool:
        return self.sort_key() < other.sort_key()

    @property
    def letters(self) -> int:
        return self.seg.length

    def string(self) -> "ExpString":
        """Descending cuspidal string for δ, ascending for ζ."""
        pts = [Letter(self.seg.line, p) for p in self.seg.points()]
        if self.kind == GenKind.DELTA:
            pts.reverse()
        return tuple(pts)

    def with_segment(self, seg: Segment) -> Optional["GLGen"]:
        """Same tag on another segment, or None for the unit."""
        if seg.is_empty:
            return None
        return GLGen(self.kind, seg)

    def __str__(self) -> str:
        if self.seg.length == 1:
            return str(self.seg)
        tag = "δ" if self.kind == GenKind.DELTA else "ζ"
        return f"{tag}{self.seg}"


@dataclass(frozen=True)
class GLWord:
    """Grothendieck-level product of generators in canonical sorted order."""
    factors: Tuple[GLGen, ...] = ()

    def __mul__(self, other: "GLWord") -> "GLWord":
        return word_canon(self.factors + other.factors)

    @property
    def is_unit(self) -> bool:
        return not self.factors

    @property
    def letters(self) -> int:
        return sum(g.letters for g in self.factors)

    def support(self) -> Tuple["Letter", ...]:
        return tuple(sorted(l for g in self.factors for l in g.string()))

    def sort_key(self) -> Tuple:
        return tuple(g.sort_key() for g in self.factors)

    def __lt__(self, other: "GLWord") -> bool:
        return self.sort_key() < other.sort_key()

    def __str__(self) -> str:
        if not self.factors:
            return "1"
        return "×".join(str(g) for g in self.factors)

    def to_json(self) -> list:
        return [{"kind": g.kind.value, **g.seg.to_json()} for g in self.factors]


UNIT_WORD = GLWord(())


def word_canon(factors: Iterable[Optional[GLGen]]) -> GLWord:
    """Canonical word of a multiset of generators; None entries are units."""
    return GLWord(tuple(sorted(g for g in factors if g is not None)))


def word(*factors: Optional[GLGen]) -> GLWord:
    return word_canon(factors)


class Letter(NamedTuple):
    line: str
    x: HalfInt

    def __str__(self) -> str:
        return str(self.x) if self.line == DEFAULT_LINE else f"{self.x}@{self.line}"


ExpString = Tuple[Letter, ...]


def exp_string(*exponents, line: str = DEFAULT_LINE) -> ExpString:
    return tuple(Letter(line, hi(e)) for e in exponents)


def render_string(s: ExpString) -> str:
    return "(" + ",".join(str(l) for l in s) + ")"


class FormalSum(Generic[B]):
    """Finite ℤ-linear combination over a hashable basis; zero terms are dropped."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Optional[Union[Dict[B, int], Iterable[Tuple[B, int]]]] = None):
        acc: Dict[B, int] = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for basis, coeff in items:
                acc[basis] = acc.get(basis, 0) + coeff
        self._terms = {k: v for k, v in acc.items() if v}

    @classmethod
    def single(cls, basis: B, coeff: int = 1) -> "FormalSum[B]":
        return cls({basis: coeff})

    @classmethod
    def zero(cls) -> "FormalSum[B]":
        return cls()

    def items(self) -> Iterator[Tuple[B, int]]:
        return iter(self._terms.items())

    def keys(self) -> Iterator[B]:
        return iter(self._terms)

    def coefficient(self, basis: B) -> int:
        return self._terms.get(basis, 0)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __iter__(self) -> Iterator[B]:
        return iter(self._terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FormalSum):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __add__(self, other: "FormalSum[B]") -> "FormalSum[B]":
        merged = dict(self._terms)
        for k, v in other._terms.items():
            merged[k] = merged.get(k, 0) + v
        return FormalSum(merged)

    def __neg__(self) -> "FormalSum[B]":
        return FormalSum({k: -v for k, v in self._terms.items()})

    def __sub__(self, other: "FormalSum[B]") -> "FormalSum[B]":
        return self + (-other)

    def __rmul__(self, scale: int) -> "FormalSum[B]":
        return FormalSum({k: scale * v for k, v in self._terms.items()})

    def __le__(self, other: "FormalSum[B]") -> bool:
        """Coefficientwise order of the Grothendieck group."""
        keys = set(self._terms) | set(other._terms)
        return all(self.coefficient(k) <= other.coefficient(k) for k in keys)

    def is_nonnegative(self) -> bool:
        return all(v > 0 for v in self._terms.values())

    def map_basis(self, f: Callable[[B], C]) -> "FormalSum[C]":
        return FormalSum((f(k), v) for k, v in self._terms.items())

    def product(self, other: "FormalSum[C]", combine: Callable[[B, C], Any]) -> "FormalSum[Any]":
        """Bilinear extension of combine."""
        out: Dict[Any, int] = {}
        for k1, v1 in self._terms.items():
            for k2, v2 in other._terms.items():
                key = combine(k1, k2)
                out[key] = out.get(key, 0) + v1 * v2
        return FormalSum(out)

    def sorted_items(self, key: Optional[Callable[[B], Any]] = None) -> list:
        return sorted(self._terms.items(), key=lambda kv: (key or _default_key)(kv[0]))

    def __repr__(self) -> str:
        if not self._terms:
            return "0"
        return " + ".join(f"{v}·{k}" if v != 1 else f"{k}" for k, v in self.sorted_items())


def _default_key(basis: Any) -> Any:
    if hasattr(basis, "sort_key"):
        return basis.sort_key()
    if isinstance(basis, tuple):
        return tuple(_default_key(b) for b in basis)
    if isinstance(basis, HalfInt):
        return basis.twice
    return basis
