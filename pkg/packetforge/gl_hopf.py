# File: packetforge/packetforge/gl_hopf.py
# This file defines the comultiplications m*, M*, M*_GL on segment generators and
# words, and the cuspidal-string engine (full shuffle expansion and target counting).

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Sequence, Tuple
import logging

from packetforge.config import settings
from packetforge.core import (
    ExpString,
    FormalSum,
    GenKind,
    GLGen,
    GLWord,
    HalfInt,
    Segment,
    UNIT_WORD,
    seg_contragredient,
    word,
    word_canon,
)
from packetforge.errors import LetterBoundExceeded

# Configure logging
logger = logging.getLogger(__name__)

Pair = Tuple[GLWord, GLWord]


def _seg(line: str, x2: int, y2: int) -> Segment:
    return Segment(line, HalfInt(x2), HalfInt(y2))


def _gen(kind: GenKind, line: str, x2: int, y2: int) -> Optional[GLGen]:
    if y2 < x2:
        return None
    return GLGen(kind, _seg(line, x2, y2))


def contragredient(w: GLWord) -> GLWord:
    """Contragredient of a word: every segment [x,y] becomes [−y,−x] with its tag kept."""
    return word_canon(GLGen(g.kind, seg_contragredient(g.seg)) for g in w.factors)


def _pair_product(p: Pair, q: Pair) -> Pair:
    return (p[0] * q[0], p[1] * q[1])


@lru_cache(maxsize=None)
def mstar(g: GLGen) -> FormalSum:
    """m*(g) on a generator.

    δ[x,y] ↦ Σ_{i=x−1}^{y} δ[i+1,y] ⊗ δ[x,i];  ζ[x,y] ↦ Σ_{i=x−1}^{y} ζ[x,i] ⊗ ζ[i+1,y].
    """
    line, x2, y2 = g.seg.line, g.seg.x.twice, g.seg.y.twice
    terms: Dict[Pair, int] = {}
    for i2 in range(x2 - 2, y2 + 1, 2):
        if g.kind == GenKind.DELTA:
            left = _gen(g.kind, line, i2 + 2, y2)
            right = _gen(g.kind, line, x2, i2)
        else:
            left = _gen(g.kind, line, x2, i2)
            right = _gen(g.kind, line, i2 + 2, y2)
        key = (word(left), word(right))
        terms[key] = terms.get(key, 0) + 1
    return FormalSum(terms)


def mstar_word(w: GLWord) -> FormalSum:
    """m* extended multiplicatively to words."""
    result = FormalSum.single((UNIT_WORD, UNIT_WORD))
    for g in w.factors:
        result = result.product(mstar(g), _pair_product)
    return result


@lru_cache(maxsize=None)
def _Mstar_gen(g: GLGen) -> FormalSum:
    # M* = (m ⊗ id) ∘ (~ ⊗ m*) ∘ κ ∘ m*
    terms: Dict[Pair, int] = {}
    for (g1, g2), c in mstar(g).items():
        twisted = contragredient(g2)
        for (a1, a2), c2 in mstar_word(g1).items():
            key = (twisted * a1, a2)
            terms[key] = terms.get(key, 0) + c * c2
    return FormalSum(terms)


def Mstar(w: GLWord) -> FormalSum:
    """M*(w) from the defining composition, multiplicative on words."""
    result = FormalSum.single((UNIT_WORD, UNIT_WORD))
    for g in w.factors:
        result = result.product(_Mstar_gen(g), _pair_product)
    return result


def Mstar_closed(g: GLGen) -> FormalSum:
    """Closed double-sum formula for M* of one generator."""
    line, x2, y2 = g.seg.line, g.seg.x.twice, g.seg.y.twice
    terms: Dict[Pair, int] = {}
    for i2 in range(x2 - 2, y2 + 1, 2):
        if g.kind == GenKind.DELTA:
            for j2 in range(i2, y2 + 1, 2):
                left = word(_gen(g.kind, line, -i2, -x2), _gen(g.kind, line, j2 + 2, y2))
                right = word(_gen(g.kind, line, i2 + 2, j2))
                terms[(left, right)] = terms.get((left, right), 0) + 1
        else:
            for j2 in range(x2 - 2, i2 + 1, 2):
                left = word(_gen(g.kind, line, -y2, -i2 - 2), _gen(g.kind, line, x2, j2))
                right = word(_gen(g.kind, line, j2 + 2, i2))
                terms[(left, right)] = terms.get((left, right), 0) + 1
    return FormalSum(terms)


def mstar_gl_terms(g: GLGen) -> List[Tuple[Optional[GLGen], Optional[GLGen]]]:
    """The two-factor terms of M*_GL(g), one per splitting index i."""
    line, x2, y2 = g.seg.line, g.seg.x.twice, g.seg.y.twice
    out = []
    for i2 in range(x2 - 2, y2 + 1, 2):
        if g.kind == GenKind.DELTA:
            out.append((_gen(g.kind, line, -i2, -x2), _gen(g.kind, line, i2 + 2, y2)))
        else:
            out.append((_gen(g.kind, line, -y2, -i2 - 2), _gen(g.kind, line, x2, i2)))
    return out


def Mstar_GL(w: GLWord) -> FormalSum:
    """Component of M*(w) in R ⊗ R(GL(0)), as a sum of words."""
    result = FormalSum.single(UNIT_WORD)
    for g in w.factors:
        piece = FormalSum(((word(a, b), 1) for a, b in mstar_gl_terms(g)))
        result = result.product(piece, lambda u, v: u * v)
    return result


# Cuspidal strings

def check_letter_bound(letters: int) -> None:
    if letters > settings.MAX_CUSPIDAL_LETTERS:
        raise LetterBoundExceeded(
            f"{letters} cuspidal letters exceed the bound {settings.MAX_CUSPIDAL_LETTERS}",
            {"letters": letters, "bound": settings.MAX_CUSPIDAL_LETTERS},
        )


@lru_cache(maxsize=4096)
def shuffle(a: ExpString, b: ExpString) -> FormalSum:
    """All interleavings of a and b, with multiplicity."""
    if not a:
        return FormalSum.single(b)
    if not b:
        return FormalSum.single(a)
    terms: Dict[ExpString, int] = {}
    for rest, c in shuffle(a[1:], b).items():
        key = (a[0],) + rest
        terms[key] = terms.get(key, 0) + c
    for rest, c in shuffle(a, b[1:]).items():
        key = (b[0],) + rest
        terms[key] = terms.get(key, 0) + c
    return FormalSum(terms)


def shuffle_sums(s: FormalSum, t: FormalSum) -> FormalSum:
    terms: Dict[ExpString, int] = {}
    for a, ca in s.items():
        for b, cb in t.items():
            for w, c in shuffle(a, b).items():
                terms[w] = terms.get(w, 0) + ca * cb * c
    return FormalSum(terms)


@lru_cache(maxsize=1024)
def cuspidal_expand(w: GLWord) -> FormalSum:
    """Cuspidal strings of a GL word: shuffle of the factor strings."""
    check_letter_bound(w.letters)
    result = FormalSum.single(())
    for g in w.factors:
        result = shuffle_sums(result, FormalSum.single(g.string()))
    return result


def string_mult(s: FormalSum, t: ExpString) -> int:
    """Coefficient of t in a formal sum of strings."""
    return s.coefficient(tuple(t))


# Target counting over factors with alternatives


@dataclass(frozen=True)
class Alternative:
    """A product of strands (cuspidal strings) with a coefficient."""
    strands: Tuple[ExpString, ...]
    coeff: int = 1

    @property
    def letters(self) -> int:
        return sum(len(s) for s in self.strands)


Factor = Tuple[Alternative, ...]


def gl_factor(g: GLGen) -> Factor:
    """M*_GL(g) as a factor: one alternative per splitting index."""
    alts = []
    for a, b in mstar_gl_terms(g):
        strands = tuple(x.string() for x in (a, b) if x is not None)
        alts.append(Alternative(strands))
    return tuple(alts)


def plain_factor(g: GLGen) -> Factor:
    """A GL generator with no reflected terms (pure GL product)."""
    return (Alternative((g.string(),)),)


def string_set_factor(strings: FormalSum) -> Factor:
    return tuple(Alternative((s,), c) for s, c in strings.sorted_items() if s)


def expand_factors(factors: Sequence[Factor]) -> FormalSum:
    """Full expansion: sum over alternative choices of the shuffle of all strands."""
    check_letter_bound(sum(f[0].letters for f in factors if f))
    result = FormalSum.single(())
    for factor in factors:
        if not factor:
            continue
        piece: Dict[ExpString, int] = {}
        for alt in factor:
            acc = FormalSum.single(())
            for strand in alt.strands:
                acc = shuffle_sums(acc, FormalSum.single(strand))
            for s, c in acc.items():
                piece[s] = piece.get(s, 0) + c * alt.coeff
        result = shuffle_sums(result, FormalSum(piece))
    return result


def count_string(factors: Sequence[Factor], target: ExpString) -> int:
    """Coefficient of target in expand_factors(factors), without full expansion."""
    factors = tuple(f for f in factors if f and f[0].letters > 0)
    check_letter_bound(sum(f[0].letters for f in factors))
    target = tuple(target)
    if sum(f[0].letters for f in factors) != len(target):
        return 0
    memo: Dict[Tuple, int] = {}

    def step(pos: int, state: Tuple) -> int:
        if pos == len(target):
            return 1 if all(choice >= 0 for choice, _ in state) else 0
        key = (pos, state)
        if key in memo:
            return memo[key]
        letter = target[pos]
        total = 0
        for fi, (choice, progress) in enumerate(state):
            factor = factors[fi]
            if choice >= 0:
                alt = factor[choice]
                for si, strand in enumerate(alt.strands):
                    p = progress[si]
                    if p < len(strand) and strand[p] == letter:
                        moved = progress[:si] + (p + 1,) + progress[si + 1:]
                        new_state = state[:fi] + ((choice, moved),) + state[fi + 1:]
                        total += step(pos + 1, new_state)
            else:
                for ai, alt in enumerate(factor):
                    for si, strand in enumerate(alt.strands):
                        if strand and strand[0] == letter:
                            moved = tuple(1 if k == si else 0 for k in range(len(alt.strands)))
                            new_state = state[:fi] + ((ai, moved),) + state[fi + 1:]
                            total += alt.coeff * step(pos + 1, new_state)
        memo[key] = total
        return total

    start = tuple((-1, ()) for _ in factors)
    count = step(0, start)
    logger.debug(f"count_string: {len(factors)} factors, target length {len(target)}: {count}")
    return count


def word_factors(w: GLWord, reflected: bool = True) -> List[Factor]:
    return [gl_factor(g) if reflected else plain_factor(g) for g in w.factors]
