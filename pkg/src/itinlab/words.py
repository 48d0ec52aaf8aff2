"""Words of non-identity letters and the low-dimensional cell data on them.

Grammar: generators ``a1 .. a99`` or the aliases ``a .. i``; a bracket groups
several generators into one letter; everything else is one letter per
generator.  ``"b[ab]"`` is the two-letter word ``(a2, a1 a2)``.

Letters print through their lexicographically smallest reduced word, which
gives back the customary names ``[aba]``, ``[acb]``, ``[bac]`` and so on.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, FrozenSet, Iterable, List, Sequence, Tuple

from .errors import DimTooHigh, NotDimOne, NotDimZero, ParseError, Uncovered
from .permgroup import (
    LETTER_ALIASES,
    MultVector,
    Perm,
    from_word,
    generator,
    multiplicity,
    parse_generators,
    reduced_word,
)
from .spinsign import QuatElem, hat_perm, quat_mul, quat_one


def _gen_name(i: int, long: bool) -> str:
    return f"a{i}" if long else LETTER_ALIASES[i - 1]


@dataclass(frozen=True, order=True)
class Word:
    n: int
    letters: Tuple[Perm, ...]

    def __init__(self, letters: Sequence[Perm] = (), n: int | None = None):
        letters = tuple(letters)
        if n is None:
            if not letters:
                raise ValueError("empty word needs an explicit rank")
            n = letters[0].n
        if any(s.n != n for s in letters):
            raise ValueError("letters of different rank")
        if any(s.is_identity() for s in letters):
            raise ValueError("identity letter in word")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "letters", letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __add__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters, self.n)

    def __getitem__(self, k):
        if isinstance(k, slice):
            return Word(self.letters[k], self.n)
        return self.letters[k]

    @property
    def dim(self) -> int:
        return sum(s.inv - 1 for s in self.letters)

    @property
    def hat(self) -> QuatElem:
        q = quat_one(self.n)
        for s in self.letters:
            q = quat_mul(q, hat_perm(s))
        return q

    @property
    def mult(self) -> MultVector:
        out = [0] * self.n
        for s in self.letters:
            for k, v in enumerate(multiplicity(s)):
                out[k] += v
        return tuple(out)

    def __str__(self) -> str:
        long = self.n > 9
        out = []
        for s in self.letters:
            w = reduced_word(s)
            body = "".join(_gen_name(i, long) for i in w)
            out.append(body if len(w) == 1 else f"[{body}]")
        return "".join(out)

    def __repr__(self) -> str:
        return f"Word({str(self)!r}, n={self.n})"


_TOKEN = re.compile(r"\s*(\[|\]|a\d+|[a-i])")


def parse_word(text: str, n: int | None = None) -> Word:
    """Parse ``"b[ab]"``, ``"a1[a2a3]"``; the rank defaults to the largest generator."""
    tokens = []
    pos = 0
    text = text.strip()
    if text in ("", "()", "e"):
        if n is None:
            raise ParseError("the empty word needs a rank")
        return Word((), n)
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"cannot parse word at {text[pos:]!r}")
        tokens.append(m.group(1))
        pos = m.end()
    groups: List[List[int]] = []
    cur = None
    for tok in tokens:
        if tok == "[":
            if cur is not None:
                raise ParseError("nested brackets")
            cur = []
        elif tok == "]":
            if not cur:
                raise ParseError("empty or unbalanced bracket")
            groups.append(cur)
            cur = None
        else:
            g = parse_generators(tok)[0]
            if cur is None:
                groups.append([g])
            else:
                cur.append(g)
    if cur is not None:
        raise ParseError("unclosed bracket")
    top = max(g for grp in groups for g in grp)
    n = top if n is None else n
    if top > n:
        raise ParseError(f"generator a{top} outside rank {n}")
    letters = []
    for grp in groups:
        s = from_word(n, grp)
        if s.inv != len(grp):
            raise ParseError(f"[{''.join(_gen_name(i, True) for i in grp)}] is not reduced")
        letters.append(s)
    return Word(letters, n)


def gens_word(n: int, idx: Iterable[int]) -> Word:
    return Word([generator(n, i) for i in idx], n)


def letter(n: int, *idx: int) -> Perm:
    s = from_word(n, idx)
    if s.inv != len(idx):
        raise ValueError(f"{idx} is not reduced")
    return s


# --- statistics ---------------------------------------------------------------

def xdim(w: Word) -> Tuple[int, ...]:
    """Coefficients of sum X^dim(letter), highest power first, length n(n+1)/2."""
    m = w.n * (w.n + 1) // 2
    c = [0] * m
    for s in w.letters:
        c[m - 1 - (s.inv - 1)] += 1
    return tuple(c)


def xdim_str(w: Word) -> str:
    c = xdim(w)
    m = len(c)
    terms = []
    for k, v in enumerate(c):
        p = m - 1 - k
        if not v:
            continue
        mon = "" if p == 0 else ("X" if p == 1 else f"X^{p}")
        terms.append(f"{v}{mon}" if (v != 1 or not mon) else mon)
    return " + ".join(terms) or "0"


@dataclass(frozen=True)
class WordStats:
    dim: int
    length: int
    mult: MultVector
    hat: QuatElem
    xdim: Tuple[int, ...]


def word_stats(w: Word) -> WordStats:
    return WordStats(w.dim, len(w), w.mult, w.hat, xdim(w))


def _letter_key(s: Perm):
    return (s.inv, s.images)


def ord_key(w: Word):
    """Xdim first, then length, then letters lexicographically."""
    return (xdim(w), len(w), tuple(_letter_key(s) for s in w.letters))


# --- dimension 0 ----------------------------------------------------------------

def basic_word_of(q: QuatElem) -> Word:
    n = q.n
    support = [i + 1 for i, e in enumerate(q.eps) if e]
    if q.sign > 0:
        return gens_word(n, support if support else [1, 1, 1, 1])
    return gens_word(n, [1, 1] + support)


def normal_form(w: Word) -> Word:
    if w.dim != 0:
        raise NotDimZero(str(w))
    if not w.letters:
        return w
    return basic_word_of(w.hat)


# --- dimension 1 ----------------------------------------------------------------

def _inv2_position(w: Word) -> int:
    pos = [k for k, s in enumerate(w.letters) if s.inv == 2]
    if w.dim != 1 or len(pos) != 1:
        raise NotDimOne(str(w))
    return pos[0]


def edge_endpoints(w: Word) -> Tuple[Word, Word]:
    """``(w_minus, w_plus)`` so that the boundary is ``w_plus - w_minus``."""
    p = _inv2_position(w)
    n = w.n
    k, l = reduced_word(w.letters[p])
    pre, post = w[:p], w[p + 1:]
    if l == k - 1:
        lo, hi = gens_word(n, [l]), gens_word(n, [k, l, k])
    elif l == k + 1:
        lo, hi = gens_word(n, [k, l, k]), gens_word(n, [l])
    else:
        lo, hi = gens_word(n, [k, l]), gens_word(n, [l, k])
    return pre + lo + post, pre + hi + post


# --- chains -----------------------------------------------------------------------

Chain = Dict[Word, int]


def chain_add(a: Chain, b: Chain, scale: int = 1) -> Chain:
    out = dict(a)
    for w, c in b.items():
        out[w] = out.get(w, 0) + scale * c
        if out[w] == 0:
            del out[w]
    return out


def chain_str(c: Chain) -> str:
    if not c:
        return "0"
    parts = []
    for w, v in sorted(c.items(), key=lambda kv: (-kv[1], str(kv[0]))):
        coef = "" if abs(v) == 1 else str(abs(v))
        parts.append(("+ " if v > 0 else "- ") + coef + (str(w) or "()"))
    s = " ".join(parts)
    return s[2:] if s.startswith("+ ") else "-" + s[2:]


def edge_boundary(w: Word) -> Chain:
    lo, hi = edge_endpoints(w)
    return chain_add({hi: 1}, {lo: 1}, -1)


def chain_concat(prefix: Word, c: Chain, suffix: Word) -> Chain:
    return {prefix + w + suffix: v for w, v in c.items()}


# --- dimension 2: tabulated boundaries --------------------------------------------

# Each term is (coefficient, [letter, letter, ...]) with letters given as
# generator tuples; ``K`` and ``L`` are placeholders filled in per family.
_A, _B, _C = 1, 2, 3

_BASE: Dict[Tuple[int, ...], List[Tuple[int, List[Tuple[int, ...]]]]] = {
    (1, 2, 1): [
        (+1, [(2, 1), (1,)]), (+1, [(2,), (1, 2)]), (-1, [(1, 2), (2,)]), (-1, [(1,), (2, 1)]),
    ],
    (1, 2, 3): [
        (+1, [(1,), (2,), (3,), (1, 2)]), (+1, [(1,), (2, 3)]), (+1, [(1, 3)]),
        (-1, [(2, 3), (1,)]), (-1, [(1, 2), (3,), (2,), (1,)]), (+1, [(1,), (2,), (1, 3), (2,), (1,)]),
    ],
    (2, 1, 3): [
        (+1, [(1, 3), (2,)]), (-1, [(2, 3), (1,), (2,)]), (-1, [(2,), (3,), (2, 1)]),
        (-1, [(2,), (1, 3)]), (-1, [(2,), (1,), (2, 3)]), (-1, [(2, 1), (3,), (2,)]),
    ],
    (3, 2, 1): [
        (+1, [(1, 3)]), (+1, [(3,), (2, 1)]), (+1, [(3,), (2,), (1,), (3, 2)]),
        (+1, [(3,), (2,), (1, 3), (2,), (3,)]), (-1, [(3, 2), (1,), (2,), (3,)]), (-1, [(2, 1), (3,)]),
    ],
    # derived from the perturbed section (u = -1/8) by the counterclockwise
    # walk of polycurve.section_boundary; the same walk reproduces the four
    # entries above, and a test recomputes this one
    (1, 3, 2): [
        (+1, [(1, 3), (2,), (1,), (3,)]), (+1, [(1,), (3, 2), (1,)]), (+1, [(3,), (1, 2), (3,)]),
        (-1, [(1, 2)]), (-1, [(3, 2)]), (-1, [(1,), (3,), (2,), (1, 3)]),
    ],
}


def _family_terms(word: Tuple[int, ...]):
    a, b = 1, 2
    if len(word) != 3 or word[0] not in (1, 2):
        return None
    w0, w1, w2 = word
    if w0 == 1 and w1 == 2 and w2 >= 4:
        k = w2
        return [
            (+1, [(a,), (b,), (a, k)]), (+1, [(a,), (b, k), (a,)]), (+1, [(a, k), (b,), (a,)]),
            (+1, [(k,), (a, b)]), (-1, [(b, k)]), (-1, [(a, b), (k,)]),
        ]
    if w0 == 1 and w1 >= 3 and w2 == w1 + 1:
        k = w1
        return [
            (+1, [(a,), (k, k + 1)]), (+1, [(a, k + 1)]), (-1, [(k, k + 1), (a,)]),
            (-1, [(k,), (k + 1,), (a, k)]), (-1, [(k,), (a, k + 1), (k,)]), (-1, [(a, k), (k + 1,), (k,)]),
        ]
    if w0 == 1 and w1 >= 4 and w2 == w1 - 1:
        k = w2
        return [
            (+1, [(a,), (k + 1, k)]), (+1, [(a, k + 1), (k,), (k + 1,)]), (+1, [(k + 1,), (a, k), (k + 1,)]),
            (+1, [(k + 1,), (k,), (a, k + 1)]), (-1, [(k + 1, k), (a,)]), (-1, [(a, k)]),
        ]
    if w0 == 2 and w1 == 1 and w2 >= 4:
        k = w2
        return [
            (+1, [(a, k)]), (+1, [(k,), (b, a)]), (-1, [(b, k), (a,), (b,)]),
            (-1, [(b,), (a, k), (b,)]), (-1, [(b,), (a,), (b, k)]), (-1, [(b, a), (k,)]),
        ]
    if w0 == 1 and w1 >= 3 and w2 > w1 + 1:
        k, l = w1, w2
        return [
            (+1, [(a,), (k, l)]), (+1, [(a, l), (k,)]), (+1, [(l,), (a, k)]),
            (-1, [(k, l), (a,)]), (-1, [(k,), (a, l)]), (-1, [(a, k), (l,)]),
        ]
    return None


def _build_chain(n: int, terms, shift: int) -> Chain:
    out: Chain = {}
    for coef, lets in terms:
        w = Word([letter(n, *(i + shift for i in g)) for g in lets], n)
        out = chain_add(out, {w: coef})
    return out


def letter_boundary(s: Perm) -> Chain:
    if s.inv != 3:
        raise DimTooHigh(f"{s} is not a letter of dimension 2")
    n = s.n
    word = reduced_word(s)
    shift = min(word) - 1
    base = tuple(i - shift for i in word)
    if base in _BASE:
        terms = _BASE[base]
    else:
        terms = _family_terms(base)
    if terms is None:
        raise Uncovered(f"no boundary formula for {s}")
    return _build_chain(n, terms, shift)


def boundary(w: Word) -> Chain:
    """Cellular boundary of a word of dimension 1 or 2 (sign rule for products)."""
    if w.dim == 1:
        return edge_boundary(w)
    if w.dim != 2:
        raise DimTooHigh(f"boundary of {w} (dimension {w.dim}) is out of range")
    big = [k for k, s in enumerate(w.letters) if s.inv >= 3]
    if big:
        p = big[0]
        return chain_concat(w[:p], letter_boundary(w.letters[p]), w[p + 1:])
    p, q = [k for k, s in enumerate(w.letters) if s.inv == 2]
    # first factor has dimension 1, so the second term carries a minus sign
    first = chain_concat(w[:p], edge_boundary(w[p:p + 1]), w[p + 1:])
    second = chain_concat(w[:q], edge_boundary(w[q:q + 1]), w[q + 1:])
    return chain_add(first, second, -1)


# --- lower sets and the order ----------------------------------------------------------

def lower_set(s: Perm) -> FrozenSet[Word]:
    n = s.n
    top = Word([s], n)
    if s.inv == 2:
        lo, hi = edge_endpoints(top)
        return frozenset({top, lo, hi})
    if s.inv == 1:
        return frozenset({top})
    if s.inv != 3:
        raise DimTooHigh(f"lower set of {s} is not tabulated")
    out = {top}
    for w in letter_boundary(s):
        out.add(w)
        out.update(edge_endpoints(w))
    return frozenset(out)


def _extra_below(s: Perm) -> FrozenSet[Word]:
    """Words below a letter that a single transversal section does not show."""
    word = reduced_word(s)
    if s.inv != 3:
        return frozenset()
    shift = min(word) - 1
    if tuple(i - shift for i in word) != (1, 3, 2):
        return frozenset()
    n = s.n
    g = lambda *ix: letter(n, *(i + shift for i in ix))
    ac = g(1, 3)
    twod = Word([ac, g(2), ac], n)
    out = {twod}
    for w in boundary(twod):
        out.add(w)
        out.update(edge_endpoints(w))
    return frozenset(out)


def lower_set_full(s: Perm) -> FrozenSet[Word]:
    return lower_set(s) | _extra_below(s)


def precedes(w0: Word, w1: Word):
    """``True``/``False``, or ``None`` when some letter of w1 is beyond the tables."""
    if any(s.inv > 3 for s in w1.letters):
        return None
    if w0.hat != w1.hat or len(w0) < len(w1):
        return False
    lows = [lower_set_full(s) for s in w1.letters]

    @lru_cache(maxsize=None)
    def split(i: int, j: int) -> bool:
        if j == len(lows):
            return i == len(w0)
        for end in range(i + 1, len(w0) - (len(lows) - j - 1) + 1):
            if w0[i:end] in lows[j] and split(end, j + 1):
                return True
        return False

    return split(0, 0)
