"""The symmetric group on {1, ..., n+1}.

Permutations act on the right: ``k^(s1 s2) = (k^s1)^s2``.  A :class:`Perm`
stores the complete notation ``[1^s 2^s ... (n+1)^s]`` as a tuple of
1-based images.  With this convention

* right multiplication by the generator ``a_i`` swaps the *values* i, i+1;
* left multiplication by ``a_i`` swaps the *positions* i, i+1.

>>> s = parse_perm("[2413]")
>>> s * generator(3, 2) * generator(3, 3) * generator(3, 1) == eta(3)
True
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations
from typing import FrozenSet, Iterable, Sequence, Tuple

from .errors import IsCoxeterElement, NotAPermutation, ParseError

MultVector = Tuple[int, ...]
ReducedWord = Tuple[int, ...]

LETTER_ALIASES = "abcdefghi"


@dataclass(frozen=True, order=True)
class Perm:
    images: Tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise NotAPermutation(f"not a permutation: {self.images}")

    @property
    def n(self) -> int:
        return len(self.images) - 1

    def __call__(self, k: int) -> int:
        """Image ``k^sigma`` of a 1-based point."""
        return self.images[k - 1]

    def __mul__(self, other: "Perm") -> "Perm":
        return Perm(tuple(other.images[v - 1] for v in self.images))

    def inverse(self) -> "Perm":
        out = [0] * len(self.images)
        for k, v in enumerate(self.images, start=1):
            out[v - 1] = k
        return Perm(tuple(out))

    @property
    def inv(self) -> int:
        return len(inv_data(self).pairs)

    @property
    def dim(self) -> int:
        return self.inv - 1

    def is_identity(self) -> bool:
        return all(v == k for k, v in enumerate(self.images, start=1))

    def matrix(self):
        """The 0/1 matrix whose row k is the basis vector at column k^sigma."""
        m = [[0] * len(self.images) for _ in self.images]
        for k, v in enumerate(self.images):
            m[k][v - 1] = 1
        return m

    def __str__(self) -> str:
        if len(self.images) <= 9:
            return "[" + "".join(str(v) for v in self.images) + "]"
        return "[" + ",".join(str(v) for v in self.images) + "]"

    def __repr__(self) -> str:
        return f"Perm{str(self)}"


@dataclass(frozen=True)
class InvSet:
    pairs: FrozenSet[Tuple[int, int]]
    per_row: Tuple[int, ...]

    @property
    def total(self) -> int:
        return len(self.pairs)


def identity(n: int) -> Perm:
    return Perm(tuple(range(1, n + 2)))


def generator(n: int, i: int) -> Perm:
    if not 1 <= i <= n:
        raise ParseError(f"generator a{i} outside rank {n}")
    im = list(range(1, n + 2))
    im[i - 1], im[i] = im[i], im[i - 1]
    return Perm(tuple(im))


def eta(n: int) -> Perm:
    """The longest element (the Coxeter element in this library's naming)."""
    return Perm(tuple(range(n + 1, 0, -1)))


def from_word(n: int, letters: Iterable[int]) -> Perm:
    p = list(range(1, n + 2))
    for i in letters:
        if not 1 <= i <= n:
            raise ParseError(f"generator a{i} outside rank {n}")
        # right multiplication swaps the values i and i+1
        p = [i + 1 if v == i else i if v == i + 1 else v for v in p]
    return Perm(tuple(p))


def all_perms(n: int):
    for im in permutations(range(1, n + 2)):
        yield Perm(im)


# --- parsing -------------------------------------------------------------

_GEN_RE = re.compile(r"a(\d+)|([a-i])")


def parse_generators(text: str) -> Tuple[int, ...]:
    """Parse ``a1a3a2``, ``acb`` or a mix into generator indices."""
    text = text.replace("*", "").replace(" ", "")
    out = []
    pos = 0
    while pos < len(text):
        m = _GEN_RE.match(text, pos)
        if not m:
            raise ParseError(f"cannot parse generator at {text[pos:]!r}")
        out.append(int(m.group(1)) if m.group(1) else LETTER_ALIASES.index(m.group(2)) + 1)
        pos = m.end()
    return tuple(out)


def parse_perm(text: str, n: int | None = None) -> Perm:
    """Parse complete notation ``[2413]`` / ``[10,2,...]`` or a bracketed
    generator product ``[a1a3a2]`` / ``[acb]``.

    Generator products need the rank; when ``n`` is omitted the largest
    generator index is used.
    """
    s = text.strip()
    if s.startswith("[") and s.endswith("]"):
        s = s[1:-1]
    s = s.strip()
    if s and (s[0].isdigit()):
        vals = [int(v) for v in s.split(",")] if "," in s else [int(c) for c in s]
        p = Perm(tuple(vals))
        if n is not None and p.n != n:
            raise ParseError(f"{text} has rank {p.n}, expected {n}")
        return p
    gens = parse_generators(s)
    if n is None:
        n = max(gens, default=1)
    return from_word(n, gens)


def format_mult(m: Sequence[int]) -> str:
    return "(" + ",".join(str(v) for v in m) + ")"


# --- inversions and multiplicities ---------------------------------------

def inv_data(s: Perm) -> InvSet:
    im = s.images
    pairs = set()
    rows = []
    for i in range(len(im)):
        c = 0
        for j in range(i + 1, len(im)):
            if im[i] > im[j]:
                pairs.add((i + 1, j + 1))
                c += 1
        rows.append(c)
    return InvSet(frozenset(pairs), tuple(rows))


def multiplicity(s: Perm) -> MultVector:
    out = []
    acc = 0
    for k in range(1, s.n + 1):
        acc += s(k) - k
        out.append(acc)
    return tuple(out)


def from_mult(m: Sequence[int]) -> Perm:
    ext = [0, *m, 0]
    im = tuple(k + ext[k] - ext[k - 1] for k in range(1, len(m) + 2))
    try:
        return Perm(im)
    except NotAPermutation:
        raise NotAPermutation(f"multiplicity vector {tuple(m)} gives {im}") from None


# --- reduced words ---------------------------------------------------------

def left_descents(s: Perm) -> Tuple[int, ...]:
    return tuple(i for i in range(1, s.n + 1) if s(i) > s(i + 1))


def right_descents(s: Perm) -> Tuple[int, ...]:
    pos = s.inverse()
    return tuple(i for i in range(1, s.n + 1) if pos(i) > pos(i + 1))


def lmul_gen(i: int, s: Perm) -> Perm:
    """``a_i * s``: swap positions i and i+1."""
    im = list(s.images)
    im[i - 1], im[i] = im[i], im[i - 1]
    return Perm(tuple(im))


def rmul_gen(s: Perm, i: int) -> Perm:
    """``s * a_i``: swap values i and i+1."""
    return Perm(tuple(i + 1 if v == i else i if v == i + 1 else v for v in s.images))


@lru_cache(maxsize=None)
def reduced_word(s: Perm) -> ReducedWord:
    """Lexicographically smallest reduced word.

    Any left descent can start a reduced word, so peeling the smallest one
    each time is optimal.
    """
    out = []
    while True:
        d = left_descents(s)
        if not d:
            return tuple(out)
        out.append(d[0])
        s = lmul_gen(d[0], s)


# --- orders ----------------------------------------------------------------

def _subword_products(s: Perm) -> FrozenSet[Perm]:
    """All products of subwords of a reduced word of ``s``: the interval [e, s]."""
    reach = {identity(s.n)}
    for i in reduced_word(s):
        reach |= {rmul_gen(p, i) for p in reach}
    return frozenset(reach)


def bruhat_leq(s0: Perm, s1: Perm, mode: str = "strong") -> bool:
    if s0.n != s1.n:
        raise ValueError("rank mismatch")
    if mode == "strong":
        if s0.inv > s1.inv:
            return False
        if any(a > b for a, b in zip(multiplicity(s0), multiplicity(s1))):
            return False
        return s0 in _subword_products(s1)
    if mode == "weak_right":
        return inv_data(s0).pairs <= inv_data(s1).pairs
    if mode == "weak_left":
        return inv_data(s0.inverse()).pairs <= inv_data(s1.inverse()).pairs
    raise ValueError(f"unknown mode {mode!r}")


def _swap_positions(s: Perm, i: int, j: int) -> Perm:
    im = list(s.images)
    im[i - 1], im[j - 1] = im[j - 1], im[i - 1]
    return Perm(tuple(im))


def covers(s: Perm, direction: str = "pred") -> FrozenSet[Perm]:
    """Immediate neighbours in the strong order (empty-rectangle rule)."""
    want_desc = direction == "pred"
    if direction not in ("pred", "succ"):
        raise ValueError(direction)
    out = set()
    im = s.images
    for i in range(1, s.n + 2):
        for j in range(i + 1, s.n + 2):
            hi, lo = (im[i - 1], im[j - 1]) if want_desc else (im[j - 1], im[i - 1])
            if hi < lo:
                continue
            if all(not (lo < im[k - 1] < hi) for k in range(i + 1, j)):
                out.add(_swap_positions(s, i, j))
    return frozenset(out)


def vee(s0: Perm, s1: Perm) -> Perm:
    out = s0
    for i in reduced_word(s1):
        t = rmul_gen(out, i)
        if t.inv > out.inv:
            out = t
    return out


def speed_indices(s: Perm):
    """``(k, j, i0, i1, i2)`` for a non-longest permutation."""
    n = s.n
    if s == eta(n):
        raise IsCoxeterElement(str(s))
    k = next(k for k in range(1, n + 2) if s(n - k + 2) != k)
    j = s(n - k + 2) - 1
    i0 = tuple(range(n - k + 2, n + 2))
    i1 = tuple(sorted({*range(1, k), j + 1}))
    i2 = tuple(sorted({*range(1, k), j}))
    return k, j, i0, i1, i2
