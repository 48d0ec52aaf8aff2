"""Lower unitriangular matrices and their totally nonnegative cells.

Everything here is exact (``fractions.Fraction``).  Index sets are sorted
1-based tuples; ``(rows, cols)`` with ``rows >= cols`` componentwise are the
*admissible* minors, the only ones that can be nonzero for a lower
triangular matrix.

A cell is recognised by its pattern of positive admissible minors.  The
pattern of sigma is obtained from a reduced word by a reachability sweep:
starting from a row set, the letter ``a_i`` may replace row ``i+1`` by ``i``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Dict, FrozenSet, List, Sequence, Tuple

from .errors import ArgNotTotallyPositive, NotInCell, NotTNN, PatternUnmatched
from .permgroup import Perm, all_perms, eta, from_word, lmul_gen, reduced_word

Index = Tuple[int, ...]
Rat = Fraction


def _frac(v) -> Fraction:
    return v if isinstance(v, Fraction) else Fraction(v)


@dataclass(frozen=True)
class LowerUni:
    """A lower unitriangular (n+1)x(n+1) matrix stored as full rows."""

    rows: Tuple[Tuple[Fraction, ...], ...]

    def __post_init__(self):
        for i, r in enumerate(self.rows):
            if r[i] != 1 or any(r[j] != 0 for j in range(i + 1, len(r))):
                raise ValueError("not lower unitriangular")

    @property
    def n(self) -> int:
        return len(self.rows) - 1

    @staticmethod
    def identity(n: int) -> "LowerUni":
        return LowerUni(tuple(tuple(Fraction(int(i == j)) for j in range(n + 1)) for i in range(n + 1)))

    @staticmethod
    def from_rows(rows: Sequence[Sequence]) -> "LowerUni":
        return LowerUni(tuple(tuple(_frac(v) for v in r) for r in rows))

    def __getitem__(self, ij) -> Fraction:
        i, j = ij
        return self.rows[i - 1][j - 1]

    def __mul__(self, other: "LowerUni") -> "LowerUni":
        d = len(self.rows)
        out = []
        for i in range(d):
            out.append(tuple(sum((self.rows[i][k] * other.rows[k][j] for k in range(j, i + 1)), Fraction(0))
                             for j in range(d)))
        return LowerUni(tuple(out))

    def inverse(self) -> "LowerUni":
        d = len(self.rows)
        inv = [[Fraction(int(i == j)) for j in range(d)] for i in range(d)]
        for i in range(d):
            for j in range(i):
                inv[i][j] = -sum((self.rows[i][k] * inv[k][j] for k in range(j, i)), Fraction(0))
        return LowerUni(tuple(tuple(r) for r in inv))

    def to_json(self) -> List[List[str]]:
        return [[str(v) for v in r] for r in self.rows]


def chart(x, y, z) -> LowerUni:
    """The rank-2 chart ``L(x, y, z)``: rows (1,0,0), (x,1,0), (z,y,1)."""
    return LowerUni.from_rows([[1, 0, 0], [x, 1, 0], [z, y, 1]])


def jacobi(n: int, i: int, t) -> LowerUni:
    """``I + t E_{i+1,i}``."""
    rows = [[Fraction(int(r == c)) for c in range(n + 1)] for r in range(n + 1)]
    rows[i][i - 1] = _frac(t)
    return LowerUni(tuple(tuple(r) for r in rows))


def jacobi_product(n: int, word: Sequence[int], ts: Sequence) -> LowerUni:
    if len(word) != len(ts):
        raise ValueError("word and parameters differ in length")
    rows = [[Fraction(int(r == c)) for c in range(n + 1)] for r in range(n + 1)]
    # right multiplication by jacobi(i, t) adds t * column i+1 to column i
    for i, t in zip(word, ts):
        t = _frac(t)
        for r in rows:
            r[i - 1] += t * r[i]
    return LowerUni(tuple(tuple(r) for r in rows))


def braid_move(t1, t2, t3) -> Tuple[Fraction, Fraction, Fraction]:
    """Parameters on the other side of ``a_i a_{i+1} a_i = a_{i+1} a_i a_{i+1}``."""
    t1, t2, t3 = _frac(t1), _frac(t2), _frac(t3)
    s = t1 + t3
    if s == 0:
        raise ZeroDivisionError("t1 + t3 must be nonzero")
    return t2 * t3 / s, s, t1 * t2 / s


# --- minors ------------------------------------------------------------------

def det(m: List[List[Fraction]]) -> Fraction:
    m = [list(r) for r in m]
    d = len(m)
    out = Fraction(1)
    for c in range(d):
        p = next((r for r in range(c, d) if m[r][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            out = -out
        out *= m[c][c]
        for r in range(c + 1, d):
            f = m[r][c] / m[c][c]
            if f:
                for k in range(c, d):
                    m[r][k] -= f * m[c][k]
    return out


def exterior_minor(L: LowerUni, rows: Index, cols: Index) -> Fraction:
    if len(rows) != len(cols):
        raise ValueError("index sets differ in size")
    return det([[L[i, j] for j in cols] for i in rows])


@lru_cache(maxsize=None)
def admissible_pairs(n: int) -> Tuple[Tuple[Index, Index], ...]:
    """All ``(rows, cols)`` with ``rows >= cols`` componentwise, excluding rows == cols."""
    out = []
    for k in range(1, n + 1):
        sets = list(combinations(range(1, n + 2), k))
        for r in sets:
            for c in sets:
                if r != c and all(a >= b for a, b in zip(r, c)):
                    out.append((r, c))
    return tuple(out)


def _reachable(rows: Index, word: Sequence[int]) -> FrozenSet[Index]:
    reach = {rows}
    for i in word:
        nxt = set(reach)
        for r in reach:
            if i + 1 in r and i not in r:
                nxt.add(tuple(sorted((set(r) - {i + 1}) | {i})))
        reach = nxt
    return frozenset(reach)


@lru_cache(maxsize=None)
def minor_pattern(s: Perm) -> FrozenSet[Tuple[Index, Index]]:
    """Admissible pairs whose minor is positive on the whole cell of ``s``."""
    word = reduced_word(s)
    out = set()
    for r, c in admissible_pairs(s.n):
        if c in _reachable(r, word):
            out.add((r, c))
    return frozenset(out)


@lru_cache(maxsize=None)
def _pattern_table(n: int) -> Dict[FrozenSet, Perm]:
    table = {}
    for s in all_perms(n):
        p = minor_pattern(s)
        if p in table:
            raise PatternUnmatched(f"patterns of {table[p]} and {s} coincide")
        table[p] = s
    return table


def minor_signs(L: LowerUni) -> Dict[Tuple[Index, Index], Fraction]:
    return {(r, c): exterior_minor(L, r, c) for r, c in admissible_pairs(L.n)}


def tnn_cell(L: LowerUni) -> Perm:
    positive = set()
    for rc, v in minor_signs(L).items():
        if v < 0:
            raise NotTNN(f"minor {rc} = {v}")
        if v > 0:
            positive.add(rc)
    try:
        return _pattern_table(L.n)[frozenset(positive)]
    except KeyError:
        raise PatternUnmatched("nonnegative matrix with no matching cell pattern") from None


def is_tnn(L: LowerUni) -> bool:
    try:
        tnn_cell(L)
        return True
    except NotTNN:
        return False


def order_cmp(L0: LowerUni, L1: LowerUni) -> str:
    """``"ll"``, ``"leq_only"`` or ``"incomparable"``."""
    try:
        s = tnn_cell(L0.inverse() * L1)
    except NotTNN:
        return "incomparable"
    return "ll" if s == eta(L0.n) else "leq_only"


def factor_along_word(L: LowerUni, word: Sequence[int]) -> Tuple[Fraction, ...]:
    """Positive parameters with ``jacobi_product(word, t) == L``.

    The leading parameter is fixed by a minor that is positive on the current
    cell and zero on the cell with the leading letter removed; after
    subtracting ``t`` times row j from row j+1 that minor is affine in t.
    """
    n = L.n
    word = tuple(word)
    target = from_word(n, word)
    if target.inv != len(word):
        raise ValueError("word is not reduced")
    try:
        cell = tnn_cell(L)
    except NotTNN:
        raise NotInCell("matrix is not totally nonnegative") from None
    if cell != target:
        raise NotInCell(f"matrix lies in the cell of {cell}, not {target}")
    ts = []
    cur = L
    s = target
    for j in word:
        nxt = lmul_gen(j, s)
        lost = minor_pattern(s) - minor_pattern(nxt)
        t = None
        for r, c in sorted(lost):
            if j + 1 in r and j not in r:
                r2 = tuple(sorted((set(r) - {j + 1}) | {j}))
                den = exterior_minor(cur, r2, c)
                if den != 0:
                    t = exterior_minor(cur, r, c) / den
                    break
        if t is None or t <= 0:
            raise NotInCell(f"no positive parameter for letter a{j}")
        ts.append(t)
        cur = jacobi(n, j, -t) * cur
        s = nxt
    if jacobi_product(n, word, ts) != L:
        raise NotInCell("round trip failed")
    return tuple(ts)


def ac_membership(L: LowerUni, s: Perm, Lx: LowerUni) -> bool:
    """Is L in the accessibility set of ``s`` below ``Lx``?"""
    try:
        if tnn_cell(Lx) != eta(Lx.n):
            raise ArgNotTotallyPositive("reference matrix is not totally positive")
    except NotTNN:
        raise ArgNotTotallyPositive("reference matrix is not totally positive") from None
    try:
        if tnn_cell(L) != s:
            return False
    except NotTNN:
        return False
    return order_cmp(L, Lx) == "ll"


def neg_conjugate(L: LowerUni) -> LowerUni:
    """``X L X`` with ``X = diag(1, -1, 1, ...)``."""
    return LowerUni(tuple(tuple(v * (-1) ** (i + j) for j, v in enumerate(r)) for i, r in enumerate(L.rows)))


def ac_constants(L: LowerUni):
    """Rank-2 factorisation constants along both reduced words of the longest element.

    Returns ``(c, ct)`` with ``L = l1(c1) l2(c2) l1(c3) = l2(ct1) l1(ct2) l2(ct3)``.
    """
    x, y, z = L[2, 1], L[3, 2], L[3, 1]
    return (x - z / y, y, z / y), (z / x, x, y - z / x)


def ac_bounds(c: Sequence[Fraction], t1: Fraction, t2: Fraction | None = None):
    """Upper bounds ``g2(t1)`` and ``g3(t1, t2)`` for the word (1,2,1) in rank 2."""
    c1, c2, c3 = c
    g2 = c2 * c3 / (c1 + c3 - t1)
    if t2 is None:
        return g2
    return g2, c2 * (c1 - t1) / (c2 - t2)
