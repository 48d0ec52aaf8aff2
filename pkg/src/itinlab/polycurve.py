"""Polynomial locally convex curves and transversal families.

A family is a polynomial matrix ``M(x, t) = M~(x) exp(t N)`` where N is the
lower shift matrix; columns of M are successive t-derivatives of the first.
Its southwest minors ``m_j`` (rows n+2-j..n+1, columns 1..j) vanish exactly
at the singular times, and the vanishing orders there form the
multiplicity vector of the letter.

Real roots are handled exactly: sympy's isolating intervals for the
squarefree part of the product of all minors, then gcd tests restricted to
each interval give the per-minor vanishing orders without factoring.
"""
from __future__ import annotations

import hashlib
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Dict, List, Sequence, Tuple

import sympy as sp

from .errors import DegenerateFamily, IdentityLetter, NotAPermutation, ZeroPolynomial
from .permgroup import MultVector, Perm, eta, from_mult
from .spinsign import (
    QuatElem,
    acute,
    group_mul,
    pi_matrix,
    quat_lift,
    quat_with_diag,
)
from .trilat import LowerUni

T = sp.Symbol("t")


def xsyms(d: int) -> Tuple[sp.Symbol, ...]:
    return tuple(sp.Symbol(f"x{i}") for i in range(1, d + 1))


@dataclass(frozen=True)
class PolyMatrix:
    """Square matrix of sympy expressions in ``t`` and ``x1..xd``."""

    entries: Tuple[Tuple[sp.Expr, ...], ...]
    xs: Tuple[sp.Symbol, ...]

    @property
    def n(self) -> int:
        return len(self.entries) - 1

    def matrix(self) -> sp.Matrix:
        return sp.Matrix(self.entries)

    def subs(self, values: Dict) -> "PolyMatrix":
        ent = tuple(tuple(sp.expand(e.subs(values)) for e in r) for r in self.entries)
        xs = tuple(x for x in self.xs if x not in values)
        return PolyMatrix(ent, xs)

    def at(self, x: Sequence, t=None) -> sp.Matrix:
        vals = {s: sp.Rational(v) for s, v in zip(self.xs, x)}
        if t is not None:
            vals[T] = sp.Rational(t) if not isinstance(t, float) else t
        return self.matrix().subs(vals)

    def to_json(self) -> List[List[str]]:
        return [[str(e) for e in r] for r in self.entries]


def exp_nilpotent(L0, n: int | None = None) -> PolyMatrix:
    """``L0 * exp(t N)``; L0 may be a LowerUni or any square matrix of expressions."""
    if isinstance(L0, LowerUni):
        rows = [[sp.Rational(v.numerator, v.denominator) for v in r] for r in L0.rows]
    else:
        rows = [[sp.sympify(v) for v in r] for r in L0]
    d = len(rows)
    out = []
    for i in range(d):
        out.append(tuple(sp.expand(sum(rows[i][k] * T ** (k - j) / factorial(k - j) for k in range(j, d)))
                         for j in range(d)))
    free = sorted({s for r in out for e in r for s in e.free_symbols if s != T}, key=lambda s: s.name)
    return PolyMatrix(tuple(out), tuple(free))


def default_quat(s: Perm) -> QuatElem:
    """The q making every pivot of ``Pi(q acute(eta) acute(s))`` positive below the first row."""
    base = pi_matrix(group_mul(acute(eta(s.n)), acute(s)))
    signs = [sum(r) for r in base]
    rho = eta(s.n) * s
    parity = 1 if rho.inv % 2 == 0 else -1
    target = [parity] + [1] * s.n
    return quat_with_diag(tuple(a * b for a, b in zip(target, signs)))


def transversal_core(s: Perm, q: QuatElem | None = None):
    """``(M~, positions)`` with all d+1 parameters free."""
    if s.is_identity():
        raise IdentityLetter("the identity has no transversal family")
    n = s.n
    q = default_quat(s) if q is None else q
    z0 = group_mul(quat_lift(q), group_mul(acute(eta(n)), acute(s)))
    Q0 = pi_matrix(z0)
    rho = eta(n) * s
    rho_inv = rho.inverse()
    positions = [(i, j) for i in range(1, n + 2) for j in range(1, n + 2)
                 if j < rho(i) and rho_inv(j) < i]
    xs = xsyms(len(positions))
    rows = [[sp.Integer(Q0[i][j]) for j in range(n + 1)] for i in range(n + 1)]
    for x, (i, j) in zip(xs, positions):
        rows[i - 1][j - 1] = Q0[i - 1][rho(i) - 1] * x
    return rows, positions, xs, z0


def transversal_family(s: Perm, q: QuatElem | None = None) -> PolyMatrix:
    """The d-parameter family (last parameter set to zero)."""
    rows, positions, xs, _ = transversal_core(s, q)
    last = xs[-1]
    rows = [[e.subs(last, 0) for e in r] for r in rows]
    M = exp_nilpotent(rows)
    return PolyMatrix(M.entries, xs[:-1])


def sw_minors(M: PolyMatrix) -> List[sp.Expr]:
    mat = M.matrix()
    d = mat.shape[0]
    return [sp.expand(mat[d - j:, :j].det(method="berkowitz")) for j in range(1, d)]


@lru_cache(maxsize=None)
def family_minors(s: Perm) -> Tuple[Tuple[sp.Expr, ...], Tuple[sp.Symbol, ...]]:
    M = transversal_family(s)
    return tuple(sw_minors(M)), M.xs


# --- exact real roots -------------------------------------------------------

@dataclass(frozen=True)
class AlgebraicRoot:
    """The unique root of the squarefree ``g`` in ``[lo, hi]``."""

    g: sp.Poly
    lo: Fraction
    hi: Fraction

    def refine(self, eps=Fraction(1, 10 ** 12)) -> "AlgebraicRoot":
        if self.lo == self.hi:
            return self
        a, b = self.g.refine_root(sp.Rational(self.lo), sp.Rational(self.hi), eps=sp.Rational(eps))
        return AlgebraicRoot(self.g, _to_frac(a), _to_frac(b))

    def approx(self) -> float:
        r = self.refine()
        return float((r.lo + r.hi) / 2)

    def __str__(self) -> str:
        if self.lo == self.hi:
            return str(self.lo)
        return f"root of {self.g.as_expr()} in [{self.lo}, {self.hi}]"


def _to_frac(v) -> Fraction:
    v = sp.Rational(v)
    return Fraction(int(v.p), int(v.q))


def _poly(p) -> sp.Poly:
    if isinstance(p, sp.Poly):
        return p
    return sp.Poly(sp.sympify(p), T, domain="QQ")


def _interior(lo, hi):
    return lambda h: h.count_roots(lo, hi) - (h.eval(lo) == 0) - (h.eval(hi) == 0)


def _locate(g: sp.Poly, lo, hi):
    """Normalise an isolating interval: a point, or an open interval holding one root."""
    if lo == hi or _interior(lo, hi)(g) == 1:
        return lo, hi
    return (lo, lo) if g.eval(lo) == 0 else (hi, hi)


def _has_root(h: sp.Poly, lo, hi) -> bool:
    if h.degree() <= 0:
        return False
    if lo == hi:
        return h.eval(lo) == 0
    return _interior(lo, hi)(h) > 0


def _vanishing_order(p: sp.Poly, g: sp.Poly, lo, hi) -> int:
    """Largest e with the root of g in (lo, hi) a common root of p, p', ..., p^(e-1)."""
    e = 0
    cur = p
    while not cur.is_zero and _has_root(sp.gcd(g, cur), lo, hi):
        e += 1
        cur = cur.diff(T)
    return e


def isolate_roots(p) -> List[Tuple[AlgebraicRoot, int]]:
    """Real roots with multiplicities, in increasing order."""
    P = _poly(p)
    if P.is_zero:
        raise ZeroPolynomial("cannot isolate roots of the zero polynomial")
    g = sp.Poly(sp.quo(P, sp.gcd(P, P.diff(T))), T, domain="QQ")
    out = []
    if g.degree() <= 0:
        return out
    for (a, b), _ in g.intervals():
        lo, hi = _locate(g, sp.Rational(a), sp.Rational(b))
        out.append((AlgebraicRoot(g, _to_frac(lo), _to_frac(hi)), _vanishing_order(P, g, lo, hi)))
    return out


@dataclass(frozen=True)
class SingularPoint:
    root: AlgebraicRoot
    mult: MultVector
    letter: Perm


def singular_points(minors: Sequence) -> List[SingularPoint]:
    polys = [_poly(m) for m in minors]
    if any(p.is_zero for p in polys):
        raise DegenerateFamily("a southwest minor vanishes identically")
    prod = sp.Poly(1, T, domain="QQ")
    for p in polys:
        if p.degree() > 0:
            prod = prod * sp.Poly(sp.quo(p, sp.gcd(p, p.diff(T))), T, domain="QQ")
    if prod.degree() <= 0:
        return []
    g = sp.Poly(sp.quo(prod, sp.gcd(prod, prod.diff(T))), T, domain="QQ")
    out = []
    for (a, b), _ in g.intervals():
        lo, hi = _locate(g, sp.Rational(a), sp.Rational(b))
        mult = tuple(_vanishing_order(p, g, lo, hi) for p in polys)
        try:
            letter = from_mult(mult)
        except NotAPermutation:
            raise NotAPermutation(f"vanishing orders {mult} are not a multiplicity vector") from None
        out.append(SingularPoint(AlgebraicRoot(g, _to_frac(lo), _to_frac(hi)), mult, letter))
    return out


def specialize(minors: Sequence[sp.Expr], xs: Sequence[sp.Symbol], x: Sequence) -> List[sp.Expr]:
    if len(x) != len(xs):
        raise ValueError(f"expected {len(xs)} parameters, got {len(x)}")
    vals = {s: sp.Rational(str(v)) if not isinstance(v, Fraction) else sp.Rational(v.numerator, v.denominator)
            for s, v in zip(xs, x)}
    return [sp.expand(m.subs(vals)) for m in minors]


def itinerary_at(s: Perm, x: Sequence) -> List[SingularPoint]:
    minors, xs = family_minors(s)
    return singular_points(specialize(minors, xs, x))


def itinerary_letters(points: Sequence[SingularPoint]) -> Tuple[Perm, ...]:
    return tuple(p.letter for p in points)


# --- boundary curves ----------------------------------------------------------

def _normalize(expr: sp.Expr, xs: Sequence[sp.Symbol]) -> sp.Expr:
    if expr == 0:
        return sp.Integer(0)
    P = sp.Poly(sp.sqf_part(expr), *xs, domain="QQ")
    P = P.clear_denoms(convert=True)[1].primitive()[1]
    lead = min(P.monoms())
    if P.coeff_monomial(lead) < 0:
        P = -P
    return P.as_expr()


def boundary_curves(s: Perm, normalize: bool = True) -> Dict[Tuple[int, int], sp.Expr]:
    """Resultants of pairs of minors and discriminants of single minors, in x."""
    minors, xs = family_minors(s)
    out = {}
    k = len(minors)
    for i in range(k):
        for j in range(i, k):
            a = sp.Poly(minors[i], T)
            if i == j:
                if a.degree() < 2:
                    continue
                r = sp.discriminant(a)
            else:
                b = sp.Poly(minors[j], T)
                if a.degree() < 1 or b.degree() < 1:
                    continue
                r = sp.resultant(a, b)
            r = sp.expand(r.as_expr() if isinstance(r, sp.Poly) else r)
            if r.free_symbols & set(xs):
                out[(i + 1, j + 1)] = _normalize(r, xs) if normalize else r
    return out


# --- region maps ----------------------------------------------------------------

def word_string(letters: Sequence[Perm]) -> str:
    from .words import Word

    return str(Word(tuple(letters)))


def region_map(s: Perm, x1: Tuple[Fraction, Fraction], x2: Tuple[Fraction, Fraction],
               res: Tuple[int, int], threads: int = 1) -> List[Tuple[Fraction, Fraction, str]]:
    """Itinerary labels on a rational grid, in row-major order (x2 outer, x1 inner)."""
    minors, xs = family_minors(s)
    if len(xs) != 2:
        from .errors import DimTooHigh

        raise DimTooHigh("region maps need a two-parameter family")
    n1, n2 = res
    g1 = [Fraction(x1[0]) + (Fraction(x1[1]) - Fraction(x1[0])) * k / max(n1 - 1, 1) for k in range(n1)]
    g2 = [Fraction(x2[0]) + (Fraction(x2[1]) - Fraction(x2[0])) * k / max(n2 - 1, 1) for k in range(n2)]
    pts = [(a, b) for b in g2 for a in g1]

    def label(p):
        return word_string(itinerary_letters(singular_points(specialize(minors, xs, p))))

    if threads > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=threads) as ex:
            labels = list(ex.map(label, pts))
    else:
        labels = [label(p) for p in pts]
    return [(a, b, lab) for (a, b), lab in zip(pts, labels)]


def region_tsv(rows: Sequence[Tuple[Fraction, Fraction, str]]) -> str:
    out = ["x1\tx2\titinerary"]
    out += [f"{a}\t{b}\t{lab}" for a, b, lab in rows]
    return "\n".join(out) + "\n"


def _color(label: str) -> str:
    h = hashlib.sha256(label.encode()).hexdigest()
    r, g, b = (int(h[i:i + 2], 16) // 2 + 100 for i in (0, 2, 4))
    return f"#{r:02x}{g:02x}{b:02x}"


def region_svg(s: Perm, x1, x2, res, size: int = 480, threads: int = 1) -> str:
    """Deterministic SVG: colored cells, zero sets of the boundary curves, centroid labels."""
    import numpy as np

    rows = region_map(s, x1, x2, res, threads)
    n1, n2 = res
    a0, a1 = float(x1[0]), float(x1[1])
    b0, b1 = float(x2[0]), float(x2[1])
    cw, ch = size / n1, size / n2

    def px(a, b):
        return (a - a0) / (a1 - a0) * size, size - (b - b0) / (b1 - b0) * size

    parts = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
             f'viewBox="0 0 {size} {size}">']
    sums: Dict[str, List[float]] = {}
    for k, (a, b, lab) in enumerate(rows):
        i, j = k % n1, k // n1
        x, y = i * cw, size - (j + 1) * ch
        parts.append(f'<rect x="{x:.2f}" y="{y:.2f}" width="{cw:.2f}" height="{ch:.2f}" '
                     f'fill="{_color(lab)}" stroke="none"/>')
        acc = sums.setdefault(lab, [0.0, 0.0, 0])
        acc[0] += x + cw / 2
        acc[1] += y + ch / 2
        acc[2] += 1
    xs = xsyms(2)
    grid = 200
    A = np.linspace(a0, a1, grid + 1)
    B = np.linspace(b0, b1, grid + 1)
    for key, curve in sorted(boundary_curves(s).items()):
        f = sp.lambdify(xs, curve, "numpy")
        Z = np.asarray(f(A[None, :], B[:, None]), dtype=float) * np.ones((grid + 1, grid + 1))
        segs = []
        for jj in range(grid):
            for ii in range(grid):
                if Z[jj, ii] == 0 or Z[jj, ii] * Z[jj, ii + 1] < 0 or Z[jj, ii] * Z[jj + 1, ii] < 0:
                    p, q = px(A[ii], B[jj])
                    segs.append(f"M{p:.1f},{q:.1f}h0.6")
        if segs:
            parts.append(f'<path d="{"".join(segs)}" stroke="black" stroke-width="1.2" fill="none" '
                         f'data-curve="{key[0]},{key[1]}"/>')
    for lab in sorted(sums):
        sx, sy, c = sums[lab]
        if c >= max(1, (n1 * n2) // 100):
            parts.append(f'<text x="{sx / c:.1f}" y="{sy / c:.1f}" font-size="12" '
                         f'text-anchor="middle">{lab or "(empty)"}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


# --- convexity falsifier ----------------------------------------------------------

def _lower_part(M: sp.Matrix, Q0: sp.Matrix) -> LowerUni:
    L = Q0.inv() * M
    return LowerUni.from_rows([[Fraction(int(sp.Rational(v).p), int(sp.Rational(v).q)) for v in L.row(i)]
                               for i in range(L.shape[0])])


def convexity_falsifier(M: PolyMatrix, x: Sequence, times: Sequence, Q0=None):
    """Check ``Gamma(t0)^-1 Gamma(t1)`` is totally positive for sampled pairs.

    Works in triangular coordinates ``Q0^-1 M(x, t)``; ``Q0`` defaults to
    ``M(x, 0)`` when that is a signed permutation matrix, else the identity.
    Returns ``None`` when every pair passes, or the first failing ``(t0, t1)``.
    """
    from .trilat import order_cmp

    base = M.at(x, 0)
    if Q0 is None:
        Q0 = sp.eye(base.shape[0])
        nz = [[v for v in base.row(i) if v != 0] for i in range(base.shape[0])]
        if all(len(r) == 1 and abs(r[0]) == 1 for r in nz):
            Q0 = base
    times = sorted(Fraction(t) for t in times)
    mats = {t: _lower_part(M.at(x, sp.Rational(t.numerator, t.denominator)), sp.Matrix(Q0)) for t in times}
    for a in range(len(times)):
        for b in range(a + 1, len(times)):
            if order_cmp(mats[times[a]], mats[times[b]]) != "ll":
                return times[a], times[b]
    return None


def vandermonde_constant(ks: Sequence[int]) -> int:
    """``prod_{i<j} (k_j - k_i)``."""
    c = 1
    for i in range(len(ks)):
        for j in range(i + 1, len(ks)):
            c *= ks[j] - ks[i]
    return c


def vandermonde_det(ks: Sequence[int]) -> sp.Expr:
    """Brute-force determinant of rows (t^k, d/dt t^k, ...)."""
    d = len(ks)
    rows = []
    for k in ks:
        r = [T ** k]
        for _ in range(d - 1):
            r.append(sp.diff(r[-1], T))
        rows.append(r)
    return sp.expand(sp.Matrix(rows).det(method="berkowitz"))


# --- boundaries read off a section ------------------------------------------------

def perturbed_acb_family(u=0) -> PolyMatrix:
    """The [acb] family with the extra entry u at position (3, 2) of the core."""
    x, y = xsyms(2)
    u = sp.Rational(str(u)) if not isinstance(u, Fraction) else sp.Rational(u.numerator, u.denominator)
    core = [[0, -1, 0, 0], [0, x, 0, 1], [1, u, 0, 0], [y, 0, 1, 0]]
    M = exp_nilpotent(core)
    return PolyMatrix(M.entries, (x, y))


def _circle_points(r: Fraction, samples: int):
    import math

    pts = []
    for k in range(samples):
        th = 2 * math.pi * (k + 0.5) / samples
        pts.append((Fraction(r) * Fraction(math.cos(th)).limit_denominator(10 ** 6),
                    Fraction(r) * Fraction(math.sin(th)).limit_denominator(10 ** 6)))
    return pts


def _edges_between(a, b):
    """Dimension-1 words whose endpoints are exactly the words a and b."""
    from .words import Word, edge_endpoints

    n = a.n
    inv2 = [p for p in _inv2_letters(n)]
    out = []
    for src, dst in ((a, b), (b, a)):
        for i in range(len(src)):
            for ln in (1, 2, 3):
                if i + ln > len(src):
                    break
                for s in inv2:
                    e = Word(src.letters[:i] + (s,) + src.letters[i + ln:], n)
                    lo, hi = edge_endpoints(e)
                    if {lo, hi} == {a, b} and e not in [x for x, _ in out]:
                        out.append((e, 1 if (lo, hi) == (a, b) else -1))
    return out


@lru_cache(maxsize=None)
def _inv2_letters(n: int):
    from .permgroup import all_perms

    return tuple(s for s in all_perms(n) if s.inv == 2)


def section_boundary(minors, xs, r=Fraction(1, 2), samples: int = 720):
    """Walk a circle counterclockwise and record the crossed dimension-1 words.

    An edge counts +1 when the walk goes from its minus end to its plus end.
    """
    from .words import Word, chain_add

    n = len(minors)
    labels = []
    for p in _circle_points(r, samples):
        w = Word(itinerary_letters(singular_points(specialize(minors, xs, p))), n)
        if w.dim != 0:
            raise DegenerateFamily(f"sample {p} hit a curve of positive dimension")
        if not labels or labels[-1] != w:
            labels.append(w)
    if len(labels) > 1 and labels[0] == labels[-1]:
        labels.pop()
    chain = {}
    for k in range(len(labels)):
        a, b = labels[k], labels[(k + 1) % len(labels)]
        cands = _edges_between(a, b)
        if len(cands) != 1:
            raise DegenerateFamily(f"cannot identify the edge between {a} and {b}: {cands}")
        e, sgn = cands[0]
        chain = chain_add(chain, {e: sgn})
    return chain


@lru_cache(maxsize=None)
def acb_boundary_terms(u=Fraction(-1, 8)):
    """Boundary of [acb] as (coefficient, generator tuples) terms, from the perturbed section.

    The perturbation adds singular times far from the origin (near t = -2/u
    and -3/u); they show up as a fixed prefix or suffix on every word of the
    section and are stripped.
    """
    from .permgroup import reduced_word

    M = perturbed_acb_family(u)
    minors = sw_minors(M)
    centre = itinerary_letters(singular_points(specialize(minors, M.xs, (0, 0))))
    k = next(i for i, s in enumerate(centre) if s.inv == 3)
    pre, post = centre[:k], centre[k + 1:]
    chain = section_boundary(minors, M.xs, r=Fraction(1, 2))
    out = []
    for w, v in sorted(chain.items(), key=lambda kv: str(kv[0])):
        lets = w.letters
        if lets[:len(pre)] != pre or lets[len(lets) - len(post):] != post:
            raise DegenerateFamily(f"{w} does not carry the fixed letters of the centre")
        core = lets[len(pre):len(lets) - len(post)]
        out.append((v, [reduced_word(s) for s in core]))
    return tuple((v, tuple(g)) for v, g in out)
