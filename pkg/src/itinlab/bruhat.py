"""Bruhat cells, chop/adv, B-tables and the numeric triangular charts.

Cells are read from southwest rank data.  With ``r(i, j)`` the rank of rows
``i..n+1`` and columns ``1..j``, the pivot of row i sits at the column j where
the mixed difference of r jumps by one.  This is invariant under
``M -> U0 M U1`` for upper triangular U0, U1.

For a frame inside the cell of rho, the letter seen by an itinerary is
``eta * rho``; :class:`CellId` carries both.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, List, Sequence, Tuple

import numpy as np
from scipy.linalg import expm

from .errors import FrameDegenerate, NotAPermutation, OutOfChart, Singular
from .permgroup import MultVector, Perm, eta, from_mult, multiplicity
from .spinsign import (
    LiftedSignedPerm,
    QuatElem,
    acute,
    grave_perm,
    group_mul,
    hat_perm,
    quat_lift,
    quat_mul,
)

DEFAULT_TOL = 1e-9


@dataclass(frozen=True)
class CellId:
    sigma: Perm          # the cell: pivot of row i at column i^sigma
    letter: Perm         # eta * sigma
    mult: MultVector     # multiplicity of the letter

    def to_json(self) -> dict:
        return {"sigma": str(self.sigma), "letter": str(self.letter), "mult": list(self.mult)}


def _rank_exact(rows: List[List[Fraction]]) -> int:
    m = [list(r) for r in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        p = next((r for r in range(rank, len(m)) if m[r][c] != 0), None)
        if p is None:
            continue
        m[rank], m[p] = m[p], m[rank]
        for r in range(len(m)):
            if r != rank and m[r][c] != 0:
                f = m[r][c] / m[rank][c]
                m[r] = [a - f * b for a, b in zip(m[r], m[rank])]
        rank += 1
    return rank


def _sw_ranks(M, rank_fn) -> List[List[int]]:
    d = len(M)
    r = [[0] * (d + 1) for _ in range(d + 2)]
    for i in range(1, d + 1):
        for j in range(1, d + 1):
            r[i][j] = rank_fn([row[:j] for row in M[i - 1:]])
    return r


def _cell_from_ranks(r: List[List[int]], d: int) -> Perm:
    images = [0] * d
    for i in range(1, d + 1):
        for j in range(1, d + 1):
            if r[i][j] - r[i + 1][j] - r[i][j - 1] + r[i + 1][j - 1] == 1:
                images[i - 1] = j
    try:
        return Perm(tuple(images))
    except NotAPermutation:
        raise Singular("matrix is singular") from None


def cell_of_matrix(M: Sequence[Sequence]) -> CellId:
    """Exact cell of an invertible rational matrix."""
    rows = [[Fraction(v) for v in r] for r in M]
    d = len(rows)
    if _rank_exact(rows) < d:
        raise Singular("matrix is singular")
    s = _cell_from_ranks(_sw_ranks(rows, _rank_exact), d)
    return _cell_id(s)


def cell_of_matrix_numeric(M: np.ndarray, tol: float = DEFAULT_TOL) -> CellId:
    M = np.asarray(M, dtype=float)
    d = M.shape[0]

    def rk(sub):
        a = np.asarray(sub, dtype=float)
        if a.size == 0:
            return 0
        return int(np.linalg.matrix_rank(a, tol=tol))

    if rk(M) < d:
        raise Singular("matrix is numerically singular")
    s = _cell_from_ranks(_sw_ranks(M.tolist(), rk), d)
    return _cell_id(s)


def _cell_id(s: Perm) -> CellId:
    letter = eta(s.n) * s
    return CellId(s, letter, multiplicity(letter))


# --- chop, adv, B-table -------------------------------------------------------

def chop_adv(z: LiftedSignedPerm) -> Tuple[LiftedSignedPerm, LiftedSignedPerm]:
    n = z.n
    e = eta(n)
    adv = LiftedSignedPerm(z.q, e)
    chop = group_mul(quat_lift(quat_mul(z.q, hat_perm(z.sigma))), grave_perm(e))
    return chop, adv


def arnold_element(n: int) -> LiftedSignedPerm:
    return grave_perm(eta(n))


@dataclass(frozen=True)
class BTable:
    """Entries at positions 0, 1/2, 1, 3/2, ..., l+1 in that order."""

    positions: Tuple[Fraction, ...]
    entries: Tuple[LiftedSignedPerm, ...]

    def at(self, pos) -> LiftedSignedPerm:
        return self.entries[self.positions.index(Fraction(pos))]

    @property
    def final(self) -> LiftedSignedPerm:
        return self.entries[-1]


def b_table(letters: Sequence[Perm], n: int) -> BTable:
    e = eta(n)
    pos = [Fraction(0), Fraction(1, 2)]
    ent = [LiftedSignedPerm(QuatElem(1, (0,) * n), Perm(tuple(range(1, n + 2)))), acute(e)]
    half = ent[-1]
    for j, s in enumerate(letters, start=1):
        pos.append(Fraction(j))
        ent.append(group_mul(half, acute(s)))
        half = group_mul(half, quat_lift(hat_perm(s)))
        pos.append(Fraction(2 * j + 1, 2))
        ent.append(half)
    pos.append(Fraction(len(letters) + 1))
    ent.append(group_mul(half, acute(e)))
    return BTable(tuple(pos), tuple(ent))


# --- numeric charts -------------------------------------------------------------

def h_lower(n: int) -> np.ndarray:
    """Lower part with subdiagonal entries sqrt(k (n+1-k))."""
    H = np.zeros((n + 1, n + 1))
    for k in range(1, n + 1):
        H[k, k - 1] = np.sqrt(k * (n + 1 - k))
    return H


def h_skew(n: int) -> np.ndarray:
    H = h_lower(n)
    return H - H.T


def nilpotent(n: int) -> np.ndarray:
    return np.eye(n + 1, k=-1)


def qr_chart(Q: np.ndarray, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Lower unitriangular L with ``Q = L U``, U upper triangular."""
    Q = np.asarray(Q, dtype=float)
    d = Q.shape[0]
    for k in range(1, d + 1):
        if np.linalg.det(Q[:k, :k]) <= tol:
            raise OutOfChart(f"northwest minor of size {k} is not positive")
    L = np.eye(d)
    U = Q.copy()
    for c in range(d - 1):
        for r in range(c + 1, d):
            f = U[r, c] / U[c, c]
            L[r, c] = f
            U[r] -= f * U[c]
    return L


def lu_chart(L: np.ndarray) -> np.ndarray:
    """Orthogonal factor of ``L = Q R`` with R having positive diagonal."""
    Q, R = np.linalg.qr(np.asarray(L, dtype=float))
    s = np.sign(np.diag(R))
    s[s == 0] = 1
    return Q * s


# --- numeric itineraries ----------------------------------------------------------

def sw_minors_numeric(M: np.ndarray) -> np.ndarray:
    d = M.shape[0]
    return np.array([np.linalg.det(M[d - j:, :j]) for j in range(1, d)])


def frenet_frame(gamma: Callable[[float], np.ndarray], t: float, h: float = 1e-3) -> np.ndarray:
    """Gram-Schmidt of (gamma, gamma', ..., gamma^(n)) by central differences."""
    g0 = np.asarray(gamma(t), dtype=float)
    d = g0.size
    cols = [g0]
    for k in range(1, d):
        # k-th central difference
        from math import comb

        acc = sum((-1) ** i * comb(k, i) * np.asarray(gamma(t + (k / 2 - i) * h)) for i in range(k + 1))
        cols.append(acc / h ** k)
    A = np.column_stack(cols)
    Q = lu_chart(A)
    if abs(np.linalg.det(A)) < 1e-14:
        raise FrameDegenerate(f"derivatives are dependent at t={t}")
    return Q


@dataclass(frozen=True)
class NumericSingular:
    t: float
    mult: MultVector
    letter: Perm


def _bisect(f, a, b, iters=200):
    fa = f(a)
    for _ in range(iters):
        m = 0.5 * (a + b)
        fm = f(m)
        if fm == 0 or b - a < 1e-15:
            return m
        if (fm > 0) == (fa > 0):
            a, fa = m, fm
        else:
            b = m
    return 0.5 * (a + b)


def _golden_min(f, a, b, iters=200):
    g = (np.sqrt(5) - 1) / 2
    c, d = b - g * (b - a), a + g * (b - a)
    for _ in range(iters):
        if abs(f(c)) < abs(f(d)):
            b = d
        else:
            a = c
        c, d = b - g * (b - a), a + g * (b - a)
        if b - a < 1e-13:
            break
    return 0.5 * (a + b)


def _vanishing_order(f, t, scale, tol):
    """Slope of log|f| against log|h| on a small window, rounded."""
    if abs(f(t)) > tol * max(1.0, scale):
        return 0
    hs = [1e-2, 3e-3, 1e-3]
    slopes = []
    for sgn in (1, -1):
        vals = [abs(f(t + sgn * h)) for h in hs]
        if min(vals) == 0:
            continue
        slopes.append(np.polyfit(np.log(hs), np.log(vals), 1)[0])
    if not slopes:
        return 0
    return max(1, int(round(float(np.mean(slopes)))))


def frenet_itinerary(frame: Callable[[float], np.ndarray], t0: float, t1: float,
                     samples: int = 4000, tol: float = DEFAULT_TOL) -> List[NumericSingular]:
    """Heuristic: locate zeros of southwest minors and guess letters from vanishing orders.

    Odd-order zeros are found by sign changes and bisection, even-order ones
    as near-zero local minima of |m_j|.  Zeros of different minors closer than
    ``1e3 * tol`` are merged into one singular time.  Endpoints are excluded,
    including flat zeros at an endpoint that land within one sample of it.
    """
    ts = np.linspace(t0, t1, samples + 1)
    vals = np.array([sw_minors_numeric(np.asarray(frame(t), dtype=float)) for t in ts])
    n = vals.shape[1]
    scale = float(np.max(np.abs(vals))) if vals.size else 1.0
    roots = []
    for j in range(n):
        f = lambda t, j=j: sw_minors_numeric(np.asarray(frame(t), dtype=float))[j]
        col = vals[:, j]
        for k in range(samples):
            a, b = ts[k], ts[k + 1]
            if col[k] == 0:
                roots.append(a)
            elif col[k] * col[k + 1] < 0:
                roots.append(_bisect(f, a, b))
        for k in range(1, samples):
            if abs(col[k]) <= abs(col[k - 1]) and abs(col[k]) <= abs(col[k + 1]) and col[k - 1] * col[k + 1] > 0:
                m = _golden_min(f, ts[k - 1], ts[k + 1])
                if abs(f(m)) < np.sqrt(tol) * max(1.0, scale):
                    roots.append(m)
    roots.sort()
    merged: List[List[float]] = []
    for r in roots:
        if merged and r - merged[-1][-1] < 1e3 * tol:
            merged[-1].append(r)
        else:
            merged.append([r])
    step = (t1 - t0) / samples
    thresh = np.sqrt(tol) * max(1.0, scale)
    end_zero = (bool(np.any(np.abs(vals[0]) < thresh)), bool(np.any(np.abs(vals[-1]) < thresh)))
    out = []
    for group in merged:
        t = float(np.mean(group))
        if t <= t0 or t >= t1:
            continue
        # a flat zero sitting at an endpoint may be located up to one sample inside
        if (t - t0 < step and end_zero[0]) or (t1 - t < step and end_zero[1]):
            continue
        mult = []
        for j in range(n):
            f = lambda s, j=j: sw_minors_numeric(np.asarray(frame(s), dtype=float))[j]
            mult.append(_vanishing_order(f, t, scale, np.sqrt(tol)))
        mult = tuple(mult)
        out.append(NumericSingular(t, mult, from_mult(mult)))
    return out


def rotation_curve(n: int, t: float) -> np.ndarray:
    """``exp(pi t H)``: the convex reference curve."""
    return expm(np.pi * t * h_skew(n))
