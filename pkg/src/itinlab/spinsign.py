"""Spin lifts of signed permutations.

Three layers live here:

* :class:`CliffordElem` -- an exact even multivector in Cl(n+1) with
  Euclidean metric.  Coefficients are integers over a common power of
  sqrt(2).  This is the oracle every sign convention is checked against.
* :class:`QuatElem` -- the finite group generated by ``hat a_i = e_{i+1} e_i``
  in the normal form ``sign * hat a_1^eps_1 ... hat a_n^eps_n``.
* :class:`LiftedSignedPerm` -- an element ``q * acute(sigma)`` of the lifted
  hyperoctahedral group, where ``acute a_i = (1 + e_{i+1} e_i) / sqrt 2``.

Canonical-form multiplication (:func:`group_mul`) never touches the
multivector code; :func:`oracle_mul` does the same product through
:class:`CliffordElem`, and the two are compared in the test-suite.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterable, List, Tuple

from .errors import NotGroupElement, ParseError
from .permgroup import (
    Perm,
    identity,
    lmul_gen,
    reduced_word,
    rmul_gen,
)


# --- exact multivectors ------------------------------------------------------

def _blade_sign(a: int, b: int) -> int:
    """Sign of the product of two basis blades given as bitmasks."""
    a >>= 1
    swaps = 0
    while a:
        swaps += bin(a & b).count("1")
        a >>= 1
    return -1 if swaps & 1 else 1


@dataclass(frozen=True)
class CliffordElem:
    """``sum coeffs[mask] * e_mask / sqrt(2)**k``; bit i of mask is e_{i+1}."""

    dim: int
    coeffs: Tuple[Tuple[int, int], ...]
    k: int = 0

    @staticmethod
    def make(dim: int, coeffs: Dict[int, int], k: int = 0) -> "CliffordElem":
        c = {m: v for m, v in coeffs.items() if v}
        # a common exponent: halve while every numerator is even
        while k >= 2 and c and all(v % 2 == 0 for v in c.values()):
            c = {m: v // 2 for m, v in c.items()}
            k -= 2
        if not c:
            k = 0
        return CliffordElem(dim, tuple(sorted(c.items())), k)

    @staticmethod
    def scalar(dim: int, v: int = 1) -> "CliffordElem":
        return CliffordElem.make(dim, {0: v})

    @staticmethod
    def vector(dim: int, i: int) -> "CliffordElem":
        return CliffordElem.make(dim, {1 << (i - 1): 1})

    def __mul__(self, other: "CliffordElem") -> "CliffordElem":
        out: Dict[int, int] = {}
        for ma, va in self.coeffs:
            for mb, vb in other.coeffs:
                m = ma ^ mb
                out[m] = out.get(m, 0) + _blade_sign(ma, mb) * va * vb
        return CliffordElem.make(self.dim, out, self.k + other.k)

    def __neg__(self) -> "CliffordElem":
        return CliffordElem(self.dim, tuple((m, -v) for m, v in self.coeffs), self.k)

    def reverse(self) -> "CliffordElem":
        out = {}
        for m, v in self.coeffs:
            r = bin(m).count("1")
            out[m] = -v if (r * (r - 1) // 2) % 2 else v
        return CliffordElem.make(self.dim, out, self.k)

    def single_blade(self) -> Tuple[int, int] | None:
        """``(mask, +-1)`` if this is a signed basis blade, else None."""
        if self.k == 0 and len(self.coeffs) == 1 and abs(self.coeffs[0][1]) == 1:
            return self.coeffs[0]
        return None

    def __str__(self) -> str:
        terms = []
        for m, v in self.coeffs:
            idx = [str(i + 1) for i in range(self.dim) if m >> i & 1]
            terms.append(f"{v:+d}" + ("e" + "".join(idx) if idx else ""))
        den = f"/sqrt2^{self.k}" if self.k else ""
        return "(" + " ".join(terms) + ")" + den


def cl_acute_gen(dim: int, i: int) -> CliffordElem:
    e = CliffordElem.vector
    b = e(dim, i + 1) * e(dim, i)
    return CliffordElem.make(dim, {0: 1, **dict(b.coeffs)}, 1)


def cl_hat_gen(dim: int, i: int) -> CliffordElem:
    e = CliffordElem.vector
    return e(dim, i + 1) * e(dim, i)


def cl_product(dim: int, factors: Iterable[CliffordElem]) -> CliffordElem:
    out = CliffordElem.scalar(dim)
    for f in factors:
        out = out * f
    return out


@lru_cache(maxsize=None)
def cl_acute(s: Perm) -> CliffordElem:
    d = s.n + 1
    return cl_product(d, (cl_acute_gen(d, i) for i in reduced_word(s)))


def pi_matrix_cl(z: CliffordElem) -> List[List[int]]:
    """Signed permutation matrix of ``v -> z v z^-1``; column j is the image of e_j."""
    d = z.dim
    zi = z.reverse()
    m = [[0] * d for _ in range(d)]
    for j in range(1, d + 1):
        img = z * CliffordElem.vector(d, j) * zi
        b = img.single_blade()
        if b is None or bin(b[0]).count("1") != 1:
            raise NotGroupElement(f"conjugation of e{j} gives {img}")
        i = b[0].bit_length()
        m[i - 1][j - 1] = b[1]
    return m


# --- the finite group Quat ---------------------------------------------------

@dataclass(frozen=True, order=True)
class QuatElem:
    sign: int
    eps: Tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.eps)

    def __mul__(self, other: "QuatElem") -> "QuatElem":
        return quat_mul(self, other)

    def __neg__(self) -> "QuatElem":
        return QuatElem(-self.sign, self.eps)

    def inverse(self) -> "QuatElem":
        sq = quat_mul(self, self)
        return self if sq.sign == 1 else -self

    def is_scalar(self) -> bool:
        return not any(self.eps)

    def __str__(self) -> str:
        gens = [f"a{i + 1}" for i, e in enumerate(self.eps) if e]
        body = "*".join(gens) if gens else "1"
        return ("+" if self.sign > 0 else "-") + body


def quat_one(n: int) -> QuatElem:
    return QuatElem(1, (0,) * n)


def quat_gen(n: int, i: int) -> QuatElem:
    e = [0] * n
    e[i - 1] = 1
    return QuatElem(1, tuple(e))


def quat_mul(q0: QuatElem, q1: QuatElem) -> QuatElem:
    """Normal-order a product: squares give -1, neighbours anticommute."""
    if q0.n != q1.n:
        raise ValueError("rank mismatch")
    sign = q0.sign * q1.sign
    eps = list(q0.eps)
    for j0, e in enumerate(q1.eps):
        if not e:
            continue
        # move hat a_{j0+1} leftwards past every present generator of larger index
        if j0 + 1 < len(eps) and eps[j0 + 1]:
            sign = -sign
        if eps[j0]:
            sign = -sign
            eps[j0] = 0
        else:
            eps[j0] = 1
    return QuatElem(sign, tuple(eps))


def parse_quat(text: str, n: int) -> QuatElem:
    s = text.replace(" ", "")
    sign = 1
    if s[:1] in "+-":
        sign = -1 if s[0] == "-" else 1
        s = s[1:]
    q = QuatElem(sign, (0,) * n)
    if s in ("", "1"):
        return q
    from .permgroup import parse_generators

    for i in parse_generators(s.replace("*", "")):
        if not 1 <= i <= n:
            raise ParseError(f"a{i} outside rank {n}")
        q = quat_mul(q, quat_gen(n, i))
    return q


def quat_to_cl(q: QuatElem) -> CliffordElem:
    d = q.n + 1
    z = CliffordElem.scalar(d, q.sign)
    for i, e in enumerate(q.eps, start=1):
        if e:
            z = z * cl_hat_gen(d, i)
    return z


@lru_cache(maxsize=None)
def _blade_table(n: int) -> Dict[int, QuatElem]:
    """Maps a blade mask to the positive-blade quat element."""
    table = {}
    for bits in range(1 << n):
        eps = tuple(bits >> i & 1 for i in range(n))
        mask, sgn = quat_to_cl(QuatElem(1, eps)).single_blade()
        table[mask] = QuatElem(sgn, eps)
    return table


def quat_diag(q: QuatElem) -> Tuple[int, ...]:
    """Diagonal of the signed matrix of q: hat a_i flips coordinates i, i+1."""
    d = [1] * (q.n + 1)
    for i, e in enumerate(q.eps):
        if e:
            d[i] = -d[i]
            d[i + 1] = -d[i + 1]
    return tuple(d)


def quat_with_diag(diag: Tuple[int, ...]) -> QuatElem:
    """The positive-sign element whose signed matrix is ``diag``."""
    n = len(diag) - 1
    eps = []
    flip = 1
    for i in range(n):
        # coordinate i is flipped by eps_{i-1} and eps_i
        want = diag[i]
        e = 0 if want == flip else 1
        eps.append(e)
        flip = -1 if e else 1
    q = QuatElem(1, tuple(eps))
    if quat_diag(q) != tuple(diag):
        raise NotGroupElement(f"diagonal {diag} has determinant -1")
    return q


# --- hat, acute, grave -------------------------------------------------------

@lru_cache(maxsize=None)
def hat_perm(s: Perm) -> QuatElem:
    """Recursion on the first letter: ``s = a_i s1``."""
    n = s.n
    if s.is_identity():
        return quat_one(n)
    i = reduced_word(s)[0]
    s1 = lmul_gen(i, s)
    delta = abs(s1(i + 1) - s1(i))
    h1 = hat_perm(s1)
    return quat_mul(quat_gen(n, i), h1) if delta % 2 else h1


def hat_perm_along(s: Perm, word: Iterable[int]) -> QuatElem:
    """Same recursion but along an arbitrary reduced word (for word-independence tests)."""
    word = tuple(word)
    n = s.n
    q = quat_one(n)
    cur = identity(n)
    for i in reversed(word):
        prev = cur
        cur = lmul_gen(i, cur)
        if abs(prev(i + 1) - prev(i)) % 2:
            q = quat_mul(quat_gen(n, i), q)
    if cur != s:
        raise ValueError("word does not spell the permutation")
    return q


def hat_oracle(s: Perm) -> QuatElem:
    """``acute(s) * grave(s)^-1`` evaluated in the multivector algebra."""
    d = s.n + 1
    w = reduced_word(s)
    z = cl_product(d, [cl_acute_gen(d, i) for i in w] + [cl_acute_gen(d, i) for i in reversed(w)])
    b = z.single_blade()
    if b is None:
        raise NotGroupElement(str(z))
    q = _blade_table(s.n)[b[0]]
    return QuatElem(q.sign * b[1], q.eps)


@dataclass(frozen=True, order=True)
class LiftedSignedPerm:
    """The element ``q * acute(sigma)``."""

    q: QuatElem
    sigma: Perm

    @property
    def n(self) -> int:
        return self.sigma.n

    def __mul__(self, other: "LiftedSignedPerm") -> "LiftedSignedPerm":
        return group_mul(self, other)

    def __str__(self) -> str:
        return f"q={self.q}; sigma={self.sigma}"

    def to_json(self) -> dict:
        return {"sign": self.q.sign, "eps": list(self.q.eps), "sigma": list(self.sigma.images)}


def lifted(q: QuatElem | None = None, sigma: Perm | None = None, n: int | None = None) -> LiftedSignedPerm:
    n = n if n is not None else (q.n if q is not None else sigma.n)
    return LiftedSignedPerm(q if q is not None else quat_one(n), sigma if sigma is not None else identity(n))


def acute(s: Perm) -> LiftedSignedPerm:
    return LiftedSignedPerm(quat_one(s.n), s)


def grave_perm(s: Perm) -> LiftedSignedPerm:
    return LiftedSignedPerm(hat_perm(s).inverse(), s)


def quat_lift(q: QuatElem) -> LiftedSignedPerm:
    return LiftedSignedPerm(q, identity(q.n))


def parse_lifted(text: str, n: int | None = None) -> LiftedSignedPerm:
    """``q=-a1*a3; sigma=[2143]``; a bare permutation means q = +1."""
    from .permgroup import parse_perm

    parts = {}
    for p in (p.strip() for p in text.split(";")):
        if not p:
            continue
        key, eq, val = p.partition("=")
        if not eq:
            key, val = "sigma", p
        if key.strip() not in ("q", "sigma") or key.strip() in parts:
            raise ParseError(f"bad lifted element {text!r}")
        parts[key.strip()] = val.strip()
    if "sigma" not in parts:
        raise ParseError(f"lifted element without sigma: {text!r}")
    sigma = parse_perm(parts["sigma"], n)
    q = parse_quat(parts.get("q", "+1"), sigma.n)
    return LiftedSignedPerm(q, sigma)


def _pass_acute(i: int, q: QuatElem) -> QuatElem:
    """q' with ``acute a_i * q = q' * acute a_i``."""
    e = q.eps
    odd = ((e[i - 2] if i >= 2 else 0) + (e[i] if i < len(e) else 0)) % 2
    if not odd:
        return q
    return -quat_mul(q, quat_gen(q.n, i))


def _pass_acute_perm(s: Perm, q: QuatElem) -> QuatElem:
    for i in reversed(reduced_word(s)):
        q = _pass_acute(i, q)
    return q


def _times_acute_gen(z: LiftedSignedPerm, i: int) -> LiftedSignedPerm:
    t = rmul_gen(z.sigma, i)
    if t.inv > z.sigma.inv:
        return LiftedSignedPerm(z.q, t)
    # acute(s) acute(a_i) = acute(t) hat(a_i), then move hat(a_i) to the left
    p = _pass_acute_perm(t, quat_gen(z.n, i))
    return LiftedSignedPerm(quat_mul(z.q, p), t)


def group_mul(z0: LiftedSignedPerm, z1: LiftedSignedPerm) -> LiftedSignedPerm:
    """Canonical-form product, using only the commutation rules of the generators."""
    if z0.n != z1.n:
        raise ValueError("rank mismatch")
    q = quat_mul(z0.q, _pass_acute_perm(z0.sigma, z1.q))
    z = LiftedSignedPerm(q, z0.sigma)
    for i in reduced_word(z1.sigma):
        z = _times_acute_gen(z, i)
    return z


def lifted_inverse(z: LiftedSignedPerm) -> LiftedSignedPerm:
    # (q acute s)^-1 = acute(s)^-1 q^-1, and acute(s)^-1 = hat(s^-1)^-1 acute(s^-1)
    si = z.sigma.inverse()
    a_inv = LiftedSignedPerm(hat_perm(si).inverse(), si)
    return group_mul(a_inv, quat_lift(z.q.inverse()))


def to_clifford(z: LiftedSignedPerm) -> CliffordElem:
    return quat_to_cl(z.q) * cl_acute(z.sigma)


def canonicalize(z: CliffordElem) -> LiftedSignedPerm:
    """Read sigma off the signed matrix, then the leftover is a signed blade."""
    m = pi_matrix_cl(z)
    d = z.dim
    images = tuple(next(j + 1 for j in range(d) if m[i][j]) for i in range(d))
    s = Perm(images)
    rest = z * cl_acute(s).reverse()
    b = rest.single_blade()
    if b is None:
        raise NotGroupElement(str(z))
    q = _blade_table(d - 1)[b[0]]
    return LiftedSignedPerm(QuatElem(q.sign * b[1], q.eps), s)


def oracle_mul(z0: LiftedSignedPerm, z1: LiftedSignedPerm) -> LiftedSignedPerm:
    return canonicalize(to_clifford(z0) * to_clifford(z1))


def pi_matrix(z: LiftedSignedPerm) -> List[List[int]]:
    """Signed matrix from the canonical form: quat diagonal times the acute pattern."""
    s = z.sigma
    from .permgroup import inv_data

    rows = inv_data(s).per_row
    dg = quat_diag(z.q)
    m = [[0] * (s.n + 1) for _ in range(s.n + 1)]
    for i in range(1, s.n + 2):
        m[i - 1][s(i) - 1] = dg[i - 1] * (-1 if rows[i - 1] % 2 else 1)
    return m


def hat_eta_table(n: int) -> QuatElem:
    """Closed form for ``hat(eta)`` by residue of n mod 8."""
    odd_gens = tuple(1 if (i % 2 == 0) else 0 for i in range(n))
    r = n % 8
    if r in (0, 6):
        return quat_one(n)
    if r in (2, 4):
        return -quat_one(n)
    return QuatElem(1 if r in (1, 7) else -1, odd_gens)


def hat_word_letters(letters: Iterable[Perm], n: int) -> QuatElem:
    q = quat_one(n)
    for s in letters:
        q = quat_mul(q, hat_perm(s))
    return q
