"""Truncated 3-adic arithmetic in unramified extensions and the Frobenius lift T.

Elements are stored in floating form 3^v * u, with u a coefficient vector in
Z[t]/(M) known modulo 3^r (relative precision r).  The modulus M is the
naive {0,1,2} lift of an irreducible polynomial over F_3, so the ring is the
ring of integers of the unramified extension of degree deg M.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Sequence

from .arith import balanced
from .exact import Poly
from .f3 import F3Ext, F3ExtElem, F3Poly, X as F3X, factor_f3

DEFAULT_PREC = 128
MAX_PREC = 1024


class PrecisionError(ArithmeticError):
    """Raised when a computation cannot be certified within the precision budget."""


def v3(k: int) -> int:
    if k == 0:
        raise ValueError("valuation of zero")
    v = 0
    while k % 3 == 0:
        k //= 3
        v += 1
    return v


class UnramRing:
    """Z_3[t]/(M) for the naive lift M of an irreducible F_3 polynomial."""

    _cache: dict = {}

    def __new__(cls, modulus: F3Poly):
        key = modulus.c
        if key not in cls._cache:
            obj = super().__new__(cls)
            obj._setup(modulus)
            cls._cache[key] = obj
        return cls._cache[key]

    def _setup(self, modulus: F3Poly):
        self.f = modulus.monic()
        self.n = self.f.deg
        self.M = list(self.f.c)
        self.field = F3Ext(self.f)

    def __repr__(self):
        return f"UnramRing({self.f.pretty()})"

    def mul(self, a: Sequence[int], b: Sequence[int], mod: int) -> list[int]:
        n = self.n
        if n == 1:
            return [a[0] * b[0] % mod]
        prod = [0] * (2 * n - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    prod[i + j] += ai * bj
        M = self.M
        for k in range(2 * n - 2, n - 1, -1):
            c = prod[k]
            if c:
                base = k - n
                for j in range(n):
                    prod[base + j] -= c * M[j]
        return [c % mod for c in prod[:n]]

    def residue(self, a: Sequence[int]) -> F3ExtElem:
        return self.field.elem(a)

    def inv_unit(self, a: Sequence[int], r: int) -> list[int]:
        res = self.residue(a)
        if res.is_zero():
            raise ZeroDivisionError("not a unit")
        x = res.inverse().vector()
        k = 1
        while k < r:
            k = min(2 * k, r)
            mod = 3**k
            ax = self.mul(a, x, mod)
            two_minus = [(-c) % mod for c in ax]
            two_minus[0] = (two_minus[0] + 2) % mod
            x = self.mul(x, two_minus, mod)
        return [c % 3**r for c in x]


Z3 = UnramRing(F3X)


class Qq:
    """Element 3^v * u of the fraction field of an UnramRing, u known mod 3^r."""

    __slots__ = ("R", "v", "u", "r")

    def __init__(self, R: UnramRing, v: int, u: tuple | None, r: int):
        self.R, self.v, self.u, self.r = R, v, u, r

    # construction
    @staticmethod
    def make(R: UnramRing, vec: Sequence[int], v: int, r: int) -> "Qq":
        if r <= 0:
            return Qq(R, v + r, None, 0)
        mod = 3**r
        vec = [c % mod for c in vec]
        if any(c % 3 for c in vec):
            return Qq(R, v, tuple(vec), r)
        k = None
        for c in vec:
            if c:
                kc = v3(c)
                k = kc if k is None else min(k, kc)
        if k is None or k >= r:
            return Qq(R, v + r, None, 0)
        s = 3**k
        return Qq(R, v + k, tuple(c // s for c in vec), r - k)

    @staticmethod
    def zero(R: UnramRing, prec: int) -> "Qq":
        return Qq(R, prec, None, 0)

    @staticmethod
    def from_int(R: UnramRing, k: int, prec: int) -> "Qq":
        """k known to absolute precision prec (exact integers get prec digits beyond v(k))."""
        if k == 0:
            return Qq.zero(R, prec)
        v = v3(k)
        return Qq.make(R, [k // 3**v] + [0] * (R.n - 1), v, prec)

    @staticmethod
    def from_rational(R: UnramRing, q, rel: int) -> "Qq":
        q = Fraction(q)
        if q == 0:
            return Qq.zero(R, rel)
        v = v3(q.numerator) - v3(q.denominator)
        num = q.numerator // 3 ** v3(q.numerator)
        den = q.denominator // 3 ** v3(q.denominator)
        mod = 3**rel
        u = num * pow(den, -1, mod) % mod
        return Qq(R, v, tuple([u] + [0] * (R.n - 1)), rel)

    @staticmethod
    def from_vector(R: UnramRing, vec: Sequence[int], prec: int) -> "Qq":
        return Qq.make(R, list(vec) + [0] * (R.n - len(vec)), 0, prec)

    # properties
    @property
    def prec(self) -> int:
        return self.v + self.r

    def is_zero(self) -> bool:
        return self.u is None

    def valuation(self) -> int:
        return self.v

    def is_unit(self) -> bool:
        return self.u is not None and self.v == 0

    def residue(self) -> F3ExtElem:
        if self.v < 0:
            raise ValueError("element is not integral")
        if self.u is None or self.v > 0:
            return self.R.field.zero()
        return self.R.residue(self.u)

    def vector(self, prec: int | None = None) -> list[int]:
        """Integral coordinates mod 3^prec (default: absolute precision)."""
        prec = self.prec if prec is None else prec
        if self.v < 0:
            raise ValueError("element is not integral")
        if self.u is None:
            return [0] * self.R.n
        mod = 3**prec
        s = 3**self.v
        return [c * s % mod for c in self.u]

    def balanced_coeffs(self) -> list[int]:
        mod = 3**self.prec
        return [balanced(c, mod) for c in self.vector()]

    def to_int(self) -> int:
        """Balanced integer for an element of the degree-0 subring."""
        c = self.balanced_coeffs()
        if any(c[1:]):
            raise ValueError("element does not lie in Z_3")
        return c[0]

    def constant(self) -> "Qq":
        """Projection onto the t^0 coordinate (for Frobenius-fixed elements)."""
        if self.u is None:
            return Qq(Z3, self.v, None, 0)
        return Qq.make(Z3, [self.u[0]], self.v, self.r)

    def in_ring(self, R: UnramRing) -> "Qq":
        """View an element of Z_3 inside a larger ring."""
        if self.u is None:
            return Qq(R, self.v, None, 0)
        if self.R.n != 1:
            raise ValueError("only Z_3 elements can be embedded")
        return Qq(R, self.v, tuple([self.u[0]] + [0] * (R.n - 1)), self.r)

    # arithmetic
    def _coerce(self, o) -> "Qq":
        if isinstance(o, Qq):
            if o.R is not self.R:
                if o.R.n == 1:
                    return o.in_ring(self.R)
                if self.R.n == 1:
                    return o
                raise TypeError("mixed rings")
            return o
        o = Fraction(o)
        if o == 0:
            return Qq.zero(self.R, self.prec + 1)
        vk = v3(o.numerator) - v3(o.denominator)
        rel = max(self.r, self.prec - vk, 1) + 2
        return Qq.from_rational(self.R, o, rel)

    def __add__(self, o):
        o = self._coerce(o)
        if self.R is not o.R:
            if self.R.n == 1:
                return self.in_ring(o.R) + o
        P = min(self.prec, o.prec)
        if self.u is None and o.u is None:
            return Qq.zero(self.R, P)
        if self.u is None:
            return Qq.make(self.R, list(o.u), o.v, P - o.v)
        if o.u is None:
            return Qq.make(self.R, list(self.u), self.v, P - self.v)
        m = min(self.v, o.v)
        if P <= m:
            return Qq.zero(self.R, P)
        sa, sb = 3 ** (self.v - m), 3 ** (o.v - m)
        vec = [a * sa + b * sb for a, b in zip(self.u, o.u)]
        return Qq.make(self.R, vec, m, P - m)

    __radd__ = __add__

    def __neg__(self):
        if self.u is None:
            return self
        mod = 3**self.r
        return Qq(self.R, self.v, tuple((-c) % mod for c in self.u), self.r)

    def __sub__(self, o):
        return self + (-self._coerce(o))

    def __rsub__(self, o):
        return self._coerce(o) - self

    def __mul__(self, o):
        o = self._coerce(o)
        if self.R is not o.R:
            if self.R.n == 1:
                return self.in_ring(o.R) * o
        if self.u is None or o.u is None:
            if self.u is None and o.u is None:
                return Qq.zero(self.R, self.v + o.v)
            z, nz = (self, o) if self.u is None else (o, self)
            return Qq.zero(self.R, z.v + nz.v)
        r = min(self.r, o.r)
        return Qq.make(self.R, self.R.mul(self.u, o.u, 3**r), self.v + o.v, r)

    __rmul__ = __mul__

    def inverse(self) -> "Qq":
        if self.u is None:
            raise ZeroDivisionError("inverse of a 3-adic zero")
        return Qq(self.R, -self.v, tuple(self.R.inv_unit(self.u, self.r)), self.r)

    def __truediv__(self, o):
        return self * self._coerce(o).inverse()

    def __rtruediv__(self, o):
        return self._coerce(o) * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = self._coerce(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def equals(self, o, prec: int | None = None) -> bool:
        diff = self - o
        if diff.u is None:
            return True
        return prec is not None and diff.v >= prec

    def __repr__(self):
        if self.u is None:
            return f"O(3^{self.v})"
        return f"3^{self.v}*{list(self.u)} + O(3^{self.prec})"

    def to_json(self) -> dict:
        return {"prec": self.prec, "val": self.v if self.u is not None else None,
                "coeffs": [str(c) for c in self.balanced_coeffs()] if self.v >= 0 else None}


def z3(k, prec: int = DEFAULT_PREC) -> Qq:
    return Qq.from_rational(Z3, k, prec) if isinstance(k, Fraction) else Qq.from_int(Z3, k, prec + (v3(k) if k else 0))


# --------------------------------------------------------------------------
# the series T and S


def b_coeff(k: int) -> int:
    p1 = p2 = 1
    for j in range(1, k):
        p1 *= 3 * j - 1
        p2 *= 3 * j - 2
    return p1 + 2 * p2


@lru_cache(maxsize=None)
def t_coeff(k: int) -> int:
    """3^(2k-1) b_k / k!, always an integer divisible by 3^k."""
    num = 3 ** (2 * k - 1) * b_coeff(k)
    q, r = divmod(num, factorial(k))
    if r:
        raise ArithmeticError("non-integral T coefficient")
    return q


@lru_cache(maxsize=None)
def _t_val(k: int) -> int:
    return v3(t_coeff(k))


def _t_terms(target: int, step: int) -> int:
    """Largest k whose term t_k U^(k-1) (v(U) = step) matters below 3^target."""
    K, k = 1, 2
    while k <= target + 2:
        if _t_val(k) + step * (k - 1) < target:
            K = k
        k += 1
    return K


def T_eval(z: Qq) -> Qq:
    """T(z) = z^3 - 15 - sum_{k>=2} t_k z^(3-3k) for v(z) <= 0."""
    if z.u is None or z.v > 0:
        raise ValueError("T is defined only for |z| >= 1")
    R = z.R
    if z.v == 0:
        N = z.r
        mod = 3**N
        zz = z.u
        z2 = R.mul(zz, zz, mod)
        z3v = R.mul(z2, zz, mod)
        U = R.inv_unit(z3v, N)
        K = _t_terms(N, 0)
        if K >= 2:
            S = [t_coeff(K) % mod] + [0] * (R.n - 1)
            for k in range(K - 1, 1, -1):
                S = R.mul(S, U, mod)
                S[0] = (S[0] + t_coeff(k)) % mod
            S = R.mul(S, U, mod)
        else:
            S = [0] * R.n
        out = [(a - b) % mod for a, b in zip(z3v, S)]
        out[0] = (out[0] - 15) % mod
        return Qq.make(R, out, 0, N)
    zc = z * z * z
    U = zc.inverse()
    target = zc.prec
    K = _t_terms(target, -3 * z.v)
    S = zc._coerce(0)
    if K >= 2:
        S = U * t_coeff(K)
        for k in range(K - 1, 1, -1):
            S = (S + t_coeff(k)) * U
    return zc - 15 - S


def sigma1(z):
    """z -> 3(z+6)/(z-3) = 3 + 27/(z-3)."""
    return 3 + 27 / (z - 3)


def cube_root_unit(u: Qq) -> Qq:
    """The unique cube root of a unit in the unramified ring (one digit of loss)."""
    if not u.is_unit():
        raise ValueError("cube_root_unit needs a unit")
    R, r = u.R, u.r
    res = u.residue()
    x0res = res ** (3 ** (R.n - 1))  # inverse Frobenius on F_{3^n}
    x0 = Qq.from_vector(R, x0res.vector(), r)
    y = u / (x0 * x0 * x0)
    e = y - 1
    if not e.is_zero() and e.v < 2:
        raise ValueError("no cube root mod 27")
    if r <= 2:
        return x0
    a = e / 9
    Y = a
    for _ in range(2 * r.bit_length() + 4):
        fY = Y + 3 * Y * Y + 3 * Y * Y * Y - a
        if fY.is_zero():
            break
        Y = Y - fY / (1 + 6 * Y + 9 * Y * Y)
    x = x0 * (1 + 3 * Y)
    check = x * x * x - u
    if not check.is_zero() and check.v < x.prec:
        raise PrecisionError("cube root failed to verify")
    return x


def S_eval(z: Qq) -> Qq:
    """S(z) = (z+6) (27/(z^2+3z+9))^(1/3) / 3 on the disk v(z-3) >= 3."""
    e = z - 3
    if not e.is_zero() and e.v < 3:
        raise ValueError("S is defined only on v(z-3) >= 3")
    u = e / 27
    w = 1 + 9 * u + 27 * u * u
    return (3 + 9 * u) * cube_root_unit(w.inverse())


def g_eval(x, y):
    return (y * y + 3 * y + 9) * x * x * x - (y + 6) * (y + 6) * (y + 6)


# --------------------------------------------------------------------------
# periodic points


@dataclass
class PeriodicPoint:
    xi: Qq
    d: int | None
    n: int
    orbit: list[Qq] = field(default_factory=list)


def lift_periodic(residue: F3ExtElem, n: int, prec: int = DEFAULT_PREC, d: int | None = None) -> PeriodicPoint:
    """Fixed point of T^n in the residue disk of `residue`, by iteration."""
    if residue.is_zero():
        raise ValueError("residue must be nonzero")
    R = UnramRing(residue.F.M)
    x = Qq.from_vector(R, residue.vector(), prec)
    for _ in range(2 * prec):
        y = x
        for _ in range(n):
            y = T_eval(y)
        if (y - x).is_zero():
            break
        x = y
    else:
        raise PrecisionError("T^n iteration did not converge")
    orbit = [x]
    for _ in range(n - 1):
        orbit.append(T_eval(orbit[-1]))
    for k in range(1, n):
        if (orbit[k] - x).is_zero():
            raise ArithmeticError(f"point has period {k} < {n}")
    return PeriodicPoint(x, d, n, orbit)


@lru_cache(maxsize=None)
def _class_poly_mod3(d: int) -> tuple[Poly, list[F3Poly]]:
    from .cmfloat import ring_class_poly

    H = ring_class_poly(d)
    facs = factor_f3(F3Poly.from_poly(H))
    return H, [g for g, _ in facs]


@lru_cache(maxsize=None)
def unit_orbits(d: int, prec: int) -> tuple[PeriodicPoint, ...]:
    """One PeriodicPoint per irreducible factor of H_{-d} mod 3."""
    from .qforms import prime3_order

    n = prime3_order(d)
    _, factors = _class_poly_mod3(d)
    out = []
    for g in factors:
        if g.deg != n:
            raise ArithmeticError(f"factor {g.pretty()} of H_-{d} mod 3 has degree != {n}")
        out.append(lift_periodic(F3Ext(g).gen(), n, prec, d))
    return tuple(out)


def _poly_from_roots(R: UnramRing, roots: list[Qq], prec: int) -> list[list[int]]:
    """Coefficient vectors (ascending) of prod (x - r) in R mod 3^prec."""
    mod = 3**prec
    coeffs = [[1] + [0] * (R.n - 1)]
    for r in roots:
        rv = r.vector(prec)
        new = [[0] * R.n for _ in range(len(coeffs) + 1)]
        for i, c in enumerate(coeffs):
            new[i + 1] = [(a + b) % mod for a, b in zip(new[i + 1], c)]
            prod = R.mul(c, rv, mod)
            new[i] = [(a - b) % mod for a, b in zip(new[i], prod)]
        coeffs = new
    return coeffs


def _orbit_poly(pt: PeriodicPoint, roots_fn, prec: int) -> list[int]:
    """Z_3 coefficients mod 3^prec of prod over the orbit of roots_fn(xi)."""
    R = pt.xi.R
    roots: list[Qq] = []
    for xi in pt.orbit:
        roots.extend(roots_fn(xi))
    coeffs = _poly_from_roots(R, roots, prec)
    mod = 3**prec
    out = []
    for c in coeffs:
        if any(x % mod for x in c[1:]):
            raise PrecisionError("orbit product is not Frobenius-fixed")
        out.append(c[0] % mod)
    return out


def _mul_mod(a: list[int], b: list[int], mod: int) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return [c % mod for c in out]


def _product_poly(d: int, prec: int, roots_fn, work_prec: int) -> list[int]:
    acc = [1]
    for pt in unit_orbits(d, work_prec):
        acc = _mul_mod(acc, _orbit_poly(pt, roots_fn, prec), 3**prec)
    return acc


def _stable_balanced(coeffs: list[int], prec: int, margin: int = 8) -> Poly | None:
    mod, low = 3**prec, 3 ** (prec - margin)
    out = []
    for c in coeffs:
        b = balanced(c, mod)
        if balanced(c, low) != b:
            return None
        out.append(b)
    return Poly(out)


def pd_certify(p: Poly, d: int, H: Poly | None = None) -> list[str]:
    """Exact checks on a candidate p_d; returns the list of failures."""
    from .qforms import class_number

    h = class_number(d)
    bad = []
    if p.deg != 2 * h or p.lc != 1 or not p.is_integral():
        bad.append("shape")
        return bad
    x = Poly.x()
    num, den = 3 * (x + 6), x - 3
    lhs = sum((num**i * den ** (2 * h - i) * p[i] for i in range(2 * h + 1)), Poly([]))
    if lhs != p * 3 ** (3 * h):
        bad.append("functional equation")
    if p(3) != 3 ** (3 * h):
        bad.append("norm of alpha-3")
    if H is not None:
        if F3Poly.from_poly(p) != F3Poly([0] * h + list(F3Poly.from_poly(H).c)):
            bad.append("mod 3 shape")
    return bad


def _with_precision(build, prec: int | None):
    N = prec or DEFAULT_PREC
    last = None
    while N <= MAX_PREC:
        try:
            out = build(N)
            if out is not None:
                return out
        except PrecisionError as exc:
            last = exc
        N *= 2
    raise PrecisionError(f"precision budget exhausted ({last})")


@lru_cache(maxsize=None)
def pd_padic(d: int, prec: int | None = None) -> Poly:
    """p_d = prod over unit periodic points of (x - xi)(x - sigma1(xi))."""
    H, _ = _class_poly_mod3(d)

    def build(N: int):
        coeffs = _product_poly(d, N, lambda xi: [xi, sigma1(xi)], N)
        p = _stable_balanced(coeffs, N)
        if p is None or pd_certify(p, d, H):
            return None
        return p

    return _with_precision(build, prec)


def qd_certify(q: Poly, d: int, p: Poly | None = None) -> list[str]:
    from .qforms import class_number

    h = class_number(d)
    bad = []
    if q.deg != 2 * h or q.lc != 1 or not q.is_integral():
        return ["shape"]
    if any(q[2 * h - j] * 3 ** (h - j) != q[j] for j in range(h + 1)):
        bad.append("symmetry x^2h q(3/x) = 3^h q(x)")
    if q[0] != 3**h:
        bad.append("q(0) = 3^h")
    if p is not None:
        if F3Poly.from_poly(q) != F3Poly.from_poly(p):
            bad.append("q = p mod 3")
    return bad


def qd_norm_to_p(q: Poly) -> Poly:
    """Res_x(q(x), y - 3 - x^3) as a polynomial in y."""
    from .exact import BiPoly, resultant

    x = BiPoly.var("x", ("y", "x"))
    y = BiPoly.var("y", ("y", "x"))
    return resultant(BiPoly.from_poly(q, ("y", "x")), y - 3 - x**3, "x").with_var("x")


@lru_cache(maxsize=None)
def qd_padic(d: int, prec: int | None = None) -> Poly:
    """q_d = prod (x - gamma)(x - 3/gamma), gamma^3 = xi - 3."""
    p = pd_padic(d)

    def roots(xi: Qq):
        g = cube_root_unit(xi - 3)
        return [g, 3 / g]

    def build(N: int):
        coeffs = _product_poly(d, N - 1, roots, N)
        q = _stable_balanced(coeffs, N - 1)
        if q is None or qd_certify(q, d, p):
            return None
        return q

    return _with_precision(build, prec)


# --------------------------------------------------------------------------
# square root of -d, traces, reconstruction


def embed_sqrt(d: int, prec: int = DEFAULT_PREC) -> Qq:
    """The square root s of -d in Z_3 lying over the prime (3, w) of the CM point.

    For d odd, w = (k + sqrt(-d))/2 with k = 1 mod 3, so s = -1 mod 3; for d even,
    w = k + sqrt(-d)/2 and s = 1 mod 3.
    """
    if d % 3 != 2:
        raise ValueError("-d is not a square mod 3")
    s0 = 2 if d % 2 else 1
    x = s0
    k = 1
    while k < prec:
        k = min(2 * k, prec)
        m = 3**k
        x = (x - (x * x + d) * pow(2 * x, -1, m)) % m
    return Qq.make(Z3, [x], 0, prec)


@dataclass
class Traces:
    tr1: Qq
    tr2: Qq


def trace_values(d: int, prec: int = DEFAULT_PREC) -> Traces:
    tr1 = Qq.zero(Z3, prec)
    tr2 = Qq.zero(Z3, prec)
    for pt in unit_orbits(d, prec):
        n = pt.n
        s1 = pt.orbit[0] * 0
        s2 = pt.orbit[0] * 0
        for k, xi in enumerate(pt.orbit):
            nxt = pt.orbit[(k + 1) % n]
            s1 = s1 + xi.inverse()
            s2 = s2 + (xi * nxt).inverse()
        for s in (s1, s2):
            if s.u is not None and any(c % 3 ** s.r for c in s.u[1:]):
                raise PrecisionError("orbit trace not in Z_3")
        tr1 = tr1 + s1.constant()
        tr2 = tr2 + s2.constant()
    return Traces(tr1, tr2)


def lll_reduce(basis: list[list[int]], delta: Fraction = Fraction(99, 100)) -> list[list[int]]:
    """Textbook LLL over exact rationals; fine for the tiny dimensions used here."""
    b = [list(v) for v in basis]
    n = len(b)

    def dot(u, v):
        return sum(x * y for x, y in zip(u, v))

    def gso():
        bs, mu = [], [[Fraction(0)] * n for _ in range(n)]
        for i in range(n):
            v = [Fraction(x) for x in b[i]]
            for j in range(i):
                mu[i][j] = Fraction(dot(b[i], bs[j])) / dot(bs[j], bs[j])
                v = [x - mu[i][j] * y for x, y in zip(v, bs[j])]
            bs.append(v)
        return bs, mu

    bs, mu = gso()
    k = 1
    while k < n:
        for j in range(k - 1, -1, -1):
            q = round(mu[k][j])
            if q:
                b[k] = [x - q * y for x, y in zip(b[k], b[j])]
                bs, mu = gso()
        if dot(bs[k], bs[k]) >= (delta - mu[k][k - 1] ** 2) * dot(bs[k - 1], bs[k - 1]):
            k += 1
        else:
            b[k], b[k - 1] = b[k - 1], b[k]
            bs, mu = gso()
            k = max(k - 1, 1)
    return b


def reconstruct_rational(x: Qq) -> Fraction:
    """Smallest a/c with c*x = a to the precision of x."""
    if x.u is None:
        return Fraction(0)
    if x.R.n != 1:
        raise ValueError("needs an element of Q_3")
    M = x.r
    mod = 3**M
    u = x.u[0]
    # Gauss reduction of the lattice {(a, c): a = c*u mod 3^M}
    v1, v2 = [mod, 0], [u, 1]
    while True:
        if v1[0] ** 2 + v1[1] ** 2 < v2[0] ** 2 + v2[1] ** 2:
            v1, v2 = v2, v1
        n2 = v2[0] ** 2 + v2[1] ** 2
        q = round(Fraction(v1[0] * v2[0] + v1[1] * v2[1], n2))
        if q == 0:
            break
        v1 = [v1[0] - q * v2[0], v1[1] - q * v2[1]]
    a, c = v2
    if c == 0:
        raise PrecisionError("rational reconstruction failed")
    return Fraction(a, c) * Fraction(3) ** x.v


def reconstruct_quadfield(x: Qq, d: int, s: Qq | None = None) -> tuple[Fraction, Fraction]:
    """(A, B) with x = A + B*sqrt(-d) under the embedding sqrt(-d) -> s."""
    if x.u is None:
        return Fraction(0), Fraction(0)
    if x.R.n != 1:
        raise ValueError("needs an element of Q_3")
    if x.v >= 0:
        # integral: use absolute digits so a, b may share factors of 3
        M, u, scale = x.prec, x.vector()[0], Fraction(1)
    else:
        M, u, scale = x.r, x.u[0], Fraction(3) ** x.v
    s = s or embed_sqrt(d, M + 4)
    mod = 3**M
    sv = s.vector(M)[0]
    basis = [[mod, 0, 0], [(-sv) % mod, 1, 0], [u, 0, 1]]
    red = lll_reduce(basis)
    a, b, c = min((v for v in red if v[2] != 0), key=lambda v: sum(t * t for t in v))
    if c % 3 == 0:
        raise PrecisionError("quadratic reconstruction failed")
    return Fraction(a, c) * scale, Fraction(b, c) * scale


def md_certify(m: list, d: int, p: Poly) -> list[str]:
    """m * conj(m) = p exactly, coefficients integral in K."""
    from .quadfield import QuadElem

    prod = [QuadElem(0, 0, d) for _ in range(2 * len(m) - 1)]
    for i, a in enumerate(m):
        for j, b in enumerate(m):
            prod[i + j] = prod[i + j] + a * b.conj()
    bad = []
    if any(not c.is_integral() for c in m):
        bad.append("non-integral coefficient")
    if [c.a for c in prod] != [Fraction(c) for c in p.c] or any(c.b for c in prod):
        bad.append("m * conj(m) != p_d")
    return bad


@lru_cache(maxsize=None)
def md_padic(d: int, prec: int | None = None) -> tuple:
    """m_d = prod over unit periodic xi of (x - xi), coefficients in Q(sqrt(-d))."""
    from .quadfield import QuadElem

    p = pd_padic(d)

    def build(N: int):
        s = embed_sqrt(d, N + 4)
        coeffs = _product_poly(d, N, lambda xi: [xi], N)
        out = []
        for c in coeffs:
            try:
                a, b = reconstruct_quadfield(Qq.make(Z3, [c], 0, N), d, s)
            except PrecisionError:
                return None
            out.append(QuadElem(a, b, d))
        if md_certify(out, d, p):
            return None
        return tuple(out)

    return _with_precision(build, prec)
