"""Exact polynomial algebra over Q and over Q(omega).

Polynomials are dense, coefficients ascending, stored as Python ints when
integral and as Fractions otherwise.  Resultants and gcds are computed
multi-modularly and certified by an exact check before being returned.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

import gmpy2

from .arith import balanced, primes_below


class DegenerateInput(ValueError):
    pass


def _n(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def _frac(c) -> Fraction:
    return c if isinstance(c, Fraction) else Fraction(c)


class Poly:
    """Dense univariate polynomial with rational coefficients."""

    __slots__ = ("c", "var")

    def __init__(self, coeffs: Iterable = (), var: str = "x"):
        c = [_n(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.c = c
        self.var = var

    @classmethod
    def x(cls, var: str = "x") -> "Poly":
        return cls([0, 1], var)

    @classmethod
    def const(cls, a, var: str = "x") -> "Poly":
        return cls([a], var)

    @classmethod
    def from_desc(cls, coeffs: Sequence, var: str = "x") -> "Poly":
        return cls(list(reversed(list(coeffs))), var)

    @classmethod
    def from_roots(cls, roots: Iterable, var: str = "x") -> "Poly":
        p = cls([1], var)
        for r in roots:
            p = p * cls([-r, 1], var)
        return p

    # basic protocol
    @property
    def deg(self) -> int:
        return len(self.c) - 1

    @property
    def lc(self):
        return self.c[-1] if self.c else 0

    def __len__(self):
        return len(self.c)

    def __getitem__(self, k: int):
        return self.c[k] if 0 <= k < len(self.c) else 0

    def __iter__(self):
        return iter(self.c)

    def is_zero(self) -> bool:
        return not self.c

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.c == other.c
        return self.c == Poly([other]).c

    def __hash__(self):
        return hash(tuple(self.c))

    def __repr__(self) -> str:
        return f"Poly({self.pretty()})"

    def pretty(self) -> str:
        if not self.c:
            return "0"
        terms = []
        for k in range(self.deg, -1, -1):
            a = self.c[k]
            if a == 0:
                continue
            mono = "" if k == 0 else (self.var if k == 1 else f"{self.var}^{k}")
            if mono and a == 1:
                s = mono
            elif mono and a == -1:
                s = "-" + mono
            else:
                s = f"{a}*{mono}" if mono else f"{a}"
            terms.append(s)
        return " + ".join(terms).replace("+ -", "- ")

    def _coerce(self, other) -> "Poly":
        return other if isinstance(other, Poly) else Poly([other], self.var)

    # arithmetic
    def __add__(self, other):
        o = self._coerce(other)
        n = max(len(self.c), len(o.c))
        return Poly([self[k] + o[k] for k in range(n)], self.var)

    __radd__ = __add__

    def __neg__(self):
        return Poly([-a for a in self.c], self.var)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return Poly([a * other for a in self.c], self.var)
        a, b = self.c, other.c
        if not a or not b:
            return Poly([], self.var)
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai == 0:
                continue
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
        return Poly(out, self.var)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        result, base = Poly([1], self.var), self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __truediv__(self, other):
        if isinstance(other, Poly):
            return self.exact_div(other)
        return Poly([_frac(a) / other for a in self.c], self.var)

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.c)
        db, lb = other.deg, other.lc
        unit = lb in (1, -1)
        q = [0] * max(0, len(r) - db)
        for k in range(len(r) - 1 - db, -1, -1):
            t = r[k + db]
            if t == 0:
                continue
            t = t * lb if unit else _n(_frac(t) / lb)
            q[k] = t
            for j, bj in enumerate(other.c):
                if bj:
                    r[k + j] -= t * bj
        return Poly(q, self.var), Poly(r[:db], self.var)

    def __floordiv__(self, other: "Poly") -> "Poly":
        return self.divmod(other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return self.divmod(other)[1]

    def exact_div(self, other: "Poly") -> "Poly":
        q, r = self.divmod(other)
        if not r.is_zero():
            raise ArithmeticError("inexact polynomial division")
        return q

    def divides(self, other: "Poly") -> bool:
        return other.divmod(self)[1].is_zero()

    def __call__(self, x):
        acc = 0
        for a in reversed(self.c):
            acc = acc * x + a
        return acc

    def derivative(self) -> "Poly":
        return Poly([k * a for k, a in enumerate(self.c)][1:], self.var)

    def compose(self, other: "Poly") -> "Poly":
        acc = Poly([], other.var)
        for a in reversed(self.c):
            acc = acc * other + a
        return acc

    def shift(self, a) -> "Poly":
        """p(x + a)."""
        return self.compose(Poly([a, 1], self.var))

    def scale_var(self, k) -> "Poly":
        """p(k x)."""
        out, pw = [], 1
        for a in self.c:
            out.append(a * pw)
            pw *= k
        return Poly(out, self.var)

    def inflate(self, e: int) -> "Poly":
        """p(x^e)."""
        out = [0] * (e * self.deg + 1) if self.c else []
        for k, a in enumerate(self.c):
            out[e * k] = a
        return Poly(out, self.var)

    def reverse(self, n: int | None = None) -> "Poly":
        n = self.deg if n is None else n
        return Poly([self[n - k] for k in range(n + 1)], self.var)

    def monic(self) -> "Poly":
        if not self.c:
            return self
        return self if self.lc == 1 else self / self.lc

    def is_integral(self) -> bool:
        return all(isinstance(a, int) for a in self.c)

    def content(self) -> Fraction:
        if not self.c:
            return Fraction(0)
        num = 0
        den = 1
        for a in self.c:
            f = _frac(a)
            num = gcd(num, f.numerator)
            den = lcm(den, f.denominator)
        return Fraction(num, den)

    def primitive(self) -> "Poly":
        """Integer primitive part with positive leading coefficient."""
        if not self.c:
            return self
        c = self.content()
        if self.lc < 0:
            c = -c
        return Poly([_frac(a) / c for a in self.c], self.var)

    def mod(self, p: int) -> list[int]:
        out = []
        for a in self.c:
            if isinstance(a, Fraction):
                a = a.numerator * int(gmpy2.invert(a.denominator, p))
            out.append(a % p)
        while out and out[-1] == 0:
            out.pop()
        return out

    def with_var(self, var: str) -> "Poly":
        return Poly(self.c, var)

    def to_json(self) -> dict:
        return {"var": self.var, "coeffs": [str(a) for a in self.c]}

    @classmethod
    def from_json(cls, obj: dict) -> "Poly":
        return cls([Fraction(s) for s in obj["coeffs"]], obj.get("var", "x"))


# --------------------------------------------------------------------------
# polynomials over F_p as plain ascending lists


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def modp_divmod(a: list[int], b: list[int], p: int) -> tuple[list[int], list[int]]:
    r = list(a)
    db = len(b) - 1
    inv = pow(b[-1], -1, p)
    q = [0] * max(0, len(r) - db)
    for k in range(len(r) - 1 - db, -1, -1):
        t = r[k + db] * inv % p
        if t == 0:
            continue
        q[k] = t
        for j in range(db + 1):
            r[k + j] = (r[k + j] - t * b[j]) % p
    return q, _trim(r[:db])


def modp_mul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return _trim([v % p for v in out])


def modp_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, modp_divmod(a, b, p)[1]
    if not a:
        return a
    inv = pow(a[-1], -1, p)
    return [v * inv % p for v in a]


def modp_resultant(a: list[int], b: list[int], p: int, da: int | None = None,
                   db: int | None = None) -> int:
    """Sylvester resultant over F_p; da, db are formal degrees (default actual)."""
    a, b = _trim(list(a)), _trim(list(b))
    da = len(a) - 1 if da is None else da
    db = len(b) - 1 if db is None else db
    if not a or not b:
        return 0
    if len(a) - 1 != da or len(b) - 1 != db:
        raise ValueError("formal degree drop; skip this specialization")
    res = 1
    while True:
        da, db = len(a) - 1, len(b) - 1
        if db == 0:
            return res * pow(b[0], da, p) % p
        r = modp_divmod(a, b, p)[1]
        if not r:
            return 0
        dr = len(r) - 1
        if (da * db) & 1:
            res = -res
        res = res * pow(b[-1], da - dr, p) % p
        a, b = b, r


def modp_interpolate(xs: Sequence[int], ys: Sequence[int], p: int) -> list[int]:
    """Newton interpolation over F_p; returns ascending coefficients."""
    n = len(xs)
    dd = [y % p for y in ys]
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            dd[i] = (dd[i] - dd[i - 1]) * pow(xs[i] - xs[i - j], -1, p) % p
    poly = [dd[n - 1]]
    for j in range(n - 2, -1, -1):
        shifted = [0] + poly
        xj = xs[j]
        for k in range(len(poly)):
            shifted[k] = (shifted[k] - xj * poly[k]) % p
        shifted[0] = (shifted[0] + dd[j]) % p
        poly = shifted
    return poly


def modp_eval(a: list[int], x: int, p: int) -> int:
    acc = 0
    for c in reversed(a):
        acc = (acc * x + c) % p
    return acc


def modp_powmod(a: list[int], e: int, f: list[int], p: int) -> list[int]:
    out, base = [1], modp_divmod(a, f, p)[1]
    while e:
        if e & 1:
            out = modp_divmod(modp_mul(out, base, p), f, p)[1]
        e >>= 1
        if e:
            base = modp_divmod(modp_mul(base, base, p), f, p)[1]
    return out


def modp_factor_degrees(a: list[int], p: int) -> list[int] | None:
    """Degrees of the irreducible factors of a mod p by distinct-degree splitting.

    Returns None unless a keeps its degree and is squarefree mod p.
    """
    f = _trim([c % p for c in a])
    if len(f) != len(_trim(list(a))) or len(f) < 2:
        return None
    df = _trim([k * c % p for k, c in enumerate(f)][1:])
    if len(modp_gcd(f, df, p)) != 1:
        return None
    degs: list[int] = []
    g, h, k = f, [0, 1], 1
    while len(g) - 1 >= 2 * k:
        h = modp_powmod(h, p, g, p)
        hx = list(h) + [0] * max(0, 2 - len(h))
        hx[1] = (hx[1] - 1) % p
        d = modp_gcd(g, _trim(hx), p)
        if len(d) > 1:
            degs += [k] * ((len(d) - 1) // k)
            g = modp_divmod(g, d, p)[0]
            h = modp_divmod(h, g, p)[1]
        k += 1
    if len(g) > 1:
        degs.append(len(g) - 1)
    return sorted(degs)


# --------------------------------------------------------------------------
# exact determinant oracle


def det_bareiss(m: list[list]) -> Fraction | int:
    """Exact determinant by fraction-free elimination (rational input allowed)."""
    n = len(m)
    if n == 0:
        return 1
    den = 1
    for row in m:
        for v in row:
            den = lcm(den, _frac(v).denominator)
    a = [[int(_frac(v) * den) for v in row] for row in m]
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return _n(Fraction(sign * a[n - 1][n - 1], den**n))


def sylvester_matrix(a: Sequence, b: Sequence) -> list[list]:
    """Sylvester matrix of two ascending coefficient lists (formal degrees)."""
    m, n = len(a) - 1, len(b) - 1
    size = m + n
    rows = []
    da = list(reversed(a))
    db = list(reversed(b))
    for i in range(n):
        rows.append([0] * i + da + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + db + [0] * (size - n - 1 - i))
    return rows


def sylvester_resultant(a: Poly, b: Poly):
    if a.is_zero() or b.is_zero():
        raise DegenerateInput("zero polynomial in resultant")
    if a.deg == 0 and b.deg == 0:
        return 1
    return det_bareiss(sylvester_matrix(a.c, b.c))


# --------------------------------------------------------------------------
# bivariate polynomials


class BiPoly:
    """Polynomial in two named variables; terms[(i, j)] is the coefficient of v0^i v1^j."""

    __slots__ = ("terms", "vars")

    def __init__(self, terms: dict | None = None, vars: tuple[str, str] = ("x", "y")):
        self.terms = {k: _n(v) for k, v in (terms or {}).items() if v != 0}
        self.vars = tuple(vars)

    @classmethod
    def var(cls, name: str, vars: tuple[str, str] = ("x", "y")) -> "BiPoly":
        idx = vars.index(name)
        return cls({(1, 0) if idx == 0 else (0, 1): 1}, vars)

    @classmethod
    def from_poly(cls, p: Poly, vars: tuple[str, str]) -> "BiPoly":
        if p.var == vars[0]:
            return cls({(k, 0): a for k, a in enumerate(p.c)}, vars)
        if p.var == vars[1]:
            return cls({(0, k): a for k, a in enumerate(p.c)}, vars)
        raise ValueError(f"variable {p.var} not among {vars}")

    def _coerce(self, other) -> "BiPoly":
        if isinstance(other, BiPoly):
            return other.aligned(self.vars)
        if isinstance(other, Poly):
            return BiPoly.from_poly(other, self.vars)
        return BiPoly({(0, 0): other}, self.vars)

    def aligned(self, vars: tuple[str, str]) -> "BiPoly":
        if self.vars == tuple(vars):
            return self
        if self.vars == tuple(reversed(vars)):
            return BiPoly({(j, i): v for (i, j), v in self.terms.items()}, vars)
        raise ValueError(f"variables {self.vars} vs {vars}")

    def __add__(self, other):
        o = self._coerce(other)
        t = dict(self.terms)
        for k, v in o.terms.items():
            t[k] = t.get(k, 0) + v
        return BiPoly(t, self.vars)

    __radd__ = __add__

    def __neg__(self):
        return BiPoly({k: -v for k, v in self.terms.items()}, self.vars)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        t: dict = {}
        for (i, j), a in self.terms.items():
            for (k, l), b in o.terms.items():
                key = (i + k, j + l)
                t[key] = t.get(key, 0) + a * b
        return BiPoly(t, self.vars)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        r = BiPoly({(0, 0): 1}, self.vars)
        for _ in range(e):
            r = r * self
        return r

    def __eq__(self, other) -> bool:
        return isinstance(other, BiPoly) and self.aligned(other.vars).terms == other.terms

    def deg_in(self, name: str) -> int:
        idx = self.vars.index(name)
        return max((k[idx] for k in self.terms), default=-1)

    def coeffs_in(self, name: str) -> list[Poly]:
        """Coefficients with respect to `name`, each a Poly in the other variable."""
        idx = self.vars.index(name)
        other = self.vars[1 - idx]
        d = self.deg_in(name)
        rows = [dict() for _ in range(d + 1)]
        for k, v in self.terms.items():
            rows[k[idx]][k[1 - idx]] = v
        out = []
        for r in rows:
            m = max(r, default=-1)
            out.append(Poly([r.get(e, 0) for e in range(m + 1)], other))
        return out

    def subs(self, name: str, value) -> Poly:
        idx = self.vars.index(name)
        other = self.vars[1 - idx]
        acc: dict = {}
        for k, v in self.terms.items():
            acc[k[1 - idx]] = acc.get(k[1 - idx], 0) + v * value ** k[idx]
        m = max(acc, default=-1)
        return Poly([acc.get(e, 0) for e in range(m + 1)], other)

    def __call__(self, a, b):
        return sum(v * a**i * b**j for (i, j), v in self.terms.items())

    def denominator(self) -> int:
        den = 1
        for v in self.terms.values():
            den = lcm(den, _frac(v).denominator)
        return den

    def to_json(self) -> dict:
        dx = max((i for i, _ in self.terms), default=-1)
        dy = max((j for _, j in self.terms), default=-1)
        grid = [[str(self.terms.get((i, j), 0)) for j in range(dy + 1)] for i in range(dx + 1)]
        return {"vars": list(self.vars), "grid": grid}


def g_bivariate(vx: str = "x", vy: str = "y") -> BiPoly:
    """The correspondence (y^2+3y+9)x^3 - (y+6)^3."""
    x = BiPoly.var(vx, (vx, vy))
    y = BiPoly.var(vy, (vx, vy))
    return (y * y + 3 * y + 9) * x**3 - (y + 6) ** 3


# --------------------------------------------------------------------------
# multi-modular resultant


def _as_bipoly(p, eliminate: str, partner: str | None) -> BiPoly:
    if isinstance(p, BiPoly):
        return p
    if not isinstance(p, Poly):
        raise TypeError("expected Poly or BiPoly")
    other = partner or ("_t" if p.var == eliminate else eliminate)
    vars = (other, eliminate) if p.var == eliminate else (p.var, eliminate)
    return BiPoly.from_poly(p, vars)


def _resultant_univariate(a: Poly, b: Poly):
    return sylvester_resultant(a, b)


def resultant(A, B, eliminate: str = "y"):
    """Sylvester resultant of A and B with respect to `eliminate`.

    Univariate inputs give a rational number; bivariate inputs give a Poly
    in the remaining variable.  The bivariate case is computed by
    evaluation at consecutive integers modulo 62-bit primes, Newton
    interpolation, and CRT until two successive reconstructions agree; the
    result is then certified at fresh points against an exact Sylvester
    determinant.
    """
    if isinstance(A, Poly) and isinstance(B, Poly) and A.var == B.var == eliminate:
        return _resultant_univariate(A, B)
    partner = None
    for P in (A, B):
        if isinstance(P, BiPoly):
            partner = P.vars[0] if P.vars[1] == eliminate else P.vars[1]
        elif isinstance(P, Poly) and P.var != eliminate:
            partner = P.var
    A = _as_bipoly(A, eliminate, partner)
    B = _as_bipoly(B, eliminate, partner)
    vars = A.vars
    B = B.aligned(vars)
    if eliminate not in vars:
        raise ValueError("eliminated variable not present")
    other = vars[1 - vars.index(eliminate)]
    if not A.terms or not B.terms:
        raise DegenerateInput("zero polynomial in resultant")
    dA, dB = A.denominator(), B.denominator()
    Ai, Bi = A * dA, B * dB
    ca, cb = Ai.coeffs_in(eliminate), Bi.coeffs_in(eliminate)
    ma, mb = len(ca) - 1, len(cb) - 1
    if ma < 0 or mb < 0 or (ma == 0 and mb == 0):
        raise DegenerateInput("both inputs constant in the eliminated variable")
    bound = ma * max(0, Bi.deg_in(other)) + mb * max(0, Ai.deg_in(other))
    npts = bound + 1
    modulus, acc, prev = 1, [0] * npts, None
    for p in primes_below(62):
        cap = [c.mod(p) for c in ca]
        cbp = [c.mod(p) for c in cb]
        xs, ys, a = [], [], 0
        while len(xs) < npts:
            la, lb = modp_eval(cap[-1], a, p), modp_eval(cbp[-1], a, p)
            if la and lb:
                ua = [modp_eval(c, a, p) for c in cap]
                ub = [modp_eval(c, a, p) for c in cbp]
                xs.append(a)
                ys.append(modp_resultant(ua, ub, p))
            a += 1
            if a > 4 * npts + 64:
                raise ArithmeticError("too many degenerate specializations")
        coeffs = modp_interpolate(xs, ys, p)
        coeffs += [0] * (npts - len(coeffs))
        if modulus == 1:
            acc = coeffs
        else:
            inv = int(gmpy2.invert(modulus, p))
            acc = [r + modulus * (((c - r) * inv) % p) for r, c in zip(acc, coeffs)]
        modulus *= p
        rec = [balanced(r, modulus) for r in acc]
        if rec == prev:
            result = Poly(rec, other)
            if _certify_resultant(result, Ai, Bi, eliminate, other, xs[-1] + 1):
                scale = Fraction(1, dA**mb * dB**ma)
                return result * scale if scale != 1 else result
        prev = rec
    raise AssertionError("unreachable")


def _certify_resultant(result: Poly, A: BiPoly, B: BiPoly, eliminate: str, other: str,
                       start: int, count: int = 2) -> bool:
    ca, cb = A.coeffs_in(eliminate), B.coeffs_in(eliminate)
    a, done = start + 7, 0
    while done < count:
        la, lb = ca[-1](a), cb[-1](a)
        if la and lb:
            ua = Poly([c(a) for c in ca], eliminate)
            ub = Poly([c(a) for c in cb], eliminate)
            if sylvester_resultant(ua, ub) != result(a):
                return False
            done += 1
        a += 1
    return True


# --------------------------------------------------------------------------
# gcd, square roots, builders


def gcd_poly(A: Poly, B: Poly) -> Poly:
    """Monic gcd over Q by modular images, certified by exact division."""
    if A.is_zero() and B.is_zero():
        raise DegenerateInput("gcd of two zero polynomials")
    if A.is_zero():
        return B.monic()
    if B.is_zero():
        return A.monic()
    a, b = A.primitive(), B.primitive()
    gamma = gcd(a.lc, b.lc)
    best_deg, modulus, acc, prev = None, 1, None, None
    for p in primes_below(62):
        if a.lc % p == 0 or b.lc % p == 0:
            continue
        g = modp_gcd(a.mod(p), b.mod(p), p)
        dg = len(g) - 1
        if dg == 0:
            return Poly([1], A.var)
        if best_deg is None or dg < best_deg:
            best_deg, modulus, acc, prev = dg, 1, None, None
        elif dg > best_deg:
            continue
        img = [gamma * v % p for v in g]
        if acc is None:
            acc, modulus = img, p
        else:
            inv = int(gmpy2.invert(modulus, p))
            acc = [r + modulus * (((c - r) * inv) % p) for r, c in zip(acc, img)]
            modulus *= p
        rec = [balanced(r, modulus) for r in acc]
        if rec == prev:
            cand = Poly(rec, A.var).primitive()
            if cand.divides(a) and cand.divides(b):
                return cand.monic()
        prev = rec
    raise AssertionError("unreachable")


def poly_sqrt(A: Poly) -> tuple[Poly, Fraction]:
    """Return (B, c) with A = c*B^2 and B monic."""
    if A.is_zero() or A.deg % 2:
        raise ValueError("not a scaled square")
    c = _frac(A.lc)
    a = (A / c).c
    n = A.deg
    k = n // 2
    b = [Fraction(0)] * (k + 1)
    b[k] = Fraction(1)
    for i in range(1, k + 1):
        s = _frac(a[n - i])
        for j in range(1, i):
            s -= b[k - j] * b[k - i + j]
        b[k - i] = s / 2
    B = Poly(b, A.var)
    if B * B * c != A:
        raise ValueError("not a scaled square")
    return B, _n(c)


def _homogeneous_subs(H: Poly, num: Poly, den: Poly) -> Poly:
    """den^h * H(num/den) for h = deg H."""
    h = H.deg
    acc = Poly([], num.var)
    den_pows = [Poly([1], num.var)]
    for _ in range(h):
        den_pows.append(den_pows[-1] * den)
    for i in range(h, -1, -1):
        acc = acc * num + den_pows[h - i] * H[i]
    return acc


def build_Fd(H: Poly) -> Poly:
    x3 = Poly([0, 0, 0, 1], H.var)
    return _homogeneous_subs(H, x3 * (x3 - 24) ** 3, x3 - 27)


def build_Gd(H: Poly) -> Poly:
    x3 = Poly([0, 0, 0, 1], H.var)
    return _homogeneous_subs(H, x3 * (x3 + 216) ** 3, (x3 - 27) ** 3)


def cube_graeffe(p: Poly) -> Poly:
    """Res_z(p(z), y - z^3) as a polynomial in y (monic when p is monic)."""
    z = Poly.x("_z")
    y = BiPoly.var("y", ("y", "_z"))
    P = resultant(BiPoly.from_poly(p.with_var("_z"), ("y", "_z")), y - BiPoly.from_poly(z**3, ("y", "_z")), "_z")
    return P.with_var(p.var)


def cube_twist_cofactor(p: Poly) -> Poly:
    """p(omega x) p(omega^2 x) computed as P(x^3)/p(x)."""
    if p[0] == 0:
        raise ValueError("p(0) must be nonzero")
    P = cube_graeffe(p)
    try:
        return P.inflate(3).exact_div(p)
    except ArithmeticError as exc:
        raise ArithmeticError("inconsistent input to cube twist") from exc


# --------------------------------------------------------------------------
# Eisenstein coefficients


class Eis:
    """u + v*omega with omega^2 + omega + 1 = 0."""

    __slots__ = ("u", "v")

    def __init__(self, u=0, v=0):
        self.u, self.v = _n(u), _n(v)

    def _c(self, o) -> "Eis":
        return o if isinstance(o, Eis) else Eis(o, 0)

    def __add__(self, o):
        o = self._c(o)
        return Eis(self.u + o.u, self.v + o.v)

    __radd__ = __add__

    def __neg__(self):
        return Eis(-self.u, -self.v)

    def __sub__(self, o):
        return self + (-self._c(o))

    def __mul__(self, o):
        o = self._c(o)
        return Eis(self.u * o.u - self.v * o.v, self.u * o.v + self.v * o.u - self.v * o.v)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        r = Eis(1)
        for _ in range(e):
            r = r * self
        return r

    def __eq__(self, o):
        o = self._c(o)
        return self.u == o.u and self.v == o.v

    def __hash__(self):
        return hash((self.u, self.v))

    def is_zero(self) -> bool:
        return self.u == 0 and self.v == 0

    def __repr__(self):
        return f"({self.u}+{self.v}w)"


OMEGA = Eis(0, 1)
SQRT_M3 = Eis(1, 2)


class EisPoly:
    """Bivariate polynomial over Q(omega)."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None):
        self.terms = {k: v for k, v in (terms or {}).items() if not v.is_zero()}

    @classmethod
    def from_bipoly(cls, b: BiPoly) -> "EisPoly":
        return cls({k: Eis(v) for k, v in b.terms.items()})

    @classmethod
    def var(cls, idx: int) -> "EisPoly":
        return cls({(1, 0) if idx == 0 else (0, 1): Eis(1)})

    def _c(self, o) -> "EisPoly":
        if isinstance(o, EisPoly):
            return o
        return EisPoly({(0, 0): o if isinstance(o, Eis) else Eis(o)})

    def __add__(self, o):
        o = self._c(o)
        t = dict(self.terms)
        for k, v in o.terms.items():
            t[k] = t.get(k, Eis()) + v
        return EisPoly(t)

    __radd__ = __add__

    def __neg__(self):
        return EisPoly({k: -v for k, v in self.terms.items()})

    def __sub__(self, o):
        return self + (-self._c(o))

    def __mul__(self, o):
        o = self._c(o)
        t: dict = {}
        for (i, j), a in self.terms.items():
            for (k, l), b in o.terms.items():
                key = (i + k, j + l)
                t[key] = t.get(key, Eis()) + a * b
        return EisPoly(t)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        r = EisPoly({(0, 0): Eis(1)})
        for _ in range(e):
            r = r * self
        return r

    def __eq__(self, o):
        return isinstance(o, EisPoly) and self.terms == o.terms

    def scale_y(self, c: Eis) -> "EisPoly":
        """Substitute y -> c*y."""
        return EisPoly({(i, j): v * c**j for (i, j), v in self.terms.items()})

    def at_y(self, value) -> "EisPoly":
        t: dict = {}
        for (i, j), v in self.terms.items():
            t[(i, 0)] = t.get((i, 0), Eis()) + v * Eis(value) ** j
        return EisPoly(t)


def twist_identity_sides() -> tuple[EisPoly, EisPoly]:
    """81*sqrt(-3)*g(x, w^2 y) and (y-3)^3 * g(x, w*sigma1(y)), denominators cleared."""
    g = EisPoly.from_bipoly(g_bivariate())
    lhs = g.scale_y(OMEGA * OMEGA) * (SQRT_M3 * 81)
    x, y = EisPoly.var(0), EisPoly.var(1)
    num = (y + 6) * (OMEGA * 3)
    den = y - 3
    rhs = x**3 * (num * num * den + num * den * den * 3 + den**3 * 9) - (num + den * 6) ** 3
    return lhs, rhs


def twist_identity_check() -> bool:
    lhs, rhs = twist_identity_sides()
    return lhs == rhs


lemma51_check = twist_identity_check  # interface name
