"""The formal group of E at the origin, in the coordinates z = x/y, w = 1/y."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .padic3 import t_coeff

DEFAULT_ORDER = 24


# --------------------------------------------------------------------------
# univariate


class TruncSeries:
    """sum c[k] z^k + O(z^(order+1)) with exact rational coefficients."""

    __slots__ = ("c", "order")

    def __init__(self, coeffs, order: int):
        c = [Fraction(a) for a in list(coeffs)[: order + 1]]
        self.c = c + [Fraction(0)] * (order + 1 - len(c))
        self.order = order

    def __getitem__(self, k: int) -> Fraction:
        return self.c[k] if 0 <= k <= self.order else Fraction(0)

    def _o(self, o) -> "TruncSeries":
        if isinstance(o, TruncSeries):
            return o
        return TruncSeries([o], self.order)

    def __add__(self, o):
        o = self._o(o)
        n = min(self.order, o.order)
        return TruncSeries([self[k] + o[k] for k in range(n + 1)], n)

    __radd__ = __add__

    def __neg__(self):
        return TruncSeries([-a for a in self.c], self.order)

    def __sub__(self, o):
        return self + (-self._o(o))

    def __rsub__(self, o):
        return self._o(o) - self

    def __mul__(self, o):
        if not isinstance(o, TruncSeries):
            return TruncSeries([a * o for a in self.c], self.order)
        n = min(self.order, o.order)
        out = [Fraction(0)] * (n + 1)
        for i, a in enumerate(self.c[: n + 1]):
            if a:
                for j in range(n + 1 - i):
                    if o.c[j]:
                        out[i + j] += a * o.c[j]
        return TruncSeries(out, n)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        out = TruncSeries([1], self.order)
        for _ in range(e):
            out = out * self
        return out

    def valuation(self) -> int | None:
        for k, a in enumerate(self.c):
            if a:
                return k
        return None

    def inverse(self) -> "TruncSeries":
        """1/s for s with nonzero constant term."""
        a0 = self.c[0]
        if a0 == 0:
            raise ZeroDivisionError("series has no constant term")
        out = [Fraction(0)] * (self.order + 1)
        out[0] = 1 / a0
        for k in range(1, self.order + 1):
            acc = sum((self.c[j] * out[k - j] for j in range(1, k + 1)), Fraction(0))
            out[k] = -acc / a0
        return TruncSeries(out, self.order)

    def compose(self, g: "TruncSeries") -> "TruncSeries":
        """self(g(z)) for g without constant term."""
        if g[0]:
            raise ValueError("inner series must have zero constant term")
        n = min(self.order, g.order)
        out = TruncSeries([0], n)
        for a in reversed(self.c[: n + 1]):
            out = out * g + a
        return out

    def is_integral(self) -> bool:
        return all(a.denominator == 1 for a in self.c)

    def __eq__(self, o):
        if not isinstance(o, TruncSeries):
            return NotImplemented
        n = min(self.order, o.order)
        return all(self[k] == o[k] for k in range(n + 1))

    def __repr__(self):
        terms = [f"{a}*z^{k}" for k, a in enumerate(self.c) if a]
        return " + ".join(terms or ["0"]) + f" + O(z^{self.order + 1})"

    def to_json(self) -> list[str]:
        return [str(a) for a in self.c]


def z_series(order: int) -> TruncSeries:
    return TruncSeries([0, 1], order)


@lru_cache(maxsize=None)
def w_series(order: int = DEFAULT_ORDER) -> TruncSeries:
    """Solution of w = z^3 + 9w^2 - 27w^3 with w = z^3 + O(z^6)."""
    if order < 3:
        raise ValueError("order must be at least 3")
    z3 = z_series(order) ** 3
    w = z3
    for _ in range(order // 3 + 1):
        w = z3 + 9 * w * w - 27 * w * w * w
    return w


def y_series_times_z3(order: int) -> TruncSeries:
    """z^3 y(z) = 1 - sum_k t_k z^(3k), from the coefficients of the T series."""
    c = [Fraction(0)] * (order + 1)
    c[0] = Fraction(1)
    k = 1
    while 3 * k <= order:
        c[3 * k] = Fraction(-t_coeff(k))
        k += 1
    return TruncSeries(c, order)


def w_from_T(order: int = DEFAULT_ORDER) -> TruncSeries:
    """1/y(z) built from the T series; must agree with w_series."""
    inv = y_series_times_z3(order).inverse()
    return TruncSeries([0, 0, 0] + inv.c[: order - 2], order)


@lru_cache(maxsize=None)
def i_series(order: int = DEFAULT_ORDER) -> TruncSeries:
    """z-coordinate of the inverse point: -z sum 9^k w^k."""
    w = w_series(order)
    acc = TruncSeries([0], order)
    for _ in range(order // 3 + 1):
        acc = 1 + 9 * w * acc
    return -(z_series(order) * acc)


def c_coefficients(kmax: int = 32) -> list[int]:
    """c_k in w = z^3 (1 + sum 3^k c_k z^(3k)), for k = 1..kmax."""
    w = w_series(3 * kmax + 3)
    out = []
    for k in range(1, kmax + 1):
        q = w[3 * k + 3] / Fraction(3) ** k
        if q.denominator != 1:
            raise ArithmeticError(f"c_{k} is not an integer")
        out.append(int(q))
    return out


def small_factorization(n: int, bound: int = 10**5) -> dict:
    """Trial division up to `bound`; leftover cofactor reported under key 'rest'."""
    out: dict = {}
    n = abs(n)
    p = 2
    while p <= bound and p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        if n <= bound or p * p > n:
            out[n] = out.get(n, 0) + 1
        else:
            out["rest"] = n
    return out


# --------------------------------------------------------------------------
# bivariate, truncated by total degree


class BiSeries:
    """sum c[(i,j)] z1^i z2^j with i + j <= order."""

    __slots__ = ("c", "order")

    def __init__(self, coeffs: dict, order: int):
        self.c = {k: Fraction(v) for k, v in coeffs.items() if v and k[0] + k[1] <= order}
        self.order = order

    @staticmethod
    def const(a, order: int) -> "BiSeries":
        return BiSeries({(0, 0): a}, order)

    @staticmethod
    def var(k: int, order: int) -> "BiSeries":
        return BiSeries({(1, 0) if k == 1 else (0, 1): 1}, order)

    def _o(self, o) -> "BiSeries":
        return o if isinstance(o, BiSeries) else BiSeries.const(o, self.order)

    def __add__(self, o):
        o = self._o(o)
        n = min(self.order, o.order)
        out = dict(self.c)
        for k, v in o.c.items():
            out[k] = out.get(k, 0) + v
        return BiSeries(out, n)

    __radd__ = __add__

    def __neg__(self):
        return BiSeries({k: -v for k, v in self.c.items()}, self.order)

    def __sub__(self, o):
        return self + (-self._o(o))

    def __rsub__(self, o):
        return self._o(o) - self

    def __mul__(self, o):
        if not isinstance(o, BiSeries):
            return BiSeries({k: v * o for k, v in self.c.items()}, self.order)
        n = min(self.order, o.order)
        out: dict = {}
        for (i, j), a in self.c.items():
            for (k, l), b in o.c.items():
                if i + j + k + l <= n:
                    key = (i + k, j + l)
                    out[key] = out.get(key, 0) + a * b
        return BiSeries(out, n)

    __rmul__ = __mul__

    def swap(self) -> "BiSeries":
        return BiSeries({(j, i): v for (i, j), v in self.c.items()}, self.order)

    def __getitem__(self, k):
        return self.c.get(k, Fraction(0))

    def __eq__(self, o):
        if not isinstance(o, BiSeries):
            return NotImplemented
        n = min(self.order, o.order)
        keys = set(self.c) | set(o.c)
        return all(self[k] == o[k] for k in keys if k[0] + k[1] <= n)

    def min_degree(self) -> int | None:
        return min((i + j for i, j in self.c), default=None)

    def is_integral(self) -> bool:
        return all(v.denominator == 1 for v in self.c.values())

    def to_json(self) -> dict:
        return {f"({i},{j})": str(v) for (i, j), v in sorted(self.c.items())}


def compose_uni(f: TruncSeries, g: BiSeries) -> BiSeries:
    """f(g(z1, z2)) for g without constant term."""
    if g[(0, 0)]:
        raise ValueError("inner series must have zero constant term")
    n = min(f.order, g.order)
    out = BiSeries({}, n)
    for a in reversed(f.c[: n + 1]):
        out = out * g + a
    return out


def lambda_series(order: int = DEFAULT_ORDER) -> BiSeries:
    """(w(z2) - w(z1))/(z2 - z1) as sum a_n sum_{i+j=n-1} z1^i z2^j."""
    w = w_series(order + 1)
    out = {}
    for n in range(1, order + 2):
        a = w[n]
        if a:
            for i in range(n):
                out[(i, n - 1 - i)] = a
    return BiSeries(out, order)


@lru_cache(maxsize=None)
def FE_series(order: int = DEFAULT_ORDER) -> BiSeries:
    """The group law F_E(z1, z2) = i(z3), z3 the third point on the chord."""
    if order < 4:
        raise ValueError("order must be at least 4")
    z1, z2 = BiSeries.var(1, order), BiSeries.var(2, order)
    lam = lambda_series(order)
    w1 = compose_uni(w_series(order), z1)
    nu = w1 - lam * z1
    # 1/(1 - 27 lam^3) as a geometric sum; lam^3 has degree >= 6
    l3 = lam * lam * lam
    geo = BiSeries.const(1, order)
    for _ in range(order // 6 + 1):
        geo = 1 + 27 * l3 * geo
    z3 = -z1 - z2 - 9 * lam * lam * (1 - 9 * nu) * geo
    return compose_uni(i_series(order), z3)


# --------------------------------------------------------------------------
# checks


def _mod_all(S: BiSeries, m: int) -> bool:
    return all(v.denominator == 1 and v.numerator % m == 0 for v in S.c.values())


def congruence_mod9(order: int = DEFAULT_ORDER) -> bool:
    F = FE_series(order)
    return F.is_integral() and _mod_all(F - BiSeries.var(1, order) - BiSeries.var(2, order), 9)


def congruence_mod27(order: int = DEFAULT_ORDER) -> bool:
    F = FE_series(order)
    z1, z2 = BiSeries.var(1, order), BiSeries.var(2, order)
    return _mod_all(F - z1 - z2 - 9 * z1 * z2 * (z1 * z1 + z2 * z2), 27)


def commutative(order: int = DEFAULT_ORDER) -> bool:
    F = FE_series(order)
    return F == F.swap()


def _tri_from(F: BiSeries, inner: BiSeries, outer_first: bool, order: int) -> dict:
    """F(inner(a, b), c) if outer_first else F(a, inner(b, c)), as {(i, j, k): coeff}.

    The inner series is a bivariate series in its own two variables; the remaining
    variable appears only through monomial powers, so no trivariate products are needed.
    """
    powers = [BiSeries.const(1, order)]
    maxdeg = max(i if outer_first else j for i, j in F.c)
    for _ in range(maxdeg):
        powers.append(powers[-1] * inner)
    out: dict = {}
    for (i, j), f in F.c.items():
        e, free = (i, j) if outer_first else (j, i)
        for (p, q), v in powers[e].c.items():
            if p + q + free > order:
                continue
            key = (p, q, free) if outer_first else (free, p, q)
            out[key] = out.get(key, 0) + f * v
    return {k: v for k, v in out.items() if v}


def associative(order: int = 20) -> bool:
    F = FE_series(order)
    left = _tri_from(F, F, True, order)
    right = _tri_from(F, F, False, order)
    return left == right


def inverse_check(order: int = 20) -> bool:
    """F_E(z, i(z)) = 0 and i(i(z)) = z."""
    F = FE_series(order)
    i = i_series(order)
    # F(z, i(z)) = sum f_ab z^a i(z)^b
    acc = TruncSeries([0], order)
    ipow = [TruncSeries([1], order)]
    for _ in range(order):
        ipow.append(ipow[-1] * i)
    for (a, b), f in F.c.items():
        term = ipow[b] * f
        acc = acc + TruncSeries([0] * a + term.c[: order + 1 - a], order)
    return acc.valuation() is None and i.compose(i) == z_series(order)


@dataclass
class FormalReport:
    order: int
    w_coeffs: list
    w_matches_T: bool
    w_residual_zero: bool
    c_integral: bool
    mod9: bool
    mod27: bool
    commutative: bool
    associative: bool
    inverse: bool
    unit: bool

    @property
    def ok(self) -> bool:
        return all([self.w_matches_T, self.w_residual_zero, self.c_integral, self.mod9, self.mod27,
                    self.commutative, self.associative, self.inverse, self.unit])

    def to_json(self) -> dict:
        d = dict(self.__dict__)
        d["ok"] = self.ok
        return d


def formal_report(order: int = DEFAULT_ORDER, assoc_order: int = 20) -> FormalReport:
    w = w_series(order)
    res = w - (z_series(order) ** 3 + 9 * w * w - 27 * w * w * w)
    F = FE_series(order)
    unit = {k: v for k, v in F.c.items() if k[1] == 0} == {(1, 0): 1}
    try:
        c_coefficients(order // 3 - 1)
        c_ok = True
    except ArithmeticError:
        c_ok = False
    return FormalReport(
        order=order,
        w_coeffs=[str(w[3 * k]) for k in range(1, order // 3 + 1)],
        w_matches_T=w == w_from_T(order),
        w_residual_zero=res.valuation() is None,
        c_integral=c_ok,
        mod9=congruence_mod9(order),
        mod27=congruence_mod27(order),
        commutative=commutative(order),
        associative=associative(min(assoc_order, order)),
        inverse=inverse_check(min(20, order)),
        unit=unit,
    )
