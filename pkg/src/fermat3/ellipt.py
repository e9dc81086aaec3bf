"""The curve E: Y^2 - 9Y = X^3 - 27, its link with Fer_3, and the points Q_K."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .exact import Poly
from .padic3 import (DEFAULT_PREC, MAX_PREC, PrecisionError, Qq, Z3, embed_sqrt, md_padic, pd_padic,
                     reconstruct_quadfield, trace_values, unit_orbits, v3)
from .quadfield import QuadElem


class PF:
    """Residue mod a prime p."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v, self.p = v % p, p

    def _c(self, o) -> "PF":
        if isinstance(o, PF):
            if o.p != self.p:
                raise ValueError("different prime fields")
            return o
        o = Fraction(o)
        return PF(o.numerator * pow(o.denominator, -1, self.p), self.p)

    def __add__(self, o):
        return PF(self.v + self._c(o).v, self.p)

    __radd__ = __add__

    def __neg__(self):
        return PF(-self.v, self.p)

    def __sub__(self, o):
        return PF(self.v - self._c(o).v, self.p)

    def __rsub__(self, o):
        return PF(self._c(o).v - self.v, self.p)

    def __mul__(self, o):
        return PF(self.v * self._c(o).v, self.p)

    __rmul__ = __mul__

    def inverse(self) -> "PF":
        if self.v == 0:
            raise ZeroDivisionError(f"inverse of 0 mod {self.p}")
        return PF(pow(self.v, -1, self.p), self.p)

    def __truediv__(self, o):
        return self * self._c(o).inverse()

    def __rtruediv__(self, o):
        return self._c(o) * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return PF(pow(self.v, e, self.p), self.p)

    def __eq__(self, o):
        if isinstance(o, PF):
            return (self.v, self.p) == (o.v, o.p)
        if isinstance(o, int):
            return (self.v - o) % self.p == 0
        return NotImplemented

    def __hash__(self):
        return hash((self.v, self.p))

    def is_zero(self) -> bool:
        return self.v == 0

    def __int__(self):
        return self.v

    def __repr__(self):
        return f"{self.v} mod {self.p}"


def _is_zero(a) -> bool:
    if hasattr(a, "is_zero"):
        return a.is_zero()
    return a == 0


class CurvePoint:
    """A point on E or the point at infinity (x = y = None)."""

    __slots__ = ("x", "y")

    def __init__(self, x=None, y=None):
        self.x, self.y = x, y

    @property
    def is_inf(self) -> bool:
        return self.x is None

    def on_curve(self) -> bool:
        if self.is_inf:
            return True
        return _is_zero(self.y * self.y - 9 * self.y - self.x * self.x * self.x + 27)

    def __add__(self, o):
        return ec_add(self, o)

    def __neg__(self):
        return ec_neg(self)

    def __eq__(self, o):
        if not isinstance(o, CurvePoint):
            return NotImplemented
        if self.is_inf or o.is_inf:
            return self.is_inf and o.is_inf
        return _is_zero(self.x - o.x) and _is_zero(self.y - o.y)

    def __hash__(self):
        return hash((self.x, self.y))

    def __repr__(self):
        return "O" if self.is_inf else f"({self.x}, {self.y})"

    def to_json(self, d: int | None = None) -> dict | str:
        if self.is_inf:
            return "O"

        def enc(c):
            if isinstance(c, QuadElem):
                return {"a": str(c.a), "b": str(c.b)}
            return str(c)

        out = {"x": enc(self.x), "y": enc(self.y)}
        if d is not None:
            out["d"] = d
        return out


INF = CurvePoint()


def ec_neg(P: CurvePoint) -> CurvePoint:
    if P.is_inf:
        return P
    return CurvePoint(P.x, 9 - P.y)


def ec_add(P: CurvePoint, Q: CurvePoint) -> CurvePoint:
    if P.is_inf:
        return Q
    if Q.is_inf:
        return P
    x1, y1, x2, y2 = P.x, P.y, Q.x, Q.y
    if _is_zero(x1 - x2):
        if _is_zero(y1 + y2 - 9):
            return INF
        lam = 3 * x1 * x1 / (2 * y1 - 9)
    else:
        lam = (y2 - y1) / (x2 - x1)
    x3 = lam * lam - x1 - x2
    y3 = -lam * (x3 - x1) - y1 + 9
    return CurvePoint(x3, y3)


def ec_mul(n: int, P: CurvePoint) -> CurvePoint:
    if n < 0:
        return ec_mul(-n, ec_neg(P))
    out, base = INF, P
    while n:
        if n & 1:
            out = ec_add(out, base)
        n >>= 1
        if n:
            base = ec_add(base, base)
    return out


def trivial_points(one=1) -> list[CurvePoint]:
    """O, (3,0), (3,9): the points coming from the trivial solutions of Fer_3."""
    return [INF, CurvePoint(one * 3, one * 0), CurvePoint(one * 3, one * 9)]


def fer3_to_E(alpha, beta) -> CurvePoint:
    if _is_zero(alpha) or _is_zero(beta - 3):
        raise ValueError("degenerate Fer_3 point")
    y = 9 * beta / (beta - 3)
    return CurvePoint(y / alpha, y)


def E_to_fer3(P: CurvePoint):
    if P.is_inf or _is_zero(P.x) or _is_zero(P.y - 9):
        raise ValueError("point has no affine Fer_3 image")
    return P.y / P.x, 3 * P.y / (P.y - 9)


def is_fer3(alpha, beta) -> bool:
    return _is_zero(27 * alpha**3 + 27 * beta**3 - alpha**3 * beta**3)


# --------------------------------------------------------------------------
# Q_K: the trace of P_d over the ring class field


@dataclass
class QKResult:
    d: int
    point: CurvePoint
    prec: int
    sign_flipped: bool
    trivial: bool
    orbit_sums: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {"d": self.d, "point": self.point.to_json(self.d), "prec": self.prec,
                "sign_flipped": self.sign_flipped, "trivial": self.trivial}


def _rel(P: CurvePoint) -> int:
    """Smallest relative precision among the coordinates (inf if exact zero)."""
    if P.is_inf:
        return 10**9
    return min(c.r if c.u is not None else 10**9 for c in (P.x, P.y))


def _orbit_sum(pt, N: int) -> CurvePoint:
    acc = INF
    n = pt.n
    for k, xi in enumerate(pt.orbit):
        t = pt.orbit[(k + 1) % n]
        acc = ec_add(acc, CurvePoint((t + 6) / xi, t + 6))
        if _rel(acc) < N // 2:
            raise PrecisionError("precision loss in orbit sum")
    if acc.is_inf:
        return acc
    for c in (acc.x, acc.y):
        if c.u is not None and any(a % 3**c.r for a in c.u[1:]):
            raise PrecisionError("orbit sum is not Frobenius-fixed")
    return CurvePoint(acc.x.constant(), acc.y.constant())


def _qk_padic(d: int, N: int) -> tuple[CurvePoint, list[CurvePoint]]:
    sums = [_orbit_sum(pt, N) for pt in unit_orbits(d, N)]
    total = INF
    for S in sums:
        total = ec_add(total, S)
        if _rel(total) < N // 2:
            raise PrecisionError("precision loss in cross-orbit sum")
    return total, sums


def _reconstruct_point(P: CurvePoint, d: int, s: Qq) -> CurvePoint | None:
    try:
        coords = [QuadElem(*reconstruct_quadfield(c, d, s), d) for c in (P.x, P.y)]
    except PrecisionError:
        return None
    Q = CurvePoint(*coords)
    return Q if Q.on_curve() else None


def _is_trivial(P: CurvePoint, d: int) -> bool:
    return any(P == T for T in trivial_points(QuadElem(1, 0, d)))


@lru_cache(maxsize=None)
def QK(d: int, prec: int | None = None) -> QKResult:
    """Q_K = sum over Gal(Omega/K) of P_d, reconstructed exactly in Q(sqrt(-d))."""
    N = prec or DEFAULT_PREC
    while N <= MAX_PREC:
        try:
            total, sums = _qk_padic(d, N)
        except PrecisionError:
            N *= 2
            continue
        if total.is_inf:
            return QKResult(d, INF, N, False, True, sums)
        # a coordinate that is 3-adically zero to full precision is taken as exact 0
        s = embed_sqrt(d, N + 4)
        for flipped, sv in ((False, s), (True, -s)):
            Q = _reconstruct_point(total, d, sv)
            if Q is not None:
                return QKResult(d, Q, N, flipped, _is_trivial(Q, d), sums)
        N *= 2
    raise PrecisionError(f"Q_K reconstruction failed for d={d} up to 3^{MAX_PREC}")


# --------------------------------------------------------------------------
# the point sum of conjugate Fer_3 solutions


def _fer3_sample(p: int, rng: random.Random):
    """Random (alpha, beta) on Fer_3 over F_p, p = 2 mod 3 so cube roots are unique."""
    while True:
        a = PF(rng.randrange(1, p), p)
        a3 = a**3
        if a3 == 27:
            continue
        b = (27 * a3 / (a3 - 27)) ** ((2 * p - 1) // 3)
        if b.is_zero() or b == 3:
            continue
        return a, b


def fer3_sum_check(trials: int = 500, seed: int = 0, primes=(5, 11, 17, 23, 29, 41, 47, 53, 59, 71)) -> dict:
    """For (alpha, beta) on Fer_3, P(alpha, beta) + P(beta, alpha) = (3, 9)."""
    rng = random.Random(seed)
    passed = skipped = 0
    failures = []
    for i in range(trials):
        p = primes[i % len(primes)]
        a, b = _fer3_sample(p, rng)
        assert is_fer3(a, b)
        if a == b:
            skipped += 1
            continue
        S = ec_add(fer3_to_E(a, b), fer3_to_E(b, a))
        if S == CurvePoint(PF(3, p), PF(9, p)):
            passed += 1
        else:
            failures.append({"p": p, "alpha": a.v, "beta": b.v, "sum": repr(S)})
    return {"trials": trials, "passed": passed, "skipped": skipped, "failures": failures, "ok": not failures}


def fer3_sum_exact(alpha: QuadElem, beta: QuadElem) -> bool:
    return ec_add(fer3_to_E(alpha, beta), fer3_to_E(beta, alpha)) == CurvePoint(alpha * 0 + 3, alpha * 0 + 9)


lemma61_check = fer3_sum_check  # interface name


# --------------------------------------------------------------------------
# nontriviality criteria


class CriteriaMismatch(AssertionError):
    pass


@dataclass
class Verdict:
    d: int
    h: int
    verdict: str
    details: dict

    def to_json(self) -> dict:
        return {"d": self.d, "h": self.h, "verdict": self.verdict, "details": self.details}


def _coeff_h1(p: Poly, h: int) -> int:
    return p[h + 1]


@lru_cache(maxsize=None)
def criteria_engine(d: int, prec: int = DEFAULT_PREC) -> Verdict:
    from .cmfloat import ring_class_poly

    H = ring_class_poly(d)
    h = H.deg
    p = pd_padic(d)
    tr = trace_values(d, prec)
    t1, t2 = tr.tr1, tr.tr2
    v1 = t1.v if not t1.is_zero() else None
    Hp = H.derivative()
    hp0, hp6 = Hp(0), Hp(6)
    c = _coeff_h1(p, h)

    unit = v1 == 0
    not_sq = v1 is not None and v1 <= 1
    det = {
        "v3_tr1": v1,
        "v3_tr2": t2.v if not t2.is_zero() else None,
        "H'(0) mod 3": hp0 % 3,
        "H'(6) mod 9": hp6 % 9,
        "coeff_x^(h+1)": str(c),
        "coeff mod 9": c % 9,
        "trace_unit": unit,
        "trace_not_div_p3_squared": not_sq,
    }
    if 27 > 3 ** min(t1.prec, t2.prec):
        raise PrecisionError("traces known to fewer than 3 digits")
    z = (t1 + 9 * t1 * t1 - 9 * t2).vector(3)[0] % 27
    det["second_trace mod 27"] = z
    det["second_trace_criterion"] = z != 0

    if h % 3:
        if unit != (hp0 % 3 != 0) or unit != (c % 3 != 0):
            raise CriteriaMismatch(f"d={d}: unit-trace cross-check disagrees: {det}")
        return Verdict(d, h, "nontrivial (3 does not divide h)", det)
    if unit != (hp0 % 3 != 0) or unit != (c % 3 != 0):
        raise CriteriaMismatch(f"d={d}: unit-trace cross-check disagrees: {det}")
    if not_sq != (hp6 % 9 != 0) or not_sq != (c % 9 != 0):
        raise CriteriaMismatch(f"d={d}: p3^2 cross-check disagrees: {det}")
    if unit:
        return Verdict(d, h, "nontrivial by trace unit", det)
    if not_sq:
        return Verdict(d, h, "nontrivial by trace not divisible by p3^2", det)
    if z:
        return Verdict(d, h, "nontrivial by second-trace criterion", det)
    return Verdict(d, h, "inconclusive", det)


# --------------------------------------------------------------------------
# reduction of Q_K for d = 2132 modulo a prime of norm 569


def _roots_mod_p(coeffs: list[int], p: int) -> list[int]:
    """Roots of a polynomial (ascending coefficients) in F_p, by search."""
    out = []
    for x in range(p):
        acc = 0
        for c in reversed(coeffs):
            acc = (acc * x + c) % p
        if acc == 0:
            out.append(x)
    return out


def reduce_2132_demo(validate: bool = True) -> dict:
    from .tables import DEMO_2132, M_2132

    p, r = DEMO_2132["p"], DEMO_2132["sqrt"]
    issues = []
    if (r * r + 533) % p:
        issues.append("sqrt(-533) residue is wrong")
    # published m_2132 in powers of sqrt(-533); descending from x^11 after the leading 1
    desc = [(1, 0)] + M_2132["coeffs"]
    if validate:
        ours = md_padic(2132)
        pub = [QuadElem(a, Fraction(b, 2), 2132) for a, b in reversed(desc)]
        if list(ours) != pub:
            issues.append("published m_2132 disagrees with the computed one")
    red = [(a + b * r) % p for a, b in reversed(desc)]
    roots = sorted(_roots_mod_p(red, p))
    expected = sorted((-c) % p for c in DEMO_2132["shifts"])
    if roots != expected:
        issues.append(f"roots {roots} != expected {expected}")
    (ea, eb), (ex, ey) = DEMO_2132["fermat_example"]
    total = INF
    points = []
    for a in roots:
        al = PF(a, p)
        # beta = sigma1(T(alpha)) for the root alpha; recovered from the Fer_3 relation
        b3 = 27 * al**3 / (al**3 - 27)
        beta = b3 ** ((2 * p - 1) // 3)
        P = fer3_to_E(al, beta)
        if not P.on_curve():
            issues.append(f"point for root {a} is off the curve")
        points.append({"alpha": a, "beta": beta.v, "x": P.x.v, "y": P.y.v})
        total = ec_add(total, P)
    ex_pt = fer3_to_E(PF(ea, p), PF(eb, p))
    if (ex_pt.x.v, ex_pt.y.v) != (ex, ey):
        issues.append(f"example point maps to {ex_pt}")
    want = DEMO_2132["sum"]
    got = None if total.is_inf else (total.x.v, total.y.v)
    if got != want:
        issues.append(f"sum {got} != {want}")
    return {"p": p, "sqrt_-533": r, "roots": roots, "points": points, "sum": got, "issues": issues,
            "ok": not issues}
