"""Iterated resultants of g, period polynomials and pre-periodic polynomials.

R_n(x) = R^(n)(x, x) where R^(1)(x, y) = g(x, y) and
R^(k)(x, z) = Res_y(R^(k-1)(x, y), g(y, z)).  Since g(y, z) = c(z) y^3 - e(z)
with c = z^2 + 3z + 9 and e = (z + 6)^3, each step is a cube transform:

    Res_y(A(y), c y^3 - e) = (-1)^m sum_i C_i e^i c^(m-i),

where m is the formal degree of A and C(Y) = A(y) A(wy) A(w^2 y) written in
Y = y^3.  The chain is run at many integer values of x at once (numpy,
modulo 31-bit primes), interpolated, and recombined by CRT.
"""

from __future__ import annotations

import logging
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .arith import balanced, divisors, mobius, primes_below
from .exact import Poly, build_Fd, cube_twist_cofactor, g_bivariate, gcd_poly, modp_factor_degrees, poly_sqrt, resultant
from .f3 import F3Poly

log = logging.getLogger(__name__)

DEFAULT_CAP = 4
HARD_CAP = 5


class CapExceeded(ValueError):
    pass


# --------------------------------------------------------------------------
# vectorized polynomial arithmetic: arrays of shape (deg + 1, npoints) mod p


def _vmul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    out = np.zeros((a.shape[0] + b.shape[0] - 1, a.shape[1]), dtype=np.int64)
    for i in range(a.shape[0]):
        out[i:i + b.shape[0]] = (out[i:i + b.shape[0]] + a[i] * b) % p
    return out


def _vadd(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    if a.shape[0] < b.shape[0]:
        a, b = b, a
    out = a.copy()
    out[:b.shape[0]] = (out[:b.shape[0]] + b) % p
    return out


def _const_poly(coeffs: list[int], npts: int, p: int) -> np.ndarray:
    return np.tile(np.array([c % p for c in coeffs], dtype=np.int64)[:, None], (1, npts))


def _cube_norm(A: np.ndarray, p: int) -> np.ndarray:
    """C(Y) with C(y^3) = A(y) A(wy) A(w^2 y), formal degree preserved."""
    m = A.shape[0] - 1
    A0, A1, A2 = A[0::3], A[1::3], A[2::3]
    npts = A.shape[1]
    zero = np.zeros((1, npts), dtype=np.int64)
    A1 = A1 if A1.shape[0] else zero
    A2 = A2 if A2.shape[0] else zero
    C = np.zeros((m + 1, npts), dtype=np.int64)

    def put(poly, shift, scale=1):
        k = min(poly.shape[0], m + 1 - shift)
        if k > 0:
            C[shift:shift + k] = (C[shift:shift + k] + scale * poly[:k]) % p

    put(_vmul(_vmul(A0, A0, p), A0, p), 0)
    put(_vmul(_vmul(A1, A1, p), A1, p), 1)
    put(_vmul(_vmul(A2, A2, p), A2, p), 2)
    put(_vmul(_vmul(A0, A1, p), A2, p), 1, p - 3)
    return C


def _chain_values(n: int, xs: np.ndarray, p: int) -> np.ndarray:
    """R_n(x) mod p at every x in xs."""
    npts = xs.shape[0]
    x3 = xs * xs % p * xs % p
    # A_1(y) = g(x, y) = -y^3 + (x^3 - 18) y^2 + (3x^3 - 108) y + (9x^3 - 216)
    A = np.stack([(9 * x3 - 216) % p, (3 * x3 - 108) % p, (x3 - 18) % p,
                  np.full(npts, p - 1, dtype=np.int64)])
    c = _const_poly([9, 3, 1], npts, p)
    e = _const_poly([216, 108, 18, 1], npts, p)
    for _ in range(2, n + 1):
        m = A.shape[0] - 1
        C = _cube_norm(A, p)
        cpow = [np.ones((1, npts), dtype=np.int64)]
        for _ in range(m):
            cpow.append(_vmul(cpow[-1], c, p))
        acc = C[m:m + 1]
        for i in range(m - 1, -1, -1):
            acc = _vadd(_vmul(acc, e, p), _vmul(C[i:i + 1], cpow[m - i], p), p)
        if m % 2:
            acc = (p - acc) % p
        A = acc
    # set the last variable equal to x
    val = np.zeros(npts, dtype=np.int64)
    for k in range(A.shape[0] - 1, -1, -1):
        val = (val * xs + A[k]) % p
    return val


def _interpolate_consecutive(ys: np.ndarray, p: int) -> list[int]:
    """Coefficients of the polynomial through (j, ys[j]), j = 0..len-1, mod p."""
    npts = ys.shape[0]
    d = [int(v) for v in ys]
    newton = [d[0]]
    for k in range(1, npts):
        d = [(d[i + 1] - d[i]) % p for i in range(len(d) - 1)]
        newton.append(d[0])
    # divide forward differences by k!
    inv_fact, f = [1] * npts, 1
    for k in range(1, npts):
        f = f * k % p
        inv_fact[k] = pow(f, -1, p)
    cn = [a * b % p for a, b in zip(newton, inv_fact)]
    # falling factorial basis -> monomials
    poly = [cn[-1]]
    for k in range(npts - 2, -1, -1):
        new = [0] * (len(poly) + 1)
        for i, a in enumerate(poly):
            new[i + 1] = (new[i + 1] + a) % p
            new[i] = (new[i] - k * a) % p
        new[0] = (new[0] + cn[k]) % p
        poly = new
    return poly


@lru_cache(maxsize=None)
def iterated_resultant(n: int, cap: int = DEFAULT_CAP) -> Poly:
    """Exact R_n over Z (raw resultant sign convention)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if n > min(cap, HARD_CAP):
        raise CapExceeded(f"n={n} exceeds the cap {min(cap, HARD_CAP)}")
    if n == HARD_CAP:
        warnings.warn("computing R_5 takes minutes", RuntimeWarning, stacklevel=2)
    deg = 2 * 3**n - 1
    npts = deg + 9
    xs = np.arange(npts, dtype=np.int64)
    modulus, acc, prev = 1, None, None
    for count, p in enumerate(primes_below(31), start=1):
        coeffs = _interpolate_consecutive(_chain_values(n, xs, p), p)
        if any(coeffs[deg + 1:]):
            raise ArithmeticError("interpolated R_n exceeds the degree bound")
        coeffs = coeffs[:deg + 1]
        if acc is None:
            acc = coeffs
        else:
            inv = pow(modulus, -1, p)
            acc = [r + modulus * (((c - r) * inv) % p) for r, c in zip(acc, coeffs)]
        modulus *= p
        rec = [balanced(r, modulus) for r in acc]
        if rec == prev:
            R = Poly(rec)
            if _certify_chain(n, R):
                log.info("R_%d reconstructed with %d primes", n, count)
                return R
        prev = rec
    raise AssertionError("unreachable")


def _certify_chain(n: int, R: Poly, trials: int = 2) -> bool:
    """Compare R at fresh points against the chain modulo a fresh prime."""
    p = next(primes_below(29))
    xs = np.arange(10**6, 10**6 + 3 * trials, 3, dtype=np.int64) % p
    vals = _chain_values(n, xs, p)
    return all(R(int(x)) % p == int(v) for x, v in zip(xs, vals))


def chain_value_exact(n: int, a: int) -> int:
    """R_n(a) by exact bivariate resultants (independent oracle for one point)."""
    A = g_bivariate("x", "y").subs("x", a).with_var("y")
    for _ in range(2, n + 1):
        A = resultant(A, g_bivariate("y", "z"), "y").with_var("y")
    return A(a)


# --------------------------------------------------------------------------
# period polynomials and structure


@lru_cache(maxsize=None)
def period_poly(n: int, cap: int = DEFAULT_CAP) -> Poly:
    """P_n = prod_{k | n} R_k^mu(n/k), certified squarefree."""
    num, den = Poly([1]), Poly([1])
    for k in divisors(n):
        mu = mobius(n // k)
        if mu == 1:
            num = num * iterated_resultant(k, cap)
        elif mu == -1:
            den = den * iterated_resultant(k, cap)
    P = num.exact_div(den)
    if P.lc < 0:
        P = -P
    if gcd_poly(P, P.derivative()).deg != 0:
        raise ArithmeticError("P_n is not squarefree")
    return P


def _mod3(p: Poly) -> F3Poly:
    return F3Poly.from_poly(p)


@dataclass
class StructureReport:
    n: int
    checks: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def to_json(self) -> dict:
        return {"n": self.n, "checks": self.checks, "ok": self.ok}


def structural_checks(n: int, cap: int = DEFAULT_CAP, with_pd: bool = True) -> StructureReport:
    from .padic3 import pd_padic
    from .qforms import enumerate_Dn

    R = iterated_resultant(n, cap)
    rep = StructureReport(n)
    N = 3**n
    rep.checks["degree 2*3^n-1"] = R.deg == 2 * N - 1
    target = (F3Poly([0] * (N - 1) + [1]) * (F3Poly([0] * N + [1]) - F3Poly([0, 1])))
    if (n - 1) % 2:
        target = -target
    rep.checks["mod 3 shape"] = _mod3(R) == target
    rep.checks["squarefree"] = gcd_poly(R, R.derivative()).deg == 0
    if with_pd:
        P = period_poly(n, cap)
        # the fixed point x = 3 of T is the extra root of P_1
        prod = Poly([-3, 1]) if n == 1 else Poly([1])
        for d, _ in enumerate_Dn(n):
            prod = prod * pd_padic(d)
        rep.checks["P_n = prod p_d"] = prod == P
    return rep


def pd_gcd(d: int, cap: int = DEFAULT_CAP) -> Poly:
    """monic gcd(P_n, F_d) with n the order of the prime above 3."""
    from .cmfloat import ring_class_poly
    from .qforms import prime3_order

    n = prime3_order(d)
    return gcd_poly(period_poly(n, cap), build_Fd(ring_class_poly(d)))


# --------------------------------------------------------------------------
# pre-periodic polynomials


def sturm_real_roots(p: Poly) -> int:
    """Number of distinct real roots (Sturm sequence, exact)."""
    def prim(q: Poly) -> Poly:
        c = abs(q.content())
        return q * (1 / c) if c else q

    seq = [prim(p), prim(p.derivative())]
    while not seq[-1].is_zero() and seq[-1].deg > 0:
        r = seq[-2] % seq[-1]
        if r.is_zero():
            break
        seq.append(prim(-r))

    def sign_changes(signs):
        s = [x for x in signs if x]
        return sum(1 for a, b in zip(s, s[1:]) if a != b)

    def lc_sign(q: Poly) -> int:
        return 1 if q.lc > 0 else -1

    at_pinf = [lc_sign(q) for q in seq]
    at_minf = [lc_sign(q) * (-1) ** q.deg for q in seq]
    return sign_changes(at_minf) - sign_changes(at_pinf)


def irreducibility_status(f: Poly, primes: int = 40) -> tuple[str, list[int]]:
    """'certified' when factor degrees mod p rule out a proper factor over Q, else 'consistent'.

    A factor of degree k over Q forces a sub-multiset of degrees summing to k mod every
    good prime, so intersecting the achievable sums across primes can prove irreducibility.
    """
    import gmpy2

    n = f.deg
    if n < 1 or not f.is_integral():
        raise ValueError("needs a nonconstant integral polynomial")
    if n == 1:
        return "certified", []
    coeffs = [int(c) for c in f.primitive().c]
    if gcd_poly(f, f.derivative()).deg > 0:
        return "consistent", []
    possible = set(range(1, n))
    used, p = [], 3
    for _ in range(4 * primes):
        if len(used) >= primes or not possible:
            break
        p = int(gmpy2.next_prime(p))
        degs = modp_factor_degrees(coeffs, p)
        if degs is None:
            continue
        used.append(p)
        sums = {0}
        for k in degs:
            sums |= {s + k for s in sums}
        possible &= sums
    return ("certified" if not possible else "consistent"), used


@dataclass
class Preperiodic:
    d: int
    level: int
    poly: Poly
    constant: int | None
    status: str = ""

    def to_json(self) -> dict:
        return {"d": self.d, "level": self.level, "degree": self.poly.deg,
                "constant": None if self.constant is None else str(self.constant),
                "irreducibility": self.status, "poly": self.poly.to_json()}


def _res_with_g(A: Poly) -> Poly:
    """Res_y(A(y), g(x, y)) as a polynomial in x."""
    return resultant(A.with_var("y"), g_bivariate("x", "y"), "y").with_var("x")


@lru_cache(maxsize=None)
def preperiodic_sd(d: int, level: int = 2) -> Preperiodic:
    from .padic3 import pd_padic

    if level < 1:
        raise ValueError("level must be >= 1")
    p = pd_padic(d)
    r = cube_twist_cofactor(p)
    if level == 1:
        return Preperiodic(d, 1, r, None, irreducibility_status(r)[0])
    if level == 2:
        R = _res_with_g(r)
        s, c = poly_sqrt(R)
        s = s.primitive()
        if s.lc < 0:
            s = -s
        c = R.lc // s.lc**2
        if s * s * c != R:
            raise ArithmeticError("square extraction failed")
        return Preperiodic(d, 2, s, int(c), irreducibility_status(s)[0])
    prev = preperiodic_sd(d, level - 1).poly
    R = _res_with_g(prev)
    c = R.content() * (1 if R.lc > 0 else -1)
    s = R * (1 / c)
    st = irreducibility_status(s)[0] if s.is_integral() else "consistent"
    return Preperiodic(d, level, s, int(c) if Fraction(c).denominator == 1 else None, st)
