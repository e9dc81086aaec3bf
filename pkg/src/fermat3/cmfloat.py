"""Certified fixed-point complex evaluation of eta, the Fermat parametrization and j.

ComplexFix stores (re + i*im) / 2^B with an error bound err (in units of
2^-B) on the complex modulus.  Transcendental inputs (exponentials) come from
mpmath with guard bits; everything after that is integer arithmetic with
explicit error propagation, so integer rounding of class polynomial
coefficients is certified.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import isqrt, pi, sqrt, log2

import random

import mpmath

from .exact import Poly
from .qforms import class_list, class_number, valid_d

GUARD = 64


class CertificationError(ArithmeticError):
    pass


class ComplexFix:
    __slots__ = ("re", "im", "err", "B")

    def __init__(self, re: int, im: int, err: int, B: int):
        self.re, self.im, self.err, self.B = re, im, err, B

    @staticmethod
    def from_mpc(z, B: int) -> "ComplexFix":
        z = mpmath.mpc(z)
        s = mpmath.mpf(2) ** B
        return ComplexFix(int(mpmath.nint(z.real * s)), int(mpmath.nint(z.imag * s)), 2, B)

    @staticmethod
    def from_int(k: int, B: int) -> "ComplexFix":
        return ComplexFix(k << B, 0, 0, B)

    @staticmethod
    def exp_2pi_i(tau, B: int) -> "ComplexFix":
        """e^(2 pi i tau) for an mpmath complex tau."""
        tau = mpmath.mpc(tau)
        mag_bits = max(0, int(-2 * float(mpmath.pi) * float(tau.imag) / 0.69314718) + 2)
        with mpmath.workprec(B + GUARD + mag_bits):
            return ComplexFix.from_mpc(mpmath.exp(2j * mpmath.pi * tau), B)

    def mag_upper(self) -> int:
        return abs(self.re) + abs(self.im) + self.err

    def mag_lower(self) -> int:
        return isqrt(self.re * self.re + self.im * self.im) - self.err

    def _same(self, o: "ComplexFix"):
        if o.B != self.B:
            raise ValueError("precision mismatch")

    def __add__(self, o):
        if isinstance(o, int):
            return ComplexFix(self.re + (o << self.B), self.im, self.err, self.B)
        self._same(o)
        return ComplexFix(self.re + o.re, self.im + o.im, self.err + o.err, self.B)

    __radd__ = __add__

    def __neg__(self):
        return ComplexFix(-self.re, -self.im, self.err, self.B)

    def __sub__(self, o):
        return self + (-o)

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, o):
        if isinstance(o, int):
            return ComplexFix(self.re * o, self.im * o, self.err * abs(o), self.B)
        self._same(o)
        B = self.B
        re = (self.re * o.re - self.im * o.im) >> B
        im = (self.re * o.im + self.im * o.re) >> B
        a, b = abs(self.re) + abs(self.im), abs(o.re) + abs(o.im)
        e = (a * o.err + b * self.err + self.err * o.err) >> B
        return ComplexFix(re, im, e + 3, B)

    __rmul__ = __mul__

    def inverse(self) -> "ComplexFix":
        B = self.B
        n2 = self.re * self.re + self.im * self.im
        low = self.mag_lower()
        if low <= 0:
            raise CertificationError("division by a value indistinguishable from 0")
        s = 1 << (2 * B)
        re = (self.re * s) // n2
        im = (-self.im * s) // n2
        # |1/z - 1/a| <= |z - a| / (|a| |z|) with |a| >= low + err and |z| >= low
        e = -(-self.err * s // (low * (low + self.err)))
        return ComplexFix(re, im, e + 3, B)

    def __truediv__(self, o):
        if isinstance(o, int):
            o = ComplexFix.from_int(o, self.B)
        return self * o.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        out = ComplexFix.from_int(1, self.B)
        base = self
        while e:
            if e & 1:
                out = out * base
            e >>= 1
            if e:
                base = base * base
        return out

    def contains_zero(self) -> bool:
        """True if 0 lies within the error disk (the value is certified-compatible with 0)."""
        return isqrt(self.re * self.re + self.im * self.im) <= self.err + 1

    def err_real(self) -> float:
        return self.err / 2.0**self.B

    def abs_real(self) -> float:
        return sqrt(float(self.re) ** 2 + float(self.im) ** 2) / 2.0**self.B if self.B < 1000 else float(
            mpmath.sqrt(mpmath.mpf(self.re) ** 2 + mpmath.mpf(self.im) ** 2) / mpmath.mpf(2) ** self.B)

    def to_mpc(self):
        s = mpmath.mpf(2) ** self.B
        return mpmath.mpc(mpmath.mpf(self.re) / s, mpmath.mpf(self.im) / s)

    def round_int(self) -> tuple[int, float]:
        """Nearest integer with certification |z - n| + err < 1/4."""
        B = self.B
        half = 1 << (B - 1)
        n = (self.re + half) >> B
        dev = abs(self.re - (n << B)) + abs(self.im) + self.err
        margin = dev / 2.0**B if B < 1000 else float(mpmath.mpf(dev) / mpmath.mpf(2) ** B)
        if 4 * dev >= (1 << B):
            raise CertificationError(f"rounding margin violated ({margin:.3g})")
        return n, margin

    def __repr__(self):
        return f"ComplexFix({mpmath.nstr(self.to_mpc(), 20)} +- {self.err_real():.3g})"


# --------------------------------------------------------------------------
# eta and q-series


def _tau_mp(tau):
    if isinstance(tau, ComplexFix):
        return tau.to_mpc()
    return mpmath.mpc(tau)


def _workprec(fn):
    """Run fn with mpmath at B + GUARD bits so scaled arguments stay exact enough."""

    def wrapped(tau, B: int = 256, *args, **kw):
        with mpmath.workprec(max(mpmath.mp.prec, B + GUARD)):
            return fn(tau, B, *args, **kw)

    wrapped.__name__, wrapped.__doc__ = fn.__name__, fn.__doc__
    return wrapped


@_workprec
def _pentagonal(tau, B: int) -> ComplexFix:
    """prod_{n>=1} (1 - q^n) = sum_k (-1)^k q^(k(3k-1)/2) with a tail bound."""
    tau = _tau_mp(tau)
    y = float(tau.imag)
    if y <= 0:
        raise ValueError("tau must lie in the upper half-plane")
    lq = 2 * pi * y / 0.6931471805599453  # -log2 |q|
    if lq < 1e-3:
        raise CertificationError("|q| too close to 1")
    slack = -log2(1 - 2.0 ** (-lq))  # log2 of 1/(1 - |q|)
    total = ComplexFix.from_int(1, B)
    k = 1
    while True:
        e1, e2 = k * (3 * k - 1) // 2, k * (3 * k + 1) // 2
        if e1 * lq > B + 8 + slack:
            # remaining exponents are distinct integers >= e1: tail < 2 |q|^e1 / (1 - |q|)
            total.err += int(2 * 2.0 ** (B - e1 * lq + slack)) + 1
            return total
        sign = -1 if k % 2 else 1
        total = total + ComplexFix.exp_2pi_i(tau * e1, B) * sign + ComplexFix.exp_2pi_i(tau * e2, B) * sign
        k += 1


@_workprec
def eta(tau, B: int = 256) -> ComplexFix:
    """Dedekind eta q^(1/24) prod (1 - q^n)."""
    tau = _tau_mp(tau)
    return ComplexFix.exp_2pi_i(tau / 24, B) * _pentagonal(tau, B)


def _sigma3_list(M: int) -> list[int]:
    s = [0] * (M + 1)
    for d in range(1, M + 1):
        d3 = d**3
        for m in range(d, M + 1, d):
            s[m] += d3
    return s


@_workprec
def e4(tau, B: int) -> ComplexFix:
    """1 + 240 sum sigma_3(n) q^n with a tail bound (Horner in q)."""
    tau = _tau_mp(tau)
    lq = 2 * pi * float(tau.imag) / 0.6931471805599453
    if lq < 1:
        raise ValueError("tau too close to the real axis")
    M = 1
    while M * lq - 3 * log2(M + 1) < B + 16:
        M += 1
    q = ComplexFix.exp_2pi_i(tau, B)
    s3 = _sigma3_list(M)
    acc = ComplexFix.from_int(s3[M], B)
    for n in range(M - 1, 0, -1):
        acc = acc * q + s3[n]
    acc = acc * q
    qa = 2.0 ** (-lq)
    rho = ((M + 2) / (M + 1)) ** 3 * qa
    acc.err += int(1.21 * (M + 1) ** 3 * 2.0 ** (B - (M + 1) * lq) / (1 - rho)) + 1
    return acc * 240 + 1


@_workprec
def j_of(tau, B: int) -> ComplexFix:
    """j = E4^3 / Delta with Delta = q prod (1 - q^n)^24."""
    tau = _tau_mp(tau)
    E = e4(tau, B)
    P = _pentagonal(tau, B)
    qinv = ComplexFix.exp_2pi_i(-tau, B)
    return (E**3) * (P.inverse() ** 24) * qinv


@_workprec
def f_of(z, B: int = 256) -> ComplexFix:
    """3 + (eta(z/9)/eta(z))^3."""
    z = _tau_mp(z)
    return (eta(z / 9, B) / eta(z, B)) ** 3 + 3


@_workprec
def g_of(z, B: int = 256) -> ComplexFix:
    """3 + (3 eta(3z)/eta(z/3))^3."""
    z = _tau_mp(z)
    return ((eta(3 * z, B) * 3) / eta(z / 3, B)) ** 3 + 3


# --------------------------------------------------------------------------
# CM points and class polynomials


@dataclass(frozen=True)
class CMPoint:
    d: int
    k: int

    @property
    def even(self) -> bool:
        return self.d % 2 == 0

    def norm(self) -> int:
        """N(w) for w = (k + sqrt(-d))/2 (d odd) or k + sqrt(-d)/2 (d even)."""
        if self.even:
            return self.k * self.k + self.d // 4
        return (self.k * self.k + self.d) // 4

    def trace(self) -> int:
        return 2 * self.k if self.even else self.k

    def w(self, prec: int = 256):
        with mpmath.workprec(prec):
            s = mpmath.sqrt(self.d) * 1j
            return self.k + s / 2 if self.even else (self.k + s) / 2

    def to_json(self) -> dict:
        return {"d": self.d, "k": self.k, "norm": self.norm(),
                "w": f"{self.k} + sqrt(-{self.d})/2" if self.even else f"({self.k} + sqrt(-{self.d}))/2"}


def select_w(d: int, require_9_norm: bool = False) -> CMPoint:
    if not valid_d(d):
        raise ValueError(f"d={d} is not admissible (need d > 4, d = 2 mod 3, -d a discriminant)")
    target = (-(d // 4)) % 9 if d % 2 == 0 else (-d) % 9
    k = 1
    while (k * k - target) % 9:
        k += 6
    pt = CMPoint(d, k)
    if require_9_norm:
        for _ in range(3):
            if pt.norm() % 9 == 0 and pt.norm() % 27:
                break
            pt = CMPoint(d, pt.k + 18)
        else:
            raise ArithmeticError("no k with 9 || N(w)")
    return pt


def default_bits(d: int) -> int:
    h = class_number(d)
    est = sum(pi * sqrt(d) / f.a / 0.6931471805599453 + 1 for f in class_list(d).forms)
    return max(192, 32 * h + int(est))


def _form_tau(f):
    return mpmath.mpc(-f.b, mpmath.sqrt(-f.disc)) / (2 * f.a)


def _class_poly_at(d: int, B: int) -> tuple[Poly, float]:
    coeffs = [ComplexFix.from_int(1, B)]
    with mpmath.workprec(B + GUARD):
        taus = [_form_tau(f) for f in class_list(d).forms]
    for tau in taus:
        j = j_of(tau, B)
        new = [ComplexFix.from_int(0, B) for _ in range(len(coeffs) + 1)]
        for i, c in enumerate(coeffs):
            new[i + 1] = new[i + 1] + c
            new[i] = new[i] - c * j
        coeffs = new
    ints, worst = [], 0.0
    for c in coeffs:
        n, m = c.round_int()
        ints.append(n)
        worst = max(worst, m)
    return Poly(ints), worst


@dataclass
class ClassPolyResult:
    poly: Poly
    bits: int
    margin: float


@lru_cache(maxsize=None)
def ring_class_poly_report(d: int, bits: int | None = None) -> ClassPolyResult:
    """H_{-d} by certified rounding; precision doubled until two runs agree."""
    B = bits or default_bits(d)
    prev = None
    for _ in range(8):
        try:
            H, margin = _class_poly_at(d, B)
        except CertificationError:
            prev = None
            B *= 2
            continue
        if prev is not None and prev == H:
            return ClassPolyResult(H, B, margin)
        prev = H
        B *= 2
    raise CertificationError(f"class polynomial for d={d} did not stabilize")


def ring_class_poly(d: int, bits: int | None = None) -> Poly:
    return ring_class_poly_report(d, bits).poly


# --------------------------------------------------------------------------
# numeric identities at the CM point


@dataclass
class Check:
    name: str
    residual: float
    bound: float
    ok: bool

    def to_json(self) -> dict:
        return {"name": self.name, "residual": self.residual, "bound": self.bound, "ok": self.ok}


def _check(name: str, r: ComplexFix, tol: float | None = None) -> Check:
    res, bound = r.abs_real(), r.err_real()
    if tol is None:
        ok = r.contains_zero()
    else:
        ok = res <= tol
    return Check(name, res, bound if tol is None else tol, ok)


def modular_identity_suite(d: int, B: int = 256, p_d: Poly | None = None, seed: int = 0) -> dict:
    pt = select_w(d)
    with mpmath.workprec(B + GUARD):
        w = pt.w(B + GUARD)
    f = f_of(w, B)
    g = g_of(w, B)
    j = j_of(w, B)
    f3, g3 = f**3, g**3
    checks = [
        _check("fermat 27X^3+27Y^3=X^3Y^3", f3 * 27 + g3 * 27 - f3 * g3),
        _check("j = f^3(f^3-24)^3/(f^3-27)", j - f3 * (f3 - 24) ** 3 / (f3 - 27)),
        _check("X(X-24)^3 - j(X-27) at X=f^3", f3 * (f3 - 24) ** 3 - j * (f3 - 27)),
    ]
    Z, W = f - 3, g - 3
    checks.append(_check("ZW(Z^2+9Z+27)(W^2+9W+27) = 729", Z * W * (Z * Z + Z * 9 + 27) * (W * W + W * 9 + 27) - 729))
    rng = random.Random(seed)
    with mpmath.workprec(B + GUARD):
        z_rand = mpmath.mpc(rng.uniform(-0.5, 0.5), rng.uniform(0.9, 1.5))
    for label, z in (("w", w), ("random z", z_rand)):
        with mpmath.workprec(B + GUARD):
            z_3 = z / 3
        fz = f_of(z, B)
        checks.append(_check(f"sigma1(f(z)) = g(z/3) at {label}", (fz - 3).inverse() * 27 + 3 - g_of(z_3, B)))
        x = f_of(z_3, B)
        checks.append(_check(f"g(f(z/3), f(z)) = 0 at {label}",
                             (fz * fz + fz * 3 + 9) * x * x * x - (fz + 6) ** 3))
    tol = 2.0 ** (-B // 2)
    H = ring_class_poly(d)
    hv = ComplexFix.from_int(0, B)
    for c in reversed(H.c):
        hv = hv * j + int(c)
    checks.append(_check("H_{-d}(j(w)) = 0", hv / max(1, max(abs(int(c)) for c in H.c)), tol))
    if p_d is not None:
        pv = ComplexFix.from_int(0, B)
        for c in reversed(p_d.c):
            pv = pv * f + int(c)
        checks.append(_check("p_d(f(w)) = 0", pv, tol))
    return {"d": d, "cm_point": pt.to_json(), "bits": B,
            "checks": [c.to_json() for c in checks], "ok": all(c.ok for c in checks)}
