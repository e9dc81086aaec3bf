"""Polynomials over F_3, its extensions, and the irreducible-factor audits."""

from __future__ import annotations

import itertools
import random
from typing import Iterable, Sequence

from .arith import divisors, mobius

P = 3
DEFAULT_SEED = 3


def _trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


class F3Poly:
    """Polynomial over F_3, ascending coefficients in {0, 1, 2}."""

    __slots__ = ("c",)

    def __init__(self, coeffs: Iterable[int] = ()):
        self.c = tuple(_trim([int(a) % 3 for a in coeffs]))

    @classmethod
    def from_poly(cls, p) -> "F3Poly":
        return cls(p.mod(3))

    @classmethod
    def from_desc(cls, coeffs: Sequence[int]) -> "F3Poly":
        return cls(reversed(list(coeffs)))

    @classmethod
    def parse(cls, s: str) -> "F3Poly":
        return cls(int(t) for t in s.split(","))

    @property
    def deg(self) -> int:
        return len(self.c) - 1

    @property
    def lc(self) -> int:
        return self.c[-1] if self.c else 0

    def __getitem__(self, k: int) -> int:
        return self.c[k] if 0 <= k < len(self.c) else 0

    def is_zero(self) -> bool:
        return not self.c

    def __eq__(self, o) -> bool:
        return isinstance(o, F3Poly) and self.c == o.c

    def __hash__(self):
        return hash(self.c)

    def __lt__(self, o: "F3Poly") -> bool:
        return (self.deg, self.c[::-1]) < (o.deg, o.c[::-1])

    def __repr__(self) -> str:
        return f"F3Poly({self.pretty()})"

    def pretty(self) -> str:
        if not self.c:
            return "0"
        out = []
        for k in range(self.deg, -1, -1):
            a = self.c[k]
            if not a:
                continue
            mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            if not mono:
                out.append(str(a))
            else:
                out.append(mono if a == 1 else f"{a}{mono}")
        return "+".join(out)

    def to_json(self) -> str:
        return ",".join(str(a) for a in self.c)

    def __add__(self, o: "F3Poly") -> "F3Poly":
        n = max(len(self.c), len(o.c))
        return F3Poly(self[k] + o[k] for k in range(n))

    def __neg__(self) -> "F3Poly":
        return F3Poly(-a for a in self.c)

    def __sub__(self, o: "F3Poly") -> "F3Poly":
        return self + (-o)

    def __mul__(self, o) -> "F3Poly":
        if isinstance(o, int):
            return F3Poly(a * o for a in self.c)
        if not self.c or not o.c:
            return F3Poly()
        out = [0] * (len(self.c) + len(o.c) - 1)
        for i, a in enumerate(self.c):
            if a:
                for j, b in enumerate(o.c):
                    out[i + j] += a * b
        return F3Poly(out)

    def divmod(self, o: "F3Poly") -> tuple["F3Poly", "F3Poly"]:
        if o.is_zero():
            raise ZeroDivisionError
        r = list(self.c)
        db = o.deg
        inv = o.lc  # 1 and 2 are self-inverse mod 3
        q = [0] * max(0, len(r) - db)
        for k in range(len(r) - 1 - db, -1, -1):
            t = r[k + db] * inv % 3
            if t:
                q[k] = t
                for j, b in enumerate(o.c):
                    r[k + j] = (r[k + j] - t * b) % 3
        return F3Poly(q), F3Poly(r[:db])

    def __mod__(self, o: "F3Poly") -> "F3Poly":
        return self.divmod(o)[1]

    def __floordiv__(self, o: "F3Poly") -> "F3Poly":
        return self.divmod(o)[0]

    def monic(self) -> "F3Poly":
        return self * self.lc if self.c and self.lc != 1 else self

    def derivative(self) -> "F3Poly":
        return F3Poly([k * a for k, a in enumerate(self.c)][1:])

    def powmod(self, e: int, m: "F3Poly") -> "F3Poly":
        result, base = F3Poly([1]), self % m
        while e:
            if e & 1:
                result = (result * base) % m
            e >>= 1
            if e:
                base = (base * base) % m
        return result

    def __call__(self, x: int) -> int:
        acc = 0
        for a in reversed(self.c):
            acc = (acc * x + a) % 3
        return acc


X = F3Poly([0, 1])
ONE = F3Poly([1])


def gcd_f3(a: F3Poly, b: F3Poly) -> F3Poly:
    while not b.is_zero():
        a, b = b, a % b
    return a.monic() if not a.is_zero() else a


def is_irreducible(f: F3Poly) -> bool:
    """Rabin-style test: no factor in common with x^(3^k) - x for k < deg f."""
    n = f.deg
    if n < 1:
        return False
    h = X
    for k in range(1, n):
        h = h.powmod(3, f)
        if gcd_f3(h - X, f).deg > 0:
            return False
    return X.powmod(3**n, f) == X % f


def _cube_root_poly(f: F3Poly) -> F3Poly:
    # f is a polynomial in x^3; its cube root over F_3 just takes every third coefficient
    return F3Poly(f.c[::3])


def squarefree_decomposition(f: F3Poly) -> list[tuple[F3Poly, int]]:
    out: list[tuple[F3Poly, int]] = []
    f = f.monic()

    def rec(f: F3Poly, mult: int):
        if f.deg < 1:
            return
        d = f.derivative()
        if d.is_zero():
            rec(_cube_root_poly(f), mult * 3)
            return
        c = gcd_f3(f, d)
        w = f // c
        i = 1
        while w.deg > 0:
            y = gcd_f3(w, c)
            z = w // y
            if z.deg > 0:
                out.append((z.monic(), mult * i))
            i += 1
            w = y
            c = c // y
        if c.deg > 0:
            rec(_cube_root_poly(c), mult * 3)

    rec(f, 1)
    return out


def distinct_degree(f: F3Poly) -> list[tuple[F3Poly, int]]:
    out, h, k = [], X, 0
    while f.deg >= 2 * (k + 1):
        k += 1
        h = h.powmod(3, f)
        g = gcd_f3(h - X, f)
        if g.deg > 0:
            out.append((g, k))
            f = f // g
            h = h % f
    if f.deg > 0:
        out.append((f.monic(), f.deg))
    return out


def equal_degree(f: F3Poly, n: int, rng: random.Random) -> list[F3Poly]:
    if f.deg == n:
        return [f.monic()]
    e = (3**n - 1) // 2
    while True:
        a = F3Poly(rng.randrange(3) for _ in range(f.deg))
        if a.deg < 1:
            continue
        g = gcd_f3(a, f)
        if 0 < g.deg < f.deg:
            break
        g = gcd_f3(a.powmod(e, f) - ONE, f)
        if 0 < g.deg < f.deg:
            break
    return equal_degree(g, n, rng) + equal_degree(f // g, n, rng)


def factor_f3(f: F3Poly, seed: int = DEFAULT_SEED) -> list[tuple[F3Poly, int]]:
    """Complete factorization into monic irreducibles with multiplicities."""
    if f.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    rng = random.Random(seed)
    acc: dict[F3Poly, int] = {}
    for part, mult in squarefree_decomposition(f):
        for block, n in distinct_degree(part):
            for g in equal_degree(block, n, rng):
                acc[g] = acc.get(g, 0) + mult
    return sorted(acc.items(), key=lambda t: t[0])


def count_N3(n: int) -> int:
    if n < 1:
        raise ValueError("n must be positive")
    return sum(mobius(n // k) * 3**k for k in divisors(n)) // n


def monic_polys(n: int):
    for tail in itertools.product(range(3), repeat=n):
        yield F3Poly(list(tail) + [1])


def irreducibles(n: int) -> list[F3Poly]:
    return sorted(f for f in monic_polys(n) if is_irreducible(f))


def count_irreducible_bruteforce(n: int) -> int:
    """Count by sieving out products of lower-degree monic polynomials."""
    if n == 1:
        return 3
    reducible = set()
    for k in range(1, n // 2 + 1):
        for a in monic_polys(k):
            for b in monic_polys(n - k):
                reducible.add(a * b)
    return 3**n - len(reducible)


def smallest_irreducible(n: int) -> F3Poly:
    for tail in itertools.product(range(3), repeat=n):
        f = F3Poly(list(reversed(tail)) + [1])
        if f.deg == n and is_irreducible(f):
            return f
    raise AssertionError("no irreducible found")


# --------------------------------------------------------------------------
# the field F_3[t]/(M)


class F3Ext:
    """The field F_3[t]/(M) for an irreducible monic M."""

    def __init__(self, modulus: F3Poly):
        if not is_irreducible(modulus):
            raise ValueError(f"{modulus.pretty()} is not irreducible")
        self.M = modulus.monic()
        self.n = self.M.deg
        self.q = 3**self.n

    def __repr__(self):
        return f"F3Ext({self.M.pretty()})"

    def elem(self, coeffs: Iterable[int]) -> "F3ExtElem":
        return F3ExtElem(self, F3Poly(coeffs) % self.M)

    def gen(self) -> "F3ExtElem":
        return self.elem([0, 1])

    def zero(self) -> "F3ExtElem":
        return F3ExtElem(self, F3Poly())

    def one(self) -> "F3ExtElem":
        return F3ExtElem(self, ONE)


class F3ExtElem:
    __slots__ = ("F", "r")

    def __init__(self, F: F3Ext, r: F3Poly):
        self.F, self.r = F, r

    def vector(self) -> list[int]:
        return [self.r[k] for k in range(self.F.n)]

    def __add__(self, o):
        return F3ExtElem(self.F, self.r + self._c(o).r)

    def __sub__(self, o):
        return F3ExtElem(self.F, self.r - self._c(o).r)

    def __neg__(self):
        return F3ExtElem(self.F, -self.r)

    def __mul__(self, o):
        return F3ExtElem(self.F, (self.r * self._c(o).r) % self.F.M)

    __rmul__ = __mul__
    __radd__ = __add__

    def _c(self, o) -> "F3ExtElem":
        return o if isinstance(o, F3ExtElem) else self.F.elem([o])

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return F3ExtElem(self.F, self.r.powmod(e, self.F.M))

    def inverse(self) -> "F3ExtElem":
        if self.is_zero():
            raise ZeroDivisionError
        return self ** (self.F.q - 2)

    def __truediv__(self, o):
        return self * self._c(o).inverse()

    def frob(self, k: int = 1) -> "F3ExtElem":
        return self ** (3**k)

    def is_zero(self) -> bool:
        return self.r.is_zero()

    def __eq__(self, o):
        return isinstance(o, F3ExtElem) and self.F.M == o.F.M and self.r == o.r

    def __hash__(self):
        return hash((self.F.M, self.r))

    def __repr__(self):
        return f"[{self.r.pretty().replace('x', 't')}]"


def _ext_poly_eval(coeffs: Sequence[int], a: F3ExtElem) -> F3ExtElem:
    acc = a.F.zero()
    for c in reversed(coeffs):
        acc = acc * a + c
    return acc


def _ep_trim(a: list) -> list:
    while a and a[-1].is_zero():
        a.pop()
    return a


def _ep_mod(a: list, b: list) -> list:
    r = list(a)
    inv = b[-1].inverse()
    db = len(b) - 1
    for k in range(len(r) - 1 - db, -1, -1):
        t = r[k + db] * inv
        if not t.is_zero():
            for j in range(db + 1):
                r[k + j] = r[k + j] - t * b[j]
    return _ep_trim(r[:db])


def _ep_mul(a: list, b: list, F: F3Ext) -> list:
    out = [F.zero() for _ in range(len(a) + len(b) - 1)]
    for i, x in enumerate(a):
        if not x.is_zero():
            for j, y in enumerate(b):
                out[i + j] = out[i + j] + x * y
    return _ep_trim(out)


def _ep_gcd(a: list, b: list) -> list:
    a, b = _ep_trim(list(a)), _ep_trim(list(b))
    while b:
        a, b = b, _ep_mod(a, b)
    inv = a[-1].inverse()
    return [c * inv for c in a]


def _ep_powmod(base: list, e: int, m: list, F: F3Ext) -> list:
    result = [F.one()]
    base = _ep_mod(base, m)
    while e:
        if e & 1:
            result = _ep_mod(_ep_mul(result, base, F), m)
        e >>= 1
        if e:
            base = _ep_mod(_ep_mul(base, base, F), m)
    return result


def roots_in(f: F3Poly, F: F3Ext, seed: int = DEFAULT_SEED) -> list[F3ExtElem]:
    """All roots in F of a squarefree f that splits completely there."""
    rng = random.Random(seed)
    fl = [F.elem([a]) for a in f.monic().c]
    out: list[F3ExtElem] = []

    def split(g: list):
        if len(g) == 2:
            out.append(-(g[0] / g[1]))
            return
        e = (F.q - 1) // 2
        while True:
            a = F.elem([rng.randrange(3) for _ in range(F.n)])
            h = _ep_powmod([a, F.one()], e, g, F) or [F.zero()]
            h = _ep_trim([h[0] - 1] + h[1:])
            if not h:
                continue
            c = _ep_gcd(g, h)
            if 1 < len(c) < len(g):
                break
        q = _ep_div(g, c)
        split(c)
        split(q)

    split(fl)
    return sorted(out, key=lambda r: r.vector())


def _ep_div(a: list, b: list) -> list:
    r = list(a)
    inv = b[-1].inverse()
    db = len(b) - 1
    q = [None] * (len(r) - db)
    for k in range(len(r) - 1 - db, -1, -1):
        t = r[k + db] * inv
        q[k] = t
        for j in range(db + 1):
            r[k + j] = r[k + j] - t * b[j]
    return q


def rank_f3(vectors: list[list[int]]) -> int:
    rows = [list(v) for v in vectors]
    rank, col = 0, 0
    ncols = len(rows[0]) if rows else 0
    while rank < len(rows) and col < ncols:
        piv = next((i for i in range(rank, len(rows)) if rows[i][col] % 3), None)
        if piv is None:
            col += 1
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = rows[rank][col] % 3  # self-inverse
        rows[rank] = [v * inv % 3 for v in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col] % 3:
                f = rows[i][col]
                rows[i] = [(a - f * b) % 3 for a, b in zip(rows[i], rows[rank])]
        rank += 1
        col += 1
    return rank


def ell_rank(moduli: Sequence[F3Poly], seed: int = DEFAULT_SEED) -> int:
    """F_3-dimension of the span of all inverse roots of the given moduli."""
    if not moduli:
        return 0
    n = moduli[0].deg
    for f in moduli:
        if f.deg != n:
            raise ValueError("moduli must share one degree")
        if f == X:
            raise ValueError("the modulus x is excluded")
        if not is_irreducible(f):
            raise ValueError(f"{f.pretty()} is reducible")
    F = F3Ext(smallest_irreducible(n))
    vecs = []
    for f in moduli:
        rho = roots_in(f, F, seed)[0]
        inv = rho.inverse()
        for i in range(n):
            vecs.append(inv.frob(i).vector())
    return rank_f3(vecs)


def partition_audit(n: int, class_polys: dict[int, F3Poly], seed: int = DEFAULT_SEED) -> dict:
    """Check that degree-n factors of the class polynomials partition the irreducibles."""
    expected = set(irreducibles(n))
    if n == 1:
        expected.discard(X)
    S: dict[int, list[F3Poly]] = {}
    problems = []
    owner: dict[F3Poly, int] = {}
    mod_x2 = {}
    for d in sorted(class_polys):
        facs = factor_f3(class_polys[d], seed)
        S[d] = []
        for g, mult in facs:
            if g.deg != n or mult != 1 or g == X:
                problems.append(f"d={d}: unexpected factor {g.pretty()}^{mult}")
                continue
            if g in owner:
                problems.append(f"{g.pretty()} divides both d={owner[g]} and d={d}")
            owner[g] = d
            S[d].append(g)
        tails = {(g[0], g[1]) for g in S[d]}
        mod_x2[d] = len(tails) <= 1
    missing = sorted(expected - set(owner))
    for g in missing:
        problems.append(f"{g.pretty()} divides no class polynomial")
    return {
        "n": n,
        "ok": not problems,
        "S": {d: [g.to_json() for g in gs] for d, gs in S.items()},
        "S_pretty": {d: [g.pretty() for g in gs] for d, gs in S.items()},
        "total": len(owner),
        "expected": len(expected),
        "agree_mod_x2": mod_x2,
        "problems": problems,
    }


corollary2_audit = partition_audit  # interface name
