"""Exact arithmetic in cyclotomic fields Q(zeta_N).

A CycNum is an element of Q(zeta_N) stored in the power basis
1, zeta, ..., zeta^(phi(N)-1) modulo the N-th cyclotomic polynomial,
as a vector of integer numerators over a single positive denominator,
always fully reduced.  Equal elements therefore have equal fields, which
makes equality (the hottest operation during group closure) a tuple
comparison.

All values are immutable and all operations are pure functions; CycNum
instances can be shared freely across threads.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
import cmath

from .errors import DivisionByZero, MalformedInput, ModulusMismatch

__all__ = [
    "CycNum",
    "cyc_add",
    "cyc_mul",
    "cyc_inv",
    "cyc_conj",
    "cyc_embed",
    "euler_phi",
    "cyclotomic_polynomial",
]


def euler_phi(n: int) -> int:
    if n < 1:
        raise MalformedInput(f"modulus must be positive, got {n}")
    result = n
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def _poly_divmod_int(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    # Division of integer polynomials; den must be monic.
    num = list(num)
    dn = len(den) - 1
    quot = [0] * max(1, len(num) - dn)
    for i in range(len(num) - dn - 1, -1, -1):
        c = num[i + dn]
        if c:
            quot[i] = c
            for j, d in enumerate(den):
                num[i + j] -= c * d
    while len(num) > 1 and num[-1] == 0:
        num.pop()
    return quot, num


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients of the n-th cyclotomic polynomial, lowest degree first."""
    if n < 1:
        raise MalformedInput(f"modulus must be positive, got {n}")
    poly = [-1] + [0] * (n - 1) + [1]  # x^n - 1
    for d in range(1, n):
        if n % d == 0:
            poly, rem = _poly_divmod_int(poly, list(cyclotomic_polynomial(d)))
            assert all(c == 0 for c in rem)
    return tuple(poly)


class _Context:
    """Per-modulus tables: reduction of high powers and zeta powers."""

    __slots__ = ("n", "phi", "minpoly", "reduction", "zeta_pows")

    def __init__(self, n: int):
        self.n = n
        self.phi = euler_phi(n)
        self.minpoly = cyclotomic_polynomial(n)
        phi = self.phi
        # reduction[e] = integer vector of x^(phi+e) mod Phi_N, e = 0..phi-2
        rows: list[tuple[int, ...]] = []
        cur = [-c for c in self.minpoly[:phi]]  # x^phi
        rows.append(tuple(cur))
        for _ in range(phi - 2):
            cur = [0] + cur
            top = cur.pop()
            if top:
                for i in range(phi):
                    cur[i] -= top * self.minpoly[i]
            rows.append(tuple(cur))
        self.reduction = tuple(rows)
        # zeta_pows[k] = vector of zeta^k for k = 0..n-1
        pows: list[tuple[int, ...]] = []
        vec = [1] + [0] * (phi - 1)
        for _ in range(n):
            pows.append(tuple(vec))
            vec = [0] + vec
            top = vec.pop()
            if top:
                for i in range(phi):
                    vec[i] -= top * self.minpoly[i]
        self.zeta_pows = tuple(pows)


@lru_cache(maxsize=None)
def _context(n: int) -> _Context:
    return _Context(n)


def _normalize(num: list[int], den: int) -> tuple[tuple[int, ...], int]:
    if den == 0:
        raise DivisionByZero("zero denominator")
    if den < 0:
        den = -den
        num = [-c for c in num]
    g = den
    for c in num:
        g = gcd(g, c)
        if g == 1:
            break
    if g > 1:
        num = [c // g for c in num]
        den //= g
    return tuple(num), den


class CycNum:
    """An element of Q(zeta_N) in reduced power-basis form."""

    __slots__ = ("n", "num", "den")

    def __init__(self, n: int, num, den: int = 1, _normalized: bool = False):
        ctx = _context(n)
        num = list(num)
        if len(num) != ctx.phi:
            raise MalformedInput(
                f"coefficient vector has length {len(num)}, expected phi({n}) = {ctx.phi}"
            )
        self.n = n
        if _normalized:
            self.num = tuple(num)
            self.den = den
        else:
            self.num, self.den = _normalize(num, den)

    # -- constructors -------------------------------------------------

    @staticmethod
    def from_int(n: int, value: int) -> CycNum:
        phi = _context(n).phi
        return CycNum(n, [value] + [0] * (phi - 1))

    @staticmethod
    def from_fraction(n: int, value: Fraction) -> CycNum:
        phi = _context(n).phi
        return CycNum(n, [value.numerator] + [0] * (phi - 1), value.denominator)

    @staticmethod
    def zero(n: int) -> CycNum:
        return CycNum.from_int(n, 0)

    @staticmethod
    def one(n: int) -> CycNum:
        return CycNum.from_int(n, 1)

    @staticmethod
    def zeta(n: int, k: int = 1) -> CycNum:
        """The root of unity zeta_N^k."""
        ctx = _context(n)
        return CycNum(n, list(ctx.zeta_pows[k % n]), 1)

    @staticmethod
    def root_of_unity(n: int, order: int, k: int = 1) -> CycNum:
        """zeta_order^k expressed in Q(zeta_n); order must divide n."""
        if n % order != 0:
            raise ModulusMismatch(f"{order} does not divide ambient modulus {n}")
        return CycNum.zeta(n, (n // order) * k)

    # -- helpers ------------------------------------------------------

    def _check(self, other: CycNum) -> None:
        if self.n != other.n:
            raise ModulusMismatch(f"mixed moduli {self.n} and {other.n}")

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.num)

    def is_one(self) -> bool:
        return self.den == 1 and self.num[0] == 1 and all(c == 0 for c in self.num[1:])

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.num[1:])

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise MalformedInput("not a rational number")
        return Fraction(self.num[0], self.den)

    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self.den) for c in self.num)

    def promote(self, m: int) -> CycNum:
        """Re-express the element in Q(zeta_m); self.n must divide m."""
        if m == self.n:
            return self
        if m % self.n != 0:
            raise ModulusMismatch(f"cannot promote modulus {self.n} to {m}")
        ctx = _context(m)
        step = m // self.n
        phi = ctx.phi
        out = [0] * phi
        for i, c in enumerate(self.num):
            if c:
                row = ctx.zeta_pows[(i * step) % m]
                for j in range(phi):
                    out[j] += c * row[j]
        return CycNum(m, out, self.den)

    def sort_key(self) -> tuple:
        return (self.num, self.den)

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other: CycNum) -> CycNum:
        self._check(other)
        a, b = self, other
        if a.den == b.den:
            num = [x + y for x, y in zip(a.num, b.num)]
            return CycNum(a.n, num, a.den)
        num = [x * b.den + y * a.den for x, y in zip(a.num, b.num)]
        return CycNum(a.n, num, a.den * b.den)

    def __sub__(self, other: CycNum) -> CycNum:
        self._check(other)
        a, b = self, other
        if a.den == b.den:
            num = [x - y for x, y in zip(a.num, b.num)]
            return CycNum(a.n, num, a.den)
        num = [x * b.den - y * a.den for x, y in zip(a.num, b.num)]
        return CycNum(a.n, num, a.den * b.den)

    def __neg__(self) -> CycNum:
        return CycNum(self.n, [-c for c in self.num], self.den, _normalized=True)

    def __mul__(self, other: CycNum) -> CycNum:
        self._check(other)
        ctx = _context(self.n)
        phi = ctx.phi
        a, b = self.num, other.num
        conv = [0] * (2 * phi - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        conv[i + j] += x * y
        out = conv[:phi]
        red = ctx.reduction
        for e in range(phi, 2 * phi - 1):
            c = conv[e]
            if c:
                row = red[e - phi]
                for j in range(phi):
                    out[j] += c * row[j]
        return CycNum(self.n, out, self.den * other.den)

    def inv(self) -> CycNum:
        """Multiplicative inverse via extended Euclid modulo the minimal polynomial."""
        if self.is_zero():
            raise DivisionByZero("inverse of zero")
        if self.is_rational():
            q = self.as_fraction()
            return CycNum.from_fraction(self.n, 1 / q)
        ctx = _context(self.n)
        # Extended gcd over Q[x] of the minimal polynomial and self; Bezout
        # coefficient of self gives the inverse modulo the minimal polynomial.

        def deg(p: list[Fraction]) -> int:
            for i in range(len(p) - 1, -1, -1):
                if p[i]:
                    return i
            return -1

        def sub_scaled(p: list[Fraction], q: list[Fraction], c: Fraction, shift: int) -> list[Fraction]:
            out = list(p)
            need = len(q) + shift
            if len(out) < need:
                out += [Fraction(0)] * (need - len(out))
            for i, qc in enumerate(q):
                if qc:
                    out[i + shift] -= c * qc
            return out

        r0 = [Fraction(c) for c in ctx.minpoly]
        r1 = [Fraction(c, self.den) for c in self.num]
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while True:
            d1 = deg(r1)
            if d1 < 0:
                raise DivisionByZero("element not invertible")
            if d1 == 0:
                break
            # r0 = q*r1 + r; replace (r0, s0) <- (r1, s1), (r1, s1) <- (r, s0 - q*s1)
            q_shifts: list[tuple[Fraction, int]] = []
            r = list(r0)
            lead1 = r1[d1]
            dr = deg(r)
            while dr >= d1:
                c = r[dr] / lead1
                q_shifts.append((c, dr - d1))
                r = sub_scaled(r, r1, c, dr - d1)
                dr = deg(r)
            s = list(s0)
            for c, shift in q_shifts:
                s = sub_scaled(s, s1, c, shift)
            r0, s0 = r1, s1
            r1, s1 = r, s
        c = r1[0]
        inv_coeffs = [x / c for x in s1]
        inv_coeffs += [Fraction(0)] * (ctx.phi - len(inv_coeffs))
        inv_coeffs = inv_coeffs[: ctx.phi]
        den = 1
        for f in inv_coeffs:
            den = den * f.denominator // gcd(den, f.denominator)
        num = [int(f * den) for f in inv_coeffs]
        return CycNum(self.n, num, den)

    def __truediv__(self, other: CycNum) -> CycNum:
        return self * other.inv()

    def __pow__(self, k: int) -> CycNum:
        if k < 0:
            return self.inv() ** (-k)
        result = CycNum.one(self.n)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conj(self) -> CycNum:
        """Complex conjugation zeta -> zeta^(-1)."""
        ctx = _context(self.n)
        phi = ctx.phi
        out = [0] * phi
        for i, c in enumerate(self.num):
            if c:
                row = ctx.zeta_pows[(-i) % self.n]
                for j in range(phi):
                    out[j] += c * row[j]
        return CycNum(self.n, out, self.den)

    def embed(self) -> complex:
        """Floating-point image under zeta -> exp(2*pi*i/N).  Diagnostics only."""
        root = cmath.exp(2j * cmath.pi / self.n)
        total = 0j
        power = 1 + 0j
        for c in self.num:
            if c:
                total += c * power
            power *= root
        return total / self.den

    # -- comparisons --------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CycNum):
            return NotImplemented
        return self.n == other.n and self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.n, self.num, self.den))

    def __repr__(self) -> str:
        if self.is_rational():
            q = self.as_fraction()
            return f"CycNum({self.n}, {q})"
        terms = []
        for i, c in enumerate(self.num):
            if c == 0:
                continue
            coeff = str(Fraction(c, self.den))
            terms.append(coeff if i == 0 else f"{coeff}*z{i}" if i > 1 else f"{coeff}*z")
        return f"CycNum({self.n}, {' + '.join(terms)})"


# Functional aliases for the operation surface.

def cyc_add(a: CycNum, b: CycNum) -> CycNum:
    return a + b


def cyc_mul(a: CycNum, b: CycNum) -> CycNum:
    return a * b


def cyc_inv(a: CycNum) -> CycNum:
    return a.inv()


def cyc_conj(a: CycNum) -> CycNum:
    return a.conj()


def cyc_embed(a: CycNum) -> complex:
    return a.embed()
