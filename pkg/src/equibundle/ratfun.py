"""Polynomials, rational functions and matrices over a cyclotomic field.

Laurent polynomials are represented as rational functions whose denominator
is a power of z, so a single type serves both affine charts.  Every value is
canonical: denominators are monic and coprime to numerators, which makes
equality a coefficient comparison.  All types are immutable.
"""

from __future__ import annotations

from typing import Iterable, Optional

from .cyclotomic import CycNum
from .errors import (
    DimensionMismatch,
    DivisionByZero,
    MalformedInput,
    ModulusMismatch,
    SingularMatrix,
)

__all__ = [
    "Poly",
    "RatFun",
    "RatMat",
    "poly_gcd",
    "ratmat_mul",
    "ratmat_det",
    "ratmat_inv",
    "ratmat_compose",
    "laurent_is_unit",
]


class Poly:
    """Dense univariate polynomial over Q(zeta_N), lowest degree first."""

    __slots__ = ("n", "coeffs")

    def __init__(self, n: int, coeffs: Iterable[CycNum] = ()):
        coeffs = list(coeffs)
        while coeffs and coeffs[-1].is_zero():
            coeffs.pop()
        for c in coeffs:
            if c.n != n:
                raise ModulusMismatch(f"coefficient modulus {c.n} != {n}")
        self.n = n
        self.coeffs = tuple(coeffs)

    # -- constructors -------------------------------------------------

    @staticmethod
    def zero(n: int) -> Poly:
        return Poly(n)

    @staticmethod
    def one(n: int) -> Poly:
        return Poly(n, [CycNum.one(n)])

    @staticmethod
    def const(c: CycNum) -> Poly:
        return Poly(c.n, [c])

    @staticmethod
    def x(n: int) -> Poly:
        return Poly(n, [CycNum.zero(n), CycNum.one(n)])

    @staticmethod
    def monomial(c: CycNum, k: int) -> Poly:
        if k < 0:
            raise MalformedInput("monomial exponent must be nonnegative")
        return Poly(c.n, [CycNum.zero(c.n)] * k + [c])

    @staticmethod
    def from_ints(n: int, ints: Iterable[int]) -> Poly:
        return Poly(n, [CycNum.from_int(n, v) for v in ints])

    # -- structure ----------------------------------------------------

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_const(self) -> bool:
        return len(self.coeffs) <= 1

    def is_monomial(self) -> bool:
        return bool(self.coeffs) and all(c.is_zero() for c in self.coeffs[:-1])

    def valuation(self) -> int:
        """Order of vanishing at 0; the zero polynomial has valuation -1."""
        for i, c in enumerate(self.coeffs):
            if not c.is_zero():
                return i
        return -1

    def lead(self) -> CycNum:
        if not self.coeffs:
            raise DivisionByZero("leading coefficient of zero polynomial")
        return self.coeffs[-1]

    def coeff(self, k: int) -> CycNum:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return CycNum.zero(self.n)

    def monic(self) -> Poly:
        if self.is_zero():
            return self
        lead = self.coeffs[-1]
        if lead.is_one():
            return self
        inv = lead.inv()
        return Poly(self.n, [c * inv for c in self.coeffs])

    # -- arithmetic ---------------------------------------------------

    def _check(self, other: Poly) -> None:
        if self.n != other.n:
            raise ModulusMismatch(f"mixed moduli {self.n} and {other.n}")

    def __add__(self, other: Poly) -> Poly:
        self._check(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return Poly(self.n, out)

    def __sub__(self, other: Poly) -> Poly:
        return self + (-other)

    def __neg__(self) -> Poly:
        return Poly(self.n, [-c for c in self.coeffs])

    def __mul__(self, other: Poly) -> Poly:
        self._check(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly.zero(self.n)
        if len(a) == 1:
            return Poly(self.n, [a[0] * c for c in b])
        if len(b) == 1:
            return Poly(self.n, [c * b[0] for c in a])
        zero = CycNum.zero(self.n)
        out = [zero] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x.is_zero():
                continue
            for j, y in enumerate(b):
                if not y.is_zero():
                    out[i + j] = out[i + j] + x * y
        return Poly(self.n, out)

    def scale(self, c: CycNum) -> Poly:
        return Poly(self.n, [x * c for x in self.coeffs])

    def shift(self, k: int) -> Poly:
        """Multiply by z^k (k >= 0)."""
        if self.is_zero() or k == 0:
            return self
        return Poly(self.n, [CycNum.zero(self.n)] * k + list(self.coeffs))

    def __pow__(self, k: int) -> Poly:
        if k < 0:
            raise MalformedInput("negative power of a polynomial")
        result = Poly.one(self.n)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def divmod(self, other: Poly) -> tuple[Poly, Poly]:
        self._check(other)
        if other.is_zero():
            raise DivisionByZero("polynomial division by zero")
        if self.degree() < other.degree():
            return Poly.zero(self.n), self
        lead_inv = other.coeffs[-1].inv()
        rem = list(self.coeffs)
        db = other.degree()
        zero = CycNum.zero(self.n)
        quot = [zero] * (len(rem) - db)
        for i in range(len(rem) - db - 1, -1, -1):
            c = rem[i + db]
            if c.is_zero():
                continue
            q = c * lead_inv
            quot[i] = q
            for j, d in enumerate(other.coeffs):
                rem[i + j] = rem[i + j] - q * d
        return Poly(self.n, quot), Poly(self.n, rem[:db])

    def __floordiv__(self, other: Poly) -> Poly:
        return self.divmod(other)[0]

    def __mod__(self, other: Poly) -> Poly:
        return self.divmod(other)[1]

    def divexact(self, other: Poly) -> Poly:
        q, r = self.divmod(other)
        if not r.is_zero():
            raise MalformedInput("inexact polynomial division")
        return q

    def eval(self, point: CycNum) -> CycNum:
        acc = CycNum.zero(self.n)
        for c in reversed(self.coeffs):
            acc = acc * point + c
        return acc

    def reversed(self, degree: Optional[int] = None) -> Poly:
        """Coefficient reversal z^d * p(1/z) for d = degree (default deg p)."""
        d = self.degree() if degree is None else degree
        if d < self.degree():
            raise MalformedInput("reversal degree below polynomial degree")
        zero = CycNum.zero(self.n)
        out = [zero] * (d + 1)
        for i, c in enumerate(self.coeffs):
            out[d - i] = c
        return Poly(self.n, out)

    # -- comparisons --------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Poly):
            return NotImplemented
        return self.n == other.n and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.n, self.coeffs))

    def __repr__(self) -> str:
        if self.is_zero():
            return "Poly(0)"
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c.is_zero():
                terms.append(f"({c!r})*z^{i}" if i else f"({c!r})")
        return "Poly(" + " + ".join(terms) + ")"


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic greatest common divisor via the Euclidean algorithm."""
    a._check(b)
    r0, r1 = a, b
    while not r1.is_zero():
        r1 = r1.monic()
        r0, r1 = r1, r0 % r1
    return r0.monic()


def poly_lcm(a: Poly, b: Poly) -> Poly:
    if a.is_zero() or b.is_zero():
        return Poly.zero(a.n)
    return (a * b).divexact(poly_gcd(a, b)).monic()


def poly_xgcd(a: Poly, b: Poly) -> tuple[Poly, Poly, Poly]:
    """Extended Euclid: returns (g, x, y) with x*a + y*b = g and g monic."""
    a._check(b)
    n = a.n
    r0, r1 = a, b
    x0, x1 = Poly.one(n), Poly.zero(n)
    y0, y1 = Poly.zero(n), Poly.one(n)
    while not r1.is_zero():
        q, r = r0.divmod(r1)
        r0, r1 = r1, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if r0.is_zero():
        return r0, x0, y0
    lead_inv = r0.lead().inv()
    return r0.scale(lead_inv), x0.scale(lead_inv), y0.scale(lead_inv)


class RatFun:
    """Rational function num/den in canonical form (monic coprime denominator)."""

    __slots__ = ("n", "num", "den")

    def __init__(self, num: Poly, den: Poly, _canonical: bool = False):
        if num.n != den.n:
            raise ModulusMismatch(f"mixed moduli {num.n} and {den.n}")
        if den.is_zero():
            raise DivisionByZero("zero denominator")
        self.n = num.n
        if _canonical:
            self.num, self.den = num, den
            return
        num, den = self._reduce(num, den)
        self.num, self.den = num, den

    @staticmethod
    def _reduce(num: Poly, den: Poly) -> tuple[Poly, Poly]:
        n = num.n
        if num.is_zero():
            return num, Poly.one(n)
        if den.is_const():
            c = den.coeffs[0]
            if c.is_one():
                return num, den
            return num.scale(c.inv()), Poly.one(n)
        # Shared powers of z are the common case for Laurent data.
        vn, vd = num.valuation(), den.valuation()
        if vn > 0 and vd > 0:
            k = min(vn, vd)
            num = Poly(n, num.coeffs[k:])
            den = Poly(n, den.coeffs[k:])
            if den.is_const():
                return RatFun._reduce(num, den)
        if den.is_monomial():
            lead = den.lead()
            if not lead.is_one():
                num = num.scale(lead.inv())
                den = den.monic()
            return num, den
        g = poly_gcd(num, den)
        if g.degree() > 0:
            num = num.divexact(g)
            den = den.divexact(g)
        lead = den.lead()
        if not lead.is_one():
            inv = lead.inv()
            num = num.scale(inv)
            den = den.scale(inv)
        return num, den

    # -- constructors -------------------------------------------------

    @staticmethod
    def zero(n: int) -> RatFun:
        return RatFun(Poly.zero(n), Poly.one(n), _canonical=True)

    @staticmethod
    def one(n: int) -> RatFun:
        return RatFun(Poly.one(n), Poly.one(n), _canonical=True)

    @staticmethod
    def const(c: CycNum) -> RatFun:
        return RatFun(Poly.const(c), Poly.one(c.n), _canonical=True)

    @staticmethod
    def from_poly(p: Poly) -> RatFun:
        return RatFun(p, Poly.one(p.n), _canonical=True)

    @staticmethod
    def monomial(c: CycNum, k: int) -> RatFun:
        """c * z^k for any integer k."""
        n = c.n
        if c.is_zero():
            return RatFun.zero(n)
        if k >= 0:
            return RatFun(Poly.monomial(c, k), Poly.one(n), _canonical=True)
        return RatFun(Poly.const(c), Poly.monomial(CycNum.one(n), -k), _canonical=True)

    @staticmethod
    def from_laurent(n: int, min_exp: int, coeffs: Iterable[CycNum]) -> RatFun:
        """Laurent polynomial with given lowest exponent and coefficient run."""
        p = Poly(n, coeffs)
        if min_exp >= 0:
            return RatFun.from_poly(p.shift(min_exp))
        return RatFun(p, Poly.monomial(CycNum.one(n), -min_exp))

    # -- structure ----------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.den.is_const() and self.num.is_const() and not self.num.is_zero() and self.num.coeffs[0].is_one()

    def is_polynomial(self) -> bool:
        return self.den.is_const()

    def as_poly(self) -> Poly:
        if not self.is_polynomial():
            raise MalformedInput("rational function is not a polynomial")
        return self.num

    def is_laurent(self) -> bool:
        return self.den.is_monomial()

    def laurent_parts(self) -> tuple[int, Poly]:
        """Return (v, p) with self = z^v * p and p of nonzero constant term."""
        if not self.is_laurent():
            raise MalformedInput("rational function is not a Laurent polynomial")
        if self.is_zero():
            return 0, Poly.zero(self.n)
        v = self.num.valuation()
        p = Poly(self.n, self.num.coeffs[v:])
        return v - self.den.degree(), p

    def laurent_bounds(self) -> tuple[int, int]:
        """(valuation, degree) of a Laurent polynomial; zero gives (0, 0)."""
        if self.is_zero():
            return 0, 0
        v, p = self.laurent_parts()
        return v, v + p.degree()

    def const_value(self) -> CycNum:
        if not (self.is_polynomial() and self.num.is_const()):
            raise MalformedInput("rational function is not constant")
        return self.num.coeff(0)

    # -- arithmetic ---------------------------------------------------

    def _check(self, other: RatFun) -> None:
        if self.n != other.n:
            raise ModulusMismatch(f"mixed moduli {self.n} and {other.n}")

    def __add__(self, other: RatFun) -> RatFun:
        self._check(other)
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.den == other.den:
            return RatFun(self.num + other.num, self.den)
        return RatFun(self.num * other.den + other.num * self.den, self.den * other.den)

    def __sub__(self, other: RatFun) -> RatFun:
        return self + (-other)

    def __neg__(self) -> RatFun:
        return RatFun(-self.num, self.den, _canonical=True)

    def __mul__(self, other: RatFun) -> RatFun:
        self._check(other)
        if self.is_zero() or other.is_zero():
            return RatFun.zero(self.n)
        return RatFun(self.num * other.num, self.den * other.den)

    def inv(self) -> RatFun:
        if self.is_zero():
            raise DivisionByZero("inverse of zero rational function")
        return RatFun(self.den, self.num)

    def __truediv__(self, other: RatFun) -> RatFun:
        self._check(other)
        if other.is_zero():
            raise DivisionByZero("division by zero rational function")
        return RatFun(self.num * other.den, self.den * other.num)

    def __pow__(self, k: int) -> RatFun:
        if k < 0:
            return self.inv() ** (-k)
        return RatFun(self.num ** k, self.den ** k)

    def scale(self, c: CycNum) -> RatFun:
        return RatFun(self.num.scale(c), self.den)

    def eval(self, point: CycNum) -> CycNum:
        d = self.den.eval(point)
        if d.is_zero():
            raise DivisionByZero("evaluation at a pole")
        return self.num.eval(point) * d.inv()

    def compose_moebius(self, mob) -> RatFun:
        """Substitute z -> (a z + b)/(c z + d) for a Moebius map."""
        a, b, c, d = mob.a, mob.b, mob.c, mob.d
        n = self.n
        lin_num = Poly(n, [b, a])
        lin_den = Poly(n, [d, c])
        pn = _poly_compose_pair(self.num, lin_num, lin_den)
        pd = _poly_compose_pair(self.den, lin_num, lin_den)
        dn, dd = self.num.degree(), self.den.degree()
        # self(m(z)) = pn/(cz+d)^dn / (pd/(cz+d)^dd)
        if dn >= dd:
            return RatFun(pn, pd * lin_den ** (dn - dd))
        return RatFun(pn * lin_den ** (dd - dn), pd)

    # -- comparisons --------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RatFun):
            return NotImplemented
        return self.n == other.n and self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.n, self.num, self.den))

    def __repr__(self) -> str:
        if self.is_polynomial():
            return f"RatFun({self.num!r})"
        return f"RatFun({self.num!r} / {self.den!r})"


def _poly_compose_pair(p: Poly, lin_num: Poly, lin_den: Poly) -> Poly:
    """Homogenized substitution: sum p_i * lin_num^i * lin_den^(deg p - i)."""
    n = p.n
    if p.is_zero():
        return Poly.zero(n)
    d = p.degree()
    num_pows = [Poly.one(n)]
    den_pows = [Poly.one(n)]
    for _ in range(d):
        num_pows.append(num_pows[-1] * lin_num)
        den_pows.append(den_pows[-1] * lin_den)
    acc = Poly.zero(n)
    for i, c in enumerate(p.coeffs):
        if not c.is_zero():
            acc = acc + (num_pows[i] * den_pows[d - i]).scale(c)
    return acc


def invert_variable(f: RatFun) -> RatFun:
    """Substitute z -> 1/z, mapping between the two chart coordinates."""
    n = f.n
    if f.is_zero():
        return f
    dn, dd = f.num.degree(), f.den.degree()
    num_rev = f.num.reversed()
    den_rev = f.den.reversed()
    if dd >= dn:
        return RatFun(num_rev.shift(dd - dn), den_rev)
    return RatFun(num_rev, den_rev.shift(dn - dd))


def laurent_is_unit(f: RatFun) -> Optional[tuple[CycNum, int]]:
    """Decide whether f = c * z^k; return (c, k) if so, else None."""
    if f.is_zero():
        return None
    if not f.den.is_monomial() or not f.num.is_monomial():
        return None
    k = f.num.degree() - f.den.degree()
    c = f.num.lead() * f.den.lead().inv()
    return c, k


class RatMat:
    """Rectangular matrix of rational functions."""

    __slots__ = ("n", "rows", "cols", "entries")

    def __init__(self, entries: Iterable[Iterable[RatFun]]):
        entries = tuple(tuple(row) for row in entries)
        if not entries or not entries[0]:
            raise MalformedInput("matrix must be nonempty")
        cols = len(entries[0])
        n = entries[0][0].n
        for row in entries:
            if len(row) != cols:
                raise DimensionMismatch("ragged matrix rows")
            for e in row:
                if e.n != n:
                    raise ModulusMismatch("mixed moduli in matrix entries")
        self.n = n
        self.rows = len(entries)
        self.cols = cols
        self.entries = entries

    # -- constructors -------------------------------------------------

    @staticmethod
    def identity(n: int, size: int) -> RatMat:
        one, zero = RatFun.one(n), RatFun.zero(n)
        return RatMat([[one if i == j else zero for j in range(size)] for i in range(size)])

    @staticmethod
    def zeros(n: int, rows: int, cols: int) -> RatMat:
        zero = RatFun.zero(n)
        return RatMat([[zero] * cols for _ in range(rows)])

    @staticmethod
    def diag(entries: Iterable[RatFun]) -> RatMat:
        entries = list(entries)
        n = entries[0].n
        zero = RatFun.zero(n)
        size = len(entries)
        return RatMat(
            [[entries[i] if i == j else zero for j in range(size)] for i in range(size)]
        )

    @staticmethod
    def from_const(matrix: Iterable[Iterable[CycNum]]) -> RatMat:
        return RatMat([[RatFun.const(c) for c in row] for row in matrix])

    # -- structure ----------------------------------------------------

    def __getitem__(self, ij: tuple[int, int]) -> RatFun:
        return self.entries[ij[0]][ij[1]]

    def is_square(self) -> bool:
        return self.rows == self.cols

    def transpose(self) -> RatMat:
        return RatMat([[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)])

    def submatrix(self, row_idx: Iterable[int], col_idx: Iterable[int]) -> RatMat:
        row_idx, col_idx = list(row_idx), list(col_idx)
        return RatMat([[self.entries[i][j] for j in col_idx] for i in row_idx])

    def hstack(self, other: RatMat) -> RatMat:
        if self.rows != other.rows:
            raise DimensionMismatch("hstack row mismatch")
        return RatMat([list(a) + list(b) for a, b in zip(self.entries, other.entries)])

    def vstack(self, other: RatMat) -> RatMat:
        if self.cols != other.cols:
            raise DimensionMismatch("vstack column mismatch")
        return RatMat(list(self.entries) + list(other.entries))

    def with_entry(self, i: int, j: int, value: RatFun) -> RatMat:
        rows = [list(row) for row in self.entries]
        rows[i][j] = value
        return RatMat(rows)

    def is_polynomial(self) -> bool:
        return all(e.is_polynomial() for row in self.entries for e in row)

    def is_identity(self) -> bool:
        if not self.is_square():
            return False
        for i in range(self.rows):
            for j in range(self.cols):
                e = self.entries[i][j]
                if i == j:
                    if not e.is_one():
                        return False
                elif not e.is_zero():
                    return False
        return True

    def is_zero(self) -> bool:
        return all(e.is_zero() for row in self.entries for e in row)

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other: RatMat) -> RatMat:
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatch("matrix addition shape mismatch")
        return RatMat(
            [
                [a + b for a, b in zip(r1, r2)]
                for r1, r2 in zip(self.entries, other.entries)
            ]
        )

    def __sub__(self, other: RatMat) -> RatMat:
        return self + other.neg()

    def neg(self) -> RatMat:
        return RatMat([[-e for e in row] for row in self.entries])

    def scale(self, f: RatFun) -> RatMat:
        return RatMat([[e * f for e in row] for row in self.entries])

    def __mul__(self, other: RatMat) -> RatMat:
        if self.cols != other.rows:
            raise DimensionMismatch(
                f"matrix product shape mismatch: {self.rows}x{self.cols} * {other.rows}x{other.cols}"
            )
        other_t = other.transpose()
        zero = RatFun.zero(self.n)
        out = []
        for row in self.entries:
            out_row = []
            for col in other_t.entries:
                acc = zero
                for a, b in zip(row, col):
                    if not (a.is_zero() or b.is_zero()):
                        acc = acc + a * b
                out_row.append(acc)
            out.append(out_row)
        return RatMat(out)

    def mul_vector(self, vec: list[RatFun]) -> list[RatFun]:
        if self.cols != len(vec):
            raise DimensionMismatch("matrix-vector shape mismatch")
        zero = RatFun.zero(self.n)
        out = []
        for row in self.entries:
            acc = zero
            for a, b in zip(row, vec):
                if not (a.is_zero() or b.is_zero()):
                    acc = acc + a * b
            out.append(acc)
        return out

    def det(self) -> RatFun:
        if not self.is_square():
            raise DimensionMismatch("determinant of a non-square matrix")
        r = self.rows
        e = self.entries
        if r == 1:
            return e[0][0]
        if r == 2:
            return e[0][0] * e[1][1] - e[0][1] * e[1][0]
        if r == 3:
            return (
                e[0][0] * (e[1][1] * e[2][2] - e[1][2] * e[2][1])
                - e[0][1] * (e[1][0] * e[2][2] - e[1][2] * e[2][0])
                + e[0][2] * (e[1][0] * e[2][1] - e[1][1] * e[2][0])
            )
        return self._det_bareiss()

    def _det_bareiss(self) -> RatFun:
        # Clear each row to polynomials, run fraction-free elimination, divide at the end.
        n = self.n
        scale = Poly.one(n)
        mat: list[list[Poly]] = []
        for row in self.entries:
            den = Poly.one(n)
            for entry in row:
                den = poly_lcm(den, entry.den)
            mat.append([entry.num * den.divexact(entry.den) for entry in row])
            scale = scale * den
        size = self.rows
        sign = 1
        prev = Poly.one(n)
        for k in range(size - 1):
            if mat[k][k].is_zero():
                pivot_row = next(
                    (i for i in range(k + 1, size) if not mat[i][k].is_zero()), None
                )
                if pivot_row is None:
                    return RatFun.zero(n)
                mat[k], mat[pivot_row] = mat[pivot_row], mat[k]
                sign = -sign
            for i in range(k + 1, size):
                for j in range(k + 1, size):
                    num = mat[k][k] * mat[i][j] - mat[i][k] * mat[k][j]
                    mat[i][j] = num.divexact(prev)
                mat[i][k] = Poly.zero(n)
            prev = mat[k][k]
        det_poly = mat[size - 1][size - 1]
        if sign < 0:
            det_poly = -det_poly
        return RatFun(det_poly, scale)

    def inv(self) -> RatMat:
        if not self.is_square():
            raise DimensionMismatch("inverse of a non-square matrix")
        r = self.rows
        if r <= 3:
            d = self.det()
            if d.is_zero():
                raise SingularMatrix("matrix determinant is zero")
            dinv = d.inv()
            if r == 1:
                return RatMat([[dinv]])
            e = self.entries
            if r == 2:
                return RatMat(
                    [
                        [e[1][1] * dinv, -e[0][1] * dinv],
                        [-e[1][0] * dinv, e[0][0] * dinv],
                    ]
                )
            cof = [
                [
                    (
                        e[(i + 1) % 3][(j + 1) % 3] * e[(i + 2) % 3][(j + 2) % 3]
                        - e[(i + 1) % 3][(j + 2) % 3] * e[(i + 2) % 3][(j + 1) % 3]
                    )
                    for i in range(3)
                ]
                for j in range(3)
            ]
            return RatMat([[c * dinv for c in row] for row in cof])
        return self._inv_gauss()

    def _inv_gauss(self) -> RatMat:
        n, r = self.n, self.rows
        work = [list(row) for row in self.entries]
        zero, one = RatFun.zero(n), RatFun.one(n)
        aug = [[one if i == j else zero for j in range(r)] for i in range(r)]
        for col in range(r):
            pivot = next((i for i in range(col, r) if not work[i][col].is_zero()), None)
            if pivot is None:
                raise SingularMatrix("matrix determinant is zero")
            if pivot != col:
                work[col], work[pivot] = work[pivot], work[col]
                aug[col], aug[pivot] = aug[pivot], aug[col]
            pinv = work[col][col].inv()
            work[col] = [x * pinv for x in work[col]]
            aug[col] = [x * pinv for x in aug[col]]
            for i in range(r):
                if i != col and not work[i][col].is_zero():
                    f = work[i][col]
                    work[i] = [x - f * y for x, y in zip(work[i], work[col])]
                    aug[i] = [x - f * y for x, y in zip(aug[i], aug[col])]
        return RatMat(aug)

    def compose_moebius(self, mob) -> RatMat:
        return RatMat([[e.compose_moebius(mob) for e in row] for row in self.entries])

    def eval(self, point: CycNum) -> list[list[CycNum]]:
        return [[e.eval(point) for e in row] for row in self.entries]

    # -- comparisons --------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RatMat):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self) -> int:
        return hash(self.entries)

    def __repr__(self) -> str:
        return f"RatMat({self.rows}x{self.cols})"


# Functional aliases for the operation surface.

def ratmat_mul(a: RatMat, b: RatMat) -> RatMat:
    return a * b


def ratmat_det(a: RatMat) -> RatFun:
    return a.det()


def ratmat_inv(a: RatMat) -> RatMat:
    return a.inv()


def ratmat_compose(a: RatMat, mob) -> RatMat:
    return a.compose_moebius(mob)
