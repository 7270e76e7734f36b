from __future__ import annotations

import random

import pytest

from equibundle.cyclotomic import CycNum
from equibundle.errors import DivisionByZero, SingularMatrix
from equibundle.ratfun import (
    Poly,
    RatFun,
    RatMat,
    laurent_is_unit,
    poly_gcd,
    ratmat_compose,
    ratmat_det,
    ratmat_inv,
)

N = 12


class Mob:
    def __init__(self, a, b, c, d):
        self.a, self.b, self.c, self.d = a, b, c, d


def cyc(v: int) -> CycNum:
    return CycNum.from_int(N, v)


def rand_cyc(rng: random.Random, bound: int = 2) -> CycNum:
    from equibundle.cyclotomic import euler_phi

    return CycNum(N, [rng.randint(-bound, bound) for _ in range(euler_phi(N))], rng.randint(1, 2))


def rand_poly(rng: random.Random, max_deg: int = 2) -> Poly:
    return Poly(N, [rand_cyc(rng, 2) for _ in range(rng.randint(0, max_deg + 1))])


def rand_ratfun(rng: random.Random) -> RatFun:
    # Linear denominators keep exact expression swell in check.
    num = rand_poly(rng)
    den = rand_poly(rng, 1)
    while den.is_zero():
        den = rand_poly(rng, 1)
    return RatFun(num, den)


def z() -> RatFun:
    return RatFun.from_poly(Poly.x(N))


def test_poly_divmod_roundtrip():
    rng = random.Random(3)
    for _ in range(30):
        a = rand_poly(rng, 5)
        b = rand_poly(rng, 3)
        if b.is_zero():
            continue
        q, r = a.divmod(b)
        assert q * b + r == a
        assert r.degree() < b.degree() or r.is_zero()


def test_poly_gcd_divides_both_and_is_monic():
    rng = random.Random(5)
    for _ in range(25):
        a, b, c = rand_poly(rng, 2), rand_poly(rng, 2), rand_poly(rng, 2)
        x, y = a * c, b * c
        if x.is_zero() and y.is_zero():
            continue
        g = poly_gcd(x, y)
        assert g.is_zero() or g.lead().is_one()
        if not x.is_zero():
            assert (x % g).is_zero()
        if not y.is_zero():
            assert (y % g).is_zero()
        if not c.is_zero():
            assert (g % c.monic()).is_zero()


def test_ratfun_canonical_equality():
    two = RatFun.const(cyc(2))
    f = RatFun(Poly.from_ints(N, [0, 2]), Poly.from_ints(N, [0, 1]))
    assert f == two
    g = RatFun(Poly.from_ints(N, [-1, 0, 1]), Poly.from_ints(N, [1, 1]))
    assert g == RatFun.from_poly(Poly.from_ints(N, [-1, 1]))


def test_ratfun_field_ops():
    rng = random.Random(11)
    for _ in range(20):
        f, g = rand_ratfun(rng), rand_ratfun(rng)
        h = rand_ratfun(rng)
        assert (f + g) * h == f * h + g * h
        if not g.is_zero():
            assert (f / g) * g == f


def test_laurent_is_unit():
    three_z2 = RatFun.monomial(cyc(3), 2)
    assert laurent_is_unit(three_z2) == (cyc(3), 2)
    z_inv = RatFun.monomial(cyc(1), -1)
    assert laurent_is_unit(z_inv) == (cyc(1), -1)
    assert laurent_is_unit(z() + RatFun.one(N)) is None
    assert laurent_is_unit(RatFun.zero(N)) is None


def test_laurent_parts():
    f = RatFun.from_laurent(N, -2, [cyc(1), cyc(0), cyc(5)])
    v, p = f.laurent_parts()
    assert v == -2
    assert p == Poly.from_ints(N, [1, 0, 5])
    assert f.laurent_bounds() == (-2, 0)


def test_det_identity():
    assert ratmat_det(RatMat.identity(N, 2)) == RatFun.one(N)


def test_inv_upper_triangular_example():
    # [[z, 1], [0, 1]]^(-1) = [[1/z, -1/z], [0, 1]], verified by multiplication.
    m = RatMat(
        [
            [z(), RatFun.one(N)],
            [RatFun.zero(N), RatFun.one(N)],
        ]
    )
    inv = ratmat_inv(m)
    zi = RatFun.monomial(cyc(1), -1)
    assert inv == RatMat([[zi, -zi], [RatFun.zero(N), RatFun.one(N)]])
    assert (m * inv).is_identity()
    assert (inv * m).is_identity()


def rand_ratmat(rng: random.Random, size: int) -> RatMat:
    return RatMat([[rand_ratfun(rng) for _ in range(size)] for _ in range(size)])


def test_det_multiplicative():
    rng = random.Random(17)
    for size, repeats in ((2, 4), (3, 3), (4, 2)):
        for _ in range(repeats):
            a, b = rand_ratmat(rng, size), rand_ratmat(rng, size)
            assert ratmat_det(a * b) == ratmat_det(a) * ratmat_det(b)


def test_inverse_exact_random():
    rng = random.Random(23)
    for size in (2, 3, 4):
        tried = 0
        while tried < 3:
            m = rand_ratmat(rng, size)
            if m.det().is_zero():
                continue
            tried += 1
            assert (m * m.inv()).is_identity()


def test_singular_matrix_raises():
    m = RatMat([[RatFun.one(N), RatFun.one(N)], [RatFun.one(N), RatFun.one(N)]])
    with pytest.raises(SingularMatrix):
        m.inv()


def test_zero_denominator_raises():
    with pytest.raises(DivisionByZero):
        RatFun(Poly.one(N), Poly.zero(N))


def rand_mob(rng: random.Random) -> Mob:
    while True:
        vals = [rng.randint(-3, 3) for _ in range(4)]
        a, b, c, d = (cyc(v) for v in vals)
        if not (a * d - b * c).is_zero():
            return Mob(a, b, c, d)


def mob_product(m1: Mob, m2: Mob) -> Mob:
    # Matrix product; the Moebius map of a product is the composite map.
    return Mob(
        m1.a * m2.a + m1.b * m2.c,
        m1.a * m2.b + m1.b * m2.d,
        m1.c * m2.a + m1.d * m2.c,
        m1.c * m2.b + m1.d * m2.d,
    )


def test_compose_respects_moebius_composition():
    rng = random.Random(31)
    for _ in range(6):
        a = RatMat([[rand_ratfun(rng) for _ in range(2)] for _ in range(2)])
        m1, m2 = rand_mob(rng), rand_mob(rng)
        lhs = ratmat_compose(ratmat_compose(a, m1), m2)
        rhs = ratmat_compose(a, mob_product(m1, m2))
        assert lhs == rhs


def test_compose_identity_moebius():
    rng = random.Random(37)
    a = rand_ratmat(rng, 2)
    ident = Mob(cyc(1), cyc(0), cyc(0), cyc(1))
    assert ratmat_compose(a, ident) == a


def test_poly_reversal():
    p = Poly.from_ints(N, [1, 2, 3])
    assert p.reversed() == Poly.from_ints(N, [3, 2, 1])
    assert p.reversed(4) == Poly.from_ints(N, [0, 0, 3, 2, 1])
