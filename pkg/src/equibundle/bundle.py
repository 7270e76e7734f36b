"""Vector bundles on P^1 as transition cocycles, and their exact invariants.

A bundle of rank r is an invertible r x r Laurent-polynomial matrix T(z)
relating the two chart trivializations by v0 = T(z) v1 (chart-0 coordinates
in terms of chart-1 coordinates).  With this orientation the degree-n line
bundle has transition z^n, a global section is a pair (s0, s1) of polynomial
vectors in z and w = 1/z with s0(z) = T(z) s1(1/z) on the overlap, and
isomorphism is T -> A T B with A unimodular over C[z] and B unimodular
over C[1/z].

The factorization produced here is T = U_plus * D * U_minus with U_plus
unimodular over C[z] (invertible at 0, indeed everywhere), D a diagonal of
monomials z^d sorted by nonincreasing degree, and U_minus unimodular over
C[1/z] (invertible at infinity).  The exponents of D are the splitting type.
The factorization is computed by the constructive splitting argument:
sections of maximal twist split off one line bundle at a time, with
left-Hermite compression keeping entry degrees bounded by the determinant
exponent throughout.
"""

from __future__ import annotations

from typing import Optional

from .cyclotomic import CycNum
from .errors import (
    DimensionMismatch,
    MalformedInput,
    MathRejection,
    NotACocycle,
    SingularMatrix,
)
from .linalg import nullspace
from .ratfun import Poly, RatFun, RatMat, laurent_is_unit, poly_xgcd

__all__ = [
    "TransitionCocycle",
    "BirkhoffFactorization",
    "HNFiltration",
    "birkhoff_factor",
    "splitting_type",
    "h0_dimension",
    "h0_profile",
    "section_basis",
    "hn_filtration",
]


class TransitionCocycle:
    """An invertible Laurent transition matrix defining a bundle on P^1."""

    def __init__(self, rank: int, transition: RatMat):
        if rank < 1:
            raise MalformedInput("rank must be at least 1")
        if transition.rows != rank or transition.cols != rank:
            raise DimensionMismatch("transition matrix shape does not match rank")
        for row in transition.entries:
            for e in row:
                if not e.is_laurent():
                    raise NotACocycle("transition entries must be Laurent polynomials")
        det = transition.det()
        if det.is_zero():
            raise SingularMatrix("transition matrix is singular")
        unit = laurent_is_unit(det)
        if unit is None:
            raise NotACocycle(
                "transition determinant is not c * z^k, so the matrix is not "
                "invertible on the overlap"
            )
        self.rank = rank
        self.transition = transition
        self.n = transition.n
        self.det_const, self.degree = unit

    def twist(self, m: int) -> TransitionCocycle:
        """Tensor by the degree-m line bundle: multiply the transition by z^m."""
        zm = RatFun.monomial(CycNum.one(self.n), m)
        return TransitionCocycle(self.rank, self.transition.scale(zm))

    def __repr__(self) -> str:
        return f"TransitionCocycle(rank={self.rank}, degree={self.degree})"


class BirkhoffFactorization:
    """T = U_plus * D * U_minus with monomial diagonal D and sorted degrees."""

    def __init__(self, u_plus: RatMat, degrees: tuple[int, ...], u_minus: RatMat):
        self.u_plus = u_plus
        self.degrees = tuple(degrees)
        self.u_minus = u_minus
        self.n = u_plus.n
        if any(degrees[i] < degrees[i + 1] for i in range(len(degrees) - 1)):
            raise MathRejection("factorization degrees are not sorted")

    def diagonal(self) -> RatMat:
        one = CycNum.one(self.n)
        return RatMat.diag([RatFun.monomial(one, d) for d in self.degrees])

    def product(self) -> RatMat:
        return self.u_plus * self.diagonal() * self.u_minus

    def residual_is_zero(self, cocycle: TransitionCocycle) -> bool:
        return self.product() == cocycle.transition

    def factors_in_rings(self) -> bool:
        return _is_unimodular_z(self.u_plus) and _is_unimodular_w(self.u_minus)

    def __repr__(self) -> str:
        return f"BirkhoffFactorization(degrees={self.degrees})"


class HNFiltration:
    """Filtration steps read off the factorization: distinct slopes, bases."""

    def __init__(self, slopes: tuple[int, ...], multiplicities: tuple[int, ...], bases: tuple[RatMat, ...]):
        if len(slopes) != len(multiplicities) or len(slopes) != len(bases):
            raise DimensionMismatch("filtration data lengths disagree")
        if any(slopes[i] <= slopes[i + 1] for i in range(len(slopes) - 1)):
            raise MathRejection("slopes must strictly decrease")
        self.slopes = tuple(slopes)
        self.multiplicities = tuple(multiplicities)
        self.bases = tuple(bases)
        self.ranks = tuple(
            sum(multiplicities[: j + 1]) for j in range(len(multiplicities))
        )
        if any(self.ranks[i] >= self.ranks[i + 1] for i in range(len(self.ranks) - 1)):
            raise MathRejection("filtration ranks must strictly increase")

    def length(self) -> int:
        return len(self.slopes)

    def __repr__(self) -> str:
        return f"HNFiltration(slopes={self.slopes}, ranks={self.ranks})"


# ---------------------------------------------------------------------------
# Laurent coefficient utilities


def _laurent_data(f: RatFun) -> tuple[int, list[CycNum]]:
    if f.is_zero():
        return 0, []
    v, p = f.laurent_parts()
    return v, list(p.coeffs)


def _is_unimodular_z(m: RatMat) -> bool:
    if not m.is_polynomial():
        return False
    d = m.det()
    return d.is_polynomial() and d.num.is_const() and not d.is_zero()


def _is_unimodular_w(m: RatMat) -> bool:
    for row in m.entries:
        for e in row:
            if e.is_zero():
                continue
            if not e.is_laurent():
                return False
            _, hi = e.laurent_bounds()
            if hi > 0:
                return False
    d = m.det()
    return not d.is_zero() and d.is_polynomial() and d.num.is_const()


# ---------------------------------------------------------------------------
# Section spaces: exact linear solves and the one-step twist ladder


class _SectionSpace:
    """Basis of section pairs of E x O(m), with cached transition products.

    A section is determined by the chart-1 polynomial vector s1; the cached
    product P = T s1 (a Laurent coefficient table) has no exponent below -m,
    and s0 = z^m P.  Lowering m by one imposes r linear conditions (the
    coefficients of z^(-m) of P), which is how the ladder steps down.
    """

    def __init__(self, cocycle_matrix: RatMat, m: int):
        self.T = cocycle_matrix
        self.r = cocycle_matrix.rows
        self.n = cocycle_matrix.n
        self.m = m
        self._entry_data = [
            [_laurent_data(e) for e in row] for row in cocycle_matrix.entries
        ]
        det_unit = laurent_is_unit(cocycle_matrix.det())
        if det_unit is None:
            raise NotACocycle("section solve requires a monomial determinant")
        k_det = det_unit[1]
        max_updeg = 0
        for row in self._entry_data:
            for v, coeffs in row:
                if coeffs:
                    max_updeg = max(max_updeg, -v)
        self.cap = m + k_det + (self.r - 1) * max_updeg
        self.basis: list[tuple[list[list[CycNum]], list[dict[int, CycNum]]]] = []
        if self.cap >= 0:
            self._base_solve()

    def _base_solve(self) -> None:
        r, cap, m = self.r, self.cap, self.m
        n = self.n
        cols = r * (cap + 1)  # unknown b[k][j], j = 0..cap
        zero = CycNum.zero(n)
        rows_by_exp: dict[tuple[int, int], list[CycNum]] = {}
        for i in range(r):
            for k in range(r):
                v, coeffs = self._entry_data[i][k]
                for ci, c in enumerate(coeffs):
                    if c.is_zero():
                        continue
                    e_base = v + ci
                    for j in range(cap + 1):
                        e = e_base - j
                        if e <= -m - 1:
                            key = (i, e)
                            row = rows_by_exp.get(key)
                            if row is None:
                                row = [zero] * cols
                                rows_by_exp[key] = row
                            col = k * (cap + 1) + j
                            row[col] = row[col] + c
        matrix = [rows_by_exp[key] for key in sorted(rows_by_exp)]
        if matrix:
            kernel = nullspace(matrix)
        else:
            kernel = [
                [CycNum.one(n) if t == s else zero for t in range(cols)]
                for s in range(cols)
            ]
        for vec in kernel:
            s1 = [vec[k * (cap + 1): (k + 1) * (cap + 1)] for k in range(r)]
            self.basis.append((s1, self._product(s1)))

    def _product(self, s1: list[list[CycNum]]) -> list[dict[int, CycNum]]:
        out: list[dict[int, CycNum]] = []
        for i in range(self.r):
            acc: dict[int, CycNum] = {}
            for k in range(self.r):
                v, coeffs = self._entry_data[i][k]
                comp = s1[k]
                for ci, c in enumerate(coeffs):
                    if c.is_zero():
                        continue
                    for j, b in enumerate(comp):
                        if b.is_zero():
                            continue
                        e = v + ci - j
                        cur = acc.get(e)
                        acc[e] = c * b if cur is None else cur + c * b
            out.append({e: c for e, c in acc.items() if not c.is_zero()})
        return out

    def dim(self) -> int:
        return len(self.basis)

    def step_down(self) -> None:
        """Impose the r conditions taking sections of E x O(m) to E x O(m-1)."""
        self.m -= 1
        if not self.basis:
            return
        target = -self.m - 1  # new forbidden exponent after the decrement
        zero = CycNum.zero(self.n)
        cond_rows = []
        for i in range(self.r):
            row = [prod[i].get(target, zero) for _, prod in self.basis]
            if any(not c.is_zero() for c in row):
                cond_rows.append(row)
        if not cond_rows:
            return
        combos = nullspace(cond_rows)
        new_basis = []
        for combo in combos:
            s1 = [
                [zero for _ in range(len(self.basis[0][0][0]))] for _ in range(self.r)
            ]
            prod: list[dict[int, CycNum]] = [dict() for _ in range(self.r)]
            for coeff, (b_s1, b_prod) in zip(combo, self.basis):
                if coeff.is_zero():
                    continue
                for k in range(self.r):
                    s1[k] = [x + coeff * y for x, y in zip(s1[k], b_s1[k])]
                for i in range(self.r):
                    for e, c in b_prod[i].items():
                        cur = prod[i].get(e)
                        val = coeff * c if cur is None else cur + coeff * c
                        prod[i][e] = val
            prod = [{e: c for e, c in comp.items() if not c.is_zero()} for comp in prod]
            new_basis.append((s1, prod))
        self.basis = new_basis

    def section_pairs(self) -> list[tuple[list[Poly], list[Poly]]]:
        """Pairs (s0, s1) with s0 polynomial in z and s1 polynomial in w."""
        n, m = self.n, self.m
        out = []
        for s1_coeffs, prod in self.basis:
            s1 = [Poly(n, comp) for comp in s1_coeffs]
            s0 = []
            for comp in prod:
                if comp:
                    lo = min(comp.keys())
                    if lo + m < 0:
                        raise MathRejection("section product has a forbidden pole")
                    hi = max(comp.keys())
                    coeffs = [
                        comp.get(e, CycNum.zero(n)) for e in range(-m, hi + 1)
                    ]
                    s0.append(Poly(n, coeffs))
                else:
                    s0.append(Poly.zero(n))
            out.append((s0, s1))
        return out


# ---------------------------------------------------------------------------
# Left Hermite compression


def _left_hermite(mat: list[list[Poly]]) -> tuple[RatMat, list[list[Poly]]]:
    """Row-reduce a polynomial matrix to upper-triangular Hermite form.

    Returns (L, H) with mat = L * H, L unimodular over C[z].  When the
    determinant is a monomial the pivots come out as monic monomials and all
    off-diagonal entries are reduced below the pivot degree, which bounds
    every entry degree by the determinant exponent.
    """
    n = mat[0][0].n
    size = len(mat)
    h = [list(row) for row in mat]
    l_inv_ops: list[tuple] = []  # operations applied to mat on the left

    def row_axpy(dst: int, src: int, q: Poly) -> None:
        # h[dst] -= q * h[src]
        h[dst] = [a - q * b for a, b in zip(h[dst], h[src])]
        l_inv_ops.append(("axpy", dst, src, q))

    def row_swap(i: int, j: int) -> None:
        h[i], h[j] = h[j], h[i]
        l_inv_ops.append(("swap", i, j))

    def row_scale(i: int, c: CycNum) -> None:
        h[i] = [a.scale(c) for a in h[i]]
        l_inv_ops.append(("scale", i, c))

    for col in range(size):
        while True:
            live = [i for i in range(col, size) if not h[i][col].is_zero()]
            if not live:
                raise SingularMatrix("matrix dropped rank during reduction")
            if len(live) == 1:
                if live[0] != col:
                    row_swap(col, live[0])
                break
            live.sort(key=lambda i: h[i][col].degree())
            lo, hi = live[0], live[1]
            q = h[hi][col].divmod(h[lo][col])[0]
            row_axpy(hi, lo, q)
        pivot = h[col][col]
        if not pivot.lead().is_one():
            row_scale(col, pivot.lead().inv())
            pivot = h[col][col]
        for i in range(col):
            if h[i][col].degree() >= pivot.degree():
                q = h[i][col] // pivot
                row_axpy(i, col, q)
    # Build L = product of inverse operations applied to the identity.
    one, zero = RatFun.one(n), RatFun.zero(n)
    l_rows = [[one if i == j else zero for j in range(size)] for i in range(size)]
    # mat = L * h where L undoes the recorded row operations in reverse.
    for op in l_inv_ops:
        if op[0] == "axpy":
            _, dst, src, q = op
            qf = RatFun.from_poly(q)
            # inverse of (row dst -= q row src) acting on columns of L:
            # L <- L * E^{-1} where E^{-1} adds q at (src column combination)
            for i in range(size):
                l_rows[i][src] = l_rows[i][src] + l_rows[i][dst] * qf
        elif op[0] == "swap":
            _, a, b = op
            for i in range(size):
                l_rows[i][a], l_rows[i][b] = l_rows[i][b], l_rows[i][a]
        else:
            _, a, c = op
            cf = RatFun.const(c.inv())
            for i in range(size):
                l_rows[i][a] = l_rows[i][a] * cf
    return RatMat(l_rows), h


# ---------------------------------------------------------------------------
# Unimodular completion of a coprime polynomial column


def _completion_from_column(column: list[Poly]) -> list[list[Poly]]:
    """A unimodular U with U * column = e1; gcd of the entries must be a unit."""
    n = column[0].n
    size = len(column)
    zero, one = Poly.zero(n), Poly.one(n)
    u = [[one if i == j else zero for j in range(size)] for i in range(size)]
    cur = list(column)

    def apply_2x2(i: int, j: int, a11: Poly, a12: Poly, a21: Poly, a22: Poly) -> None:
        # rows i, j <- (a11 ri + a12 rj, a21 ri + a22 rj); determinant must be a unit
        ui, uj = u[i], u[j]
        u[i] = [a11 * x + a12 * y for x, y in zip(ui, uj)]
        u[j] = [a21 * x + a22 * y for x, y in zip(ui, uj)]
        ci, cj = cur[i], cur[j]
        cur[i] = a11 * ci + a12 * cj
        cur[j] = a21 * ci + a22 * cj

    for i in range(1, size):
        if cur[i].is_zero():
            continue
        a, b = cur[0], cur[i]
        g, x, y = poly_xgcd(a, b)
        apply_2x2(0, i, x, y, -(b.divexact(g)), a.divexact(g))
    if cur[0].is_zero() or cur[0].degree() != 0:
        raise MathRejection("column entries are not coprime; no unimodular completion")
    c_inv = cur[0].coeff(0).inv()
    u[0] = [p.scale(c_inv) for p in u[0]]
    return u


def _poly_matrix_to_ratmat(rows: list[list[Poly]]) -> RatMat:
    return RatMat([[RatFun.from_poly(p) for p in row] for row in rows])


def _w_poly_to_ratfun(p: Poly) -> RatFun:
    """Interpret a polynomial in w as a Laurent polynomial in z."""
    n = p.n
    if p.is_zero():
        return RatFun.zero(n)
    coeffs = list(reversed(p.coeffs))
    return RatFun.from_laurent(n, -p.degree(), coeffs)


def _w_matrix_to_ratmat(rows: list[list[Poly]]) -> RatMat:
    return RatMat([[_w_poly_to_ratfun(p) for p in row] for row in rows])


def _ratfun_to_w_poly(f: RatFun) -> Poly:
    """Interpret a Laurent polynomial with exponents <= 0 as a polynomial in w."""
    n = f.n
    if f.is_zero():
        return Poly.zero(n)
    v, p = f.laurent_parts()
    hi = v + p.degree()
    if hi > 0:
        raise MalformedInput("positive exponents cannot convert to the w chart")
    coeffs = [CycNum.zero(n)] * (-v + 1)
    for i, c in enumerate(p.coeffs):
        coeffs[-(v + i)] = c
    return Poly(n, coeffs)


# ---------------------------------------------------------------------------
# The factorization engine


def _max_degree_section(T_h: RatMat, k_det: int) -> tuple[int, list[Poly], list[Poly]]:
    """Largest d with a section of E(-d), plus one such section pair."""
    r = T_h.rows
    d0 = -(-k_det // r)  # ceil(k/r): the mean degree, where a section must exist
    space = _SectionSpace(T_h, -d0)
    if space.dim() == 0:
        raise MathRejection("no section at the mean degree; determinant data broken")
    prev_pairs = space.section_pairs()
    guard = 0
    while True:
        space.step_down()
        if space.dim() == 0:
            d1 = -(space.m + 1)
            s0, s1 = prev_pairs[0]
            return d1, s0, s1
        prev_pairs = space.section_pairs()
        guard += 1
        if guard > 10 * (k_det + r + 2):
            raise MathRejection("degree search failed to terminate")


def _sorting_permutation(exps: list[int]) -> list[int]:
    """Stable order: degrees descending, ties by original position."""
    return sorted(range(len(exps)), key=lambda i: (-exps[i], i))


def _birkhoff_core(T: RatMat) -> tuple[RatMat, list[int], RatMat]:
    """Recursive engine: T = L * diag(z^degrees) * R, degrees nonincreasing."""
    n = T.n
    r = T.rows
    det_unit = laurent_is_unit(T.det())
    if det_unit is None:
        raise NotACocycle("determinant is not a monomial unit")
    _, k_det = det_unit
    if r == 1:
        unit = laurent_is_unit(T.entries[0][0])
        assert unit is not None
        c, k = unit
        return (
            RatMat([[RatFun.const(c)]]),
            [k],
            RatMat.identity(n, 1),
        )
    # Strip the scalar valuation and compress by left Hermite reduction.
    shift = min(
        e.laurent_bounds()[0] for row in T.entries for e in row if not e.is_zero()
    )
    z_neg = RatFun.monomial(CycNum.one(n), -shift)
    poly_rows = [[(e * z_neg).as_poly() for e in row] for row in T.entries]
    l_h, h_rows = _left_hermite(poly_rows)
    k_h = k_det - r * shift
    h_mat = _poly_matrix_to_ratmat(h_rows)
    if all(
        h_rows[i][j].is_zero() or (i == j and h_rows[i][j].is_monomial())
        for i in range(r)
        for j in range(r)
    ):
        exps = [h_rows[i][i].degree() + shift for i in range(r)]
        perm = _sorting_permutation(exps)
        zero, one = RatFun.zero(n), RatFun.one(n)
        p_right = RatMat(
            [[one if perm[j] == i else zero for j in range(r)] for i in range(r)]
        )
        p_left = p_right.inv()
        # diag(exps) = p_right_inv-ordered: L*H = L * P * D_sorted * P^{-1}
        l_total = l_h * p_right
        r_total = p_left
        degrees = [exps[perm[j]] for j in range(r)]
        return l_total, degrees, r_total
    # Peel off a line subbundle of maximal degree.
    d1, s0, s1 = _max_degree_section(h_mat, k_h)
    if all(p.is_zero() for p in s0) or all(p.is_zero() for p in s1):
        raise MathRejection("degenerate maximal section")
    u_rows = _completion_from_column(s0)
    v_rows_w = _completion_from_column(s1)
    u_mat = _poly_matrix_to_ratmat(u_rows)
    v_mat = _w_matrix_to_ratmat(v_rows_w)
    z_d1 = RatFun.monomial(CycNum.one(n), -d1)
    m_mat = u_mat * h_mat.scale(z_d1) * v_mat.inv()
    # First column must be e1 by construction.
    for i in range(r):
        expected_one = i == 0
        e = m_mat.entries[i][0]
        if expected_one and not e.is_one():
            raise MathRejection("peeled column is not normalized")
        if not expected_one and not e.is_zero():
            raise MathRejection("peeled column is not normalized")
    sub = m_mat.submatrix(range(1, r), range(1, r))
    l2, degs2, r2 = _birkhoff_core(sub)
    m_row = [m_mat.entries[0][j] for j in range(1, r)]
    r2_inv = r2.inv()
    m_prime = RatMat([m_row]) * r2_inv
    # Clear the remaining row against the corner 1 and the pivots z^e.
    if any(e > 0 for e in degs2):
        raise MathRejection("subbundle degree exceeds the peeled degree")
    left_clear = RatMat.identity(n, r)
    right_clear = RatMat.identity(n, r)
    for idx, e_deg in enumerate(degs2):
        entry = m_prime.entries[0][idx]
        if entry.is_zero():
            continue
        v, coeffs = _laurent_data(entry)
        pos: dict[int, CycNum] = {}
        neg: dict[int, CycNum] = {}
        for ci, c in enumerate(coeffs):
            if c.is_zero():
                continue
            e = v + ci
            (pos if e >= 1 else neg)[e] = c
        if pos:
            p_poly = Poly(
                n,
                [
                    pos.get(e_deg + t, CycNum.zero(n))
                    for t in range(0, max(pos) - e_deg + 1)
                ],
            )
            left_clear = left_clear.with_entry(
                0, idx + 1, -RatFun.from_poly(p_poly)
            )
        if neg:
            lo = min(neg)
            q = RatFun.from_laurent(
                n, lo, [neg.get(e, CycNum.zero(n)) for e in range(lo, 1)]
            )
            right_clear = right_clear.with_entry(0, idx + 1, -q)
    block_l = _block_diag_one(l2)
    block_r = _block_diag_one(r2)
    # m_mat = block_l * left_clear^{-1} * Dfull * right_clear^{-1} * block_r
    # where left_clear/right_clear were built to satisfy
    # left_clear * (block_l^{-1} m_mat block_r^{-1}) * right_clear = Dfull.
    check = left_clear * block_l.inv() * m_mat * block_r.inv() * right_clear
    degrees_full = [0] + list(degs2)
    for i in range(r):
        for j in range(r):
            e = check.entries[i][j]
            if i == j:
                unit = laurent_is_unit(e)
                if unit is None or unit[1] != degrees_full[i] or not unit[0].is_one():
                    raise MathRejection("clearing did not reach the diagonal form")
            elif not e.is_zero():
                raise MathRejection("clearing left a nonzero off-diagonal entry")
    # T = z^shift L_h H ; H z^{-d1} = U^{-1} m_mat V
    # m_mat = block_l left_clear^{-1} Dfull right_clear^{-1} block_r
    l_total = l_h * u_mat.inv() * block_l * left_clear.inv()
    r_total = right_clear.inv() * block_r * v_mat
    degrees = [d + d1 + shift for d in degrees_full]
    return l_total, degrees, r_total


def _block_diag_one(m: RatMat) -> RatMat:
    n = m.n
    size = m.rows + 1
    zero, one = RatFun.zero(n), RatFun.one(n)
    rows = [[one] + [zero] * (size - 1)]
    for i in range(m.rows):
        rows.append([zero] + list(m.entries[i]))
    return RatMat(rows)


def birkhoff_factor(cocycle: TransitionCocycle) -> BirkhoffFactorization:
    """Exact factorization T = U_plus * diag(z^d) * U_minus, degrees sorted."""
    l_mat, degrees, r_mat = _birkhoff_core(cocycle.transition)
    fact = BirkhoffFactorization(l_mat, tuple(degrees), r_mat)
    if not fact.residual_is_zero(cocycle):
        raise MathRejection("factorization residual is nonzero")
    if not fact.factors_in_rings():
        raise MathRejection("factorization factors left their rings")
    return fact


def splitting_type(cocycle: TransitionCocycle) -> tuple[int, ...]:
    return birkhoff_factor(cocycle).degrees


def hn_filtration(cocycle: TransitionCocycle, factorization: Optional[BirkhoffFactorization] = None) -> HNFiltration:
    """Filtration by descending splitting degree, with chart-0 frame bases."""
    fact = factorization if factorization is not None else birkhoff_factor(cocycle)
    slopes: list[int] = []
    mults: list[int] = []
    for d in fact.degrees:
        if slopes and slopes[-1] == d:
            mults[-1] += 1
        else:
            slopes.append(d)
            mults.append(1)
    bases = []
    total = 0
    for m in mults:
        total += m
        bases.append(fact.u_plus.submatrix(range(cocycle.rank), range(total)))
    return HNFiltration(tuple(slopes), tuple(mults), tuple(bases))


# ---------------------------------------------------------------------------
# Global sections


def _compressed(cocycle: TransitionCocycle) -> tuple[RatMat, RatMat, int]:
    """Return (T_h, L, shift) with T = z^shift * L * T_h, T_h compressed poly."""
    T = cocycle.transition
    n = T.n
    shift = min(
        e.laurent_bounds()[0] for row in T.entries for e in row if not e.is_zero()
    )
    z_neg = RatFun.monomial(CycNum.one(n), -shift)
    poly_rows = [[(e * z_neg).as_poly() for e in row] for row in T.entries]
    l_h, h_rows = _left_hermite(poly_rows)
    return _poly_matrix_to_ratmat(h_rows), l_h, shift


def h0_dimension(cocycle: TransitionCocycle, m: int = 0) -> int:
    """dim H^0 of E x O(m), by direct exact linear solve."""
    t_h, _, shift = _compressed(cocycle)
    space = _SectionSpace(t_h, m + shift)
    return space.dim()


def h0_profile(cocycle: TransitionCocycle, m_lo: int, m_hi: int) -> dict[int, int]:
    """dim H^0(E x O(m)) for every m in [m_lo, m_hi], via the twist ladder."""
    if m_lo > m_hi:
        raise MalformedInput("empty twist range")
    t_h, _, shift = _compressed(cocycle)
    space = _SectionSpace(t_h, m_hi + shift)
    out = {m_hi: space.dim()}
    for m in range(m_hi - 1, m_lo - 1, -1):
        space.step_down()
        out[m] = space.dim()
    return out


def section_basis(cocycle: TransitionCocycle, m: int = 0) -> list[tuple[list[Poly], list[Poly]]]:
    """Basis of sections of E x O(m) as pairs (s0 in z, s1 in w).

    The pairs satisfy s0(z) = T(z) z^m s1(1/z) exactly, in the original
    trivialization of the cocycle.
    """
    t_h, l_h, shift = _compressed(cocycle)
    space = _SectionSpace(t_h, m + shift)
    pairs = space.section_pairs()
    out = []
    for s0_h, s1 in pairs:
        s0_vec = l_h.mul_vector([RatFun.from_poly(p) for p in s0_h])
        s0 = [f.as_poly() for f in s0_vec]
        out.append((s0, s1))
    return out
