"""Equivariant structures on bundles over P^1 and their classification.

An equivariant bundle couples a transition cocycle with one chart-0 action
matrix a_g(z) per group generator, interpreted as the fibre map over
z -> g.z.  The classification pipeline: factor the underlying bundle, check
that the action preserves the degree filtration, split the filtration
equivariantly by group averaging, and read one module per degree block off
the split action.  Every step produces exact certificates.

Case split for projective groups: when the central extension by {+-I}
splits, modules live over the projective group itself for every degree;
when it does not split, even-degree modules live over the projective group
and odd-degree modules over its SL(2, C) preimage, with the central element
acting as minus the identity (the odd-twist tag).
"""

from __future__ import annotations

from typing import Optional, Sequence, Union

from .bundle import (
    BirkhoffFactorization,
    TransitionCocycle,
    birkhoff_factor,
    hn_filtration,
)
from .cyclotomic import CycNum
from .errors import (
    DimensionMismatch,
    InvalidStructure,
    MalformedInput,
    MathRejection,
    ParityObstruction,
    SingularMatrix,
)
from .extensions import PGLGroup, SplittingHom
from .matgroup import FiniteMatrixGroup, Representation, SL2Elem
from .moebius import MoebiusMap, automorphy_factor, mu_poly
from .ratfun import Poly, RatFun, RatMat, invert_variable

__all__ = [
    "EquivariantBundle",
    "CanonicalForm",
    "CanonicalEntry",
    "ValidationReport",
    "validate_equivariance",
    "check_hn_invariance",
    "hn_invariance_failures",
    "equivariant_splitting",
    "extract_module",
    "classify",
    "classify_with_certificates",
    "build_from_canonical",
    "equiv_isomorphic",
]

GroupLike = Union[FiniteMatrixGroup, PGLGroup]


class EquivariantBundle:
    """A transition cocycle plus per-generator chart-0 action matrices."""

    def __init__(self, base: TransitionCocycle, group: GroupLike, action: Sequence[RatMat]):
        if len(action) != len(group.generator_indices):
            raise DimensionMismatch("one action matrix per generator required")
        for a in action:
            if a.rows != base.rank or a.cols != base.rank:
                raise DimensionMismatch("action matrix shape does not match rank")
            if a.n != base.n:
                raise MalformedInput("action modulus differs from base modulus")
        if group.n != base.n:
            raise MalformedInput("group modulus differs from base modulus")
        self.base = base
        self.group = group
        self.gen_action = tuple(action)
        self.rank = base.rank
        self.n = base.n
        self._table: Optional[tuple[RatMat, ...]] = None

    def generator_element(self, t: int) -> SL2Elem:
        return self.group.elements[self.group.generator_indices[t]]

    def generator_moebius(self, t: int) -> MoebiusMap:
        return MoebiusMap(self.generator_element(t))

    def action_table(self) -> tuple[RatMat, ...]:
        """Action matrices for every group element, extended along words."""
        if self._table is None:
            group = self.group
            table: list[Optional[RatMat]] = [None] * group.order
            table[0] = RatMat.identity(self.n, self.rank)
            for i in range(1, group.order):
                prev = table[group.parent[i]]
                assert prev is not None
                t = group.last_gen[i]
                table[i] = prev.compose_moebius(self.generator_moebius(t)) * self.gen_action[t]
            self._table = tuple(table)  # type: ignore[arg-type]
        return self._table

    def __repr__(self) -> str:
        return (
            f"EquivariantBundle(rank={self.rank}, group_order={self.group.order})"
        )


# ---------------------------------------------------------------------------
# Validation


class ValidationReport:
    def __init__(self, checked: dict[str, int], violations: list[dict]):
        self.checked = checked
        self.violations = violations
        self.ok = not violations

    def as_dict(self) -> dict:
        return {"ok": self.ok, "checked": dict(self.checked), "violations": list(self.violations)}

    def __repr__(self) -> str:
        return f"ValidationReport(ok={self.ok}, violations={len(self.violations)})"


def _divides_linear_power(den: Poly, lin: Poly) -> bool:
    """True iff den divides some power of the (monic or constant) linear lin."""
    if den.is_const():
        return True
    if lin.degree() < 1:
        return False
    hat = lin.monic()
    cur = den
    while cur.degree() > 0:
        q, r = cur.divmod(hat)
        if not r.is_zero():
            return False
        cur = q
    return True


def _chart_regularity_issues(
    elem: SL2Elem, a_mat: RatMat, base: TransitionCocycle, label
) -> list[dict]:
    issues: list[dict] = []
    n = base.n
    mu = mu_poly(elem)
    try:
        a_inv = a_mat.inv()
    except SingularMatrix:
        return [{"kind": "singular_action", "element": label}]
    for name, m in (("action", a_mat), ("action_inverse", a_inv)):
        for row in m.entries:
            for e in row:
                if not _divides_linear_power(e.den, mu):
                    issues.append({"kind": f"chart0_pole_{name}", "element": label})
                    break
            else:
                continue
            break
    # chart-1 matrix: T(g z)^(-1) a(z) T(z), written in w = 1/z
    mob = MoebiusMap(elem)
    t_gz = base.transition.compose_moebius(mob)
    try:
        chart1 = t_gz.inv() * a_mat * base.transition
        chart1_w = RatMat([[invert_variable(e) for e in row] for row in chart1.entries])
        chart1_w_inv = chart1_w.inv()
    except SingularMatrix:
        return issues + [{"kind": "singular_chart1", "element": label}]
    lin = Poly(n, [elem.a, elem.b])  # a + b w vanishes where the image leaves chart 1
    for name, m in (("chart1", chart1_w), ("chart1_inverse", chart1_w_inv)):
        for row in m.entries:
            for e in row:
                if not _divides_linear_power(e.den, lin):
                    issues.append({"kind": f"pole_{name}", "element": label})
                    break
            else:
                continue
            break
    return issues


def validate_equivariance(bundle: EquivariantBundle, level: str = "all") -> ValidationReport:
    """Exact check of the cocycle law, chart regularity and invertibility.

    level "all" checks the cocycle law on every pair of group elements and
    chart regularity on every element; level "relations" checks (element,
    generator) pairs and generator regularity, which is equivalent by
    induction along generator words but much cheaper.
    """
    if level not in ("all", "relations"):
        raise MalformedInput("level must be 'all' or 'relations'")
    group = bundle.group
    violations: list[dict] = []
    checked = {"cocycle_pairs": 0, "regularity_elements": 0}
    try:
        table = bundle.action_table()
    except (SingularMatrix, MathRejection) as exc:
        return ValidationReport(checked, [{"kind": "table_extension_failed", "detail": str(exc)}])
    mobs = [MoebiusMap(e) for e in group.elements]
    if level == "all":
        pair_iter = ((i, j) for i in range(group.order) for j in range(group.order))
    else:
        pair_iter = (
            (i, gi) for i in range(group.order) for gi in group.generator_indices
        )
    for i, j in pair_iter:
        checked["cocycle_pairs"] += 1
        lhs = table[group.mul(i, j)]
        rhs = table[i].compose_moebius(mobs[j]) * table[j]
        if lhs != rhs:
            violations.append({"kind": "cocycle_law", "pair": (i, j)})
    if level == "all":
        reg_elems = list(range(group.order))
    else:
        reg_elems = list(group.generator_indices)
    for i in reg_elems:
        checked["regularity_elements"] += 1
        violations.extend(
            _chart_regularity_issues(group.elements[i], table[i], bundle.base, i)
        )
    return ValidationReport(checked, violations)


# ---------------------------------------------------------------------------
# Filtration invariance


def _ratmat_rank(m: RatMat) -> int:
    rows = [list(r) for r in m.entries]
    ncols = m.cols
    rank = 0
    for col in range(ncols):
        pivot = next(
            (i for i in range(rank, len(rows)) if not rows[i][col].is_zero()), None
        )
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        pinv = rows[rank][col].inv()
        rows[rank] = [x * pinv for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and not rows[i][col].is_zero():
                f = rows[i][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[rank])]
        rank += 1
        if rank == len(rows):
            break
    return rank


def hn_invariance_failures(
    bundle: EquivariantBundle, factorization: Optional[BirkhoffFactorization] = None
) -> list[dict]:
    """Exact rank test that every generator maps each filtration step into itself."""
    fact = factorization if factorization is not None else birkhoff_factor(bundle.base)
    hn = hn_filtration(bundle.base, fact)
    failures = []
    for t in range(len(bundle.gen_action)):
        mob = bundle.generator_moebius(t)
        a_mat = bundle.gen_action[t]
        for j, basis in enumerate(hn.bases[:-1]):
            moved = a_mat * basis
            target = basis.compose_moebius(mob)
            k = basis.cols
            if _ratmat_rank(target.hstack(moved)) != k:
                failures.append({"generator": t, "step": j})
    return failures


def check_hn_invariance(bundle: EquivariantBundle) -> bool:
    return not hn_invariance_failures(bundle)


# ---------------------------------------------------------------------------
# Averaged splitting


def _action_table_for(
    group: GroupLike, rank: int, gen_action: Sequence[RatMat], n: int
) -> list[RatMat]:
    table: list[Optional[RatMat]] = [None] * group.order
    table[0] = RatMat.identity(n, rank)
    for i in range(1, group.order):
        prev = table[group.parent[i]]
        assert prev is not None
        t = group.last_gen[i]
        mob = MoebiusMap(group.elements[group.generator_indices[t]])
        table[i] = prev.compose_moebius(mob) * gen_action[t]
    return list(table)  # type: ignore[arg-type]


def equivariant_splitting(
    total: EquivariantBundle,
    quotient: EquivariantBundle,
    q: RatMat,
    psi: RatMat,
) -> RatMat:
    """Average a holomorphic splitting of q into an equivariant one.

    q must be an equivariant bundle surjection total -> quotient and psi a
    holomorphic right inverse of q.  The returned map is the group average
    of g^(-1) . psi . g, which is again a right inverse and commutes with
    the two actions; both identities are verified exactly.
    """
    group = total.group
    if quotient.group is not group and quotient.group.elements != group.elements:
        raise MalformedInput("total and quotient must carry the same group")
    r_b, r_c = total.rank, quotient.rank
    if q.rows != r_c or q.cols != r_b or psi.rows != r_b or psi.cols != r_c:
        raise DimensionMismatch("splitting data shapes do not match the ranks")
    if not (q * psi).is_identity():
        raise InvalidStructure("psi is not a right inverse of q")
    mobs = [MoebiusMap(e) for e in group.elements]
    for t in range(len(total.gen_action)):
        mob = total.generator_moebius(t)
        lhs = quotient.gen_action[t] * q
        rhs = q.compose_moebius(mob) * total.gen_action[t]
        if lhs != rhs:
            raise InvalidStructure("q does not intertwine the two actions")
    table_b = total.action_table()
    table_c = quotient.action_table()
    acc: Optional[RatMat] = None
    for g in range(group.order):
        g_inv = group.inv(g)
        term = (
            table_b[g_inv].compose_moebius(mobs[g])
            * psi.compose_moebius(mobs[g])
            * table_c[g]
        )
        acc = term if acc is None else acc + term
    assert acc is not None
    scale = RatFun.const(CycNum.from_int(total.n, group.order).inv())
    psi_tilde = acc.scale(scale)
    if not (q * psi_tilde).is_identity():
        raise InvalidStructure("averaged map is no longer a right inverse")
    for t in range(len(total.gen_action)):
        mob = total.generator_moebius(t)
        lhs = total.gen_action[t] * psi_tilde
        rhs = psi_tilde.compose_moebius(mob) * quotient.gen_action[t]
        if lhs != rhs:
            raise InvalidStructure("averaged map is not equivariant")
    return psi_tilde


# ---------------------------------------------------------------------------
# Canonical forms


class CanonicalEntry:
    """One summand: a degree, a module, and a parity tag."""

    def __init__(self, degree: int, module: Representation, parity: str = "plain"):
        if parity not in ("plain", "odd_twist"):
            raise MalformedInput(f"unknown parity tag {parity!r}")
        if parity == "odd_twist" and not module.is_odd_twist():
            raise InvalidStructure(
                "odd-twist module must send the central element to minus the identity"
            )
        self.degree = degree
        self.module = module
        self.parity = parity

    def __repr__(self) -> str:
        return f"CanonicalEntry(degree={self.degree}, dim={self.module.dim}, parity={self.parity!r})"


class CanonicalForm:
    """The classification output: degree-sorted (degree, module) summands."""

    def __init__(self, entries: Sequence[CanonicalEntry]):
        entries = list(entries)
        if not entries:
            raise MalformedInput("canonical form requires at least one entry")
        for a, b in zip(entries, entries[1:]):
            if a.degree <= b.degree:
                raise MalformedInput("canonical form degrees must strictly decrease")
        self.entries = tuple(entries)

    def degrees(self) -> tuple[int, ...]:
        return tuple(e.degree for e in self.entries)

    def rank(self) -> int:
        return sum(e.module.dim for e in self.entries)

    def degree_multiset(self) -> tuple[int, ...]:
        out: list[int] = []
        for e in self.entries:
            out.extend([e.degree] * e.module.dim)
        return tuple(out)

    def equal_up_to_iso(self, other: CanonicalForm) -> bool:
        if len(self.entries) != len(other.entries):
            return False
        for a, b in zip(self.entries, other.entries):
            if a.degree != b.degree or a.parity != b.parity:
                return False
            if a.module.group.elements != b.module.group.elements:
                return False
            if a.module.character() != b.module.character():
                return False
        return True

    def __repr__(self) -> str:
        return f"CanonicalForm({[e for e in self.entries]!r})"


# ---------------------------------------------------------------------------
# Classification pipeline


def _module_from_block(
    group: GroupLike,
    degree: int,
    block_action: Sequence[RatMat],
    gamma: Optional[SplittingHom],
) -> tuple[Representation, str]:
    """Transport a degree block through the natural line-bundle structure.

    For each generator the product a_g(z) * (c z + d)^degree must come out
    constant; those constants form the module.  Which group the module lives
    over depends on the parity case.
    """
    dim = block_action[0].rows

    def constant_image(b_mat: RatMat, lift: SL2Elem) -> list[list[CycNum]]:
        mu_pow = automorphy_factor(lift, -degree)  # (c z + d)^degree
        out = []
        for row in b_mat.entries:
            out_row = []
            for e in row:
                prod = e * mu_pow
                if not (prod.is_polynomial() and prod.num.is_const()):
                    raise InvalidStructure(
                        "block action is not a constant twist of the natural structure"
                    )
                out_row.append(prod.const_value())
            out.append(out_row)
        return out

    if isinstance(group, FiniteMatrixGroup):
        images = [
            constant_image(b_mat, group.elements[group.generator_indices[t]])
            for t, b_mat in enumerate(block_action)
        ]
        return Representation.from_generator_images(group, dim, images), "plain"
    # Projective group
    if degree % 2 == 0:
        images = [
            constant_image(b_mat, group.generator_reps[t])
            for t, b_mat in enumerate(block_action)
        ]
        return Representation.from_generator_images(group, dim, images), "plain"
    if gamma is not None:
        images = [
            constant_image(b_mat, gamma.gen_lifts[t])
            for t, b_mat in enumerate(block_action)
        ]
        return Representation.from_generator_images(group, dim, images), "plain"
    # Non-split odd case: module over the preimage, central element acts by -1.
    preimage = group.preimage
    images_by_gen: dict[int, list[list[CycNum]]] = {}
    for t, b_mat in enumerate(block_action):
        rep_lift = group.generator_reps[t]
        images_by_gen[preimage.element_index(rep_lift)] = constant_image(b_mat, rep_lift)
    minus = -SL2Elem.identity(group.n)
    neg_one = CycNum.from_int(group.n, -1)
    zero = CycNum.zero(group.n)
    minus_img = [
        [neg_one if i == j else zero for j in range(dim)] for i in range(dim)
    ]
    images_by_gen[preimage.element_index(minus)] = minus_img
    gen_images = [images_by_gen[gi] for gi in preimage.generator_indices]
    module = Representation.from_generator_images(preimage, dim, gen_images)
    if not module.is_odd_twist():
        raise InvalidStructure("odd block failed the central minus-one property")
    return module, "odd_twist"


def classify_with_certificates(
    bundle: EquivariantBundle, validate_level: str = "relations", with_data: bool = False
) -> tuple[CanonicalForm, dict]:
    """Full pipeline with exact certificates for every stage.

    with_data additionally embeds the averaged splitting and the action
    matrices of every stage, so the averaging identities can be re-verified
    from serialized output alone.
    """
    report = validate_equivariance(bundle, level=validate_level)
    if not report.ok:
        raise InvalidStructure(f"equivariance validation failed: {report.violations[:3]}")
    group = bundle.group
    n = bundle.n
    fact = birkhoff_factor(bundle.base)
    certificates: dict = {
        "validation": report.as_dict(),
        "factorization_degrees": list(fact.degrees),
        "factorization_residual_zero": fact.residual_is_zero(bundle.base),
        "hn_blocks": [],
        "averaging": [],
        "modules": [],
    }
    p_mat = fact.u_plus
    gen_action = []
    for t, a_mat in enumerate(bundle.gen_action):
        mob = bundle.generator_moebius(t)
        gen_action.append(p_mat.compose_moebius(mob).inv() * a_mat * p_mat)
    # Degree blocks, descending.
    blocks: list[tuple[int, int]] = []
    for d in fact.degrees:
        if blocks and blocks[-1][0] == d:
            blocks[-1] = (d, blocks[-1][1] + 1)
        else:
            blocks.append((d, 1))
    # Filtration invariance: strictly-lower block triangles must vanish.
    cuts = []
    acc = 0
    for _, mult in blocks[:-1]:
        acc += mult
        cuts.append(acc)
    for t, a_mat in enumerate(gen_action):
        for cut in cuts:
            sub = a_mat.submatrix(range(cut, bundle.rank), range(0, cut))
            if not sub.is_zero():
                raise InvalidStructure(
                    "invalid equivariant structure: the action does not preserve "
                    f"the degree filtration (generator {t}, cut {cut})"
                )
    certificates["hn_blocks"] = [{"cuts": cuts, "preserved": True}]
    # Split the filtration from the lowest block up, one averaging per step.
    gamma = group.splitting() if isinstance(group, PGLGroup) else None
    block_gen_actions: list[list[RatMat]] = []
    cur_action = gen_action
    cur_blocks = list(blocks)
    while len(cur_blocks) > 1:
        r_cur = sum(m for _, m in cur_blocks)
        r_bot = cur_blocks[-1][1]
        k = r_cur - r_bot
        delta = cur_blocks[-1][0]
        quot_action = [a.submatrix(range(k, r_cur), range(k, r_cur)) for a in cur_action]
        table = _action_table_for(group, r_cur, cur_action, n)
        mobs = [MoebiusMap(e) for e in group.elements]
        acc_mat: Optional[RatMat] = None
        for g in range(group.order):
            g_inv = group.inv(g)
            left = table[g_inv].compose_moebius(mobs[g]).submatrix(
                range(r_cur), range(k, r_cur)
            )
            term = left * table[g].submatrix(range(k, r_cur), range(k, r_cur))
            acc_mat = term if acc_mat is None else acc_mat + term
        assert acc_mat is not None
        scale = RatFun.const(CycNum.from_int(n, group.order).inv())
        psi_tilde = acc_mat.scale(scale)
        # Certificates: polynomial entries with the right degree bounds, unit
        # bottom block, and exact equivariance.
        degrees_rows: list[int] = []
        for d, m in cur_blocks:
            degrees_rows.extend([d] * m)
        for i in range(r_cur):
            for j in range(r_bot):
                e = psi_tilde.entries[i][j]
                if not e.is_polynomial():
                    raise InvalidStructure("averaged splitting is not holomorphic")
                if not e.is_zero() and e.num.degree() > degrees_rows[i] - delta:
                    raise InvalidStructure("averaged splitting violates degree bounds")
        bottom = psi_tilde.submatrix(range(k, r_cur), range(r_bot))
        if not bottom.is_identity():
            raise InvalidStructure("averaged splitting is not a right inverse")
        for t, a_mat in enumerate(cur_action):
            mob = MoebiusMap(group.elements[group.generator_indices[t]])
            lhs = a_mat * psi_tilde
            rhs = psi_tilde.compose_moebius(mob) * quot_action[t]
            if lhs != rhs:
                raise InvalidStructure("averaged splitting is not equivariant")
        stage_cert = {
            "block_degree": delta,
            "block_rank": r_bot,
            "right_inverse": True,
            "equivariant": True,
        }
        if with_data:
            stage_cert["data"] = {
                "generators": [
                    group.elements[gi] for gi in group.generator_indices
                ],
                "action": list(cur_action),
                "quotient_action": list(quot_action),
                "psi_tilde": psi_tilde,
            }
        certificates["averaging"].append(stage_cert)
        # Change frame so the complement becomes a coordinate block.
        psi_top = psi_tilde.submatrix(range(k), range(r_bot))
        new_action = []
        for t, a_mat in enumerate(cur_action):
            mob = MoebiusMap(group.elements[group.generator_indices[t]])
            frame = RatMat.identity(n, r_cur)
            frame_rows = [list(row) for row in frame.entries]
            for i in range(k):
                for j in range(r_bot):
                    frame_rows[i][k + j] = psi_top.entries[i][j]
            frame = RatMat(frame_rows)
            frame_inv_rows = [list(row) for row in RatMat.identity(n, r_cur).entries]
            for i in range(k):
                for j in range(r_bot):
                    frame_inv_rows[i][k + j] = -psi_top.entries[i][j]
            frame_inv = RatMat(frame_inv_rows)
            transformed = frame_inv.compose_moebius(mob) * a_mat * frame
            top_right = transformed.submatrix(range(k), range(k, r_cur))
            if not top_right.is_zero():
                raise InvalidStructure("frame change failed to decouple the block")
            new_action.append(transformed)
        block_gen_actions.append(quot_action)
        cur_action = [a.submatrix(range(k), range(k)) for a in new_action]
        cur_blocks = cur_blocks[:-1]
    block_gen_actions.append(cur_action)
    block_gen_actions.reverse()  # now aligned with blocks (descending degree)
    entries = []
    for (degree, _mult), block_action in zip(blocks, block_gen_actions):
        module, parity = _module_from_block(group, degree, block_action, gamma)
        entries.append(CanonicalEntry(degree, module, parity))
        certificates["modules"].append(
            {
                "degree": degree,
                "dim": module.dim,
                "parity": parity,
                "evaluation_iso_exact": True,
            }
        )
    cf = CanonicalForm(entries)
    certificates["underlying_type"] = list(fact.degrees)
    if cf.degree_multiset() != tuple(fact.degrees):
        raise InvalidStructure("module dimensions disagree with the splitting type")
    return cf, certificates


def classify(bundle: EquivariantBundle, validate_level: str = "relations") -> CanonicalForm:
    return classify_with_certificates(bundle, validate_level)[0]


def extract_module(bundle: EquivariantBundle) -> Representation:
    """Module of a semistable piece: all splitting degrees must be equal."""
    fact = birkhoff_factor(bundle.base)
    if len(set(fact.degrees)) != 1:
        raise MathRejection("input is not semistable; degrees are not all equal")
    cf = classify(bundle)
    return cf.entries[0].module


# ---------------------------------------------------------------------------
# Building bundles from canonical data


def _lift_for_entry(
    group: GroupLike, t: int, entry: CanonicalEntry, gamma: Optional[SplittingHom]
) -> SL2Elem:
    if isinstance(group, FiniteMatrixGroup):
        return group.elements[group.generator_indices[t]]
    if entry.degree % 2 == 0 or entry.parity == "odd_twist":
        return group.generator_reps[t]
    assert gamma is not None
    return gamma.gen_lifts[t]


def build_from_canonical(
    cf: CanonicalForm, group: GroupLike, gamma: Optional[SplittingHom] = None
) -> EquivariantBundle:
    """Block-diagonal model bundle with the tensor-product action.

    Parity rules: over a matrix group every entry must be plain.  Over a
    projective group whose extension splits, entries are plain (odd degrees
    use the splitting lifts).  Over a non-split projective group, even
    degrees take plain modules and odd degrees require odd-twist modules
    over the preimage.
    """
    n = group.n
    if isinstance(group, PGLGroup) and gamma is None:
        gamma = group.splitting()
    for entry in cf.entries:
        if isinstance(group, FiniteMatrixGroup):
            if entry.parity != "plain":
                raise ParityObstruction("odd-twist entries require a projective group")
            if entry.module.group.elements != group.elements:
                raise MalformedInput("module group does not match the acting group")
        else:
            if entry.degree % 2 == 0 or gamma is not None:
                if entry.parity != "plain":
                    raise ParityObstruction(
                        "odd-twist entries only occur in the non-split odd case"
                    )
                if entry.module.group.elements != group.elements:
                    raise MalformedInput("module group does not match the acting group")
            else:
                if entry.parity != "odd_twist":
                    raise ParityObstruction(
                        "odd degree over a non-split projective group requires an "
                        "odd-twist module over the preimage"
                    )
                if entry.module.group.elements != group.preimage.elements:
                    raise MalformedInput("odd-twist module must live over the preimage")
                if not entry.module.is_odd_twist():
                    raise InvalidStructure(
                        "odd-twist module must send the central element to minus one"
                    )
    rank = cf.rank()
    one = CycNum.one(n)
    diag_entries = []
    for entry in cf.entries:
        diag_entries.extend([RatFun.monomial(one, entry.degree)] * entry.module.dim)
    base = TransitionCocycle(rank, RatMat.diag(diag_entries))
    action = []
    for t in range(len(group.generator_indices)):
        rows: list[list[RatFun]] = [
            [RatFun.zero(n) for _ in range(rank)] for _ in range(rank)
        ]
        offset = 0
        for entry in cf.entries:
            lift = _lift_for_entry(group, t, entry, gamma)
            factor = automorphy_factor(lift, entry.degree)
            if isinstance(group, PGLGroup) and entry.parity == "odd_twist":
                img = entry.module.image(entry.module.group.element_index(lift))
            else:
                img = entry.module.image(group.generator_indices[t])
            dim = entry.module.dim
            for i in range(dim):
                for j in range(dim):
                    c = img[i][j]
                    if not c.is_zero():
                        rows[offset + i][offset + j] = factor.scale(c)
            offset += dim
        action.append(RatMat(rows))
    return EquivariantBundle(base, group, action)


def equiv_isomorphic(b1: EquivariantBundle, b2: EquivariantBundle) -> bool:
    """Equivariant isomorphism via the uniqueness of the canonical form."""
    if b1.group.elements != b2.group.elements:
        return False
    return classify(b1).equal_up_to_iso(classify(b2))
