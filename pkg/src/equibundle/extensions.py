"""Finite subgroups of PGL(2, C) and the central-extension dichotomy.

A projective group is stored as sign-normalized coset representatives of its
preimage in SL(2, C).  The preimage is the central extension of the group by
{+-I}; whether that extension splits is decided by brute-force search over
sign assignments on generator lifts, which also produces the splitting
homomorphism when one exists.
"""

from __future__ import annotations

from typing import Optional, Sequence

from .errors import MalformedInput, MathRejection
from .matgroup import (
    DEFAULT_CLOSURE_CAP,
    FiniteMatrixGroup,
    Representation,
    SL2Elem,
    closure_tables,
    generate_group,
)

__all__ = [
    "PGLGroup",
    "SplittingHom",
    "pgl_group",
    "preimage_group",
    "extension_splits",
    "odd_twist_valid",
]


def sign_normalize(g: SL2Elem) -> SL2Elem:
    """Canonical representative of {g, -g}: first nonzero numerator positive."""
    for c in (g.a, g.b, g.c, g.d):
        for v in c.num:
            if v > 0:
                return g
            if v < 0:
                return -g
    raise MalformedInput("zero matrix cannot represent a projective element")


class PGLGroup:
    """A finite subgroup of PGL(2, C) with coset-representative tables.

    Exposes the same tabular interface as FiniteMatrixGroup (mul, inv, words,
    conjugacy classes), so representations and characters work over it
    unchanged.  The preimage attribute is the index-2 central extension
    inside SL(2, C), which always contains -I.
    """

    def __init__(self, generator_reps: Sequence[SL2Elem], cap: int = DEFAULT_CLOSURE_CAP):
        gens = [sign_normalize(g) for g in generator_reps]
        elements, mul_table, gen_indices, parent, last_gen = closure_tables(
            gens, cap, normalize=sign_normalize
        )
        self.elements = tuple(elements)
        self.n = elements[0].n
        self.order = len(elements)
        self.mul_table = tuple(tuple(row) for row in mul_table)
        self.generator_indices = tuple(gen_indices)
        self.generator_reps = tuple(elements[i] for i in gen_indices)
        self.parent = tuple(parent)
        self.last_gen = tuple(last_gen)
        self.index = {e.key(): i for i, e in enumerate(self.elements)}
        self.inverse_table = tuple(
            next(j for j in range(self.order) if self.mul_table[i][j] == 0)
            for i in range(self.order)
        )
        self.conjugacy_classes = self._build_classes()
        self.class_of = [0] * self.order
        for ci, members in enumerate(self.conjugacy_classes):
            for m in members:
                self.class_of[m] = ci
        self.class_reps = tuple(members[0] for members in self.conjugacy_classes)
        minus = -SL2Elem.identity(self.n)
        self.preimage = generate_group(list(self.generator_reps) + [minus], cap=cap)
        if self.preimage.order != 2 * self.order:
            raise MathRejection(
                f"preimage has order {self.preimage.order}, expected {2 * self.order}"
            )
        self._splitting_cache: tuple[bool, Optional[SplittingHom]] = (False, None)

    def _build_classes(self) -> tuple[tuple[int, ...], ...]:
        seen = [False] * self.order
        classes: list[tuple[int, ...]] = []
        for i in range(self.order):
            if seen[i]:
                continue
            orbit = set()
            for g in range(self.order):
                orbit.add(self.mul_table[g][self.mul_table[i][self.inverse_table[g]]])
            members = tuple(sorted(orbit))
            for m in members:
                seen[m] = True
            classes.append(members)
        classes.sort(
            key=lambda ms: (len(ms), self.elements[ms[0]].trace().sort_key(), ms[0])
        )
        return tuple(classes)

    # -- tabular interface shared with FiniteMatrixGroup ----------------

    def mul(self, i: int, j: int) -> int:
        return self.mul_table[i][j]

    def inv(self, i: int) -> int:
        return self.inverse_table[i]

    def element_index(self, g: SL2Elem) -> int:
        try:
            return self.index[sign_normalize(g).key()]
        except KeyError:
            raise MalformedInput("element does not belong to the group") from None

    coset_index = element_index

    def word(self, i: int) -> tuple[int, ...]:
        out: list[int] = []
        while i != 0:
            out.append(self.last_gen[i])
            i = self.parent[i]
        return tuple(reversed(out))

    def element_order(self, i: int) -> int:
        order = 1
        x = i
        while x != 0:
            x = self.mul(x, i)
            order += 1
        return order

    def minus_identity_index(self) -> Optional[int]:
        return None

    def splitting(self) -> Optional[SplittingHom]:
        cached, value = self._splitting_cache
        if not cached:
            value = extension_splits(self)
            self._splitting_cache = (True, value)
        return value

    def __len__(self) -> int:
        return self.order

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PGLGroup):
            return NotImplemented
        return self.elements == other.elements

    def __repr__(self) -> str:
        return f"PGLGroup(order={self.order}, modulus={self.n})"


def pgl_group(generator_reps: Sequence[SL2Elem], cap: int = DEFAULT_CLOSURE_CAP) -> PGLGroup:
    return PGLGroup(generator_reps, cap=cap)


def preimage_group(h: PGLGroup) -> FiniteMatrixGroup:
    """The full preimage in SL(2, C): order 2|H|, containing -I."""
    return h.preimage


class SplittingHom:
    """A homomorphic system of lifts H -> SL(2, C) avoiding -I."""

    def __init__(self, group: PGLGroup, gen_lifts: Sequence[SL2Elem]):
        if len(gen_lifts) != len(group.generator_indices):
            raise MalformedInput("one lift per generator required")
        self.group = group
        self.gen_lifts = tuple(gen_lifts)
        self.lifts = self._extend()

    def _extend(self) -> tuple[SL2Elem, ...]:
        group = self.group
        lifts: list[Optional[SL2Elem]] = [None] * group.order
        lifts[0] = SL2Elem.identity(group.n)
        for i in range(1, group.order):
            prev = lifts[group.parent[i]]
            assert prev is not None
            lifts[i] = prev * self.gen_lifts[group.last_gen[i]]
        return tuple(lifts)  # type: ignore[arg-type]

    def lift_of(self, group: PGLGroup, idx: int) -> SL2Elem:
        if group is not self.group and group.elements != self.group.elements:
            raise MalformedInput("splitting belongs to a different group")
        return self.lifts[idx]

    def is_homomorphism(self) -> bool:
        group = self.group
        for i in range(group.order):
            li = self.lifts[i]
            for j in range(group.order):
                if li * self.lifts[j] != self.lifts[group.mul(i, j)]:
                    return False
        return True

    def covers_identity(self) -> bool:
        group = self.group
        return all(
            sign_normalize(self.lifts[i]) == group.elements[i]
            for i in range(group.order)
        )

    def image_group(self, cap: int = DEFAULT_CLOSURE_CAP) -> FiniteMatrixGroup:
        """The subgroup gamma(H) of SL(2, C), isomorphic to H."""
        g = generate_group(list(self.gen_lifts), cap=cap)
        if g.order != self.group.order:
            raise MathRejection("splitting image has wrong order")
        return g

    def __repr__(self) -> str:
        return f"SplittingHom(order={self.group.order})"


def extension_splits(h: PGLGroup) -> Optional[SplittingHom]:
    """Search all sign assignments on generator lifts for a splitting.

    Any splitting restricts to such an assignment, and an assignment that
    extends multiplicatively over the whole element table is a splitting,
    so the search is sound and complete.  Deterministic order: plus signs
    first, so the returned witness is reproducible.
    """
    gens = h.generator_reps
    k = len(gens)
    for mask in range(1 << k):
        lifts = [
            gens[t] if not (mask >> t) & 1 else -gens[t] for t in range(k)
        ]
        candidate = SplittingHom(h, lifts)
        if candidate.is_homomorphism():
            return candidate
    return None


def odd_twist_valid(rep: Representation) -> bool:
    """True iff the central element -I acts as minus the identity."""
    return rep.is_odd_twist()
