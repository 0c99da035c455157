"""Exact class-function algebra over the built-in groups.

Character tables are hard-coded data, re-verified on every load against the
Schur orthogonality relations and the degree-sum identity, so a corrupted
entry cannot go unnoticed.  Class functions are indexed by the canonical
conjugacy-class order from the groups module (lowest-index representatives).

The two projective classes of D4 are handled through its order-16 cover:
the non-trivial class corresponds to the irreducible characters of D8 on
which the central element z^4 acts as -1.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Sequence

from .cyclo import CycloNum, I, ONE, SQRT2, ZERO
from .groups import (
    GroupHom,
    GroupTable,
    builtin_group,
    conjugacy_classes,
    verify_hom,
)


class GroupMismatch(Exception):
    pass


class NotACharacter(Exception):
    pass


class NotClassConstant(Exception):
    pass


class NotDescendable(Exception):
    pass


class TableVerificationFailed(Exception):
    pass


class ProjectiveClassTag(Enum):
    """The two multiplier classes of D4 (H^2 is Z_2)."""

    TRIVIAL = "trivial"
    NONTRIVIAL = "non-trivial"


@dataclass(frozen=True)
class ClassFunction:
    """A map from the conjugacy classes of a group into Q(zeta_8)."""

    group: GroupTable
    values: tuple[CycloNum, ...]

    def __post_init__(self):
        k = len(conjugacy_classes(self.group))
        if len(self.values) != k:
            raise ValueError(f"expected {k} class values, got {len(self.values)}")

    def at_class(self, i: int) -> CycloNum:
        return self.values[i]

    def at_element(self, a: int) -> CycloNum:
        return self.values[conjugacy_classes(self.group).class_of[a]]

    def dimension(self) -> int:
        """Value at the identity class, for characters a positive integer."""
        return self.values[0].as_int()

    def __add__(self, other: "ClassFunction") -> "ClassFunction":
        if other.group != self.group:
            raise GroupMismatch(f"{self.group.name} vs {other.group.name}")
        return ClassFunction(self.group, tuple(a + b for a, b in zip(self.values, other.values)))

    def __rmul__(self, n: int) -> "ClassFunction":
        return ClassFunction(self.group, tuple(CycloNum(n) * v for v in self.values))

    def __str__(self) -> str:
        return "(" + ", ".join(str(v) for v in self.values) + ")"


@dataclass(frozen=True)
class CharTable:
    group: GroupTable
    labels: tuple[str, ...]
    irreducibles: tuple[ClassFunction, ...]

    def by_label(self, label: str) -> ClassFunction:
        return self.irreducibles[self.labels.index(label)]

    def degrees(self) -> tuple[int, ...]:
        return tuple(chi.dimension() for chi in self.irreducibles)


def trivial_character(g: GroupTable) -> ClassFunction:
    return ClassFunction(g, tuple(ONE for _ in conjugacy_classes(g).classes))


def regular_character(g: GroupTable) -> ClassFunction:
    """|G| at the identity class, 0 elsewhere."""
    k = len(conjugacy_classes(g))
    return ClassFunction(g, (CycloNum(g.order),) + tuple(ZERO for _ in range(k - 1)))


def inner_product(a: ClassFunction, b: ClassFunction) -> CycloNum:
    """Class-size-weighted sum (1/|G|) sum_K |K| conj(a(K)) b(K)."""
    if a.group != b.group:
        raise GroupMismatch(f"{a.group.name} vs {b.group.name}")
    sizes = conjugacy_classes(a.group).sizes
    total = ZERO
    for size, x, y in zip(sizes, a.values, b.values):
        total = total + CycloNum(size) * x.conjugate() * y
    return total * CycloNum(Fraction(1, a.group.order))


def decompose(f: ClassFunction, t: CharTable) -> tuple[int, ...]:
    """Multiplicities of the irreducibles of t in f; exact integers or bust."""
    if f.group != t.group:
        raise GroupMismatch(f"{f.group.name} vs {t.group.name}")
    mults = []
    for label, chi in zip(t.labels, t.irreducibles):
        m = inner_product(chi, f)
        if not m.is_integer() or m.as_int() < 0:
            raise NotACharacter(f"multiplicity of {label} is {m}, not a non-negative integer")
        mults.append(m.as_int())
    return tuple(mults)


def conj_character(u: ClassFunction) -> ClassFunction:
    """Character of the conjugation action X -> U X U^dag, pointwise |u|^2."""
    d = u.values[0]
    if not d.is_integer() or d.as_int() <= 0:
        raise NotACharacter(f"value at identity is {d}, not a positive integer")
    return ClassFunction(u.group, tuple(v.abs_sq() for v in u.values))


def tensor(a: ClassFunction, b: ClassFunction) -> ClassFunction:
    """Pointwise product (character of the tensor product representation)."""
    if a.group != b.group:
        raise GroupMismatch(f"{a.group.name} vs {b.group.name}")
    return ClassFunction(a.group, tuple(x * y for x, y in zip(a.values, b.values)))


def pullback(f: ClassFunction, proj: GroupHom) -> ClassFunction:
    """Compose f with a surjective homomorphism: g -> f(proj(g))."""
    if f.group != proj.target:
        raise GroupMismatch(f"class function lives on {f.group.name}, hom targets {proj.target.name}")
    if not verify_hom(proj):
        raise ValueError("pullback requires a verified homomorphism")
    if not proj.is_surjective():
        raise ValueError("pullback requires a surjective homomorphism")
    cc_src = conjugacy_classes(proj.source)
    values = []
    for cl in cc_src.classes:
        member_values = {f.at_element(proj(x)) for x in cl}
        if len(member_values) != 1:
            raise NotClassConstant(
                f"pulled-back function is not constant on the class of {proj.source.word(cl[0])}"
            )
        values.append(member_values.pop())
    return ClassFunction(proj.source, tuple(values))


# ----------------------------------------------------------------------
# hard-coded character tables (verified on every load)

_MI = -I
_MSQRT2 = -SQRT2
_TWO_I = CycloNum(0, 0, 2, 0)
_M_TWO_I = CycloNum(0, 0, -2, 0)


def _pauli_linear_row(p: int, q: int, r: int) -> tuple:
    def sgn(k: int) -> int:
        return -1 if k % 2 else 1

    # class representatives: I, iI, -I, -iI, X, iX, Y, iY, Z, iZ
    return (
        1, sgn(p), 1, sgn(p),
        sgn(q), sgn(p + q),
        sgn(p + q + r), sgn(q + r),
        sgn(r), sgn(p + r),
    )


_RAW_TABLES: dict[str, tuple[tuple[str, ...], tuple[tuple, ...]]] = {
    # at representatives (e, a, b, ab)
    "K4": (
        ("chi1", "chi2", "chi3", "chi4"),
        (
            (1, 1, 1, 1),
            (1, -1, 1, -1),
            (1, 1, -1, -1),
            (1, -1, -1, 1),
        ),
    ),
    # at representatives (e, t, t2, t3); chi_{k+1}(t^j) = i^(k*j)
    "Z4": (
        ("chi1", "chi2", "chi3", "chi4"),
        (
            (1, 1, 1, 1),
            (1, I, -1, _MI),
            (1, -1, 1, -1),
            (1, _MI, -1, I),
        ),
    ),
    # at representatives (e, r, r2, s, rs)
    "D4": (
        ("chi1", "chi2", "chi3", "chi4", "chi5"),
        (
            (1, 1, 1, 1, 1),
            (1, 1, 1, -1, -1),
            (1, -1, 1, 1, -1),
            (1, -1, 1, -1, 1),
            (2, 0, -2, 0, 0),
        ),
    ),
    # at representatives (e, z, z2, z3, z4, h, zh)
    "D8": (
        ("chi1", "chi2", "chi3", "chi4", "chiE1", "chiE2", "chiE3"),
        (
            (1, 1, 1, 1, 1, 1, 1),
            (1, 1, 1, 1, 1, -1, -1),
            (1, -1, 1, -1, 1, 1, -1),
            (1, -1, 1, -1, 1, -1, 1),
            (2, SQRT2, 0, _MSQRT2, -2, 0, 0),
            (2, 0, -2, 0, 2, 0, 0),
            (2, _MSQRT2, 0, SQRT2, -2, 0, 0),
        ),
    ),
    # at representatives (I, iI, -I, -iI, X, iX, Y, iY, Z, iZ);
    # eight linear characters through the mod-<-I> quotient, then the
    # defining two-dimensional representation and its conjugate
    "Pauli1": (
        tuple(f"chi{k}" for k in range(1, 11)),
        (
            _pauli_linear_row(0, 0, 0),
            _pauli_linear_row(0, 0, 1),
            _pauli_linear_row(0, 1, 0),
            _pauli_linear_row(0, 1, 1),
            _pauli_linear_row(1, 0, 0),
            _pauli_linear_row(1, 0, 1),
            _pauli_linear_row(1, 1, 0),
            _pauli_linear_row(1, 1, 1),
            (2, _TWO_I, -2, _M_TWO_I, 0, 0, 0, 0, 0, 0),
            (2, _M_TWO_I, -2, _TWO_I, 0, 0, 0, 0, 0, 0),
        ),
    ),
}


def _as_cyclo(x) -> CycloNum:
    return x if isinstance(x, CycloNum) else CycloNum(x)


def char_table(g: GroupTable) -> CharTable:
    """The irreducible character table of a built-in group, verified."""
    if g.name not in _RAW_TABLES or g != builtin_group(g.name):
        raise ValueError(f"no built-in character table for {g!r}")
    labels, rows = _RAW_TABLES[g.name]
    cc = conjugacy_classes(g)
    irreducibles = tuple(
        ClassFunction(g, tuple(_as_cyclo(x) for x in row)) for row in rows
    )
    table = CharTable(group=g, labels=labels, irreducibles=irreducibles)
    _verify_table(table, cc.sizes)
    return table


def _verify_table(t: CharTable, sizes: Sequence[int]) -> None:
    g = t.group
    k = len(sizes)
    if len(t.irreducibles) != k:
        raise TableVerificationFailed(
            f"{g.name}: {len(t.irreducibles)} irreducibles for {k} classes"
        )
    for chi, label in zip(t.irreducibles, t.labels):
        d = chi.values[0]
        if not d.is_integer() or d.as_int() <= 0:
            raise TableVerificationFailed(f"{g.name}: degree of {label} is {d}")
    if sum(d * d for d in t.degrees()) != g.order:
        raise TableVerificationFailed(f"{g.name}: degree-sum identity fails")
    for i, a in enumerate(t.irreducibles):
        for j, b in enumerate(t.irreducibles):
            expected = ONE if i == j else ZERO
            if inner_product(a, b) != expected:
                raise TableVerificationFailed(
                    f"{g.name}: <{t.labels[i]},{t.labels[j]}> != {expected}"
                )
    for kk in range(k):
        for ll in range(k):
            total = ZERO
            for chi in t.irreducibles:
                total = total + chi.values[kk].conjugate() * chi.values[ll]
            expected = (
                CycloNum(Fraction(g.order, sizes[kk])) if kk == ll else ZERO
            )
            if total != expected:
                raise TableVerificationFailed(
                    f"{g.name}: column orthogonality fails at classes {kk},{ll}"
                )


# ----------------------------------------------------------------------
# the two projective classes of D4, via the order-16 cover

# lifts of the D4 class representatives (e, r, r2, s, rs) into D8
D8_LIFTS_OF_D4_REPS = (0, 1, 2, 8, 9)  # e, z, z2, h, zh


def projective_irreps_d4(tag: ProjectiveClassTag) -> tuple[tuple[str, ClassFunction], ...]:
    """Irreducible (projective) characters of D4 in the given multiplier class.

    Trivial class: the five ordinary irreducibles of D4.  Non-trivial class:
    the irreducibles of the cover D8 on which the central z^4 acts as -1,
    returned as D8 class functions (use push_to_quotient on their conjugation
    characters to land back on D4).
    """
    if tag is ProjectiveClassTag.TRIVIAL:
        t = char_table(builtin_group("D4"))
        return tuple(zip(t.labels, t.irreducibles))
    t = char_table(builtin_group("D8"))
    cc = conjugacy_classes(builtin_group("D8"))
    central_class = cc.class_of[4]  # element z4
    picked = []
    for label, chi in zip(t.labels, t.irreducibles):
        if chi.values[central_class] == -chi.values[0]:
            picked.append((label, chi))
    return tuple(picked)


def push_to_quotient(f: ClassFunction) -> ClassFunction:
    """Descend a z^4-invariant class function on D8 to D4 via the fixed lifts."""
    d8 = builtin_group("D8")
    if f.group != d8:
        raise GroupMismatch(f"expected a class function on D8, got {f.group.name}")
    z4 = 4
    for g in d8.elements():
        if f.at_element(d8.mul(z4, g)) != f.at_element(g):
            raise NotDescendable(
                f"value changes across the coset of {d8.word(g)}: not constant on <z4> cosets"
            )
    d4 = builtin_group("D4")
    return ClassFunction(d4, tuple(f.at_element(x) for x in D8_LIFTS_OF_D4_REPS))
