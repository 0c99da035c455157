"""Character tables, inner products, conjugation characters, pullbacks."""

import itertools
from fractions import Fraction

import pytest

from repcheck.characters import (
    ClassFunction,
    GroupMismatch,
    NotACharacter,
    NotDescendable,
    ProjectiveClassTag,
    TableVerificationFailed,
    _RAW_TABLES,
    char_table,
    conj_character,
    decompose,
    inner_product,
    projective_irreps_d4,
    pullback,
    push_to_quotient,
    regular_character,
    tensor,
    trivial_character,
)
from repcheck.cyclo import CycloNum, I, ONE, SQRT2, ZERO
from repcheck.groups import BUILTIN_NAMES, builtin_group, center, find_isomorphism, quotient

D4 = builtin_group("D4")
T4 = char_table(D4)


def cf(group, *ints):
    return ClassFunction(group, tuple(CycloNum(v) for v in ints))


@pytest.mark.parametrize("name", BUILTIN_NAMES)
def test_tables_load_and_verify(name):
    g = builtin_group(name)
    t = char_table(g)
    assert len(t.irreducibles) == len(t.labels)
    assert sum(d * d for d in t.degrees()) == g.order


@pytest.mark.parametrize("name", BUILTIN_NAMES)
def test_schur_row_orthonormality(name):
    t = char_table(builtin_group(name))
    for i, a in enumerate(t.irreducibles):
        for j, b in enumerate(t.irreducibles):
            assert inner_product(a, b) == (ONE if i == j else ZERO)


@pytest.mark.parametrize("name", BUILTIN_NAMES)
def test_schur_column_orthogonality(name):
    g = builtin_group(name)
    t = char_table(g)
    from repcheck.groups import conjugacy_classes

    sizes = conjugacy_classes(g).sizes
    k = len(sizes)
    for p in range(k):
        for q in range(k):
            total = ZERO
            for chi in t.irreducibles:
                total = total + chi.values[p].conjugate() * chi.values[q]
            expected = CycloNum(Fraction(g.order, sizes[p])) if p == q else ZERO
            assert total == expected


def test_d4_table_values():
    rows = [[v for v in chi.values] for chi in T4.irreducibles]
    assert rows[0] == [ONE] * 5
    assert rows[4] == [CycloNum(2), ZERO, CycloNum(-2), ZERO, ZERO]
    assert T4.labels == ("chi1", "chi2", "chi3", "chi4", "chi5")


def test_k4_table_is_plus_minus_one():
    for chi in char_table(builtin_group("K4")).irreducibles:
        assert all(v == ONE or v == CycloNum(-1) for v in chi.values)


def test_z4_table_is_powers_of_i():
    t = char_table(builtin_group("Z4"))
    for k, chi in enumerate(t.irreducibles):
        for j, v in enumerate(chi.values):
            assert v == I ** (k * j)


def test_d8_two_dimensional_rows():
    t = char_table(builtin_group("D8"))
    e1 = t.by_label("chiE1")
    assert list(e1.values) == [CycloNum(2), SQRT2, ZERO, -SQRT2, CycloNum(-2), ZERO, ZERO]
    e2 = t.by_label("chiE2")
    assert e2.values[4] == CycloNum(2)  # factors through the center quotient
    assert sum(1 for d in t.degrees() if d == 2) == 3


def test_inner_products_known_values():
    chi5 = T4.by_label("chi5")
    assert inner_product(chi5, chi5) == ONE
    assert inner_product(T4.by_label("chi1"), regular_character(D4)) == ONE
    assert inner_product(conj_character(chi5), chi5) == ZERO


def test_inner_product_rejects_group_mismatch():
    with pytest.raises(GroupMismatch):
        inner_product(trivial_character(D4), trivial_character(builtin_group("K4")))


def test_decompose_known_values():
    chi5 = T4.by_label("chi5")
    assert decompose(conj_character(chi5), T4) == (1, 1, 1, 1, 0)
    assert decompose(regular_character(D4), T4) == (1, 1, 1, 1, 2)


def test_decompose_rejects_non_character():
    f = cf(D4, 1, 0, 0, 0, 0)  # <chi1, f> = 1/8
    with pytest.raises(NotACharacter):
        decompose(f, T4)


def test_conj_character_values_and_dimension_square():
    chi5 = T4.by_label("chi5")
    assert [v.as_int() for v in conj_character(chi5).values] == [4, 0, 4, 0, 0]
    for name in BUILTIN_NAMES:
        t = char_table(builtin_group(name))
        for chi in t.irreducibles:
            assert conj_character(chi).dimension() == chi.dimension() ** 2


def test_conj_character_of_trivial_is_trivial():
    triv = trivial_character(D4)
    assert conj_character(triv) == triv


def test_conj_character_norms_are_rational():
    # every |value|^2 over every built-in table lands in Q
    for name in BUILTIN_NAMES:
        for chi in char_table(builtin_group(name)).irreducibles:
            for v in chi.values:
                assert v.abs_sq().is_rational()


def test_conj_character_needs_positive_integer_dimension():
    with pytest.raises(NotACharacter):
        conj_character(cf(D4, 0, 1, 1, 1, 1))


def test_tensor_product_rules_of_d4():
    chi5 = T4.by_label("chi5")
    for i in range(4):
        assert tensor(chi5, T4.irreducibles[i]) == chi5
    assert decompose(tensor(chi5, chi5), T4) == (1, 1, 1, 1, 0)
    f = cf(D4, 3, 1, 4, 1, 5)
    assert tensor(T4.by_label("chi1"), f) == f


def test_tensor_is_commutative_associative_with_integer_decompositions():
    irr = T4.irreducibles
    for a, b in itertools.product(irr, repeat=2):
        assert tensor(a, b) == tensor(b, a)
        decompose(tensor(a, b), T4)  # must be non-negative integers
    for a, b, c in itertools.product(irr[:3], irr[:3], irr[:3]):
        assert tensor(tensor(a, b), c) == tensor(a, tensor(b, c))


@pytest.mark.parametrize("name", BUILTIN_NAMES)
def test_products_of_irreducibles_decompose_integrally(name):
    t = char_table(builtin_group(name))
    for a, b in itertools.product(t.irreducibles, repeat=2):
        assert tensor(a, b) == tensor(b, a)
        mults = decompose(tensor(a, b), t)
        assert all(m >= 0 for m in mults)


@pytest.mark.parametrize("name", BUILTIN_NAMES)
def test_regular_character_decomposes_into_degrees(name):
    g = builtin_group(name)
    t = char_table(g)
    reg = regular_character(g)
    assert reg.values[0].as_int() == g.order
    assert decompose(reg, t) == t.degrees()


def test_pullback_of_k4_regular_lands_on_center_classes():
    # oracle: images of e and r2 are the K4 identity, every other class
    # maps to a non-identity element, so the pullback is (4,0,4,0,0)
    k4 = builtin_group("K4")
    q, proj = quotient(D4, center(D4))
    iso = find_isomorphism(q, k4)
    pulled = pullback(pullback(regular_character(k4), iso), proj)
    assert pulled == cf(D4, 4, 0, 4, 0, 0)


def test_pullback_of_trivial_is_trivial():
    k4 = builtin_group("K4")
    q, proj = quotient(D4, center(D4))
    iso = find_isomorphism(q, k4)
    assert pullback(pullback(trivial_character(k4), iso), proj) == trivial_character(D4)


def test_pullbacks_of_k4_irreducibles_are_the_linear_d4_characters():
    k4 = builtin_group("K4")
    q, proj = quotient(D4, center(D4))
    iso = find_isomorphism(q, k4)
    pulled = {
        pullback(pullback(chi, iso), proj) for chi in char_table(k4).irreducibles
    }
    assert pulled == set(T4.irreducibles[:4])


def test_pullback_requires_surjective_hom():
    from repcheck.groups import GroupHom

    z4 = builtin_group("Z4")
    const = GroupHom(source=D4, target=z4, image=(0,) * 8)
    with pytest.raises(ValueError):
        pullback(trivial_character(z4), const)


def test_projective_irreps_trivial_class():
    got = projective_irreps_d4(ProjectiveClassTag.TRIVIAL)
    assert [lbl for lbl, _ in got] == ["chi1", "chi2", "chi3", "chi4", "chi5"]
    assert [chi.dimension() for _, chi in got] == [1, 1, 1, 1, 2]


def test_projective_irreps_nontrivial_class():
    got = projective_irreps_d4(ProjectiveClassTag.NONTRIVIAL)
    assert [lbl for lbl, _ in got] == ["chiE1", "chiE3"]
    assert all(chi.dimension() == 2 for _, chi in got)
    # chiE2 is excluded because the central element acts as +1 on it
    e2 = char_table(builtin_group("D8")).by_label("chiE2")
    assert e2.values[4] == e2.values[0]


def test_push_to_quotient_of_conjugation_characters():
    t8 = char_table(builtin_group("D8"))
    for label in ("chiE1", "chiE3"):
        pushed = push_to_quotient(conj_character(t8.by_label(label)))
        assert pushed == cf(D4, 4, 2, 0, 0, 0)


def test_push_to_quotient_rejects_odd_functions():
    e1 = char_table(builtin_group("D8")).by_label("chiE1")
    with pytest.raises(NotDescendable):
        push_to_quotient(e1)  # chiE1(z4) = -2 != chiE1(e) = 2


def test_trivial_multiplicity_one_for_every_irreducible():
    for name in BUILTIN_NAMES:
        g = builtin_group(name)
        triv = trivial_character(g)
        for chi in char_table(g).irreducibles:
            assert inner_product(triv, conj_character(chi)) == ONE


def test_m1_equals_sum_of_squared_multiplicities():
    triv = trivial_character(D4)
    for ns in itertools.product(range(4), repeat=5):
        if sum(ns) == 0 or sum(ns) > 3:
            continue
        chi_u = None
        for n, chi in zip(ns, T4.irreducibles):
            for _ in range(n):
                chi_u = chi if chi_u is None else chi_u + chi
        assert inner_product(triv, conj_character(chi_u)) == CycloNum(sum(n * n for n in ns))


def test_chi5_multiplicity_of_conjugation_characters_is_even():
    for ns in itertools.product(range(3), repeat=5):
        deg = ns[0] + ns[1] + ns[2] + ns[3] + 2 * ns[4]
        if deg == 0 or deg > 4:
            continue
        chi_u = None
        for n, chi in zip(ns, T4.irreducibles):
            for _ in range(n):
                chi_u = chi if chi_u is None else chi_u + chi
        m5 = decompose(conj_character(chi_u), T4)[4]
        assert m5 == 2 * ns[4] * (ns[0] + ns[1] + ns[2] + ns[3])
        assert m5 % 2 == 0


def test_corrupted_table_entry_is_caught_at_load(monkeypatch):
    labels, rows = _RAW_TABLES["D4"]
    bad_rows = tuple(
        row if i != 4 else (2, 0, -2, 0, 1) for i, row in enumerate(rows)
    )
    monkeypatch.setitem(_RAW_TABLES, "D4", (labels, bad_rows))
    with pytest.raises(TableVerificationFailed):
        char_table(D4)


def test_char_table_rejects_unknown_group():
    q, _ = quotient(D4, center(D4))
    with pytest.raises(ValueError):
        char_table(q)
