"""Teleportation, the POVM swap protocol, and the structure checks."""

import itertools
import random
from fractions import Fraction

import pytest

from repcheck.characters import char_table, conj_character
from repcheck.cyclo import CycloNum, I, INV_SQRT2, ONE, SQRT2, ZERO
from repcheck.groups import builtin_group, verify_hom
from repcheck.matrices import ExactMatrix, hs_inner, vec_inner
from repcheck.quantum import (
    IncompleteInstrument,
    Instrument,
    NotDichotomic,
    NotProjectiveRep,
    PAULI_LABELS,
    PureState,
    TSIRELSON,
    ZeroState,
    bell_basis,
    bell_state,
    chsh_value,
    conj_rep_character_from_matrices,
    correction_group_check,
    entanglement_swap,
    iterate_swap,
    lifted_correction_rep_on_d8,
    pauli,
    pauli_rep_on_k4,
    phase_gate,
    povm_construction,
    pvm_counting_check,
    standard_corrections,
    teleport,
    tsirelson_settings,
    verify_cocycle,
)

RNG = random.Random(5)


def rand_qubit():
    while True:
        amps = [
            CycloNum(Fraction(RNG.randint(-6, 6), RNG.randint(1, 5)),
                     0, Fraction(RNG.randint(-6, 6), RNG.randint(1, 5)), 0)
            for _ in range(2)
        ]
        if any(not a.is_zero() for a in amps):
            return PureState(tuple(amps))


# ----------------------------------------------------------------------
# Pauli algebra and Bell states

def test_pauli_squares_and_hermiticity():
    for k in range(4):
        s = pauli(k)
        assert (s @ s).is_identity()
        assert s.is_hermitian() and s.is_unitary()


def test_pauli_trace_orthogonality():
    for j in range(4):
        for k in range(4):
            expected = CycloNum(2 if j == k else 0)
            assert (pauli(j) @ pauli(k)).trace() == expected


def test_pauli_multiplication_rule():
    assert pauli(1) @ pauli(2) == pauli(3).scale(I)
    assert pauli(2) @ pauli(3) == pauli(1).scale(I)
    assert pauli(3) @ pauli(1) == pauli(2).scale(I)
    assert pauli(2) @ pauli(1) == pauli(3).scale(-I)


def test_pauli_matrices_agree_with_group_table():
    """The hard-coded Pauli1 multiplication table is the matrix algebra."""
    p1 = builtin_group("Pauli1")
    phases = (ONE, I, -ONE, -I)
    mats = {4 * j + k: pauli(j).scale(phases[k]) for j in range(4) for k in range(4)}
    for a in p1.elements():
        for b in p1.elements():
            assert mats[a] @ mats[b] == mats[p1.mul(a, b)]


def test_bell_basis_explicit_vectors():
    b = bell_basis()
    half = INV_SQRT2
    assert b[0].vector == (half, ZERO, ZERO, half)
    assert b[1].vector == (ZERO, half, half, ZERO)
    assert b[2].vector == (ZERO, -I * half, I * half, ZERO)
    assert b[3].vector == (half, ZERO, ZERO, -half)


def test_bell_basis_gram_matrix_is_identity():
    b = bell_basis()
    for j in range(4):
        for k in range(4):
            expected = ONE if j == k else ZERO
            assert b[j].inner(b[k]) == expected


# ----------------------------------------------------------------------
# CHSH

def test_tsirelson_value_exact():
    value = chsh_value(bell_state(), tsirelson_settings())
    assert value == TSIRELSON
    assert value.coeffs == (0, 2, 0, -2)


def test_zz_correlation_on_bell_state():
    phi = bell_state()
    zz = pauli(3).tensor(pauli(3))
    assert vec_inner(phi.vector, zz.apply(phi.vector)) == ONE


def test_chsh_of_product_state():
    # oracle: B = sqrt2 (sz x sz + sx x sx), and <00|...|00> picks the
    # (0,0) entries: (sz x sz)[0,0] = 1, (sx x sx)[0,0] = 0
    sz = [[1, 0], [0, -1]]
    sx = [[0, 1], [1, 0]]
    m00 = sz[0][0] * sz[0][0] + sx[0][0] * sx[0][0]
    assert m00 == 1
    state = PureState.from_amplitudes([1, 0, 0, 0])
    assert chsh_value(state, tsirelson_settings()) == SQRT2


def test_chsh_rejects_non_dichotomic_settings():
    sz, sx = pauli(3), pauli(1)
    bad = sz + sx  # squares to 2, not 1
    with pytest.raises(NotDichotomic):
        chsh_value(bell_state(), (sz, sx, bad, sx))


def test_chsh_rejects_zero_state():
    with pytest.raises(ZeroState):
        chsh_value(PureState((ZERO,) * 4), tsirelson_settings())


# ----------------------------------------------------------------------
# teleportation

def test_teleport_of_basis_state():
    state = PureState.from_amplitudes([1, 0])
    trace = teleport(state)
    quarter = Fraction(1, 4)
    # oracle: conditional for outcome k is sigma_k |psi> / 2 (literal 2x2s)
    sigmas = (
        ((ONE, ZERO), (ZERO, ONE)),
        ((ZERO, ONE), (ONE, ZERO)),
        ((ZERO, -I), (I, ZERO)),
        ((ONE, ZERO), (ZERO, -ONE)),
    )
    for k, rec in enumerate(trace.outcomes):
        assert rec.probability == quarter
        expected_cond = tuple(
            (sigmas[k][r][0] * state.vector[0] + sigmas[k][r][1] * state.vector[1])
            * CycloNum(Fraction(1, 2))
            for r in range(2)
        )
        assert rec.conditional.vector == expected_cond
        assert rec.post.proportional_to(state) == CycloNum(Fraction(1, 2))
    assert trace.outcomes[0].correction_label == "I"


def test_teleport_restores_random_states():
    for _ in range(25):
        state = rand_qubit()
        trace = teleport(state)
        assert trace.total_probability() == 1
        for rec in trace.outcomes:
            scalar = rec.post.proportional_to(state)
            assert scalar is not None and not scalar.is_zero()


def test_teleport_rejects_zero_state():
    with pytest.raises(ZeroState):
        teleport(PureState((ZERO, ZERO)))


def test_teleporting_half_of_an_entangled_pair():
    """Teleporting one leg of a Bell pair is a swap with the Bell-basis
    instrument: the output pair must return to the Bell state."""
    projectors = [outer_state(b) for b in bell_basis()]
    inst = Instrument(
        labels=tuple(f"b{k}" for k in range(4)),
        kraus=tuple(projectors),
    )
    corrections = {f"b{k}": (PAULI_LABELS[k], pauli(k)) for k in range(4)}
    trace = entanglement_swap(inst, corrections=corrections)
    phi = bell_state()
    for rec in trace.outcomes:
        assert rec.probability == Fraction(1, 4)
        scalar = rec.post.proportional_to(phi)
        assert scalar is not None and scalar.abs_sq() == ONE
        assert rec.chsh == TSIRELSON


def outer_state(s: PureState) -> ExactMatrix:
    from repcheck.matrices import outer

    return outer(s.vector, s.vector)


# ----------------------------------------------------------------------
# POVM construction and entanglement swapping

def test_povm_effects_resolve_identity():
    effects, inst = povm_construction()
    assert len(effects) == 8
    total = ExactMatrix.zeros(4, 4)
    for e in effects:
        total = total + e.matrix
    assert total.is_identity()
    assert inst.is_complete()


def test_phase_twisted_family_is_orthonormal():
    s = phase_gate()
    for j in range(4):
        for k in range(4):
            expected = CycloNum(2 if j == k else 0)
            assert ((s @ pauli(j)).dagger() @ (s @ pauli(k))).trace() == expected


def test_swap_outcome_structure():
    _, inst = povm_construction()
    trace = entanglement_swap(inst)
    phi = bell_state()
    eye = ExactMatrix.identity(2)
    corrections = standard_corrections()
    assert [rec.label for rec in trace.outcomes] == [
        "b0", "b1", "b2", "b3", "a0", "a1", "a2", "a3"
    ]
    for rec in trace.outcomes:
        assert rec.probability == Fraction(1, 8)
        _, v = corrections[rec.label]
        expected = PureState(eye.tensor(v.dagger()).apply(phi.vector))
        assert rec.conditional.proportional_to(expected) is not None
        scalar = rec.post.proportional_to(phi)
        assert scalar is not None and scalar.abs_sq() == ONE
        assert rec.chsh == TSIRELSON
    assert trace.total_probability() == 1


def test_swap_correction_labels():
    _, inst = povm_construction()
    trace = entanglement_swap(inst)
    labels = {rec.label: rec.correction_label for rec in trace.outcomes}
    assert labels["b0"] == "I" and labels["b2"] == "Y"
    assert labels["a0"] == "S" and labels["a3"] == "SZ"


def test_swap_rejects_incomplete_instrument():
    _, inst = povm_construction()
    broken = Instrument(labels=inst.labels[:7], kraus=inst.kraus[:7])
    with pytest.raises(IncompleteInstrument):
        entanglement_swap(broken)


def test_iterate_swap_single_and_deep():
    assert iterate_swap(1, outcome_path=["b0"]) == [TSIRELSON]
    values = iterate_swap(5, seed=123)
    assert values == [TSIRELSON] * 5


def test_iterate_swap_all_depth2_paths():
    _, inst = povm_construction()
    for path in itertools.product(inst.labels, repeat=2):
        assert iterate_swap(2, outcome_path=path, inst=inst) == [TSIRELSON] * 2


def test_wrong_correction_table_breaks_the_protocol():
    # negative control: shift sigma_k to sigma_{k+1}
    _, inst = povm_construction()
    good = standard_corrections()
    shifted = {}
    for k in range(4):
        shifted[f"b{k}"] = good[f"b{(k + 1) % 4}"]
        shifted[f"a{k}"] = good[f"a{(k + 1) % 4}"]
    values = iterate_swap(1, outcome_path=["b1"], corrections=shifted)
    assert values[0] != TSIRELSON
    trace = entanglement_swap(inst, corrections=shifted)
    phi = bell_state()
    assert any(
        rec.chsh != TSIRELSON or rec.post.proportional_to(phi) is None
        for rec in trace.outcomes
    )


# ----------------------------------------------------------------------
# cocycle and group structure

def test_cocycle_defect_is_i():
    assert verify_cocycle() == I
    s = phase_gate()
    assert (s @ s) == pauli(3)
    assert (s @ s @ s @ s).is_identity()
    sx = pauli(1)
    assert sx @ s @ sx @ s == ExactMatrix.identity(2).scale(I)


def test_cocycle_mismatch_is_detected(monkeypatch):
    import repcheck.quantum as quantum
    from repcheck.quantum import CocycleMismatch

    # replace the phase gate by its inverse: the defect flips to -i
    monkeypatch.setattr(quantum, "phase_gate", lambda: ExactMatrix.diag([ONE, -I]))
    with pytest.raises(CocycleMismatch):
        quantum.verify_cocycle()


def test_swap_rejects_entangling_instrument():
    # a single identity Kraus is complete but leaves the middle pair
    # entangled with the outer one; only rank-one instruments are supported
    inst = Instrument(labels=("id",), kraus=(ExactMatrix.identity(4),))
    corrections = {"id": ("I", pauli(0))}
    with pytest.raises(IncompleteInstrument):
        entanglement_swap(inst, corrections=corrections)


def test_correction_group_is_d4_mod_phases():
    iso = correction_group_check()
    assert verify_hom(iso)
    assert iso.target == builtin_group("D4")
    src = iso.source
    assert src.order == 8
    assert src.element_order(src.element_words.index("S")) == 4
    assert src.element_order(src.element_words.index("X")) == 2


def test_pvm_counting_line():
    line = pvm_counting_check()
    assert "4" in line and "8" in line and "Naimark" in line


def test_conj_rep_character_from_pauli_assignment():
    k4 = builtin_group("K4")
    got = conj_rep_character_from_matrices(k4, pauli_rep_on_k4())
    assert [v.as_int() for v in got.values] == [4, 0, 0, 0]


def test_conj_rep_character_from_d8_lift():
    d8 = builtin_group("D8")
    got = conj_rep_character_from_matrices(d8, lifted_correction_rep_on_d8())
    e1 = char_table(d8).by_label("chiE1")
    assert got == conj_character(e1)
    assert [v.as_int() for v in got.values] == [4, 2, 0, 2, 4, 0, 0]


def test_conj_rep_character_of_one_dimensional_rep():
    z4 = builtin_group("Z4")
    mats = tuple(ExactMatrix([[I ** k]]) for k in range(4))
    got = conj_rep_character_from_matrices(z4, mats)
    assert all(v == ONE for v in got.values)


def test_conj_rep_rejects_non_projective_assignment():
    k4 = builtin_group("K4")
    broken = (pauli(0), pauli(1), pauli(2), pauli(0))
    with pytest.raises(NotProjectiveRep):
        conj_rep_character_from_matrices(k4, broken)


# ----------------------------------------------------------------------
# exactness properties

def test_conjugation_preserves_hs_inner_product():
    corrections = [m for _, (_, m) in standard_corrections().items()]
    for u in corrections:
        for _ in range(3):
            x = rand_2x2()
            y = rand_2x2()
            assert hs_inner(u @ x @ u.dagger(), u @ y @ u.dagger()) == hs_inner(x, y)


def rand_2x2():
    return ExactMatrix(
        [[CycloNum(Fraction(RNG.randint(-4, 4), RNG.randint(1, 3)),
                   0, Fraction(RNG.randint(-4, 4), RNG.randint(1, 3)), 0)
          for _ in range(2)] for _ in range(2)]
    )


def test_partial_trace_identity_on_random_matrices():
    phi = bell_state()
    eye = ExactMatrix.identity(2)
    half = CycloNum(Fraction(1, 2))
    for _ in range(20):
        m = rand_2x2()
        got = vec_inner(phi.vector, m.tensor(eye).apply(phi.vector))
        assert got == half * m.trace()


def test_tsirelson_float_embedding():
    assert abs(TSIRELSON.to_complex() - 2.8284271247461903) < 1e-12
