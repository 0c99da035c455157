"""Exact simulation of the two positive protocols and their structure checks.

Covers the shared CHSH setup (Tsirelson value 2*sqrt2 as an equality test),
Bell-basis teleportation with Pauli corrections, the eight-outcome POVM
entanglement swap with its Lueders instrument and phase-gate corrections,
and the algebraic cross-checks: the cocycle defect of the S/X pair, the
correction group mod phases, and the conjugation character computed from
matrices instead of character tables.

States are vectors over Q(zeta_8); probabilities are exact rationals.
Qubit 0 is the leftmost tensor factor throughout.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Optional, Sequence

from .characters import ClassFunction
from .cyclo import CycloNum, I, INV_SQRT2, ONE, ZERO, sqrt_of_fraction
from .groups import GroupHom, GroupTable, builtin_group, conjugacy_classes, find_isomorphism
from .matrices import (
    ExactMatrix,
    Vector,
    matrix_proportionality,
    outer,
    proportionality,
    vec_inner,
    vec_norm_sq,
    vec_tensor,
)


class NotDichotomic(Exception):
    pass


class ZeroState(Exception):
    pass


class IncompleteInstrument(Exception):
    pass


class CocycleMismatch(Exception):
    pass


class NotProjectiveRep(Exception):
    pass


TSIRELSON = CycloNum(0, 2, 0, -2)  # 2*sqrt2 in the zeta basis

PAULI_LABELS = ("I", "X", "Y", "Z")


@dataclass(frozen=True)
class PureState:
    """A (possibly unnormalized) state vector over Q(zeta_8)."""

    vector: Vector

    @classmethod
    def from_amplitudes(cls, amps: Sequence) -> PureState:
        return cls(tuple(a if isinstance(a, CycloNum) else CycloNum(a) for a in amps))

    @property
    def dim(self) -> int:
        return len(self.vector)

    def norm_sq(self) -> Fraction:
        return vec_norm_sq(self.vector)

    def is_zero(self) -> bool:
        return all(a.is_zero() for a in self.vector)

    def tensor(self, other: PureState) -> PureState:
        return PureState(vec_tensor(self.vector, other.vector))

    def inner(self, other: PureState) -> CycloNum:
        return vec_inner(self.vector, other.vector)

    def scaled(self, c) -> PureState:
        cc = c if isinstance(c, CycloNum) else CycloNum(c)
        return PureState(tuple(cc * a for a in self.vector))

    def proportional_to(self, other: PureState) -> "CycloNum | None":
        return proportionality(self.vector, other.vector)


def pauli(k: int) -> ExactMatrix:
    """The Pauli matrix sigma_k, k in 0..3, with i = zeta^2."""
    if k == 0:
        return ExactMatrix([[1, 0], [0, 1]])
    if k == 1:
        return ExactMatrix([[0, 1], [1, 0]])
    if k == 2:
        return ExactMatrix([[ZERO, -I], [I, ZERO]])
    if k == 3:
        return ExactMatrix([[1, 0], [0, -1]])
    raise ValueError(f"pauli index {k} out of range")


def phase_gate() -> ExactMatrix:
    """S = diag(1, i); S^2 = sigma_z, S^4 = identity."""
    return ExactMatrix.diag([ONE, I])


def bell_state() -> PureState:
    """(|00> + |11>)/sqrt2, exactly normalized (1/sqrt2 is in the field)."""
    return PureState((INV_SQRT2, ZERO, ZERO, INV_SQRT2))


def bell_basis() -> tuple[PureState, ...]:
    """|Phi_k> = (sigma_k x 1)|Phi>, an orthonormal 2-qubit basis."""
    phi = bell_state()
    eye = ExactMatrix.identity(2)
    return tuple(
        PureState(pauli(k).tensor(eye).apply(phi.vector)) for k in range(4)
    )


@lru_cache(maxsize=1)
def tsirelson_settings() -> tuple[ExactMatrix, ExactMatrix, ExactMatrix, ExactMatrix]:
    """(A0, A1, C0, C1) = (sz, sx, (sz+sx)/sqrt2, (sz-sx)/sqrt2)."""
    sz, sx = pauli(3), pauli(1)
    return (sz, sx, (sz + sx).scale(INV_SQRT2), (sz - sx).scale(INV_SQRT2))


@lru_cache(maxsize=8)
def _bell_operator(settings: tuple[ExactMatrix, ...]) -> ExactMatrix:
    a0, a1, c0, c1 = settings
    for obs in settings:
        if not obs.is_hermitian() or not (obs @ obs).is_identity():
            raise NotDichotomic("settings must be Hermitian with O^2 = identity")
    return a0.tensor(c0 + c1) + a1.tensor(c0 - c1)


def chsh_value(state: PureState, settings: Sequence[ExactMatrix]) -> CycloNum:
    """<psi| A0 x (C0+C1) + A1 x (C0-C1) |psi> / <psi|psi>, exact."""
    if state.dim != 4:
        raise ValueError("CHSH needs a two-qubit state")
    if state.is_zero():
        raise ZeroState("CHSH value of the zero vector")
    bell_op = _bell_operator(tuple(settings))
    num = vec_inner(state.vector, bell_op.apply(state.vector))
    return num * CycloNum(Fraction(1, 1) / state.norm_sq())


# ----------------------------------------------------------------------
# protocol traces

@dataclass(frozen=True)
class OutcomeRecord:
    label: str
    probability: Fraction
    conditional: PureState
    correction_label: str
    post: PureState
    chsh: Optional[CycloNum]


@dataclass(frozen=True)
class ProtocolTrace:
    outcomes: tuple[OutcomeRecord, ...]

    def total_probability(self) -> Fraction:
        return sum((o.probability for o in self.outcomes), Fraction(0))

    def by_label(self, label: str) -> OutcomeRecord:
        for o in self.outcomes:
            if o.label == label:
                return o
        raise KeyError(label)


def _normalized_if_possible(v: Vector) -> Vector:
    ns = vec_norm_sq(v)
    if ns == 0:
        return v
    root = sqrt_of_fraction(ns)
    if root is None:
        return v
    inv = root.inverse()
    return tuple(inv * a for a in v)


def teleport(state: PureState) -> ProtocolTrace:
    """Bell-measure (input x Phi) on the first two qubits, then correct.

    Each outcome has probability exactly 1/4 and the corrected output is
    proportional to the input with a scalar in Q(zeta_8).
    """
    if state.dim != 2:
        raise ValueError("teleportation input must be a single qubit")
    if state.is_zero():
        raise ZeroState("cannot teleport the zero vector")
    full = state.tensor(bell_state())
    total = state.norm_sq()
    records = []
    for k, bk in enumerate(bell_basis()):
        cond = tuple(
            sum(
                (bk.vector[2 * x + y].conjugate() * full.vector[4 * x + 2 * y + w]
                 for x in range(2) for y in range(2)),
                ZERO,
            )
            for w in range(2)
        )
        prob = vec_norm_sq(cond) / total
        post = PureState(pauli(k).apply(cond))
        records.append(
            OutcomeRecord(
                label=str(k),
                probability=prob,
                conditional=PureState(cond),
                correction_label=PAULI_LABELS[k],
                post=post,
                chsh=None,
            )
        )
    return ProtocolTrace(tuple(records))


# ----------------------------------------------------------------------
# the eight-outcome POVM and its instrument

@dataclass(frozen=True)
class Effect:
    """A rank-one POVM effect scale * |v><v| with a positive rational scale."""

    label: str
    scale: Fraction
    vector: PureState
    matrix: ExactMatrix

    def __post_init__(self):
        if self.scale <= 0:
            raise ValueError("effect scale must be positive")
        if self.matrix != outer(self.vector.vector, self.vector.vector).scale(self.scale):
            raise ValueError("effect matrix does not match scale * |v><v|")


@dataclass(frozen=True)
class Instrument:
    """Outcome labels with one Kraus operator each; sum M^dag M = identity."""

    labels: tuple[str, ...]
    kraus: tuple[ExactMatrix, ...]

    def completeness(self) -> ExactMatrix:
        dim = self.kraus[0].rows
        total = ExactMatrix.zeros(dim, dim)
        for m in self.kraus:
            total = total + (m.dagger() @ m)
        return total

    def is_complete(self) -> bool:
        return self.completeness().is_identity()


def povm_construction() -> tuple[list[Effect], Instrument]:
    """The eight effects (1/2)|b_k><b_k|, (1/2)|a_k><a_k| and their
    Lueders instrument with Kraus operators (1/sqrt2)|.><.|."""
    phi = bell_state()
    eye = ExactMatrix.identity(2)
    s = phase_gate()
    half = Fraction(1, 2)

    vectors: list[tuple[str, PureState]] = []
    for k in range(4):
        vectors.append((f"b{k}", PureState(pauli(k).tensor(eye).apply(phi.vector))))
    for k in range(4):
        vectors.append((f"a{k}", PureState((s @ pauli(k)).tensor(eye).apply(phi.vector))))

    effects = [
        Effect(label=lbl, scale=half, vector=v,
               matrix=outer(v.vector, v.vector).scale(half))
        for lbl, v in vectors
    ]

    # both halves resolve the identity on their own
    for half_slice in (effects[:4], effects[4:]):
        total = ExactMatrix.zeros(4, 4)
        for e in half_slice:
            total = total + outer(e.vector.vector, e.vector.vector)
        if not total.is_identity():
            raise IncompleteInstrument(f"{half_slice[0].label[0]}-family does not resolve the identity")

    kraus = tuple(
        outer(v.vector, v.vector).scale(INV_SQRT2) for _, v in vectors
    )
    inst = Instrument(labels=tuple(lbl for lbl, _ in vectors), kraus=kraus)
    if not inst.is_complete():
        raise IncompleteInstrument("Kraus completeness fails")
    return effects, inst


def standard_corrections() -> dict[str, tuple[str, ExactMatrix]]:
    """Outcome label -> (correction label, unitary): sigma_k for b_k,
    S sigma_k for a_k."""
    s = phase_gate()
    out: dict[str, tuple[str, ExactMatrix]] = {}
    for k in range(4):
        out[f"b{k}"] = (PAULI_LABELS[k], pauli(k))
    for k in range(4):
        lbl = "S" if k == 0 else f"S{PAULI_LABELS[k]}"
        out[f"a{k}"] = (lbl, s @ pauli(k))
    return out


def _split_middle(v: Vector) -> tuple[Vector, Vector]:
    """Factor a 16-dim vector on (A,B1,B2,C) as outer(y,z)-pure in the middle.

    Returns (outer pair vector on (A,C), middle vector on (B1,B2)); raises
    if the middle two qubits are still entangled with the rest.
    """
    def at(x: int, y: int, z: int, w: int) -> CycloNum:
        return v[8 * x + 4 * y + 2 * z + w]

    pivot = next(
        ((x, y, z, w) for x in range(2) for y in range(2)
         for z in range(2) for w in range(2) if not at(x, y, z, w).is_zero()),
        None,
    )
    if pivot is None:
        raise ZeroState("zero branch has no conditional state")
    x0, y0, z0, w0 = pivot
    mid = tuple(at(x0, y, z, w0) for y in range(2) for z in range(2))
    scale = at(x0, y0, z0, w0)
    out_pair = tuple(at(x, y0, z0, w) / scale for x in range(2) for w in range(2))
    for x in range(2):
        for y in range(2):
            for z in range(2):
                for w in range(2):
                    if at(x, y, z, w) != out_pair[2 * x + w] * mid[2 * y + z]:
                        raise IncompleteInstrument(
                            "middle qubits stay entangled; instrument is not rank-one"
                        )
    return out_pair, mid


@lru_cache(maxsize=8)
def _swap_operators(inst: Instrument) -> tuple[ExactMatrix, ...]:
    if not inst.is_complete():
        raise IncompleteInstrument("sum of M^dag M is not the identity")
    eye = ExactMatrix.identity(2)
    return tuple(eye.tensor(m).tensor(eye) for m in inst.kraus)


def entanglement_swap(
    inst: Instrument,
    corrections: Optional[Mapping[str, tuple[str, ExactMatrix]]] = None,
    left: Optional[PureState] = None,
) -> ProtocolTrace:
    """Measure the middle pair of left_(A,B1) x Phi_(B2,C) with inst.

    For each outcome: exact probability, conditional (A,C) state, the
    correction applied on C, and the post-correction CHSH value.
    """
    if corrections is None:
        corrections = standard_corrections()
    if left is None:
        left = bell_state()
    if left.dim != 4:
        raise ValueError("left leg must be a two-qubit state")
    corr_key = tuple(
        sorted(((lbl, cl, m) for lbl, (cl, m) in corrections.items()),
               key=lambda item: item[0])
    )
    return _swap_cached(inst, corr_key, left.vector)


@lru_cache(maxsize=4096)
def _swap_cached(inst: Instrument, corr_key: tuple, left_vector: Vector) -> ProtocolTrace:
    operators = _swap_operators(inst)
    corrections = {lbl: (cl, m) for lbl, cl, m in corr_key}
    left = PureState(left_vector)
    full = left.tensor(bell_state())
    total = full.norm_sq()
    eye = ExactMatrix.identity(2)
    settings = tsirelson_settings()

    records = []
    for label, op in zip(inst.labels, operators):
        v = op.apply(full.vector)
        prob = vec_norm_sq(v) / total
        if prob == 0:
            records.append(OutcomeRecord(label, prob, PureState((ZERO,) * 4),
                                         corrections[label][0], PureState((ZERO,) * 4), None))
            continue
        out_pair, _mid = _split_middle(v)
        cond = _normalized_if_possible(out_pair)
        corr_label, corr = corrections[label]
        post = PureState(eye.tensor(corr).apply(cond))
        records.append(
            OutcomeRecord(
                label=label,
                probability=prob,
                conditional=PureState(cond),
                correction_label=corr_label,
                post=post,
                chsh=chsh_value(post, settings),
            )
        )
    return ProtocolTrace(tuple(records))


def iterate_swap(
    rounds: int,
    outcome_path: Optional[Sequence[str]] = None,
    seed: Optional[int] = None,
    inst: Optional[Instrument] = None,
    corrections: Optional[Mapping[str, tuple[str, ExactMatrix]]] = None,
) -> list[CycloNum]:
    """Chain the swap: each round's corrected (A,C) pair feeds the next round.

    Outcomes follow outcome_path if given, else a seeded uniform choice,
    else a deterministic round-robin over the eight labels.  Returns the
    post-correction CHSH value after each round.
    """
    return [chsh for _, chsh in
            iterate_swap_detailed(rounds, outcome_path, seed, inst, corrections)]


def iterate_swap_detailed(
    rounds: int,
    outcome_path: Optional[Sequence[str]] = None,
    seed: Optional[int] = None,
    inst: Optional[Instrument] = None,
    corrections: Optional[Mapping[str, tuple[str, ExactMatrix]]] = None,
) -> list[tuple[OutcomeRecord, CycloNum]]:
    """Like iterate_swap but keeps the selected outcome record per round."""
    if rounds < 1:
        raise ValueError("rounds must be >= 1")
    if outcome_path is not None and len(outcome_path) < rounds:
        raise ValueError(f"outcome_path supplies {len(outcome_path)} outcomes for {rounds} rounds")
    if inst is None:
        _, inst = povm_construction()
    rng = random.Random(seed) if seed is not None else None
    state = bell_state()
    out = []
    for i in range(rounds):
        trace = entanglement_swap(inst, corrections, left=state)
        if outcome_path is not None:
            label = outcome_path[i]
        elif rng is not None:
            label = rng.choice(inst.labels)
        else:
            label = inst.labels[i % len(inst.labels)]
        rec = trace.by_label(label)
        if rec.chsh is None:
            raise ZeroState(f"selected outcome {label} has zero probability")
        out.append((rec, rec.chsh))
        state = rec.post
    return out


# ----------------------------------------------------------------------
# structural checks

def verify_cocycle() -> CycloNum:
    """sigma_x S sigma_x S = i*1 (and S^4 = 1, S^2 = sigma_z): the defect
    that puts the S/X pair in the non-trivial multiplier class."""
    s = phase_gate()
    sx = pauli(1)
    eye = ExactMatrix.identity(2)
    if (sx @ s @ sx @ s) != eye.scale(I):
        raise CocycleMismatch("sigma_x S sigma_x S != i * identity")
    s3 = s @ s @ s
    if (sx @ s @ sx) != s3.scale(I):
        raise CocycleMismatch("sigma_x S sigma_x != i * S^3")
    if not (s @ s @ s @ s).is_identity():
        raise CocycleMismatch("S^4 != identity")
    if (s @ s) != pauli(3):
        raise CocycleMismatch("S^2 != sigma_z")
    return I


def _matrix_closure(seeds: Sequence[ExactMatrix]) -> list[ExactMatrix]:
    seen: dict[ExactMatrix, int] = {}
    order: list[ExactMatrix] = []
    for m in seeds:
        if m not in seen:
            seen[m] = len(order)
            order.append(m)
    frontier = list(order)
    while frontier:
        x = frontier.pop(0)
        for s in seeds:
            y = x @ s
            if y not in seen:
                seen[y] = len(order)
                order.append(y)
                frontier.append(y)
    return order


def _ray_partition(elements: Sequence[ExactMatrix]) -> tuple[list[int], list[ExactMatrix]]:
    """Partition by proportionality; rays keep first-seen representatives."""
    reps: list[ExactMatrix] = []
    ray_of: list[int] = []
    for m in elements:
        for i, rep in enumerate(reps):
            if matrix_proportionality(m, rep) is not None:
                ray_of.append(i)
                break
        else:
            ray_of.append(len(reps))
            reps.append(m)
    return ray_of, reps


def matrix_group_mod_phases(
    seeds: Sequence[tuple[str, ExactMatrix]], name: str
) -> tuple[GroupTable, list[ExactMatrix]]:
    """Close seeds under multiplication, then quotient by scalar matrices.

    The seeds must be unitary and hit every ray exactly once (true for the
    correction sets used here); their labels become the quotient's words.
    """
    labels = [lbl for lbl, _ in seeds]
    mats = [m for _, m in seeds]
    for lbl, m in seeds:
        if not m.is_unitary():
            raise ValueError(f"seed {lbl} is not unitary")
    closure = _matrix_closure(mats)
    ray_of, reps = _ray_partition(closure)
    if len(reps) != len(seeds):
        raise ValueError(
            f"{name}: expected {len(seeds)} rays, found {len(reps)}"
        )

    def ray_index(m: ExactMatrix) -> int:
        for i, rep in enumerate(reps):
            if matrix_proportionality(m, rep) is not None:
                return i
        raise ValueError("element escaped the closure")

    k = len(reps)
    mul = [[ray_index(reps[i] @ reps[j]) for j in range(k)] for i in range(k)]
    table = GroupTable(name, mul, labels, None)
    return table, reps


def correction_group_check() -> GroupHom:
    """The eight corrections mod phases form D4 (explicit isomorphism),
    and the four Paulis mod phases form K4; returns the D4 isomorphism."""
    s = phase_gate()
    correction_seeds = [(PAULI_LABELS[k], pauli(k)) for k in range(4)]
    correction_seeds += [("S" if k == 0 else f"S{PAULI_LABELS[k]}", s @ pauli(k)) for k in range(4)]
    ray_group, reps = matrix_group_mod_phases(correction_seeds, "corrections/phases")
    if ray_group.order != 8:
        raise ValueError(f"correction quotient has order {ray_group.order}, expected 8")

    idx_s = ray_group.element_words.index("S")
    idx_x = ray_group.element_words.index("X")
    if ray_group.element_order(idx_s) != 4 or ray_group.element_order(idx_x) != 2:
        raise ValueError("projective orders of [S], [X] are not (4, 2)")
    lhs = ray_group.mul(ray_group.mul(idx_x, idx_s), ray_group.inv(idx_x))
    if lhs != ray_group.inv(idx_s):
        raise ValueError("[X][S][X]^-1 != [S]^-1 in the correction quotient")

    iso = find_isomorphism(ray_group, builtin_group("D4"))

    # Pauli-only case: full matrix group is the built-in Pauli group,
    # and mod phases it collapses to K4
    pauli_seeds = [(PAULI_LABELS[k], pauli(k)) for k in range(4)]
    pauli_closure = _matrix_closure([m for _, m in pauli_seeds])
    if len(pauli_closure) != 16:
        raise ValueError(f"Pauli closure has order {len(pauli_closure)}, expected 16")
    mat_index = {m: i for i, m in enumerate(pauli_closure)}
    mul = [
        [mat_index[a @ b] for b in pauli_closure]
        for a in pauli_closure
    ]
    words = [f"m{i}" for i in range(16)]
    pauli_matrix_group = GroupTable("PauliMatrices", mul, words, None)
    find_isomorphism(pauli_matrix_group, builtin_group("Pauli1"))

    pauli_quotient, _ = matrix_group_mod_phases(pauli_seeds, "paulis/phases")
    if pauli_quotient.order != 4:
        raise ValueError("Pauli quotient does not have order 4")
    if any(pauli_quotient.element_order(x) != 2 for x in range(1, 4)):
        raise ValueError("Pauli quotient has an element of order != 2")
    find_isomorphism(pauli_quotient, builtin_group("K4"))
    return iso


def pvm_counting_check() -> str:
    """Arithmetic for why a rank-one PVM on C^2 x C^2 cannot drive the
    eight-element correction group."""
    dim = 4
    pvm_outcomes = dim  # rank-one projectors resolving the identity
    d4_order = builtin_group("D4").order
    if not (pvm_outcomes == 4 and d4_order == 8 and pvm_outcomes < d4_order):
        raise ArithmeticError("PVM outcome counting failed")
    return (
        f"rank-one PVM on a dim-{dim} space has exactly {pvm_outcomes} outcomes; "
        f"{pvm_outcomes} < {d4_order} = |D4|, so it cannot label a faithful correction set. "
        f"A POVM with >= {d4_order} outcomes is used instead; a Naimark dilation to a "
        "larger space with a rank-one PVM there is the known alternative (not implemented)."
    )


def conj_rep_character_from_matrices(
    group: GroupTable, mats: Sequence[ExactMatrix]
) -> ClassFunction:
    """Trace of X -> U X U^dag on the matrix-unit basis, per group element.

    Accepts projective assignments (group law up to a scalar).  The result
    is checked to be constant on conjugacy classes and to equal |tr U|^2
    entrywise before it is returned as a class function.
    """
    if len(mats) != group.order:
        raise ValueError("need one matrix per group element")
    for g in group.elements():
        for h in group.elements():
            if matrix_proportionality(mats[g] @ mats[h], mats[group.mul(g, h)]) is None:
                raise NotProjectiveRep(
                    f"U[{group.word(g)}] U[{group.word(h)}] is not proportional to "
                    f"U[{group.word(group.mul(g, h))}]"
                )

    dim = mats[0].rows
    basis = []
    for i in range(dim):
        for j in range(dim):
            e_ij = ExactMatrix(
                [[ONE if (r, c) == (i, j) else ZERO for c in range(dim)] for r in range(dim)]
            )
            basis.append((i, j, e_ij))

    per_element = []
    for g in group.elements():
        u = mats[g]
        ud = u.dagger()
        total = ZERO
        for i, j, e_ij in basis:
            conjugated = u @ e_ij @ ud
            total = total + conjugated[i, j]
        if total != u.trace().abs_sq():
            raise ArithmeticError(
                f"conjugation trace at {group.word(g)} disagrees with |tr U|^2"
            )
        per_element.append(total)

    cc = conjugacy_classes(group)
    for cl in cc.classes:
        if len({per_element[x] for x in cl}) != 1:
            raise NotProjectiveRep(
                f"conjugation character is not constant on the class of {group.word(cl[0])}"
            )
    return ClassFunction(group, tuple(per_element[r] for r in cc.representatives))


def pauli_rep_on_k4() -> tuple[ExactMatrix, ...]:
    """K4 elements (e, a, b, ab) realized projectively as (1, sx, sy, sz)."""
    return tuple(pauli(k) for k in range(4))


def lifted_correction_rep_on_d8() -> tuple[ExactMatrix, ...]:
    """D8 element z^i h^j (index i + 8j) realized as S^i sigma_x^j."""
    s = phase_gate()
    sx = pauli(1)
    mats = []
    for j in range(2):
        for i in range(8):
            m = ExactMatrix.identity(2)
            for _ in range(i):
                m = m @ s
            if j:
                m = m @ sx
            mats.append(m)
    return tuple(mats)
