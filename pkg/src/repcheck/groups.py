"""Finite groups as verified multiplication tables.

Elements are indices 0..order-1; index 0 is always the identity.  Every
table is checked exhaustively at construction (Latin square, associativity,
identity, inverses), which is cheap at the orders used here (<= 16).

Built-ins: K4, Z4, D4, D8 and the 16-element single-qubit Pauli group.
Canonical element words fix the iteration order; conjugacy-class
representatives are the lowest-index element of each class, and all
class-function indexing downstream relies on that ordering.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping, Optional, Sequence


class GroupError(Exception):
    pass


class NotSubgroup(GroupError):
    pass


class NotNormal(GroupError):
    pass


class IsoNotFound(GroupError):
    pass


BUILTIN_NAMES = ("K4", "Z4", "D4", "D8", "Pauli1")


class GroupTable:
    """A finite group given by its multiplication table."""

    def __init__(
        self,
        name: str,
        mul: Sequence[Sequence[int]],
        element_words: Sequence[str],
        generator_names: Optional[Mapping[str, int]] = None,
    ):
        self.name = name
        self.mul_table = tuple(tuple(int(x) for x in row) for row in mul)
        self.element_words = tuple(str(w) for w in element_words)
        self.generator_names = dict(generator_names or {})
        self.order = len(self.mul_table)
        if len(self.element_words) != self.order:
            raise GroupError(f"{name}: {len(self.element_words)} words for order {self.order}")
        self._verify()
        self.inv_table = tuple(self._find_inverse(a) for a in range(self.order))

    def _verify(self) -> None:
        n = self.order
        full = set(range(n))
        for row in self.mul_table:
            if len(row) != n or set(row) != full:
                raise GroupError(f"{self.name}: multiplication table is not a Latin square")
        for j in range(n):
            if {self.mul_table[i][j] for i in range(n)} != full:
                raise GroupError(f"{self.name}: multiplication table is not a Latin square")
        e = 0
        for a in range(n):
            if self.mul_table[e][a] != a or self.mul_table[a][e] != a:
                raise GroupError(f"{self.name}: element 0 is not a two-sided identity")
        for a in range(n):
            for b in range(n):
                ab = self.mul_table[a][b]
                for c in range(n):
                    if self.mul_table[ab][c] != self.mul_table[a][self.mul_table[b][c]]:
                        raise GroupError(f"{self.name}: associativity fails at ({a},{b},{c})")

    def _find_inverse(self, a: int) -> int:
        for b in range(self.order):
            if self.mul_table[a][b] == 0 and self.mul_table[b][a] == 0:
                return b
        raise GroupError(f"{self.name}: element {a} has no two-sided inverse")

    # ------------------------------------------------------------------

    @property
    def identity(self) -> int:
        return 0

    def mul(self, a: int, b: int) -> int:
        return self.mul_table[a][b]

    def inv(self, a: int) -> int:
        return self.inv_table[a]

    def conj(self, g: int, x: int) -> int:
        """g * x * g^-1."""
        return self.mul(self.mul(g, x), self.inv(g))

    def element_order(self, a: int) -> int:
        n, x = 1, a
        while x != 0:
            x = self.mul(x, a)
            n += 1
        return n

    def is_abelian(self) -> bool:
        return all(
            self.mul(a, b) == self.mul(b, a)
            for a in range(self.order)
            for b in range(a + 1, self.order)
        )

    def elements(self) -> range:
        return range(self.order)

    def word(self, a: int) -> str:
        return self.element_words[a]

    def __eq__(self, other) -> bool:
        if not isinstance(other, GroupTable):
            return NotImplemented
        return self.mul_table == other.mul_table and self.element_words == other.element_words

    def __hash__(self) -> int:
        return hash((self.name, self.mul_table))

    def __repr__(self) -> str:
        return f"GroupTable({self.name!r}, order={self.order})"

    def dump(self) -> str:
        """Text dump: header line, then the table as rows of element words."""
        width = max(len(w) for w in self.element_words)
        lines = [f"group {self.name} order {self.order}"]
        for row in self.mul_table:
            lines.append("  ".join(self.element_words[x].rjust(width) for x in row))
        return "\n".join(lines)


@dataclass(frozen=True)
class ConjClassPartition:
    """Conjugacy classes ordered by their lowest-index representative."""

    classes: tuple[tuple[int, ...], ...]
    representatives: tuple[int, ...]
    sizes: tuple[int, ...]
    class_of: tuple[int, ...]  # element index -> class index

    def __len__(self) -> int:
        return len(self.classes)


@dataclass(frozen=True)
class GroupHom:
    """A map between groups, stored as image[element] on the source."""

    source: GroupTable
    target: GroupTable
    image: tuple[int, ...]

    def __call__(self, a: int) -> int:
        return self.image[a]

    def kernel(self) -> tuple[int, ...]:
        return tuple(a for a in self.source.elements() if self.image[a] == 0)

    def is_surjective(self) -> bool:
        return set(self.image) == set(self.target.elements())

    def is_injective(self) -> bool:
        return len(set(self.image)) == self.source.order


def verify_hom(h: GroupHom) -> bool:
    """True iff image(a*b) = image(a)*image(b) for all pairs."""
    src, tgt, im = h.source, h.target, h.image
    if len(im) != src.order:
        return False
    if any(not (0 <= x < tgt.order) for x in im):
        return False
    return all(
        im[src.mul(a, b)] == tgt.mul(im[a], im[b])
        for a in src.elements()
        for b in src.elements()
    )


@lru_cache(maxsize=None)
def conjugacy_classes(g: GroupTable) -> ConjClassPartition:
    seen = [False] * g.order
    classes: list[tuple[int, ...]] = []
    for a in g.elements():
        if seen[a]:
            continue
        orbit = sorted({g.conj(h, a) for h in g.elements()})
        for x in orbit:
            seen[x] = True
        classes.append(tuple(orbit))
    classes.sort(key=lambda cl: cl[0])
    class_of = [0] * g.order
    for i, cl in enumerate(classes):
        for x in cl:
            class_of[x] = i
    return ConjClassPartition(
        classes=tuple(classes),
        representatives=tuple(cl[0] for cl in classes),
        sizes=tuple(len(cl) for cl in classes),
        class_of=tuple(class_of),
    )


def center(g: GroupTable) -> tuple[int, ...]:
    """Elements commuting with everything, in index order."""
    return tuple(
        a for a in g.elements()
        if all(g.mul(a, b) == g.mul(b, a) for b in g.elements())
    )


def quotient(g: GroupTable, n: Iterable[int]) -> tuple[GroupTable, GroupHom]:
    """Coset group G/N plus the projection homomorphism.

    Coset representatives are the lowest-index member; their words label
    the quotient elements.
    """
    sub = sorted(set(n))
    subset = set(sub)
    if 0 not in subset:
        raise NotSubgroup(f"{g.name}: subgroup must contain the identity")
    for a in sub:
        for b in sub:
            if g.mul(a, b) not in subset:
                raise NotSubgroup(
                    f"{g.name}: {{{', '.join(g.word(x) for x in sub)}}} is not closed"
                )
    for h in g.elements():
        for a in sub:
            if g.conj(h, a) not in subset:
                raise NotNormal(
                    f"{g.name}: conjugate {g.word(h)}*{g.word(a)}*{g.word(h)}^-1 escapes the subgroup"
                )

    coset_of: dict[int, int] = {}
    reps: list[int] = []
    for a in g.elements():
        if a in coset_of:
            continue
        members = sorted(g.mul(a, s) for s in sub)
        rep = members[0]
        idx = len(reps)
        reps.append(rep)
        for m in members:
            coset_of[m] = idx
    # reorder cosets by representative index (identity coset first)
    order_map = {old: new for new, old in enumerate(sorted(range(len(reps)), key=lambda i: reps[i]))}
    reps = sorted(reps)
    image = tuple(order_map[coset_of[a]] for a in g.elements())

    k = len(reps)
    mul = [[image[g.mul(reps[i], reps[j])] for j in range(k)] for i in range(k)]
    words = [g.word(r) for r in reps]
    gen_names = {}
    for name, idx in g.generator_names.items():
        if image[idx] != 0 and name not in gen_names:
            gen_names[name] = image[idx]
    sub_words = ",".join(g.word(x) for x in sub)
    q = GroupTable(f"{g.name}/{{{sub_words}}}", mul, words, gen_names)
    proj = GroupHom(source=g, target=q, image=image)
    if not verify_hom(proj):
        raise GroupError(f"{g.name}: quotient projection is not a homomorphism")
    return q, proj


def generating_sequence(g: GroupTable) -> list[int]:
    """A small generating sequence found greedily by lowest index."""
    gens: list[int] = []
    generated = {0}
    while len(generated) < g.order:
        nxt = min(a for a in g.elements() if a not in generated)
        gens.append(nxt)
        generated = _closure(g, gens)
    return gens


def _closure(g: GroupTable, seeds: Sequence[int]) -> set[int]:
    out = {0}
    frontier = [0]
    while frontier:
        x = frontier.pop()
        for s in seeds:
            y = g.mul(x, s)
            if y not in out:
                out.add(y)
                frontier.append(y)
    return out


def find_isomorphism(a: GroupTable, b: GroupTable) -> GroupHom:
    """Explicit isomorphism a -> b by backtracking over generator images.

    Raises IsoNotFound if none exists.  Intended for the tiny groups here.
    """
    if a.order != b.order:
        raise IsoNotFound(f"|{a.name}| = {a.order} != {b.order} = |{b.name}|")
    gens = generating_sequence(a)
    # express every element of a as (previous element) * generator
    expr: dict[int, tuple[int, int]] = {}
    known = [0]
    pos = 0
    while pos < len(known):
        x = known[pos]
        pos += 1
        for gi, s in enumerate(gens):
            y = a.mul(x, s)
            if y != 0 and y not in expr:
                expr[y] = (x, gi)
                known.append(y)

    orders_b: dict[int, list[int]] = {}
    for x in b.elements():
        orders_b.setdefault(b.element_order(x), []).append(x)

    def assign(images: list[int]) -> "GroupHom | None":
        phi = [0] * a.order
        for x in known[1:]:
            prev, gi = expr[x]
            phi[x] = b.mul(phi[prev], images[gi])
        if len(set(phi)) != a.order:
            return None
        h = GroupHom(source=a, target=b, image=tuple(phi))
        return h if verify_hom(h) else None

    def backtrack(i: int, images: list[int]) -> "GroupHom | None":
        if i == len(gens):
            return assign(images)
        for cand in orders_b.get(a.element_order(gens[i]), []):
            images.append(cand)
            found = backtrack(i + 1, images)
            if found is not None:
                return found
            images.pop()
        return None

    found = backtrack(0, [])
    if found is None:
        raise IsoNotFound(f"no isomorphism {a.name} -> {b.name}")
    return found


def is_isomorphic(a: GroupTable, b: GroupTable) -> bool:
    try:
        find_isomorphism(a, b)
        return True
    except IsoNotFound:
        return False


# ----------------------------------------------------------------------
# built-in presentations

def _dihedral(n: int, name: str, rot: str, ref: str) -> GroupTable:
    """Dihedral group of order 2n; element i + n*j is rot^i * ref^j."""
    size = 2 * n

    def idx(i: int, j: int) -> int:
        return (i % n) + n * (j % 2)

    mul = [[0] * size for _ in range(size)]
    for i1 in range(n):
        for j1 in range(2):
            for i2 in range(n):
                for j2 in range(2):
                    i = i1 - i2 if j1 else i1 + i2
                    mul[idx(i1, j1)][idx(i2, j2)] = idx(i, j1 + j2)

    def word(i: int, j: int) -> str:
        rpart = "" if i == 0 else (rot if i == 1 else f"{rot}{i}")
        spart = ref if j else ""
        return (rpart + spart) or "e"

    words = [word(i, j) for j in range(2) for i in range(n)]
    return GroupTable(name, mul, words, {rot: 1, ref: n})


# sigma_a * sigma_b = i^phase * sigma_prod, hard-coded from the Pauli algebra;
# cross-checked against exact matrices in the quantum module's tests.
_PAULI_PROD = (
    (0, 1, 2, 3),
    (1, 0, 3, 2),
    (2, 3, 0, 1),
    (3, 2, 1, 0),
)
_PAULI_PHASE = (
    (0, 0, 0, 0),
    (0, 0, 1, 3),
    (0, 3, 0, 1),
    (0, 1, 3, 0),
)


def _pauli_group() -> GroupTable:
    """The 16-element group {i^k sigma_j}; element index = 4*j + k."""
    size = 16

    def idx(k: int, j: int) -> int:
        return 4 * j + (k % 4)

    mul = [[0] * size for _ in range(size)]
    for j1 in range(4):
        for k1 in range(4):
            for j2 in range(4):
                for k2 in range(4):
                    j = _PAULI_PROD[j1][j2]
                    k = k1 + k2 + _PAULI_PHASE[j1][j2]
                    mul[idx(k1, j1)][idx(k2, j2)] = idx(k, j)

    letters = ("I", "X", "Y", "Z")
    phases = ("", "i", "-", "-i")
    words = [f"{phases[k]}{letters[j]}" for j in range(4) for k in range(4)]
    gens = {"iI": 1, "X": 4, "Y": 8, "Z": 12}
    return GroupTable("Pauli1", mul, words, gens)


def _klein_four() -> GroupTable:
    # element index encodes (x, y) bits as x + 2y
    mul = [[(a ^ b) for b in range(4)] for a in range(4)]
    return GroupTable("K4", mul, ["e", "a", "b", "ab"], {"a": 1, "b": 2})


def _cyclic_four() -> GroupTable:
    mul = [[(a + b) % 4 for b in range(4)] for a in range(4)]
    return GroupTable("Z4", mul, ["e", "t", "t2", "t3"], {"t": 1})


@lru_cache(maxsize=None)
def builtin_group(name: str) -> GroupTable:
    """One of the built-in groups K4, Z4, D4, D8, Pauli1 (cached instance)."""
    if name == "K4":
        return _klein_four()
    if name == "Z4":
        return _cyclic_four()
    if name == "D4":
        return _dihedral(4, "D4", "r", "s")
    if name == "D8":
        return _dihedral(8, "D8", "z", "h")
    if name == "Pauli1":
        return _pauli_group()
    raise ValueError(f"unknown group {name!r}; expected one of {BUILTIN_NAMES}")
