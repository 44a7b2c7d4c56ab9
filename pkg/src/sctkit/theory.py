"""Supercharacter theories: validation, the lattice operations, enumeration.

A theory is determined by its partition of the group into superclasses.
The matching partition of the irreducible characters is recovered by
grouping irreducibles with equal central-character values on the
superclass sums, and the supercharacters ``sigma_X = sum psi(1) psi`` are
then checked directly to be constant on every superclass.

Order convention: ``S <= T`` (``refines(S, T)``) when every superclass of
``S`` lies inside a superclass of ``T``.  The conjugacy-class theory
``m(G)`` is the least element and ``M(G)`` (classes ``{1}`` and
``G - {1}``) the greatest.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable, Iterator, Sequence

from .characters import CharacterTable, ClassFunction, character_table
from .cyclotomic import Cyclotomic
from .errors import (
    EmptySet,
    EnumerationCapExceeded,
    GroupMismatch,
    InternalAxiomFailure,
)
from .groups import FiniteGroup, Partition, conjugacy_classes

DEFAULT_ENUMERATION_CAP = 12


@dataclass(frozen=True, eq=False)
class SupercharacterTheory:
    group: FiniteGroup
    table: CharacterTable
    char_partition: Partition
    class_partition: Partition
    supercharacters: tuple[ClassFunction, ...]
    _cache: dict = field(default_factory=dict, repr=False)

    def __len__(self) -> int:
        return len(self.class_partition)

    @property
    def classes(self) -> tuple[tuple[int, ...], ...]:
        return self.class_partition.blocks

    def class_of(self, g: int) -> int:
        return self.class_partition.block_of[g]

    def cl(self, g: int) -> tuple[int, ...]:
        return self.class_partition.block(g)

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(int(s.degree.to_fraction()) for s in self.supercharacters)

    @property
    def class_sizes(self) -> tuple[int, ...]:
        return tuple(len(b) for b in self.class_partition.blocks)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SupercharacterTheory):
            return NotImplemented
        return self.group is other.group and self.class_partition == other.class_partition

    def __hash__(self) -> int:
        return hash((id(self.group), self.class_partition.blocks))

    def __repr__(self) -> str:
        return f"SupercharacterTheory(order={self.group.order}, classes={[list(b) for b in self.classes]})"

    def canonical_form(self) -> tuple[frozenset, frozenset]:
        """Group-independent form keyed by root-group elements (see ``FiniteGroup.origin``)."""
        G = self.group

        def key(g: int) -> tuple[int, ...]:
            return tuple(sorted(G.origin_of(g)))

        classes = frozenset(frozenset(key(g) for g in b) for b in self.classes)
        chars = frozenset(
            frozenset((key(b[0]), s(b[0])) for b in self.classes) for s in self.supercharacters
        )
        return classes, chars

    def to_json(self) -> dict[str, Any]:
        e = self.table.exponent
        return {
            "classes": [list(b) for b in self.classes],
            "char_blocks": [list(b) for b in self.char_partition.blocks],
            "supercharacter_values": [
                [{"conductor": e, "coeffs": [str(c) for c in s(b[0]).coeffs_at(e)]} for b in self.classes]
                for s in self.supercharacters
            ],
        }


@dataclass(frozen=True)
class Rejection:
    """Why a proposed superclass partition is not a supercharacter theory."""

    axiom: str
    message: str
    witness: Any = None

    def __bool__(self) -> bool:
        return False


# ---------------------------------------------------------------------------
# per-table caches of exact data in coefficient-vector form


def _vec_add(a: tuple, b: tuple) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


def _table_data(table: CharacterTable) -> dict:
    data = table._cache.get("sct_data")
    if data is None:
        e = table.exponent
        k = len(table)
        zero = tuple(Fraction(0) for _ in range(len(Cyclotomic.rational(0).coeffs_at(e))))
        omega, sigma_part = [], []
        for chi in table.irreducibles:
            d = chi.degree.to_fraction()
            omega.append([(chi.values[c] * Fraction(table.class_sizes[c]) / d).coeffs_at(e) for c in range(k)])
            sigma_part.append([(chi.values[c] * d).coeffs_at(e) for c in range(k)])
        cls = table.classes
        inv_class = [cls.block_of[table.group.inv[r]] for r in table.class_reps]
        data = {"omega": omega, "sigma": sigma_part, "zero": zero, "inv_class": inv_class}
        table._cache["sct_data"] = data
    return data


def sigma_character(table: CharacterTable, X: Iterable[int]) -> ClassFunction:
    """``sum_{psi in X} psi(1) psi``."""
    xs = sorted(set(X))
    if not xs:
        raise EmptySet("sigma of the empty set is not defined")
    out = None
    for i in xs:
        chi = table.irreducibles[i]
        term = chi * chi.degree
        out = term if out is None else out + term
    return out


def _class_blocks(table: CharacterTable, K: Partition) -> list[list[int]] | Rejection:
    """Express each block of K as a list of conjugacy-class indices, checking closure."""
    cls = table.classes
    out = []
    for b in K.blocks:
        members = set(b)
        cs = sorted({cls.block_of[g] for g in b})
        for c in cs:
            if not set(cls.blocks[c]) <= members:
                g = next(x for x in cls.blocks[c] if x not in members)
                return Rejection("class-closure", "superclass is not a union of conjugacy classes", (list(b), g))
        out.append(cs)
    return out


def validate_sct(table: CharacterTable, K: Partition | Sequence[Sequence[int]]) -> SupercharacterTheory | Rejection:
    """Accept ``K`` as the superclasses of a theory, or explain the first failure."""
    G = table.group
    if not isinstance(K, Partition):
        try:
            K = Partition.from_blocks(K, G.order)
        except ValueError as exc:
            return Rejection("partition", str(exc))
    if K.size != G.order:
        return Rejection("partition", f"partition covers {K.size} elements, group has {G.order}")
    if K.block(0) != (0,):
        return Rejection("identity-block", "{1} is not a superclass", list(K.block(0)))
    for b in K.blocks:
        image = tuple(sorted(G.inv[g] for g in b))
        if K.block(image[0]) != image:
            return Rejection("inverse-closure", "the inverse of a superclass is not a superclass", list(b))
    blocks = _class_blocks(table, K)
    if isinstance(blocks, Rejection):
        return blocks
    result = _validate_blocks(table, blocks)
    if isinstance(result, Rejection):
        return result
    char_partition = result
    sups = tuple(sigma_character(table, X) for X in char_partition.blocks)
    return SupercharacterTheory(G, table, char_partition, K, sups)


def _validate_blocks(table: CharacterTable, blocks: list[list[int]]) -> Partition | Rejection:
    data = _table_data(table)
    omega, sigma, zero = data["omega"], data["sigma"], data["zero"]
    groups: dict[tuple, list[int]] = {}
    for i in range(len(table)):
        key = []
        for cs in blocks:
            acc = zero
            for c in cs:
                acc = _vec_add(acc, omega[i][c])
            key.append(acc)
        groups.setdefault(tuple(key), []).append(i)
    if len(groups) != len(blocks):
        return Rejection(
            "equal-count",
            f"{len(groups)} character blocks against {len(blocks)} superclasses",
            (len(groups), len(blocks)),
        )
    char_partition = Partition.from_blocks(groups.values(), len(table))
    if char_partition.block(0) != (0,):
        return Rejection("trivial-block", "{1_G} is not a character block", list(char_partition.block(0)))
    for X in char_partition.blocks:
        vals = [zero] * len(table)
        for i in X:
            vals = [_vec_add(v, s) for v, s in zip(vals, sigma[i])]
        for cs in blocks:
            first = vals[cs[0]]
            for c in cs[1:]:
                if vals[c] != first:
                    return Rejection(
                        "sigma-constancy",
                        "sigma_X takes two values on one superclass",
                        (list(X), [table.class_reps[cs[0]], table.class_reps[c]]),
                    )
    return char_partition


def is_sct(table: CharacterTable, K) -> bool:
    return not isinstance(validate_sct(table, K), Rejection)


def _must(result: SupercharacterTheory | Rejection) -> SupercharacterTheory:
    if isinstance(result, Rejection):
        raise InternalAxiomFailure(f"{result.axiom}: {result.message} {result.witness}")
    return result


def minimal_sct(table: CharacterTable) -> SupercharacterTheory:
    """``m(G)``: the conjugacy classes and the characters chi(1) chi."""
    if "min" not in table._cache:
        table._cache["min"] = _must(validate_sct(table, table.classes))
    return table._cache["min"]


def maximal_sct(table: CharacterTable) -> SupercharacterTheory:
    """``M(G)``: superclasses {1} and G - {1}."""
    if "max" not in table._cache:
        n = table.group.order
        blocks = [[0]] + ([list(range(1, n))] if n > 1 else [])
        table._cache["max"] = _must(validate_sct(table, blocks))
    return table._cache["max"]


def theory_from_classes(G: FiniteGroup, blocks) -> SupercharacterTheory:
    """Build and validate a theory of ``G``; raises on rejection."""
    return _must(validate_sct(character_table(G), blocks))


def _same_group(S: SupercharacterTheory, T: SupercharacterTheory) -> None:
    if S.group is not T.group:
        raise GroupMismatch("theories belong to different groups")


def refines(S: SupercharacterTheory, T: SupercharacterTheory) -> bool:
    """``S <= T``: every superclass of ``S`` is contained in a superclass of ``T``."""
    _same_group(S, T)
    return S.class_partition.is_finer_than(T.class_partition)


def join(S: SupercharacterTheory, T: SupercharacterTheory) -> SupercharacterTheory:
    _same_group(S, T)
    K = S.class_partition.coarsen(T.class_partition)
    X = S.char_partition.coarsen(T.char_partition)
    U = _must(validate_sct(S.table, K))
    if U.char_partition != X:
        raise InternalAxiomFailure("joined character partition disagrees with the superclass join")
    return U


def meet(
    S: SupercharacterTheory, T: SupercharacterTheory, cap: int = DEFAULT_ENUMERATION_CAP
) -> SupercharacterTheory:
    """Greatest lower bound, as the join of every theory below both."""
    _same_group(S, T)
    out = minimal_sct(S.table)
    for U in enumerate_scts(S.table, cap):
        if refines(U, S) and refines(U, T):
            out = join(out, U)
    return out


# ---------------------------------------------------------------------------
# enumeration


def _inverse_stable_partitions(inv: list[int], items: list[int]) -> Iterator[list[int]]:
    """Set partitions of ``items`` that the involution ``inv`` maps onto themselves.

    Yields a block label per item.  Items are visited with each one followed
    by its partner, so a partial assignment is pruned as soon as a pair
    ``x ~ y`` is assigned without ``inv(x) ~ inv(y)``.
    """
    order: list[int] = []
    for c in items:
        if c not in order:
            order.append(c)
            if inv[c] != c:
                order.append(inv[c])
    label: dict[int, int] = {}

    def consistent(x: int) -> bool:
        xs = inv[x]
        if xs not in label:
            return True
        for y, ly in label.items():
            ys = inv[y]
            if ys in label and (label[x] == ly) != (label[xs] == label[ys]):
                return False
        return True

    def rec(i: int, nblocks: int) -> Iterator[list[int]]:
        if i == len(order):
            yield [label[c] for c in items]
            return
        x = order[i]
        for b in range(nblocks + 1):
            label[x] = b
            if consistent(x):
                yield from rec(i + 1, max(nblocks, b + 1))
            del label[x]

    yield from rec(0, 0)


def theory_sort_key(S: SupercharacterTheory) -> tuple:
    sizes = tuple(sorted(len(b) for b in S.classes))
    return (sizes, S.classes)


def enumerate_scts(table: CharacterTable, cap: int = DEFAULT_ENUMERATION_CAP) -> list[SupercharacterTheory]:
    """Every supercharacter theory, in canonical order.

    Superclasses are unions of conjugacy classes and inversion permutes
    them, so the search runs over set partitions of the non-identity
    classes that inversion maps onto themselves.
    """
    cls = table.classes
    if len(cls) > cap:
        raise EnumerationCapExceeded(f"{len(cls)} conjugacy classes exceed the cap {cap}")
    if "enumeration" in table._cache:
        return table._cache["enumeration"]
    inv_class = _table_data(table)["inv_class"]
    found = []
    for labels in _inverse_stable_partitions(inv_class, list(range(1, len(cls)))):
        nb = max(labels) + 1 if labels else 0
        cblocks = [[0]] + [[] for _ in range(nb)]
        for c, b in zip(range(1, len(cls)), labels):
            cblocks[b + 1].append(c)
        res = _validate_blocks(table, cblocks)
        if isinstance(res, Rejection):
            continue
        K = Partition.from_blocks(
            [[g for c in cs for g in cls.blocks[c]] for cs in cblocks], table.group.order
        )
        sups = tuple(sigma_character(table, X) for X in res.blocks)
        found.append(SupercharacterTheory(table.group, table, res, K, sups))
    found.sort(key=theory_sort_key)
    table._cache["enumeration"] = found
    return found
