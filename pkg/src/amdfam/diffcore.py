"""Multiset differences over a finite abelian group.

Convention: ``D(A, B)`` counts ``x - y`` with ``x`` taken from the *first*
argument.  "Outgoing" differences of set i are ``D(A_i, A_j)`` summed over
j != i; "incoming" differences of set j are ``D(A_i, A_j)`` summed over
i != j, i.e. the negation of outgoing(j).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import ClassDefinitionError, DisjointnessError, ElementDomainError, IndexRangeError, TrivialFamilyError
from .group import Element, FiniteAbelianGroup, FiniteField, as_group


@dataclass(frozen=True)
class SetFamily:
    """Ordered list of subsets of a group.

    Sets are stored sorted in canonical group order.  Disjointness is
    enforced unless ``allow_overlap`` is set (difference families in the
    classical sense may share points; every external type may not).
    """

    group: FiniteAbelianGroup
    sets: tuple[tuple[Element, ...], ...]
    allow_overlap: bool = False

    def __post_init__(self):
        G = as_group(self.group)
        object.__setattr__(self, "group", G)
        cleaned = []
        for i, s in enumerate(self.sets):
            elems = [G.coerce(x) for x in s]
            if not elems:
                raise ElementDomainError(f"set {i + 1} is empty")
            if len(set(elems)) != len(elems):
                raise ElementDomainError(f"set {i + 1} contains a repeated element")
            cleaned.append(tuple(sorted(elems)))
        object.__setattr__(self, "sets", tuple(cleaned))
        if not self.allow_overlap:
            seen: dict[Element, int] = {}
            for i, s in enumerate(cleaned):
                for x in s:
                    if x in seen:
                        raise DisjointnessError(
                            f"element {list(x)} lies in sets {seen[x] + 1} and {i + 1}"
                        )
                    seen[x] = i
            if len(seen) > G.size:  # pragma: no cover - implied by disjointness
                raise DisjointnessError("family has more points than the group")

    @classmethod
    def of(cls, group, sets: Iterable[Iterable], allow_overlap: bool = False) -> "SetFamily":
        return cls(as_group(group), tuple(tuple(s) for s in sets), allow_overlap)

    @property
    def m(self) -> int:
        return len(self.sets)

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(s) for s in self.sets)

    @property
    def a(self) -> int:
        return sum(self.sizes)

    @property
    def is_disjoint(self) -> bool:
        return len({x for s in self.sets for x in s}) == self.a

    @property
    def is_uniform(self) -> bool:
        return len(set(self.sizes)) <= 1

    @property
    def support(self) -> frozenset:
        return frozenset(x for s in self.sets for x in s)

    def indices(self) -> list[list[int]]:
        G = self.group
        return [[G.index(x) for x in s] for s in self.sets]

    def size_classes(self) -> dict[int, list[int]]:
        """Set size -> 1-based indices, in order of first appearance."""
        out: dict[int, list[int]] = {}
        for i, k in enumerate(self.sizes, start=1):
            out.setdefault(k, []).append(i)
        return out

    def to_json(self) -> dict:
        return {
            "group": self.group.to_json(),
            "sets": [[list(x) for x in s] for s in self.sets],
        }

    def as_ints(self) -> list[list[int]]:
        """Sets as plain integers; only meaningful for cyclic groups."""
        return [[self.group.index(x) for x in s] for s in self.sets]

    def __repr__(self):
        if self.group.rank == 1:
            body = ", ".join("{" + ",".join(str(x[0]) for x in s) + "}" for s in self.sets)
        else:
            body = ", ".join(str([list(x) for x in s]) for s in self.sets)
        return f"SetFamily({self.group}: {body})"


def parse_family(group, sets, allow_overlap: bool = False) -> SetFamily:
    return SetFamily.of(group, sets, allow_overlap=allow_overlap)


@dataclass(frozen=True)
class FrequencyMap:
    """Multiset of nonzero group elements; absent key means count 0."""

    group: FiniteAbelianGroup
    counts: dict = field(default_factory=dict)

    def __post_init__(self):
        zero = self.group.zero
        if zero in self.counts:
            raise ElementDomainError("the identity never occurs as a difference")
        clean = {g: c for g, c in self.counts.items() if c > 0}
        object.__setattr__(self, "counts", clean)

    @classmethod
    def from_index_counts(cls, G: FiniteAbelianGroup, arr: Sequence[int]) -> "FrequencyMap":
        return cls(G, {G.element(i): c for i, c in enumerate(arr) if i and c})

    def __getitem__(self, g) -> int:
        return self.counts.get(self.group.coerce(g), 0)

    def __eq__(self, other):
        if not isinstance(other, FrequencyMap):
            return NotImplemented
        return self.group == other.group and self.counts == other.counts

    __hash__ = None

    def __add__(self, other: "FrequencyMap") -> "FrequencyMap":
        if other.group != self.group:
            raise ElementDomainError("cannot add frequency maps over different groups")
        out = dict(self.counts)
        for g, c in other.counts.items():
            out[g] = out.get(g, 0) + c
        return FrequencyMap(self.group, out)

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def table(self) -> list[int]:
        """Counts for every nonzero element in canonical order."""
        return [self.counts.get(g, 0) for g in self.group.nonzero()]

    @property
    def max(self) -> int:
        return max(self.counts.values(), default=0)

    @property
    def min(self) -> int:
        return min(self.table(), default=0)

    def uniform_value(self) -> int | None:
        """``lambda`` if every nonzero element occurs exactly lambda times."""
        t = self.table()
        return t[0] if len(set(t)) == 1 else None

    @property
    def is_uniform(self) -> bool:
        return self.uniform_value() is not None

    def reflect(self) -> "FrequencyMap":
        """Image under g -> -g."""
        G = self.group
        return FrequencyMap(G, {G.neg(g): c for g, c in self.counts.items()})

    def first_deviation(self, required: int) -> tuple[Element, int] | None:
        for g in self.group.nonzero():
            c = self.counts.get(g, 0)
            if c != required:
                return g, c
        return None

    def first_excess(self, bound: int) -> tuple[Element, int] | None:
        for g in self.group.nonzero():
            c = self.counts.get(g, 0)
            if c > bound:
                return g, c
        return None

    def to_json(self) -> dict:
        return {
            json.dumps(list(g), separators=(",", ":")): self.counts[g]
            for g in sorted(self.counts)
        }

    def format_table(self, title: str = "frequency") -> str:
        """Two-row difference/frequency table."""
        G = self.group
        heads = [str(g[0]) if G.rank == 1 else "(" + ",".join(map(str, g)) + ")" for g in G.nonzero()]
        vals = [str(c) for c in self.table()]
        w = [max(len(h), len(v)) for h, v in zip(heads, vals)]
        lw = max(len("difference"), len(title))
        row1 = "difference".ljust(lw) + " | " + " ".join(h.rjust(x) for h, x in zip(heads, w))
        row2 = title.ljust(lw) + " | " + " ".join(v.rjust(x) for v, x in zip(vals, w))
        return row1 + "\n" + "-" * len(row1) + "\n" + row2


# -- raw counting on indices --------------------------------------------------


def _count(G: FiniteAbelianGroup, pairs) -> list[int]:
    sub = G.sub_table
    arr = [0] * G.size
    for x, y in pairs:
        arr[sub[x][y]] += 1
    return arr


def _idx(G: FiniteAbelianGroup, A) -> list[int]:
    if isinstance(A, int):
        raise ElementDomainError("expected a set of elements, got an int")
    out = [G.index(G.coerce(x)) for x in A]
    if len(set(out)) != len(out):
        raise ElementDomainError("set contains a repeated element")
    return out


# -- public operations -------------------------------------------------------


def internal_differences(G, A) -> FrequencyMap:
    """``D(A)``: x - y over ordered pairs of distinct x, y in A."""
    G = as_group(G)
    a = _idx(G, A)
    if not a:
        raise ElementDomainError("set must be nonempty")
    return FrequencyMap.from_index_counts(G, _count(G, ((x, y) for x in a for y in a if x != y)))


def cross_differences(G, A, B) -> FrequencyMap:
    """``D(A, B)``: x - y with x in A, y in B (A and B disjoint)."""
    G = as_group(G)
    a, b = _idx(G, A), _idx(G, B)
    if not a or not b:
        raise ElementDomainError("sets must be nonempty")
    if set(a) & set(b):
        raise DisjointnessError("cross differences need disjoint sets")
    return FrequencyMap.from_index_counts(G, _count(G, ((x, y) for x in a for y in b)))


def _check_family(G, F: SetFamily) -> FiniteAbelianGroup:
    G = as_group(G) if G is not None else F.group
    if G != F.group:
        raise ElementDomainError(f"family lives in {F.group}, not {G}")
    if F.m < 2:
        raise TrivialFamilyError("external differences need at least two sets")
    if not F.is_disjoint:
        raise DisjointnessError("external differences need pairwise disjoint sets")
    return G


def _check_index(F: SetFamily, i: int) -> int:
    if not 1 <= i <= F.m:
        raise IndexRangeError(f"set index {i} out of range 1..{F.m}")
    return i - 1


def external_difference_multiset(G, F: SetFamily) -> FrequencyMap:
    G = _check_family(G, F)
    idx = F.indices()
    pairs = ((x, y) for i, A in enumerate(idx) for j, B in enumerate(idx) if i != j for x in A for y in B)
    return FrequencyMap.from_index_counts(G, _count(G, pairs))


def outgoing_differences(G, F: SetFamily, i: int) -> FrequencyMap:
    """Sum of ``D(A_i, A_j)`` over j != i (1-based i)."""
    G = _check_family(G, F)
    i0 = _check_index(F, i)
    idx = F.indices()
    pairs = ((x, y) for j, B in enumerate(idx) if j != i0 for x in idx[i0] for y in B)
    return FrequencyMap.from_index_counts(G, _count(G, pairs))


def incoming_differences(G, F: SetFamily, j: int) -> FrequencyMap:
    """Sum of ``D(A_i, A_j)`` over i != j (1-based j)."""
    G = _check_family(G, F)
    j0 = _check_index(F, j)
    idx = F.indices()
    pairs = ((x, y) for i, A in enumerate(idx) if i != j0 for x in A for y in idx[j0])
    return FrequencyMap.from_index_counts(G, _count(G, pairs))


def class_differences(G, F: SetFamily, indices: Iterable[int]) -> FrequencyMap:
    """Sum of outgoing differences over a class of equal-size sets."""
    G = _check_family(G, F)
    cls = sorted(set(indices))
    if not cls:
        raise ClassDefinitionError("empty class")
    for i in cls:
        _check_index(F, i)
    sizes = {F.sizes[i - 1] for i in cls}
    if len(sizes) != 1:
        raise ClassDefinitionError(f"class {cls} mixes set sizes {sorted(sizes)}")
    total = FrequencyMap(G, {})
    for i in cls:
        total = total + outgoing_differences(G, F, i)
    return total


def summed_internal_differences(G, F: SetFamily) -> FrequencyMap:
    """Sum of ``D(A_i)`` over all sets (the difference-family multiset)."""
    G = as_group(G) if G is not None else F.group
    total = FrequencyMap(G, {})
    for s in F.sets:
        total = total + internal_differences(G, s)
    return total
