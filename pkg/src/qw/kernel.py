"""Combinatorial substrate: tuples, relations, permutations, groups, orbits.

Universe elements are 0..n-1.  A k-ary relation is stored as a bitmask over
the n**k tuple cells, bit i corresponding to the tuple with row-major index
i = sum(t[j] * n**(k-1-j)).  The indexing is part of the file-format contract
and must not change.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Iterator, Optional, Sequence

from .config import max_universe
from .errors import InvalidInputError


def check_universe(n: int) -> None:
    if not 1 <= n <= max_universe():
        raise InvalidInputError(
            f"universe size {n} outside 1..{max_universe()} "
            "(raise QW_MAX_UNIVERSE to allow more)"
        )


def tuple_index(t: Sequence[int], n: int) -> int:
    """Row-major cell index of tuple t over universe n."""
    idx = 0
    for v in t:
        if not 0 <= v < n:
            raise InvalidInputError(f"tuple entry {v} outside universe 0..{n - 1}")
        idx = idx * n + v
    return idx


def index_tuple(idx: int, n: int, arity: int) -> tuple[int, ...]:
    """Inverse of tuple_index."""
    if not 0 <= idx < n**arity:
        raise InvalidInputError(f"index {idx} outside 0..{n ** arity - 1}")
    out = []
    for _ in range(arity):
        out.append(idx % n)
        idx //= n
    return tuple(reversed(out))


def iter_bits(mask: int) -> Iterator[int]:
    """Indices of set bits, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True, order=True)
class Relation:
    """A set of k-tuples over 0..n-1, as a bitmask of length n**k."""

    n: int
    arity: int
    mask: int

    def __post_init__(self):
        check_universe(self.n)
        if self.arity < 0:
            raise InvalidInputError("arity must be non-negative")
        if not 0 <= self.mask < 1 << self.n**self.arity:
            raise InvalidInputError("relation mask out of range for n**k cells")

    @classmethod
    def from_tuples(cls, n: int, arity: int, tuples: Iterable[Sequence[int]]) -> "Relation":
        mask = 0
        for t in tuples:
            if len(t) != arity:
                raise InvalidInputError(f"tuple {tuple(t)} does not have arity {arity}")
            mask |= 1 << tuple_index(t, n)
        return cls(n, arity, mask)

    @classmethod
    def empty(cls, n: int, arity: int) -> "Relation":
        return cls(n, arity, 0)

    @classmethod
    def full(cls, n: int, arity: int) -> "Relation":
        return cls(n, arity, (1 << n**arity) - 1)

    @property
    def cells(self) -> int:
        return self.n**self.arity

    @property
    def size(self) -> int:
        return self.mask.bit_count()

    def tuples(self) -> tuple[tuple[int, ...], ...]:
        return tuple(index_tuple(i, self.n, self.arity) for i in iter_bits(self.mask))

    def __contains__(self, t: Sequence[int]) -> bool:
        return bool(self.mask >> tuple_index(t, self.n) & 1)

    def issubset(self, other: "Relation") -> bool:
        self._check_shape(other)
        return self.mask & ~other.mask == 0

    def union(self, other: "Relation") -> "Relation":
        self._check_shape(other)
        return Relation(self.n, self.arity, self.mask | other.mask)

    def intersection(self, other: "Relation") -> "Relation":
        self._check_shape(other)
        return Relation(self.n, self.arity, self.mask & other.mask)

    def complement(self) -> "Relation":
        return Relation(self.n, self.arity, self.mask ^ (1 << self.cells) - 1)

    def _check_shape(self, other: "Relation") -> None:
        if (self.n, self.arity) != (other.n, other.arity):
            raise InvalidInputError("relations have mismatched universe or arity")


@dataclass(frozen=True, order=True)
class Permutation:
    """A bijection of 0..n-1, stored as its image sequence."""

    n: int
    images: tuple[int, ...]

    def __post_init__(self):
        check_universe(self.n)
        if sorted(self.images) != list(range(self.n)):
            raise InvalidInputError(f"images {self.images} are not a bijection of 0..{self.n - 1}")

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(n, tuple(range(n)))

    def __call__(self, x: int) -> int:
        return self.images[x]

    def apply_tuple(self, t: Sequence[int]) -> tuple[int, ...]:
        return tuple(self.images[v] for v in t)

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for i, v in enumerate(self.images):
            inv[v] = i
        return Permutation(self.n, tuple(inv))

    def is_identity(self) -> bool:
        return all(v == i for i, v in enumerate(self.images))


def compose(g: Permutation, h: Permutation) -> Permutation:
    """The permutation x -> g(h(x))."""
    if g.n != h.n:
        raise InvalidInputError("permutations live on different universes")
    return Permutation(g.n, tuple(g.images[v] for v in h.images))


@lru_cache(maxsize=100_000)
def _cell_map(images: tuple[int, ...], arity: int) -> tuple[int, ...]:
    """Cell-index remap induced by a universe permutation on k-tuples."""
    n = len(images)
    out = [0] * n**arity
    for idx in range(n**arity):
        out[idx] = tuple_index([images[v] for v in index_tuple(idx, n, arity)], n)
    return tuple(out)


def apply_to_relation(g: Permutation, rel: Relation) -> Relation:
    """Entrywise image {(g(t0),...,g(tk-1)) : t in rel}."""
    if g.n != rel.n:
        raise InvalidInputError("permutation and relation universes differ")
    remap = _cell_map(g.images, rel.arity)
    mask = 0
    for i in iter_bits(rel.mask):
        mask |= 1 << remap[i]
    return Relation(rel.n, rel.arity, mask)


@dataclass(frozen=True)
class Group:
    """A permutation group with fully enumerated elements.

    `elements` is sorted (identity first) and always equals the closure of
    `generators`; use group_from_generators to construct.
    """

    n: int
    generators: tuple[Permutation, ...]
    elements: tuple[Permutation, ...]

    @cached_property
    def element_set(self) -> frozenset[Permutation]:
        return frozenset(self.elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, g: Permutation) -> bool:
        return g in self.element_set

    def __eq__(self, other) -> bool:
        if not isinstance(other, Group):
            return NotImplemented
        return self.n == other.n and self.elements == other.elements

    def __hash__(self) -> int:
        return hash((self.n, self.elements))


def group_from_generators(generators: Iterable[Permutation], n: int) -> Group:
    """Closure of the generators (plus identity) under composition."""
    check_universe(n)
    gens = tuple(generators)
    for g in gens:
        if g.n != n:
            raise InvalidInputError(f"generator {g.images} not a permutation of 0..{n - 1}")
    identity = Permutation.identity(n)
    seen = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for h in frontier:
            for g in gens:
                p = compose(g, h)
                if p not in seen:
                    seen.add(p)
                    nxt.append(p)
        frontier = nxt
    return Group(n, gens, tuple(sorted(seen)))


def group_from_elements(elements: Iterable[Permutation], n: int) -> Group:
    """Group with a greedily reduced generating set; elements must be closed."""
    elems = tuple(sorted(set(elements)))
    gens: list[Permutation] = []
    closure = group_from_generators([], n)
    for e in elems:
        if e not in closure:
            gens.append(e)
            closure = group_from_generators(gens, n)
    if closure.elements != elems:
        raise InvalidInputError("element set is not closed under composition")
    return Group(n, tuple(gens), elems)


def trivial_group(n: int) -> Group:
    return group_from_generators([], n)


def symmetric_group(n: int) -> Group:
    if n == 1:
        return trivial_group(1)
    swap = Permutation(n, (1, 0) + tuple(range(2, n)))
    cycle = Permutation(n, tuple(range(1, n)) + (0,))
    return group_from_generators([swap, cycle], n)


def all_permutations(n: int) -> list[Permutation]:
    return [Permutation(n, p) for p in itertools.permutations(range(n))]


def orbit_of_tuple(group: Group, t: Sequence[int]) -> frozenset[tuple[int, ...]]:
    """{g(t) : g in group}."""
    t = _validated_tuple(group, t)
    return frozenset(g.apply_tuple(t) for g in group.elements)


def orbit_equivalent(group: Group, a: Sequence[int], b: Sequence[int]) -> bool:
    """True iff some group element maps a to b."""
    a = _validated_tuple(group, a)
    b = _validated_tuple(group, b)
    if len(a) != len(b):
        raise InvalidInputError("tuples have different arities")
    return any(g.apply_tuple(a) == b for g in group.elements)


def orbit_of_relation(group: Group, rel: Relation) -> frozenset[Relation]:
    """{g(rel) : g in group}."""
    if group.n != rel.n:
        raise InvalidInputError("group and relation universes differ")
    return frozenset(apply_to_relation(g, rel) for g in group.elements)


def stabilizer(group: Group, t: Sequence[int]) -> Group:
    """Subgroup fixing the tuple t pointwise-as-a-tuple."""
    t = _validated_tuple(group, t)
    elems = [g for g in group.elements if g.apply_tuple(t) == t]
    return group_from_elements(elems, group.n)


def _validated_tuple(group: Group, t: Sequence[int]) -> tuple[int, ...]:
    t = tuple(t)
    for v in t:
        if not 0 <= v < group.n:
            raise InvalidInputError(f"tuple entry {v} outside universe 0..{group.n - 1}")
    return t


def downward_closure(relations: Iterable[Relation]) -> frozenset[Relation]:
    """All subsets of members of the family: {A : exists B in F, A <= B}."""
    rels = list(relations)
    if not rels:
        return frozenset()
    n, arity = rels[0].n, rels[0].arity
    for r in rels:
        if (r.n, r.arity) != (n, arity):
            raise InvalidInputError("downward closure over mixed universes or arities")
    seen: set[int] = set()
    stack = [r.mask for r in rels]
    while stack:
        m = stack.pop()
        if m in seen:
            continue
        seen.add(m)
        for i in iter_bits(m):
            child = m ^ 1 << i
            if child not in seen:
                stack.append(child)
    return frozenset(Relation(n, arity, m) for m in seen)


@dataclass(frozen=True)
class PartialInjection:
    """An injection of the initial segment 0..m-1 into 0..n-1."""

    n: int
    images: tuple[int, ...]

    def __post_init__(self):
        check_universe(self.n)
        if len(set(self.images)) != len(self.images):
            raise InvalidInputError("partial injection images must be pairwise distinct")
        for v in self.images:
            if not 0 <= v < self.n:
                raise InvalidInputError(f"image {v} outside universe 0..{self.n - 1}")

    @property
    def domain_size(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def apply_tuple(self, t: Sequence[int]) -> tuple[int, ...]:
        return tuple(self.images[v] for v in t)


def extend_partial_injection(p: PartialInjection, group: Group) -> Optional[Permutation]:
    """First group element (in sorted order) extending p, or None."""
    if p.n != group.n:
        raise InvalidInputError("injection and group universes differ")
    m = p.domain_size
    for g in group.elements:
        if g.images[:m] == p.images:
            return g
    return None


def all_partial_injections(n: int, m: int) -> Iterator[PartialInjection]:
    """All injections of 0..m-1 into 0..n-1, in lexicographic image order."""
    for images in itertools.permutations(range(n), m):
        yield PartialInjection(n, images)
