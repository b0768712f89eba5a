"""Quantifier representations and their operations.

A quantifier of type <k> over universe n is a family of k-ary relations.
Six representations share one membership interface; every other operation
(downward closure, supports, automorphisms, compatibility, goodness) is
defined through membership and verified against brute-force scans in tests.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional, Sequence

import numpy as np

from . import _accel
from .config import DEFAULT_MAX_ENUM
from .errors import CapabilityError, DomainError, InvalidInputError
from .kernel import (
    Group,
    PartialInjection,
    Permutation,
    Relation,
    _cell_map,
    all_partial_injections,
    all_permutations,
    apply_to_relation,
    check_universe,
    compose,
    group_from_elements,
    index_tuple,
    iter_bits,
    tuple_index,
)

SUPERSET = "superset"
SUBSET = "subset"


class Quantifier:
    """Shared membership interface; subclasses fix the representation."""

    n: int
    arity: int
    kind: str

    def member(self, mask: int) -> bool:
        raise NotImplementedError

    def member_many(self, masks: np.ndarray) -> np.ndarray:
        """Vectorized membership for an int64 array of relation masks."""
        raise NotImplementedError

    @property
    def cells(self) -> int:
        return self.n**self.arity

    def _check_relation(self, rel: Relation) -> None:
        if (rel.n, rel.arity) != (self.n, self.arity):
            raise InvalidInputError(
                f"relation of shape (n={rel.n}, k={rel.arity}) does not match "
                f"quantifier shape (n={self.n}, k={self.arity})"
            )


@dataclass(frozen=True)
class ExtensionalQuantifier(Quantifier):
    """An explicit finite family of relation masks."""

    n: int
    arity: int
    members: frozenset[int]

    kind = "extensional"

    def __post_init__(self):
        check_universe(self.n)
        top = 1 << self.cells
        for m in self.members:
            if not 0 <= m < top:
                raise InvalidInputError("member mask out of range for quantifier shape")

    @classmethod
    def from_relations(cls, n: int, arity: int, relations: Iterable[Relation]) -> "ExtensionalQuantifier":
        masks = set()
        for r in relations:
            if (r.n, r.arity) != (n, arity):
                raise InvalidInputError("member relations must share universe and arity")
            masks.add(r.mask)
        return cls(n, arity, frozenset(masks))

    def relations(self) -> frozenset[Relation]:
        return frozenset(Relation(self.n, self.arity, m) for m in self.members)

    @cached_property
    def _sorted_members(self) -> np.ndarray:
        return np.array(sorted(self.members), dtype=np.int64)

    def member(self, mask: int) -> bool:
        return mask in self.members

    def member_many(self, masks: np.ndarray) -> np.ndarray:
        return _accel.isin_sorted(masks, self._sorted_members)


@dataclass(frozen=True)
class ClopenQuantifier(Quantifier):
    """Membership depends only on the trace inside the window {0..bound-1}^k.

    Accepted traces are masks in the full n**k bit space with bits only at
    window cells.
    """

    n: int
    arity: int
    bound: int
    accepted: frozenset[int]

    kind = "clopen"

    def __post_init__(self):
        check_universe(self.n)
        if not 0 <= self.bound <= self.n:
            raise InvalidInputError("clopen bound must lie in 0..n")
        window = self.window_mask
        for t in self.accepted:
            if t & ~window:
                raise InvalidInputError("accepted trace has bits outside the window")

    @classmethod
    def from_traces(
        cls, n: int, arity: int, bound: int, traces: Iterable[Iterable[Sequence[int]]]
    ) -> "ClopenQuantifier":
        accepted = frozenset(
            Relation.from_tuples(n, arity, trace).mask for trace in traces
        )
        return cls(n, arity, bound, accepted)

    @cached_property
    def window_cells(self) -> tuple[int, ...]:
        """Full-space cell indices of {0..bound-1}^k, in row-major order."""
        return tuple(
            tuple_index(t, self.n)
            for t in itertools.product(range(self.bound), repeat=self.arity)
        )

    @cached_property
    def window_mask(self) -> int:
        return sum(1 << c for c in self.window_cells)

    @cached_property
    def _sorted_accepted(self) -> np.ndarray:
        return np.array(sorted(self.accepted), dtype=np.int64)

    def member(self, mask: int) -> bool:
        return mask & self.window_mask in self.accepted

    def member_many(self, masks: np.ndarray) -> np.ndarray:
        masks = np.asarray(masks, dtype=np.int64)
        return _accel.isin_sorted(masks & np.int64(self.window_mask), self._sorted_accepted)

    def trace_table(self) -> np.ndarray:
        """Membership as a table over the 2**len(window) trace patterns."""
        cells = np.array(self.window_cells, dtype=np.int64)
        patterns = _accel.apply_index_perm(
            np.arange(1 << len(cells), dtype=np.int64), cells
        )
        return _accel.isin_sorted(patterns, self._sorted_accepted)


@dataclass(frozen=True)
class PrincipalQuantifier(Quantifier):
    """All supersets (or all subsets) of a base relation."""

    n: int
    arity: int
    base: int
    mode: str

    kind = "principal"

    def __post_init__(self):
        check_universe(self.n)
        if self.mode not in (SUPERSET, SUBSET):
            raise InvalidInputError(f"mode must be {SUPERSET!r} or {SUBSET!r}")
        if not 0 <= self.base < 1 << self.cells:
            raise InvalidInputError("base mask out of range")

    @classmethod
    def of_relation(cls, base: Relation, mode: str) -> "PrincipalQuantifier":
        return cls(base.n, base.arity, base.mask, mode)

    def member(self, mask: int) -> bool:
        if self.mode == SUPERSET:
            return mask & self.base == self.base
        return mask & ~self.base == 0

    def member_many(self, masks: np.ndarray) -> np.ndarray:
        masks = np.asarray(masks, dtype=np.int64)
        base = np.int64(self.base)
        if self.mode == SUPERSET:
            return (masks & base) == base
        return (masks & ~base) == 0


@dataclass(frozen=True)
class PrincipalComboQuantifier(Quantifier):
    """A boolean combination of superset-principal quantifiers.

    blocks partition the n**d cells; a relation is a member when its hit
    vector (per-block containment signs) equals one of the sign vectors.
    """

    n: int
    dimension: int
    blocks: tuple[int, ...]
    signs: tuple[tuple[int, ...], ...]

    kind = "combo"

    def __post_init__(self):
        check_universe(self.n)
        total = 0
        for b in self.blocks:
            if b == 0:
                raise InvalidInputError("combo blocks must be nonempty")
            if b & total:
                raise InvalidInputError("combo blocks must be pairwise disjoint")
            total |= b
        if total != (1 << self.cells) - 1:
            raise InvalidInputError("combo blocks must cover the full cell grid")
        if len(set(self.signs)) != len(self.signs):
            raise InvalidInputError("sign vectors must be pairwise distinct")
        for s in self.signs:
            if len(s) != len(self.blocks) or any(v not in (1, -1) for v in s):
                raise InvalidInputError("sign vectors must be +/-1 vectors of block length")

    @property
    def arity(self) -> int:  # type: ignore[override]
        return self.dimension

    @classmethod
    def from_parts(
        cls,
        n: int,
        dimension: int,
        blocks: Iterable[Iterable[Sequence[int]]],
        signs: Iterable[Sequence[int]],
    ) -> "PrincipalComboQuantifier":
        block_masks = tuple(
            Relation.from_tuples(n, dimension, block).mask for block in blocks
        )
        return cls(n, dimension, block_masks, tuple(tuple(s) for s in signs))

    @cached_property
    def _sign_codes(self) -> np.ndarray:
        codes = sorted(_sign_code(s) for s in self.signs)
        return np.array(codes, dtype=np.int64)

    def hit_code(self, mask: int) -> int:
        code = 0
        for i, b in enumerate(self.blocks):
            if mask & b == b:
                code |= 1 << i
        return code

    def member(self, mask: int) -> bool:
        return _sign_code_member(self.hit_code(mask), self._sign_codes)

    def member_many(self, masks: np.ndarray) -> np.ndarray:
        masks = np.asarray(masks, dtype=np.int64)
        codes = np.zeros_like(masks)
        for i, b in enumerate(self.blocks):
            b64 = np.int64(b)
            codes |= (((masks & b64) == b64).astype(np.int64)) << i
        return _accel.isin_sorted(codes, self._sign_codes)

    def block_of_cell(self, cell: int) -> int:
        for i, b in enumerate(self.blocks):
            if b >> cell & 1:
                return i
        raise InvalidInputError(f"cell {cell} outside the grid")


def _sign_code(sign: Sequence[int]) -> int:
    return sum(1 << i for i, v in enumerate(sign) if v == 1)


def _code_sign(code: int, width: int) -> tuple[int, ...]:
    return tuple(1 if code >> i & 1 else -1 for i in range(width))


def _sign_code_member(code: int, sorted_codes: np.ndarray) -> bool:
    pos = int(np.searchsorted(sorted_codes, code))
    return pos < sorted_codes.shape[0] and int(sorted_codes[pos]) == code


@dataclass(frozen=True)
class ChainGroupQuantifier(Quantifier):
    """Downward closure of the group images of the chain relations.

    Chain j is {(0,0)} + {(i,i+1) : i < j}; a binary relation is a member
    when some group image of some chain contains it.  Since every chain is
    contained in the longest one, membership reduces to the images of the
    longest chain.
    """

    group: Group

    kind = "chain_group"
    arity = 2

    @property
    def n(self) -> int:  # type: ignore[override]
        return self.group.n

    def chain(self, j: int) -> Relation:
        if not 0 <= j < self.n:
            raise InvalidInputError(f"chain index {j} outside 0..{self.n - 1}")
        pairs = [(0, 0)] + [(i, i + 1) for i in range(j)]
        return Relation.from_tuples(self.n, 2, pairs)

    def chains(self) -> tuple[Relation, ...]:
        return tuple(self.chain(j) for j in range(self.n))

    @cached_property
    def max_images(self) -> tuple[int, ...]:
        """Distinct group images of the longest chain, as sorted masks."""
        longest = self.chain(self.n - 1)
        return tuple(sorted({apply_to_relation(g, longest).mask for g in self.group.elements}))

    @cached_property
    def _images_arr(self) -> np.ndarray:
        return np.array(self.max_images, dtype=np.int64)

    def member(self, mask: int) -> bool:
        return any(mask & ~img == 0 for img in self.max_images)

    def member_many(self, masks: np.ndarray) -> np.ndarray:
        return _accel.covered_any(masks, self._images_arr)


@dataclass(frozen=True)
class DownwardGeneratedQuantifier(Quantifier):
    """All subsets of the members of a generating family."""

    n: int
    arity: int
    generators: tuple[int, ...]

    kind = "downward_generated"

    def __post_init__(self):
        check_universe(self.n)
        top = 1 << self.cells
        for g in self.generators:
            if not 0 <= g < top:
                raise InvalidInputError("generator mask out of range")

    @classmethod
    def from_relations(cls, n: int, arity: int, relations: Iterable[Relation]) -> "DownwardGeneratedQuantifier":
        masks = []
        for r in relations:
            if (r.n, r.arity) != (n, arity):
                raise InvalidInputError("generators must share universe and arity")
            masks.append(r.mask)
        return cls(n, arity, tuple(sorted(set(masks))))

    @cached_property
    def _maximal(self) -> np.ndarray:
        gens = sorted(set(self.generators))
        keep = [
            g
            for g in gens
            if not any(g != h and g & ~h == 0 for h in gens)
        ]
        return np.array(keep, dtype=np.int64)

    def member(self, mask: int) -> bool:
        return any(mask & ~int(g) == 0 for g in self._maximal)

    def member_many(self, masks: np.ndarray) -> np.ndarray:
        return _accel.covered_any(masks, self._maximal)


# ---------------------------------------------------------------------------
# membership and conversions
# ---------------------------------------------------------------------------


def contains(q: Quantifier, rel: Relation) -> bool:
    """Whether the relation belongs to the quantifier's family."""
    q._check_relation(rel)
    return q.member(rel.mask)


def _guard_enumerable(q: Quantifier, max_enum: int) -> None:
    if q.cells > 62 or (1 << q.cells) > max_enum:
        raise CapabilityError(
            f"scan over 2**{q.cells} relations exceeds the enumeration limit {max_enum}"
        )


def membership_table(q: Quantifier, max_enum: int = DEFAULT_MAX_ENUM) -> np.ndarray:
    """Membership indicator over all 2**(n**k) relation masks."""
    _guard_enumerable(q, max_enum)
    return q.member_many(np.arange(1 << q.cells, dtype=np.int64))


def to_extensional(q: Quantifier, max_enum: int = DEFAULT_MAX_ENUM) -> ExtensionalQuantifier:
    """Enumerate the family explicitly (shape permitting)."""
    table = membership_table(q, max_enum)
    members = frozenset(int(m) for m in np.flatnonzero(table))
    return ExtensionalQuantifier(q.n, q.arity, members)


# ---------------------------------------------------------------------------
# downward closure, supports
# ---------------------------------------------------------------------------


def is_downward_closed(q: Quantifier, max_enum: int = DEFAULT_MAX_ENUM) -> bool:
    """Whether the family is closed under subsets."""
    if isinstance(q, (ChainGroupQuantifier, DownwardGeneratedQuantifier)):
        return True
    if isinstance(q, PrincipalQuantifier):
        return True if q.mode == SUBSET else q.base == 0
    if isinstance(q, ClopenQuantifier):
        return all(
            t ^ 1 << i in q.accepted for t in q.accepted for i in iter_bits(t)
        )
    if isinstance(q, PrincipalComboQuantifier):
        codes = {_sign_code(s) for s in q.signs}
        return all(c ^ 1 << i in codes for c in codes for i in iter_bits(c))
    _guard_enumerable(q, max_enum)
    return all(
        m ^ 1 << i in q.members for m in q.members for i in iter_bits(m)  # type: ignore[attr-defined]
    )


def _normalize_tuple_set(q: Quantifier, tuples: Iterable[Sequence[int]]) -> frozenset[int]:
    cells = set()
    for t in tuples:
        t = tuple(t)
        if len(t) != q.arity:
            raise InvalidInputError(f"tuple {t} does not have arity {q.arity}")
        cells.add(tuple_index(t, q.n))
    return frozenset(cells)


def _flip_matters(q: Quantifier, cell: int, max_enum: int) -> bool:
    """Whether toggling this cell can change membership of some relation."""
    if isinstance(q, ClopenQuantifier):
        window = q.window_cells
        if cell not in window:
            return False
        if (1 << len(window)) > max_enum:
            raise CapabilityError(
                f"trace scan over 2**{len(window)} patterns exceeds the limit {max_enum}"
            )
        return not _accel.flip_invariant(q.trace_table(), window.index(cell))
    _guard_enumerable(q, max_enum)
    return not _accel.flip_invariant(membership_table(q, max_enum), cell)


def supports(
    q: Quantifier, tuples: Iterable[Sequence[int]], max_enum: int = DEFAULT_MAX_ENUM
) -> bool:
    """Whether membership is unchanged by toggling any tuple outside the set."""
    keep = _normalize_tuple_set(q, tuples)
    return all(
        not _flip_matters(q, cell, max_enum)
        for cell in range(q.cells)
        if cell not in keep
    )


def support(
    q: Quantifier,
    elimination_order: Optional[Sequence[int]] = None,
    max_enum: int = DEFAULT_MAX_ENUM,
) -> frozenset[tuple[int, ...]]:
    """Greedy minimal supporting set: drop a cell whenever the rest supports.

    The default elimination order is ascending cell index; the result is
    order-independent (asserted by the verification suites).
    """
    order = list(range(q.cells)) if elimination_order is None else list(elimination_order)
    if sorted(order) != list(range(q.cells)):
        raise InvalidInputError("elimination order must enumerate every cell exactly once")
    keep = set(range(q.cells))
    for cell in order:
        candidate = keep - {cell}
        if supports(q, _cells_to_tuples(q, candidate), max_enum):
            keep = candidate
    return _cells_to_tuples(q, keep)


def _cells_to_tuples(q: Quantifier, cells: Iterable[int]) -> frozenset[tuple[int, ...]]:
    return frozenset(index_tuple(c, q.n, q.arity) for c in cells)


# ---------------------------------------------------------------------------
# automorphisms
# ---------------------------------------------------------------------------


def automorphisms(q: Quantifier, max_enum: int = DEFAULT_MAX_ENUM) -> Group:
    """The group of universe permutations leaving the family invariant."""
    if isinstance(q, ChainGroupQuantifier):
        return _chain_automorphisms(q)
    if q.cells <= 62 and (1 << q.cells) <= max_enum:
        return _table_automorphisms(q, max_enum)
    if isinstance(q, ClopenQuantifier):
        return _supported_automorphisms(q, max_enum)
    raise CapabilityError(
        "no automorphism scan strategy applies within the enumeration limit"
    )


def _table_automorphisms(q: Quantifier, max_enum: int) -> Group:
    table = membership_table(q, max_enum)
    elems = []
    for g in all_permutations(q.n):
        remap = np.array(_cell_map(g.images, q.arity), dtype=np.int64)
        if _accel.table_preserved(table, remap):
            elems.append(g)
    return group_from_elements(elems, q.n)


def _chain_automorphisms(q: ChainGroupQuantifier) -> Group:
    """Permutations mapping the set of longest-chain images onto itself.

    Image masks all have the same cardinality, so they form an antichain and
    preserving their downward closure is exactly permuting them.  Verdicts
    are constant on cosets of the source group, which the scan skips over.
    """
    n = q.n
    vectorized = q.cells <= 62
    images = q._images_arr if vectorized else None
    image_set = set(q.max_images)
    member: list[Permutation] = []
    seen: set[Permutation] = set()
    for g in all_permutations(n):
        if g in seen:
            continue
        remap = _cell_map(g.images, 2)
        if vectorized:
            ok = _accel.all_members_sorted(
                _accel.apply_index_perm(images, np.array(remap, dtype=np.int64)), images
            )
        else:
            ok = all(
                _remap_mask(m, remap) in image_set for m in q.max_images
            )
        coset = [compose(g, h) for h in q.group.elements]
        seen.update(coset)
        if ok:
            member.extend(coset)
    return group_from_elements(member, n)


def _remap_mask(mask: int, remap: Sequence[int]) -> int:
    out = 0
    for i in iter_bits(mask):
        out |= 1 << remap[i]
    return out


def _supported_automorphisms(q: ClopenQuantifier, max_enum: int) -> Group:
    """Automorphism scan for a quantifier with a small computed support.

    Permutations fixing every universe element named in the support are
    automorphisms, so the scan runs over images of those elements only and
    expands the matching cosets.
    """
    supp = support(q, max_enum=max_enum)
    supp_elems = sorted({v for t in supp for v in t})
    supp_cells = sorted(tuple_index(t, q.n) for t in supp)
    n = q.n
    others = [v for v in range(n) if v not in supp_elems]
    elems: list[Permutation] = []
    for images in itertools.permutations(range(n), len(supp_elems)):
        rep = _complete_injection(n, supp_elems, images)
        if _window_preserved(q, rep, supp_cells):
            free = [v for v in range(n) if v not in images]
            for tail in itertools.permutations(free):
                imgs = list(rep.images)
                for v, w in zip(others, tail):
                    imgs[v] = w
                elems.append(Permutation(n, tuple(imgs)))
    return group_from_elements(elems, n)


def _complete_injection(n: int, domain: Sequence[int], images: Sequence[int]) -> Permutation:
    imgs = [-1] * n
    for d, v in zip(domain, images):
        imgs[d] = v
    free = iter(v for v in range(n) if v not in set(images))
    for i in range(n):
        if imgs[i] < 0:
            imgs[i] = next(free)
    return Permutation(n, tuple(imgs))


def _window_preserved(q: Quantifier, g: Permutation, supp_cells: Sequence[int]) -> bool:
    """Membership agreement on every pattern over supp + g^-1(supp) cells."""
    remap = _cell_map(g.images, q.arity)
    inv_map = {c: i for i, c in enumerate(remap)}
    domain = sorted(set(supp_cells) | {inv_map[c] for c in supp_cells})
    if q.cells > 62:
        for bits in range(1 << len(domain)):
            pattern = _remap_mask(bits, domain)
            if q.member(pattern) != q.member(_remap_mask(pattern, remap)):
                return False
        return True
    scatter = np.array(domain, dtype=np.int64)
    patterns = _accel.apply_index_perm(
        np.arange(1 << len(domain), dtype=np.int64), scatter
    )
    mapped = _accel.apply_index_perm(patterns, np.array(remap, dtype=np.int64))
    return bool((q.member_many(patterns) == q.member_many(mapped)).all())


# ---------------------------------------------------------------------------
# compatibility and goodness
# ---------------------------------------------------------------------------


def _grid_cells(q: Quantifier, m: int) -> list[int]:
    """Full-space cell indices of {0..m-1}^k, row-major."""
    return [
        tuple_index(t, q.n) for t in itertools.product(range(m), repeat=q.arity)
    ]


def compatible(
    q: Quantifier, p: PartialInjection, max_enum: int = DEFAULT_MAX_ENUM
) -> bool:
    """Whether p preserves membership of every relation on its domain grid."""
    if p.n != q.n:
        raise InvalidInputError("injection and quantifier universes differ")
    if not is_downward_closed(q, max_enum):
        raise DomainError("compatibility is only defined for downward closed quantifiers")
    m = p.domain_size
    grid = _grid_cells(q, m)
    if len(grid) > 62 or (1 << len(grid)) > max_enum:
        raise CapabilityError(
            f"compatibility scan over 2**{len(grid)} subsets exceeds the limit"
        )
    mapped = [
        tuple_index(p.apply_tuple(t), q.n)
        for t in itertools.product(range(m), repeat=q.arity)
    ]
    if q.cells > 62:
        return all(
            q.member(_remap_mask(bits, grid)) == q.member(_remap_mask(bits, mapped))
            for bits in range(1 << len(grid))
        )
    idx = np.arange(1 << len(grid), dtype=np.int64)
    originals = _accel.apply_index_perm(idx, np.array(grid, dtype=np.int64))
    images = _accel.apply_index_perm(idx, np.array(mapped, dtype=np.int64))
    return bool((q.member_many(originals) == q.member_many(images)).all())


def _chain_compatible(q: ChainGroupQuantifier, p: PartialInjection) -> bool:
    """Fast compatibility for chain quantifiers via generator coverage.

    The trace of the family on the grid is generated downward by restricted
    images, and the pulled-back family by preimages of images; the two
    downward closures agree iff the generator families cover each other.
    """
    m = p.domain_size
    grid_tuples = list(itertools.product(range(m), repeat=2))
    grid_cells = [tuple_index(t, q.n) for t in grid_tuples]
    mapped_cells = [tuple_index(p.apply_tuple(t), q.n) for t in grid_tuples]
    restricted = set()
    pulled = set()
    for img in q.max_images:
        r = 0
        u = 0
        for pos, (c, mc) in enumerate(zip(grid_cells, mapped_cells)):
            if img >> c & 1:
                r |= 1 << pos
            if img >> mc & 1:
                u |= 1 << pos
        restricted.add(r)
        pulled.add(u)
    if len(grid_cells) > 62:
        return _mutual_cover_python(restricted, pulled)
    xs = np.array(sorted(restricted), dtype=np.int64)
    ys = np.array(sorted(pulled), dtype=np.int64)
    return _accel.all_covered(xs, ys) and _accel.all_covered(ys, xs)


def _mutual_cover_python(xs: set[int], ys: set[int]) -> bool:
    xmax = [x for x in xs if not any(x != z and x & ~z == 0 for z in xs)]
    ymax = [y for y in ys if not any(y != z and y & ~z == 0 for z in ys)]
    return all(any(x & ~y == 0 for y in ymax) for x in xmax) and all(
        any(y & ~x == 0 for x in xmax) for y in ymax
    )


def is_good(q: Quantifier, max_enum: int = DEFAULT_MAX_ENUM) -> bool:
    """Downward closed, and every compatible injection extends to an automorphism.

    Injections extending to an automorphism are compatible outright, so only
    the non-extending ones need a compatibility verdict.
    """
    if not is_downward_closed(q, max_enum):
        return False
    aut = automorphisms(q, max_enum)
    prefixes = {
        (m, g.images[:m]) for g in aut.elements for m in range(q.n + 1)
    }
    for m in range(q.n + 1):
        for p in all_partial_injections(q.n, m):
            if (m, p.images) in prefixes:
                continue
            if isinstance(q, ChainGroupQuantifier):
                if _chain_compatible(q, p):
                    return False
            elif compatible(q, p, max_enum):
                return False
    return True


def build_qg(group: Group) -> ChainGroupQuantifier:
    """The chain quantifier of a group; its automorphism group recovers the group."""
    return ChainGroupQuantifier(group)


# ---------------------------------------------------------------------------
# combos: hit vectors, minimization, automorphism characterization
# ---------------------------------------------------------------------------


def hit_vector(q: PrincipalComboQuantifier, rel: Relation) -> tuple[int, ...]:
    """Per-block containment signs; membership means the vector is accepted."""
    q._check_relation(rel)
    return _code_sign(q.hit_code(rel.mask), len(q.blocks))


def _mergeable(signs: set[tuple[int, ...]], width: int, i: int, j: int) -> bool:
    """Whether acceptance depends only on the merged sign of blocks i and j."""
    others = [k for k in range(width) if k != i and k != j]
    for rest in itertools.product((1, -1), repeat=len(others)):
        v = [0] * width
        for k, b in zip(others, rest):
            v[k] = b
        verdicts = []
        for vi, vj in ((1, -1), (-1, 1), (-1, -1)):
            v[i], v[j] = vi, vj
            verdicts.append(tuple(v) in signs)
        if len(set(verdicts)) > 1:
            return False
    return True


def _merge(
    blocks: list[int], signs: set[tuple[int, ...]], i: int, j: int
) -> tuple[list[int], set[tuple[int, ...]]]:
    new_blocks = [b for k, b in enumerate(blocks) if k != j]
    new_blocks[i if i < j else i - 1] = blocks[i] | blocks[j]
    new_signs = set()
    for s in signs:
        merged = 1 if s[i] == 1 and s[j] == 1 else -1
        v = [b for k, b in enumerate(s) if k != j]
        v[i if i < j else i - 1] = merged
        new_signs.add(tuple(v))
    return new_blocks, new_signs


def minimize_combo(q: PrincipalComboQuantifier) -> PrincipalComboQuantifier:
    """Coarsest block partition representing the same family.

    Iteratively merges a block pair whenever membership factors through the
    merged hit vector; the result admits no further merge.
    """
    blocks = list(q.blocks)
    signs = set(q.signs)
    merged = True
    while merged and len(blocks) > 1:
        merged = False
        for i, j in itertools.combinations(range(len(blocks)), 2):
            if _mergeable(signs, len(blocks), i, j):
                blocks, signs = _merge(blocks, signs, i, j)
                merged = True
                break
    return PrincipalComboQuantifier(q.n, q.dimension, tuple(blocks), tuple(sorted(signs)))


def is_minimal_combo(q: PrincipalComboQuantifier) -> bool:
    signs = set(q.signs)
    return len(q.blocks) == 1 or not any(
        _mergeable(signs, len(q.blocks), i, j)
        for i, j in itertools.combinations(range(len(q.blocks)), 2)
    )


def combo_automorphisms(q: PrincipalComboQuantifier) -> Group:
    """Automorphisms via block permutations with a sign-closure condition.

    g qualifies iff it permutes the blocks by some p and the sign set is
    closed under composing with p^-1.  Requires a minimal combo.
    """
    if not is_minimal_combo(q):
        raise DomainError("combo_automorphisms requires a minimal combo; run minimize_combo")
    width = len(q.blocks)
    mask_to_idx = {b: i for i, b in enumerate(q.blocks)}
    sign_set = set(q.signs)
    elems = []
    for g in all_permutations(q.n):
        remap = _cell_map(g.images, q.dimension)
        p = []
        for b in q.blocks:
            img = 0
            for c in iter_bits(b):
                img |= 1 << remap[c]
            idx = mask_to_idx.get(img)
            if idx is None:
                break
            p.append(idx)
        else:
            permuted = set()
            for s in sign_set:
                w = [0] * width
                for k in range(width):
                    w[p[k]] = s[k]
                permuted.add(tuple(w))
            if permuted == sign_set:
                elems.append(g)
    return group_from_elements(elems, q.n)
