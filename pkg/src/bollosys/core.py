"""Ground sets, d-partitions, families, and the ordering conventions they obey.

Elements are 1-based integers.  A ground set [n] = {1, ..., n} may carry an
ordered partition into blocks; when no blocks are given, the whole of [n] is a
single block.  A d-partition is an ordered tuple of pairwise disjoint subsets
of [n] (parts may be empty); it is *full* over a universe when the parts union
to that universe.  A family is an ordered, duplicate-free list of d-partitions
sharing one ground set.

All values are immutable after construction and safe to share across threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence


class InvariantError(ValueError):
    """A structural invariant of the data model is violated."""


class CapExceeded(RuntimeError):
    """An enumeration or search would exceed its configured cap."""


class VerificationError(RuntimeError):
    """Independent re-verification of a claimed result failed.

    Raised when a generator's output fails re-classification or a search
    witness does not check out; always indicates an internal bug (or a false
    closed-form value), never bad user input.
    """


def _element_set(elements: Iterable[int], what: str) -> frozenset[int]:
    out = frozenset(elements)
    for x in out:
        if not isinstance(x, int) or isinstance(x, bool) or x < 1:
            raise InvariantError(f"{what}: elements must be integers >= 1, got {x!r}")
    return out


def _mask(elements: frozenset[int]) -> int:
    m = 0
    for x in elements:
        m |= 1 << (x - 1)
    return m


@dataclass(frozen=True)
class GroundSet:
    """The set [n] together with an ordered partition into blocks X_1..X_e."""

    n: int
    blocks: tuple[frozenset[int], ...] = ()

    def __post_init__(self) -> None:
        if not isinstance(self.n, int) or self.n < 0:
            raise InvariantError("ground set size n must be a non-negative integer")
        blocks = tuple(_element_set(b, "block") for b in self.blocks)
        if not blocks:
            blocks = (frozenset(range(1, self.n + 1)),)
        object.__setattr__(self, "blocks", blocks)
        union: set[int] = set()
        total = 0
        for b in blocks:
            union |= b
            total += len(b)
        if total != len(union):
            raise InvariantError("blocks must be pairwise disjoint")
        if union != set(range(1, self.n + 1)):
            raise InvariantError("blocks must union to {1..n}")

    @property
    def e(self) -> int:
        return len(self.blocks)

    @cached_property
    def universe(self) -> frozenset[int]:
        return frozenset(range(1, self.n + 1))


@dataclass(frozen=True)
class DPartition:
    """One member (A(1), ..., A(d)): pairwise disjoint subsets, any may be empty."""

    parts: tuple[frozenset[int], ...]

    def __post_init__(self) -> None:
        parts = tuple(_element_set(p, "part") for p in self.parts)
        object.__setattr__(self, "parts", parts)
        if len(parts) < 1:
            raise InvariantError("a d-partition needs at least one part")
        total = sum(len(p) for p in parts)
        union: set[int] = set()
        for p in parts:
            union |= p
        if total != len(union):
            raise InvariantError("parts must be pairwise disjoint")

    @property
    def d(self) -> int:
        return len(self.parts)

    @cached_property
    def support(self) -> frozenset[int]:
        out: set[int] = set()
        for p in self.parts:
            out |= p
        return frozenset(out)

    @cached_property
    def masks(self) -> tuple[int, ...]:
        return tuple(_mask(p) for p in self.parts)

    @property
    def size_vector(self) -> tuple[int, ...]:
        return tuple(len(p) for p in self.parts)

    def is_full_over(self, universe: frozenset[int]) -> bool:
        return self.support == universe

    def sorted_parts(self) -> tuple[tuple[int, ...], ...]:
        """Canonical presentation: each part as a sorted tuple."""
        return tuple(tuple(sorted(p)) for p in self.parts)


@dataclass(frozen=True)
class Family:
    """An ordered list of d-partitions over one ground set.

    ``d`` may be given explicitly (mandatory for an empty family) and is
    otherwise inferred from the first member.  Duplicate members are rejected:
    a repeated member would violate every system class, so it is always a
    construction error.
    """

    ground: GroundSet
    members: tuple[DPartition, ...]
    d: int = 0

    def __post_init__(self) -> None:
        members = tuple(self.members)
        object.__setattr__(self, "members", members)
        d = self.d
        if d == 0:
            if not members:
                raise InvariantError("an empty family needs an explicit d")
            d = members[0].d
            object.__setattr__(self, "d", d)
        if d < 1:
            raise InvariantError("d must be at least 1")
        universe = self.ground.universe
        for idx, member in enumerate(members):
            if member.d != d:
                raise InvariantError(f"member {idx} has {member.d} parts, expected d={d}")
            if not member.support <= universe:
                raise InvariantError(f"member {idx} uses elements outside [n]")
        if len(set(members)) != len(members):
            raise InvariantError("duplicate members are not allowed")

    @property
    def m(self) -> int:
        return len(self.members)

    @cached_property
    def support(self) -> frozenset[int]:
        out: set[int] = set()
        for member in self.members:
            out |= member.support
        return frozenset(out)

    @cached_property
    def block_supports(self) -> tuple[frozenset[int], ...]:
        """S_k = S intersected with block X_k, in block order."""
        return tuple(self.support & block for block in self.ground.blocks)

    @property
    def block_support_sizes(self) -> tuple[int, ...]:
        return tuple(len(sk) for sk in self.block_supports)

    @property
    def support_size(self) -> int:
        return len(self.support)


@dataclass(frozen=True)
class SizeProfile:
    """Per-block, per-part cardinality table of one member: e rows, d columns."""

    table: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        table = tuple(tuple(int(x) for x in row) for row in self.table)
        object.__setattr__(self, "table", table)
        if any(x < 0 for row in table for x in row):
            raise InvariantError("profile entries must be non-negative")

    def flatten(self) -> tuple[int, ...]:
        return tuple(x for row in self.table for x in row)

    def row_sums(self) -> tuple[int, ...]:
        return tuple(sum(row) for row in self.table)


def set_less(f1: Iterable[int], f2: Iterable[int]) -> bool:
    """Whole-set order: every element of f1 precedes every element of f2.

    Convention: the empty set compares below and above everything, so both
    set_less(set(), F) and set_less(F, set()) are true.
    """
    a = f1 if isinstance(f1, (set, frozenset)) else set(f1)
    b = f2 if isinstance(f2, (set, frozenset)) else set(f2)
    if not a or not b:
        return True
    return max(a) < min(b)


def sets_increasing(parts: Sequence[Iterable[int]]) -> bool:
    """set_less over every ordered pair of the sequence, not just consecutive ones.

    Because empty sets satisfy both directions, this reduces to the nonempty
    members occupying strictly increasing element ranges.
    """
    prev_max = 0
    for part in parts:
        part = set(part)
        if not part:
            continue
        if min(part) <= prev_max:
            return False
        prev_max = max(part)
    return True


def parts_increasing(p: DPartition) -> bool:
    return sets_increasing(p.parts)


def lex_leq(a: Sequence[int], b: Sequence[int]) -> bool:
    """Left-to-right comparison; true when identical or a is smaller at the
    first differing index."""
    if len(a) != len(b):
        raise ValueError(f"length mismatch: {len(a)} vs {len(b)}")
    return tuple(a) <= tuple(b)


def size_profile(p: DPartition, g: GroundSet) -> SizeProfile:
    """The member's type: entry (k, r) counts elements of part r inside block k."""
    return SizeProfile(
        tuple(tuple(len(part & block) for part in p.parts) for block in g.blocks)
    )


def fill_to_full(family: Family) -> Family:
    """Extend every member to a full d-partition of the family support.

    Every member must already have increasing parts.  Each missing element x
    is inserted, in ascending order, into the part with the largest index
    that contains an element below x (the first part when none does); that
    placement keeps the parts increasing.  Two distinct members can only
    collide after filling if they had no cross-intersections at all, i.e. if
    the input was not even a weak system; collisions are therefore rejected.
    """
    support = family.support
    filled: list[DPartition] = []
    for idx, member in enumerate(family.members):
        if not parts_increasing(member):
            raise InvariantError(f"member {idx} does not have increasing parts")
        parts = [set(part) for part in member.parts]
        for x in sorted(support - member.support):
            target = 0
            for r, part in enumerate(parts):
                if part and min(part) < x:
                    target = r
            parts[target].add(x)
        new = DPartition(tuple(frozenset(p) for p in parts))
        if not parts_increasing(new):
            raise VerificationError("filling destroyed increasing parts")
        filled.append(new)
    if len(set(filled)) != len(filled):
        raise InvariantError(
            "members collide after filling; the input family is not a weak system"
        )
    return Family(family.ground, tuple(filled), family.d)


def with_blocks(family: Family, blocks: Sequence[Iterable[int]]) -> Family:
    """The same members over the same [n], re-grounded with the given blocks."""
    ground = GroundSet(family.ground.n, tuple(frozenset(b) for b in blocks))
    return Family(ground, family.members, family.d)
