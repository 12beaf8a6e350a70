"""Exact extremal family sizes over increasing-parts d-partitions.

A full d-partition of [s] with increasing parts is exactly a composition of s
into d non-negative parts (part r occupies the next run of consecutive
integers), so the default search space is the composition list.  The extremal
size of a pairwise-compatible class is then a maximum clique in the
compatibility graph, found by exhaustive branch-and-bound over bitset rows
with a greedy colouring bound.  The reported witness is the
lexicographically least maximum clique by vertex index, so results are
deterministic; it is re-verified through the classifier, which shares no code
with the search.

The ``general`` mode drops the fullness reduction on tiny instances: vertices
are all increasing-parts partitions with support inside [s] and cliques must
jointly cover [s].  It exists to cross-validate that the reduction loses
nothing, and agrees with the default mode wherever both run.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from math import comb
from typing import Iterator, Optional

from .classify import classify, pair_bollobas, pair_strong
from .core import (
    CapExceeded,
    DPartition,
    Family,
    GroundSet,
    VerificationError,
    parts_increasing,
)

DEFAULT_VERTEX_CAP = 5000

SEARCH_CLASSES = ("bollobas", "skew", "strong", "weak")


@dataclass(frozen=True)
class IntervalVertex:
    """A full increasing-parts d-partition of [s], keyed by its composition."""

    composition: tuple[int, ...]

    @cached_property
    def partition(self) -> DPartition:
        parts = []
        start = 1
        for size in self.composition:
            parts.append(frozenset(range(start, start + size)))
            start += size
        return DPartition(tuple(parts))


def compositions(s: int, d: int) -> Iterator[tuple[int, ...]]:
    """All d-tuples of non-negative integers summing to s, lexicographically."""
    if d == 1:
        yield (s,)
        return
    for first in range(s + 1):
        for rest in compositions(s - first, d - 1):
            yield (first,) + rest


def interval_vertices(d: int, s: int, cap: int = DEFAULT_VERTEX_CAP) -> list[IntervalVertex]:
    if d < 1 or s < 0:
        raise ValueError("need d >= 1 and s >= 0")
    count = comb(s + d - 1, d - 1)
    if count > cap:
        raise CapExceeded(f"{count} interval vertices, cap is {cap}")
    return [IntervalVertex(c) for c in compositions(s, d)]


def _general_vertices(d: int, s: int, cap: int) -> list[DPartition]:
    # increasing-parts partitions with support inside [s]: a support subset
    # plus a composition of its size
    count = sum(comb(s, t) * comb(t + d - 1, d - 1) for t in range(s + 1))
    if count > cap:
        raise CapExceeded(f"{count} general vertices, cap is {cap}")
    out: list[DPartition] = []
    for t in range(s + 1):
        for subset in itertools.combinations(range(1, s + 1), t):
            for comp in compositions(t, d):
                parts = []
                taken = 0
                for size in comp:
                    parts.append(frozenset(subset[taken : taken + size]))
                    taken += size
                out.append(DPartition(tuple(parts)))
    return out


@dataclass(frozen=True)
class SearchOutcome:
    value: int
    witness: Family
    mode: str
    exhaustive: bool


def _greedy_colour_bound(cand: int, adj: list[int]) -> int:
    # colour classes of the candidate set; their number bounds any clique in it
    classes: list[int] = []
    rest = cand
    while rest:
        low = rest & -rest
        rest ^= low
        v = low.bit_length() - 1
        for idx, members in enumerate(classes):
            if not members & adj[v]:
                classes[idx] = members | low
                break
        else:
            classes.append(low)
    return len(classes)


def _support_reachable(cand: int, covered: int, supports: list[int], required: int) -> bool:
    reach = covered
    rest = cand
    while rest and reach & required != required:
        low = rest & -rest
        rest ^= low
        reach |= supports[low.bit_length() - 1]
    return reach & required == required


def maximum_clique(
    adj: list[int],
    n: int,
    supports: Optional[list[int]] = None,
    required: int = 0,
) -> list[int]:
    """Lexicographically least maximum clique, as ascending vertex indices.

    When ``supports`` is given, only cliques whose accumulated support covers
    ``required`` count; a feasible clique must exist.  Phase one finds the
    optimum size by branch-and-bound, phase two rebuilds the lex-least
    optimum via decision searches, choosing the smallest feasible vertex at
    each position.
    """
    constrained = supports is not None
    best = -1

    def extend(size: int, cand: int, covered: int) -> None:
        nonlocal best
        if size > best and (not constrained or covered & required == required):
            best = size
        if not cand:
            return
        if constrained and not _support_reachable(cand, covered, supports, required):
            return
        if size + _greedy_colour_bound(cand, adj) <= best:
            return
        rest = cand
        while rest:
            low = rest & -rest
            rest ^= low
            cand ^= low
            v = low.bit_length() - 1
            extend(size + 1, cand & adj[v], covered | (supports[v] if constrained else 0))
            if size + _greedy_colour_bound(cand, adj) <= best:
                return

    full_mask = (1 << n) - 1
    extend(0, full_mask, 0)
    if best < 0:
        raise VerificationError("no feasible clique exists")

    def exists(need: int, cand: int, covered: int) -> bool:
        if need == 0:
            return not constrained or covered & required == required
        if constrained and not _support_reachable(cand, covered, supports, required):
            return False
        if _greedy_colour_bound(cand, adj) < need:
            return False
        rest = cand
        while rest:
            low = rest & -rest
            rest ^= low
            cand ^= low
            v = low.bit_length() - 1
            if exists(
                need - 1, cand & adj[v], covered | (supports[v] if constrained else 0)
            ):
                return True
        return False

    chosen: list[int] = []
    cand = full_mask
    covered = 0
    while len(chosen) < best:
        rest = cand
        placed = False
        while rest:
            low = rest & -rest
            rest ^= low
            v = low.bit_length() - 1
            new_cand = cand & adj[v] & ~((1 << (v + 1)) - 1)
            new_covered = covered | (supports[v] if constrained else 0)
            if exists(best - len(chosen) - 1, new_cand, new_covered):
                chosen.append(v)
                cand = new_cand
                covered = new_covered
                placed = True
                break
        if not placed:
            raise VerificationError("lex reconstruction lost the optimum clique")
    return chosen


def _support_mask(p: DPartition) -> int:
    mask = 0
    for pm in p.masks:
        mask |= pm
    return mask


def _verify_witness(witness: Family, class_name: str, s: int, expected: int) -> None:
    # independent of the search: re-classify and re-check shape
    if witness.m != expected:
        raise VerificationError(f"witness has {witness.m} members, claimed {expected}")
    if witness.support != frozenset(range(1, s + 1)):
        raise VerificationError("witness support does not cover [s]")
    if not all(parts_increasing(member) for member in witness.members):
        raise VerificationError("witness member without increasing parts")
    if not getattr(classify(witness), class_name):
        raise VerificationError(f"witness failed re-classification as {class_name}")


def n_bollobas(
    d: int, s: int, mode: str = "full-only", cap: int = DEFAULT_VERTEX_CAP
) -> SearchOutcome:
    """Exact maximum size of a bollobas system of increasing-parts
    d-partitions with support [s], by clique search."""
    if mode not in ("full-only", "general"):
        raise ValueError(f"unknown mode {mode!r}")
    if mode == "full-only":
        parts = [v.partition for v in interval_vertices(d, s, cap)]
        supports = None
        required = 0
    else:
        parts = _general_vertices(d, s, cap)
        supports = [_support_mask(p) for p in parts]
        required = (1 << s) - 1
    n = len(parts)
    adj = [0] * n
    for i in range(n):
        for j in range(i + 1, n):
            if pair_bollobas(parts[i], parts[j]):
                adj[i] |= 1 << j
                adj[j] |= 1 << i
    clique = maximum_clique(adj, n, supports, required)
    witness = Family(GroundSet(s), tuple(parts[i] for i in clique), d)
    _verify_witness(witness, "bollobas", s, len(clique))
    return SearchOutcome(len(clique), witness, mode, True)


def n_skew(d: int, s: int, cap: int = DEFAULT_VERTEX_CAP) -> SearchOutcome:
    """Exact skew maximum: every interval vertex, listed in decreasing
    lexicographic composition order.  The value is the vertex count (members
    of any candidate family are distinct vertices after filling, so nothing
    larger exists); a verification failure here is fatal, not a user error."""
    verts = interval_vertices(d, s, cap)
    ordered = sorted(verts, key=lambda v: v.composition, reverse=True)
    witness = Family(GroundSet(s), tuple(v.partition for v in ordered), d)
    value = comb(s + d - 1, d - 1)
    _verify_witness(witness, "skew", s, value)
    return SearchOutcome(value, witness, "full-only", True)


def n_strong(d: int, s: int, cap: int = DEFAULT_VERTEX_CAP) -> SearchOutcome:
    """Exact strong maximum, always 1: every pair of distinct interval
    vertices is re-checked to fail the strong predicate, so no two-member
    family survives and any single vertex is a witness."""
    verts = interval_vertices(d, s, cap)
    parts = [v.partition for v in verts]
    for i in range(len(parts)):
        for j in range(i + 1, len(parts)):
            if pair_strong(parts[i], parts[j]):
                raise VerificationError(
                    f"interval vertices {i} and {j} form a strong pair"
                )
    witness = Family(GroundSet(s), (parts[0],), d)
    _verify_witness(witness, "strong", s, 1)
    return SearchOutcome(1, witness, "full-only", True)


def n_weak(d: int, s: int, cap: int = DEFAULT_VERTEX_CAP) -> SearchOutcome:
    """Exact weak maximum: equals the skew value, with the skew witness (a
    skew system is weak).  No weak family can exceed the vertex count since
    filled members are distinct vertices."""
    base = n_skew(d, s, cap)
    _verify_witness(base.witness, "weak", s, base.value)
    return SearchOutcome(base.value, base.witness, "full-only", True)


def search_class(
    system_class: str, d: int, s: int, mode: str = "full-only", cap: int = DEFAULT_VERTEX_CAP
) -> SearchOutcome:
    if system_class == "bollobas":
        return n_bollobas(d, s, mode=mode, cap=cap)
    if mode != "full-only":
        raise ValueError("general mode is only implemented for the bollobas search")
    if system_class == "skew":
        return n_skew(d, s, cap)
    if system_class == "strong":
        return n_strong(d, s, cap)
    if system_class == "weak":
        return n_weak(d, s, cap)
    raise ValueError(f"unknown search class {system_class!r}")


@dataclass(frozen=True)
class TableCell:
    d: int
    s: int
    value: Optional[int]
    witness: Optional[Family]
    skipped: bool = False
    reason: Optional[str] = None


def n_table(
    d_values: list[int],
    s_values: list[int],
    system_class: str = "bollobas",
    cap: int = DEFAULT_VERTEX_CAP,
) -> list[TableCell]:
    """One searched cell per (d, s); cells beyond the cap are marked skipped
    with the reason, never fabricated.  Bollobas cells are sanity-bounded:
    floor(s/2)+1 <= value (d >= 3), value = 1 (d = 2), and always
    value <= C(s+d-1, d-1)."""
    cells: list[TableCell] = []
    for d in d_values:
        for s in s_values:
            try:
                outcome = search_class(system_class, d, s, cap=cap)
            except CapExceeded as exc:
                cells.append(TableCell(d, s, None, None, skipped=True, reason=str(exc)))
                continue
            value = outcome.value
            if system_class == "bollobas":
                upper = comb(s + d - 1, d - 1)
                if value > upper:
                    raise VerificationError(f"cell ({d},{s}) exceeds the vertex count")
                if d >= 3 and value < s // 2 + 1:
                    raise VerificationError(f"cell ({d},{s}) fell below floor(s/2)+1")
                if d == 2 and value != 1:
                    raise VerificationError(f"cell (2,{s}) must be 1, got {value}")
            cells.append(TableCell(d, s, value, outcome.witness))
    return cells
