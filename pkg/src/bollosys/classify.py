"""Pair predicates and whole-family classification for the five system classes.

The classes are nested: symmetric => strong => bollobas => skew => weak.
Skew is the one order-sensitive class; it quantifies over member pairs in the
family's listed order, so reversing a family may change its skew flag and
nothing else.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import DPartition, Family

CLASS_NAMES = ("weak", "skew", "bollobas", "strong", "symmetric")


@dataclass(frozen=True)
class ClassFlags:
    weak: bool
    skew: bool
    bollobas: bool
    strong: bool
    symmetric: bool

    def as_dict(self) -> dict[str, bool]:
        return {name: getattr(self, name) for name in CLASS_NAMES}

    def chain_consistent(self) -> bool:
        """symmetric => strong => bollobas => skew => weak."""
        chain = (self.symmetric, self.strong, self.bollobas, self.skew, self.weak)
        return all(not a or b for a, b in zip(chain, chain[1:]))


def _require_same_d(p: DPartition, q: DPartition) -> int:
    if p.d != q.d:
        raise ValueError(f"d mismatch: {p.d} vs {q.d}")
    return p.d


def _forward(pm: tuple[int, ...], qm: tuple[int, ...], d: int) -> bool:
    # exists p < q with parts P(p) and Q(q) intersecting
    for p in range(d - 1):
        a = pm[p]
        if not a:
            continue
        for q in range(p + 1, d):
            if a & qm[q]:
                return True
    return False


def _symmetric(pm: tuple[int, ...], qm: tuple[int, ...], d: int) -> bool:
    # one index pair p < q intersecting in both directions
    for p in range(d - 1):
        a, b = pm[p], qm[p]
        if not a and not b:
            continue
        for q in range(p + 1, d):
            if a & qm[q] and b & pm[q]:
                return True
    return False


def _strong(pm: tuple[int, ...], qm: tuple[int, ...], d: int) -> bool:
    # A crossing witness: an upper intersection (p, q) with p < q and P(p)
    # meeting Q(q), plus a lower one (p2, q2) with q2 < p2 and P(p2) meeting
    # Q(q2), arranged so that p < p2 and q2 < q.  Equivalently, witnesses
    # u1 < u2, v1 < v2 to P(u1) meeting Q(v2) and P(u2) meeting Q(v1) that
    # also satisfy u1 < v2 and v1 < u2; without that crossing requirement the
    # predicate would not imply the bollobas one and the class chain would
    # break (e.g. ({1,2},{3},{}) against ({1},{3},{2})).
    inf = d + 1
    lowmin = [inf] * d  # per row p2: least q2 < p2 with an intersection
    for p2 in range(1, d):
        a = pm[p2]
        if not a:
            continue
        for q2 in range(p2):
            if a & qm[q2]:
                lowmin[p2] = q2
                break
    # minq_above[p] = least lower-witness column over rows strictly after p
    suffix = inf
    minq_above = [inf] * d
    for p in range(d - 1, -1, -1):
        minq_above[p] = suffix
        suffix = min(suffix, lowmin[p])
    for p in range(d - 1):
        a = pm[p]
        if not a:
            continue
        threshold = minq_above[p]
        if threshold >= d:
            continue
        for q in range(d - 1, p, -1):  # largest upper-witness column first
            if a & qm[q]:
                if threshold < q:
                    return True
                break
    return False


def pair_skew(p: DPartition, q: DPartition) -> bool:
    """Ordered predicate: some earlier part of p meets a later part of q."""
    d = _require_same_d(p, q)
    return _forward(p.masks, q.masks, d)


def pair_weak(p: DPartition, q: DPartition) -> bool:
    d = _require_same_d(p, q)
    return _forward(p.masks, q.masks, d) or _forward(q.masks, p.masks, d)


def pair_bollobas(p: DPartition, q: DPartition) -> bool:
    d = _require_same_d(p, q)
    return _forward(p.masks, q.masks, d) and _forward(q.masks, p.masks, d)


def pair_strong(p: DPartition, q: DPartition) -> bool:
    d = _require_same_d(p, q)
    return _strong(p.masks, q.masks, d)


def pair_symmetric(p: DPartition, q: DPartition) -> bool:
    d = _require_same_d(p, q)
    return _symmetric(p.masks, q.masks, d)


def skew_witness(p: DPartition, q: DPartition) -> tuple[int, int, int] | None:
    """First (part_p, part_q, element) with part_p < part_q and the parts
    meeting, 0-based part indices; None when pair_skew(p, q) fails."""
    d = _require_same_d(p, q)
    pm, qm = p.masks, q.masks
    for a in range(d - 1):
        if not pm[a]:
            continue
        for b in range(a + 1, d):
            hit = pm[a] & qm[b]
            if hit:
                return (a, b, (hit & -hit).bit_length())
    return None


def classify_with_witnesses(
    family: Family,
) -> tuple[ClassFlags, dict[str, tuple[int, int]]]:
    """All five flags plus, per failed class, the first violating member pair.

    Pair indices are 0-based positions in the family's listed order, scanned
    lexicographically.  Every flag is reported; a class already falsified is
    simply not re-tested on later pairs (the outcome cannot change).
    """
    masks = [member.masks for member in family.members]
    d = family.d
    alive = {name: True for name in CLASS_NAMES}
    violations: dict[str, tuple[int, int]] = {}
    m = len(masks)
    for i in range(m):
        mi = masks[i]
        for j in range(i + 1, m):
            mj = masks[j]
            fwd = _forward(mi, mj, d)
            bwd = _forward(mj, mi, d)
            if alive["weak"] and not (fwd or bwd):
                alive["weak"] = False
                violations["weak"] = (i, j)
            if alive["skew"] and not fwd:
                alive["skew"] = False
                violations["skew"] = (i, j)
            if alive["bollobas"] and not (fwd and bwd):
                alive["bollobas"] = False
                violations["bollobas"] = (i, j)
            if alive["strong"] and not _strong(mi, mj, d):
                alive["strong"] = False
                violations["strong"] = (i, j)
            if alive["symmetric"] and not _symmetric(mi, mj, d):
                alive["symmetric"] = False
                violations["symmetric"] = (i, j)
        if not any(alive.values()):
            break
    return ClassFlags(**alive), violations


def classify(family: Family) -> ClassFlags:
    flags, _ = classify_with_witnesses(family)
    return flags
