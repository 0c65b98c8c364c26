"""Scenarios: maximal subfamilies of evidence with the finite intersection property.

On a finite ground set a nonempty family has the fip exactly when its full
intersection is nonempty.  Consequently every fip family F relative to R sits
inside some point family ``F_u = {X : u in X}`` with ``u in R``, and the maximal
fip families are the inclusion-maximal point families.  ``maximal_fip_bruteforce``
checks the definition subfamily by subfamily and serves as the oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .model import EvidenceModel, GeneralModel, bits

# ---------------------------------------------------------------------------
# mask-level engine


def intersection(sets: Iterable[int], full: int) -> int:
    r = full
    for x in sets:
        r &= x
    return r


def maximal_fip(sets: Sequence[int], restriction: int) -> list[int]:
    """Maximal fip subfamilies of ``sets`` relative to ``restriction``.

    ``sets`` must be distinct masks; each family is returned as a bitmask over
    positions in ``sets``.  An empty restriction yields the single empty family.
    """
    if not restriction:
        return [0]
    # refine R into blocks of worlds lying in exactly the same sets
    blocks = {restriction: 0}
    for k, x in enumerate(sets):
        nxt = {}
        for b, fam in blocks.items():
            inside, outside = b & x, b & ~x
            if inside:
                nxt[inside] = fam | 1 << k
            if outside:
                nxt[outside] = fam
        blocks = nxt
    point = set(blocks.values())
    return [f for f in point if not any(g != f and f & g == f for g in point)]


def maximal_fip_bruteforce(sets: Sequence[int], restriction: int, full: int) -> list[int]:
    """Oracle: every nonempty subfamily must meet ``restriction``; keep the maximal ones."""
    k = len(sets)
    ok = [False] * (1 << k)
    ok[0] = True
    for fam in range(1, 1 << k):
        inter = full
        for i in bits(fam):
            inter &= sets[i]
        if inter & restriction and all(ok[fam & ~(1 << i)] for i in bits(fam)):
            ok[fam] = True
    return [f for f in range(1 << k) if ok[f]
            and not any(ok[f | 1 << i] for i in range(k) if not f >> i & 1)]


def family_intersection(sets: Sequence[int], fam: int, full: int) -> int:
    return intersection((sets[i] for i in bits(fam)), full)


def scenario_intersections(sets: Sequence[int], restriction: int, full: int) -> list[int]:
    """``(⋂𝒳) ∩ restriction`` for each maximal relative family 𝒳."""
    return [family_intersection(sets, f, full) & restriction for f in maximal_fip(sets, restriction)]


def derived_belief_masks(evidence: Sequence[Sequence[int]], full: int) -> tuple[int, ...]:
    out = []
    for fam in evidence:
        r = 0
        for inter in scenario_intersections(fam, full, full):
            r |= inter
        out.append(r)
    return tuple(out)


def derived_plausibility_masks(evidence: Sequence[Sequence[int]], n: int) -> tuple[int, ...]:
    full = (1 << n) - 1
    every = {x for fam in evidence for x in fam}
    up = []
    for i in range(n):
        r = full
        for x in every:
            if x >> i & 1:
                r &= x
        up.append(r)
    return tuple(up)


def reliable_core(fam: Sequence[int], i: int, full: int) -> int:
    """⋂ of the evidence at world i that contains i."""
    return intersection((x for x in fam if x >> i & 1), full)


def unreliable_union(fam: Sequence[int], i: int) -> int:
    r = 0
    for x in fam:
        if not x >> i & 1:
            r |= x
    return r


# ---------------------------------------------------------------------------
# public, label-level API

def _em(m) -> EvidenceModel:
    return m.evidence_model


def has_fip(sets: Iterable[Iterable]) -> bool:
    """True iff every finite nonempty subfamily has nonempty intersection."""
    fam = [frozenset(s) for s in sets]
    if not fam:
        return True
    return bool(frozenset.intersection(*fam))


@dataclass(frozen=True)
class Scenario:
    anchor: object
    family: frozenset

    @property
    def intersection(self) -> frozenset:
        return frozenset.intersection(*self.family)


@dataclass(frozen=True)
class RelativizedScenario:
    anchor: object
    restriction: frozenset
    family: frozenset

    @property
    def intersection(self) -> frozenset:
        """``(⋂ family) ∩ restriction``; empty when the family is (empty restriction)."""
        if not self.family:
            return frozenset()
        return frozenset.intersection(*self.family) & self.restriction


def relative_scenarios(m, w, x: Iterable) -> list[RelativizedScenario]:
    em = _em(m)
    i = em.world_index(w)
    sets = em.evidence[i]
    r = em.mask(x)
    out = []
    for fam in sorted(maximal_fip(sets, r)):
        members = frozenset(em.world_set(sets[k]) for k in bits(fam))
        out.append(RelativizedScenario(w, em.world_set(r), members))
    return out


def scenarios(m, w) -> list[Scenario]:
    em = _em(m)
    return [Scenario(s.anchor, s.family) for s in relative_scenarios(em, w, em.worlds)]


def derived_belief(m) -> frozenset[tuple]:
    em = _em(m)
    masks = derived_belief_masks(em.evidence, em.full)
    return frozenset((em.worlds[i], em.worlds[j]) for i, b in enumerate(masks) for j in bits(b))


def derived_plausibility(m) -> frozenset[tuple]:
    """The specialization preorder of all evidence in the model."""
    em = _em(m)
    up = derived_plausibility_masks(em.evidence, em.n)
    return frozenset((em.worlds[i], em.worlds[j]) for i, u in enumerate(up) for j in bits(u))


def reliable_evidence(m, w) -> frozenset[frozenset]:
    em = _em(m)
    i = em.world_index(w)
    return frozenset(em.world_set(x) for x in em.evidence[i] if x >> i & 1)


def unreliable_evidence(m, w) -> frozenset[frozenset]:
    em = _em(m)
    i = em.world_index(w)
    return frozenset(em.world_set(x) for x in em.evidence[i] if not x >> i & 1)


def lift(m: EvidenceModel) -> GeneralModel:
    """The intended model: B and ≼ derived from the evidence."""
    em = _em(m)
    return GeneralModel(em, derived_belief_masks(em.evidence, em.full),
                        derived_plausibility_masks(em.evidence, em.n))
