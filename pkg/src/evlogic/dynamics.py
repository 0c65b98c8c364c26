"""Evidence change: addition, upward-closed addition, and plausibility cuts."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .model import EvidenceModel, GeneralModel, ModelError, bits
from .scenario import derived_plausibility_masks


@dataclass(frozen=True)
class UpdateRecord:
    kind: str  # add | add_closed | plausibility_cut
    payload: frozenset
    before: object
    after: object


def _add_mask(em: EvidenceModel, x: int) -> EvidenceModel:
    if x == 0:
        raise ModelError("empty evidence cannot be added")
    ev = tuple(fam if x in fam else tuple(sorted(fam + (x,))) for fam in em.evidence)
    return EvidenceModel(em.worlds, ev, em.valuation)


def add_evidence(m: EvidenceModel, x: Iterable) -> EvidenceModel:
    """Add the set x to every E(w)."""
    em = m.evidence_model
    return _add_mask(em, em.mask(x))


def upward_closure(m: GeneralModel, x: Iterable) -> frozenset:
    xm = m.mask(x)
    r = 0
    for i in bits(xm):
        r |= m.plausibility[i]
    return m.world_set(r)


def add_evidence_closed(m: GeneralModel, x: Iterable) -> GeneralModel:
    """Add the ≼-upward closure of x to every E(w); B and ≼ are kept."""
    closed = m.mask(upward_closure(m, x))
    return GeneralModel(_add_mask(m.base, closed), m.belief, m.plausibility)


def cut_plausibility(rel: Iterable[tuple], x: Iterable) -> frozenset[tuple]:
    """Drop every pair leaving x: ``rel - {(w, v) : w in x, v not in x}``."""
    xs = frozenset(x)
    return frozenset((w, v) for w, v in rel if not (w in xs and v not in xs))


def cut_masks(up: tuple[int, ...], x: int) -> tuple[int, ...]:
    return tuple(u & x if x >> i & 1 else u for i, u in enumerate(up))


def harmony_masks(em: EvidenceModel, x: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """(cut of the derived order, derived order after adding x)."""
    left = cut_masks(derived_plausibility_masks(em.evidence, em.n), x)
    right = derived_plausibility_masks(_add_mask(em, x).evidence, em.n)
    return left, right


def harmony_check(m: EvidenceModel, x: Iterable) -> bool:
    em = m.evidence_model
    left, right = harmony_masks(em, em.mask(x))
    return left == right
