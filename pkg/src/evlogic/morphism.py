"""p-morphisms between evidence models.

Clauses: atoms, forth/back for B and ≼, and the neighbourhood clauses

* forth_E: if X in E1(w) there is Y in E2(π w) with Y ⊆ π[X];
* back_E:  if Y in E2(π w) there is X in E1(w) with π[X] ⊆ Y.

Relational clauses are only in scope when both models carry the relation.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from . import formula as F
from .model import GeneralModel, ModelError, bits
from .semantics import EvalContext, truth_mask

CLAUSES = ("atoms", "forth_B", "back_B", "forth_P", "back_P", "forth_E", "back_E")


@dataclass
class PMorphismReport:
    in_scope: list[str]
    failures: dict[str, list[tuple]] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not any(self.failures.values())

    def __bool__(self) -> bool:
        return self.ok

    def failed_clauses(self) -> list[str]:
        return [c for c in self.in_scope if self.failures.get(c)]


@dataclass
class PMorphism:
    source: object
    target: object
    map: dict
    report: PMorphismReport | None = None

    def image(self, ws: Iterable) -> frozenset:
        return frozenset(self.map[w] for w in ws)


def _has_relations(m) -> bool:
    return isinstance(m, GeneralModel)


def _index_map(p: PMorphism) -> list[int]:
    src, tgt = p.source, p.target
    missing = [w for w in src.worlds if w not in p.map]
    if missing:
        raise ModelError(f"map is not total: no image for {missing[0]!r}")
    return [tgt.world_index(p.map[w]) for w in src.worlds]


def _image(pi: list[int], mask: int) -> int:
    r = 0
    for i in bits(mask):
        r |= 1 << pi[i]
    return r


def _check(src, tgt, pi: list[int], first_only: bool = False) -> PMorphismReport:
    relational = _has_relations(src) and _has_relations(tgt)
    scope = [c for c in CLAUSES if relational or c in ("atoms", "forth_E", "back_E")]
    fails: dict[str, list[tuple]] = {c: [] for c in scope}
    W1, W2 = src.worlds, tgt.worlds

    def stop():
        return first_only and any(fails.values())

    v1, v2 = src.valuation_masks, tgt.valuation_masks
    for atom in sorted(set(v1) | set(v2)):
        a1, a2 = v1.get(atom, 0), v2.get(atom, 0)
        for i in range(src.n):
            if (a1 >> i & 1) != (a2 >> pi[i] & 1):
                fails["atoms"].append((atom, W1[i]))
    if stop():
        return PMorphismReport(scope, fails)

    if relational:
        for name, r1, r2 in (("B", src.belief, tgt.belief), ("P", src.plausibility, tgt.plausibility)):
            for i in range(src.n):
                img = _image(pi, r1[i])
                for j in bits(r1[i]):
                    if not r2[pi[i]] >> pi[j] & 1:
                        fails["forth_" + name].append((W1[i], W1[j]))
                for k in bits(r2[pi[i]] & ~img):
                    fails["back_" + name].append((W1[i], W2[k]))
            if stop():
                return PMorphismReport(scope, fails)

    for i in range(src.n):
        e2 = tgt.evidence[pi[i]]
        imgs = [_image(pi, x) for x in src.evidence[i]]
        for x, img in zip(src.evidence[i], imgs):
            if not any(y & ~img == 0 for y in e2):
                fails["forth_E"].append((W1[i], src.world_set(x)))
        for y in e2:
            if not any(img & ~y == 0 for img in imgs):
                fails["back_E"].append((W1[i], tgt.world_set(y)))
        if stop():
            break
    return PMorphismReport(scope, fails)


def check_pmorphism(p: PMorphism) -> PMorphismReport:
    """Check every clause exhaustively; failures carry witnessing tuples."""
    p.report = _check(p.source, p.target, _index_map(p))
    return p.report


def is_surjective(p: PMorphism) -> bool:
    return set(p.map[w] for w in p.source.worlds) == set(p.target.worlds)


def compose(p: PMorphism, q: PMorphism) -> PMorphism:
    return PMorphism(p.source, q.target, {w: q.map[p.map[w]] for w in p.source.worlds})


def identity(m) -> PMorphism:
    return PMorphism(m, m, {w: w for w in m.worlds})


@dataclass
class Preservation:
    ok: bool
    witness: tuple | None = None  # (formula, source world)

    def __bool__(self) -> bool:
        return self.ok


def _context(m) -> EvalContext:
    return EvalContext(m, "explicit" if isinstance(m, GeneralModel) else "intended")


def _in_signature(f: F.Formula, allowed: set, seen: dict) -> bool:
    hit = seen.get(f)
    if hit is None:
        t = type(f)
        if t in (F.CondB, F.CondB2, F.AddEv):
            hit = False
        elif t in (F.Box, F.Diamond) and f.mod not in allowed:
            hit = False
        else:
            hit = all(_in_signature(c, allowed, seen) for c in f.children())
        seen[f] = hit
    return hit


def verify_truth_preservation(p: PMorphism, formulas: Iterable[F.Formula]) -> Preservation:
    """[[f]]_source = π⁻¹[[f]]_target for each formula of the shared signature."""
    pi = _index_map(p)
    allowed = {"A", "B", "E", "P"} if _has_relations(p.source) and _has_relations(p.target) else {"A", "E"}
    c1, c2 = _context(p.source), _context(p.target)
    memo1, memo2, seen = {}, {}, {}
    for f in formulas:
        if not _in_signature(f, allowed, seen):
            raise ValueError(f"formula outside the shared signature: {F.render(f)}")
        s1, s2 = truth_mask(c1, f, memo=memo1), truth_mask(c2, f, memo=memo2)
        for i in range(p.source.n):
            if (s1 >> i & 1) != (s2 >> pi[i] & 1):
                return Preservation(False, (f, p.source.worlds[i]))
    return Preservation(True)


def find_surjective_pmorphism(m1, m2, bound: int = 6) -> PMorphism | None:
    """First surjective p-morphism in lexicographic order of target indices, or None."""
    if m1.n > bound:
        raise ValueError(f"source has {m1.n} worlds; search bound is {bound}")
    if m2.n > m1.n:
        return None
    targets = range(m2.n)
    for pi in itertools.product(targets, repeat=m1.n):
        if len(set(pi)) != m2.n:
            continue
        report = _check(m1, m2, list(pi), first_only=True)
        if report.ok:
            p = PMorphism(m1, m2, {m1.worlds[i]: m2.worlds[j] for i, j in enumerate(pi)})
            p.report = _check(m1, m2, list(pi))
            return p
    return None


def load_map(data: Mapping, m1, m2) -> PMorphism:
    """Read a JSON map {source_id: target_id}; ids may be given as strings."""
    by1 = {str(w): w for w in m1.worlds}
    by2 = {str(w): w for w in m2.worlds}
    try:
        mapping = {by1[str(k)]: by2[str(v)] for k, v in data.items()}
    except KeyError as exc:
        raise ModelError(f"unknown world id {exc.args[0]!r} in map") from None
    return PMorphism(m1, m2, mapping)
