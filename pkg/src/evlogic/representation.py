"""Finite representation constructions and filtration.

Rep-worlds are triples ``(w, x, f)`` with ``f`` a 0/1 labelling of W, stored as
a tuple in world order.  Write ``agree(f, g, S)`` for ``f↾S = g↾S``.

* order: ``(w,x,f) ≼ (v,y,g)`` iff ``w ≼ v``, ``x = y`` and ``agree(f, g, ↑v)``;
* ``X^f(v)``: all ``(u, v, g)`` with ``u ∈ X`` and ``agree(g, f, ↑u)``;
* ``E^v(w,x,f)``: all ``X^g(v)`` with ``X ∈ E(w)``, ``v ∈ X`` and ``agree(g, f, ↑v)``;
* flat evidence at ``(w,x,f)``: the full set plus ``E^v(w,x,f)`` for each ``w B v``.

The concise variant fixes ``x = 0`` and uses the world-independent family
``{full} ∪ {X^g(0) : X ∈ 𝓔, g arbitrary}``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

from . import formula as F
from .model import ClassReport, EvidenceModel, GeneralModel, ModelError, bits, validate
from .morphism import PMorphism, _check, is_surjective, verify_truth_preservation
from .scenario import derived_plausibility_masks, family_intersection, maximal_fip
from .semantics import EvalContext, truth_mask


class RepWorld(NamedTuple):
    base: object
    tag: object
    labeling: tuple


@dataclass
class RepModel:
    kind: str  # flat | concise
    source: GeneralModel
    model: EvidenceModel  # worlds are RepWorld values
    order: tuple[int, ...]  # stored ≼ as upset masks
    projection: dict  # RepWorld -> source world
    # bookkeeping for the scenario check: rep-world index -> {v index: mask of E^v}
    blocks: dict = field(default_factory=dict, repr=False)

    @property
    def worlds(self) -> tuple:
        return self.model.worlds

    @property
    def lifted(self) -> GeneralModel:
        return self.model.lifted


def _agree(f: int, g: int, s: int) -> bool:
    return (f ^ g) & s == 0


def _labeling(f: int, n: int) -> tuple:
    return tuple(f >> k & 1 for k in range(n))


def _pullback(m: GeneralModel, base_of: list[int]) -> dict[str, int]:
    val = {}
    for p, mask in m.valuation:
        r = 0
        for k, i in enumerate(base_of):
            if mask >> i & 1:
                r |= 1 << k
        val[p] = r
    return val


def build_flat_representation(m: GeneralModel) -> tuple[RepModel, PMorphism]:
    report = validate(m)
    if not report.is_valid_model:
        raise ModelError(f"input is not a model: {report.violations[0]}")
    if not report.is_flat:
        raise ModelError("input is not flat")
    tags = list(bits(m.belief_range))
    if not tags:
        raise ModelError("B[W] is empty")
    n, up, W = m.n, m.plausibility, m.worlds
    nf = 1 << n
    triples = [(w, x, f) for w in range(n) for x in tags for f in range(nf)]
    pos = {t: k for k, t in enumerate(triples)}
    full = (1 << len(triples)) - 1

    xsets: dict = {}

    def x_set(xm: int, g: int, v: int) -> int:
        key = (xm, g, v)
        if key not in xsets:
            r = 0
            for u in bits(xm):
                for h in range(nf):
                    if _agree(h, g, up[u]):
                        r |= 1 << pos[(u, v, h)]
            xsets[key] = r
        return xsets[key]

    xcache: dict = {}

    def block(w: int, f: int, v: int) -> frozenset[int]:
        key = (w, f, v)
        if key not in xcache:
            out = set()
            for xm in m.evidence[w]:
                if xm >> v & 1:
                    for g in range(nf):
                        if _agree(g, f, up[v]):
                            out.add(x_set(xm, g, v))
            xcache[key] = frozenset(out)
        return xcache[key]

    evidence, blocks = [], {}
    for k, (w, x, f) in enumerate(triples):
        fam = {full}
        blocks[k] = {}
        for v in bits(m.belief[w]):
            b = block(w, f, v)
            blocks[k][v] = b
            fam |= b
        evidence.append(fam)
    order = []
    for (w, x, f) in triples:
        r = 0
        for v in bits(up[w]):
            for g in range(nf):
                if _agree(f, g, up[v]):
                    r |= 1 << pos[(v, x, g)]
        order.append(r)
    labels = [RepWorld(W[w], W[x], _labeling(f, n)) for (w, x, f) in triples]
    em = EvidenceModel.from_masks(labels, evidence, _pullback(m, [t[0] for t in triples]))
    rep = RepModel("flat", m, em, tuple(order), {r: r.base for r in labels}, blocks)
    return rep, PMorphism(rep.lifted, m, dict(rep.projection))


def build_concise_representation(m: GeneralModel) -> tuple[RepModel, PMorphism]:
    report = validate(m)
    if not report.is_valid_model:
        raise ModelError(f"input is not a model: {report.violations[0]}")
    if not report.is_concise:
        raise ModelError("input is not concise")
    n, up, W = m.n, m.plausibility, m.worlds
    nf = 1 << n
    pairs = [(w, f) for w in range(n) for f in range(nf)]
    pos = {t: k for k, t in enumerate(pairs)}
    full = (1 << len(pairs)) - 1
    fam = {full}
    for xm in m.evidence[0]:
        for g in range(nf):
            r = 0
            for u in bits(xm):
                for h in range(nf):
                    if _agree(h, g, up[u]):
                        r |= 1 << pos[(u, h)]
            fam.add(r)
    order = []
    for (w, f) in pairs:
        r = 0
        for v in bits(up[w]):
            for g in range(nf):
                if _agree(f, g, up[v]):
                    r |= 1 << pos[(v, g)]
        order.append(r)
    labels = [RepWorld(W[w], 0, _labeling(f, n)) for (w, f) in pairs]
    em = EvidenceModel.from_masks(labels, [fam] * len(pairs), _pullback(m, [t[0] for t in pairs]))
    rep = RepModel("concise", m, em, tuple(order), {r: r.base for r in labels})
    return rep, PMorphism(rep.lifted, m, dict(rep.projection))


def expected_size(m: GeneralModel, kind: str) -> int:
    if kind == "flat":
        return m.n * bin(m.belief_range).count("1") * 2 ** m.n
    return m.n * 2 ** m.n


def verify_plausibility_identity(rep: RepModel) -> bool:
    """Stored ≼ equals the specialization order of the rep evidence."""
    return derived_plausibility_masks(rep.model.evidence, rep.model.n) == rep.order


def _project(rep: RepModel, mask: int) -> int:
    src = rep.source
    r = 0
    for k in bits(mask):
        r |= 1 << src.world_index(rep.model.worlds[k].base)
    return r


def verify_scenario_structure(rep: RepModel, m: GeneralModel, sample: int | None = None) -> bool:
    """Each rep scenario is ``{full} ∪ E^v`` for some believed v and projects onto ↑v.

    For concise reps the candidate blocks are the whole family, matched by the
    projection law alone.  ``sample`` limits the number of rep-worlds checked
    (evenly spaced); None checks all of them.
    """
    em = rep.model
    full = em.full
    idx = range(em.n)
    if sample is not None and sample < em.n:
        step = em.n / sample
        idx = sorted({int(k * step) for k in range(sample)})
    for k in idx:
        sets = em.evidence[k]
        base = m.world_index(em.worlds[k].base)
        believed = list(bits(m.belief[base]))
        for fam in maximal_fip(sets, full):
            members = frozenset(sets[i] for i in bits(fam))
            proj = _project(rep, family_intersection(sets, fam, full))
            if rep.kind == "flat":
                ok = any(members == rep.blocks[k][v] | {full} and proj == m.plausibility[v]
                         for v in believed)
            else:
                ok = any(proj == m.plausibility[v] for v in believed)
            if not ok:
                return False
    return True


@dataclass
class RepresentationReport:
    kind: str
    checks: dict[str, bool]
    failed_clauses: list[str] = field(default_factory=list)
    witness: tuple | None = None
    rep_class: ClassReport | None = None

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def __bool__(self) -> bool:
        return self.ok


def verify_representation(m: GeneralModel, depth: int = 2, logic: str | None = None,
                          max_worlds: int = 3, scenario_sample: int | None = 16) -> RepresentationReport:
    """Build the rep, lift it, and check the projection end to end."""
    if m.n > max_worlds:
        raise ValueError(f"model has {m.n} worlds; bound is {max_worlds}")
    kind = logic or ("concise" if validate(m).is_concise else "flat")
    builder = build_concise_representation if kind == "concise" else build_flat_representation
    rep, pi = builder(m)
    lifted = pi.source
    idx = [m.world_index(rep.projection[w]) for w in lifted.worlds]
    morph = _check(lifted, m, idx)
    formulas = F.enumerate_formulas(sorted(set(m.atoms)) or ["p"], depth, F.BASE_OPERATORS)
    pres = verify_truth_preservation(pi, formulas)
    rep_class = validate(lifted)
    checks = {
        "size": rep.model.n == expected_size(m, kind),
        "surjective": is_surjective(pi),
        "pmorphism": morph.ok,
        "truth": pres.ok,
        "plausibility_identity": verify_plausibility_identity(rep),
        "scenario_structure": verify_scenario_structure(rep, m, scenario_sample),
        "rep_valid": rep_class.is_valid_model,
        "rep_flat": rep_class.is_flat,
    }
    if kind == "concise":
        checks["rep_concise"] = rep_class.is_concise
    return RepresentationReport(kind, checks, morph.failed_clauses(), pres.witness, rep_class)


# ---------------------------------------------------------------------------
# filtration

@dataclass
class FiltrationQuotient:
    source: GeneralModel
    pivot: F.Formula
    classes: list[frozenset]
    quotient: GeneralModel  # worlds are the classes themselves
    class_map: dict
    report: ClassReport

    def preserves_truth(self, mode: str = "explicit") -> tuple[bool, tuple | None]:
        """Every subformula of the pivot holds at w iff it holds at w's class."""
        c1 = EvalContext(self.source, mode)
        c2 = EvalContext(self.quotient, "explicit")
        for psi in F.subformulas(self.pivot):
            s1, s2 = truth_mask(c1, psi), truth_mask(c2, psi)
            for w in self.source.worlds:
                here = bool(s1 >> self.source.world_index(w) & 1)
                there = bool(s2 >> self.quotient.world_index(self.class_map[w]) & 1)
                if here != there:
                    return False, (psi, w)
        return True, None


def filtrate(m: GeneralModel | EvidenceModel, pivot, mode: str = "explicit") -> FiltrationQuotient:
    """Minimal filtration through the subformulas of ``pivot``, refined by ≼-maximality.

    An evidence model is lifted first.  The pivot must avoid [C], [U],
    conditional belief and evidence addition.
    """
    pivot = F.parse(pivot) if isinstance(pivot, str) else pivot
    if not F.is_base_language(pivot):
        raise ValueError("filtration pivot must be in the static base language")
    if isinstance(m, EvidenceModel):
        m, mode = m.lifted, "explicit"
    elif mode == "intended":
        m = m.base.lifted
    ctx = EvalContext(m, "explicit")
    subs = F.subformulas(pivot)
    masks = [truth_mask(ctx, s) for s in subs]
    maximal = m.maximal_mask
    keys: dict[tuple, list[int]] = {}
    for i in range(m.n):
        key = tuple(mk >> i & 1 for mk in masks) + (maximal >> i & 1,)
        keys.setdefault(key, []).append(i)
    groups = list(keys.values())
    cls_of = [0] * m.n
    for c, members in enumerate(groups):
        for i in members:
            cls_of[i] = c
    labels = [m.world_set(sum(1 << i for i in g)) for g in groups]

    def image(mask: int) -> int:
        r = 0
        for i in bits(mask):
            r |= 1 << cls_of[i]
        return r

    k = len(groups)
    ev = [set() for _ in range(k)]
    bel = [0] * k
    up = [0] * k
    for i in range(m.n):
        c = cls_of[i]
        ev[c].update(image(x) for x in m.evidence[i])
        bel[c] |= image(m.belief[i])
        up[c] |= image(m.plausibility[i])
    atoms = set(F.atoms_of(pivot))
    val = {}
    for p, mask in m.valuation:
        val[p] = image(mask) if p in atoms else 0
    base = EvidenceModel.from_masks(labels, ev, val)
    q = GeneralModel(base, tuple(bel), tuple(up))
    return FiltrationQuotient(m, pivot, labels, q,
                              {m.worlds[i]: labels[cls_of[i]] for i in range(m.n)}, validate(q))
