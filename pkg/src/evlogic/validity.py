"""Axiom registry, bounded soundness sweeps, recursion laws, worked examples.

Sweeps never claim validity; a clean run means "no counterexample within
bounds".

Metavariables are extensional: the truth of a schema instance at a world only
depends on the truth sets of the substituted formulas.  Exhaustive sweeps
therefore let every metavariable range over *all* subsets of W, which covers
every instance of any depth under every valuation at once.  Random sweeps
instead use the truth sets actually reached by formulas of the requested depth
over the declared atoms, so counterexamples come with a concrete instance.

Pointed sweeps.  A schema is *pointwise* when no local operator ([E], <E>,
[B], <B>, [C], [U], conditional belief) occurs under a world-shifting operator
(any modality, any argument of conditional belief, the evidence argument of
[+.]).  Its truth at w then depends only on E(w), B(w), the order ≼ and the
metavariable sets, so it suffices to check the designated world of models in
which every other world carries the trivial data E = {W}, B = W.  In intended
mode ≼ is derived from all worlds, so [P]/<P> rule a schema out.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from . import formula as F
from .model import (EvidenceModel, GeneralModel, ModelBounds, _families, enumerate_evidence_models,
                    enumerate_models, preorders, random_evidence_model, random_model, upsets,
                    validate)
from .semantics import EvalContext, Frame, compile_formula, eval as eval_at

CLASSES = ("all", "flat", "uniform", "concise", "intended")
ALL = frozenset({"all", "flat", "uniform", "concise", "intended"})
FLAT = frozenset({"flat", "concise", "intended"})
UNIFORM = frozenset({"uniform", "concise"})
CONCISE = frozenset({"concise"})


@dataclass(frozen=True)
class AxiomEntry:
    name: str
    group: str
    classes: frozenset
    schema: F.Formula | None = None
    premises: tuple = ()
    conclusion: F.Formula | None = None

    @property
    def is_rule(self) -> bool:
        return self.schema is None

    @property
    def text(self) -> str:
        if self.is_rule:
            return " , ".join(F.render(p) for p in self.premises) + " / " + F.render(self.conclusion)
        return F.render(self.schema)


_ROWS = [
    # name, group, classes, schema
    ("excluded_middle", "tautology", ALL, "PHI | ~PHI"),
    ("weakening", "tautology", ALL, "PHI -> (PSI -> PHI)"),
    ("distribution", "tautology", ALL, "(PHI -> (PSI -> CHI)) -> ((PHI -> PSI) -> (PHI -> CHI))"),
    ("contraposition", "tautology", ALL, "(~PHI -> ~PSI) -> (PSI -> PHI)"),
    ("dual_B", "duality", ALL, "<B> PHI <-> ~[B] ~PHI"),
    ("dual_E", "duality", ALL, "<E> PHI <-> ~[E] ~PHI"),
    ("dual_A", "duality", ALL, "<A> PHI <-> ~[A] ~PHI"),
    ("dual_P", "duality", ALL, "<P> PHI <-> ~[P] ~PHI"),
    ("K_A", "S5_A", ALL, "[A](PHI -> PSI) -> ([A] PHI -> [A] PSI)"),
    ("T_A", "S5_A", ALL, "[A] PHI -> PHI"),
    ("4_A", "S5_A", ALL, "[A] PHI -> [A][A] PHI"),
    ("5_A", "S5_A", ALL, "<A> PHI -> [A]<A> PHI"),
    ("K_B", "K_B", ALL, "[B](PHI -> PSI) -> ([B] PHI -> [B] PSI)"),
    ("K_P", "S4_P", ALL, "[P](PHI -> PSI) -> ([P] PHI -> [P] PSI)"),
    ("T_P", "S4_P", ALL, "[P] PHI -> PHI"),
    ("4_P", "S4_P", ALL, "[P] PHI -> [P][P] PHI"),
    ("no_empty_evidence", "no_empty_evidence", ALL, "<E> true"),
    ("pullout", "pullout", ALL, "[E] PHI & [A] PSI <-> [E](PHI & [A] PSI)"),
    ("universality_E", "universality", ALL, "[A] PHI -> [E] PHI"),
    ("universality_B", "universality", ALL, "[A] PHI -> [B] PHI"),
    ("universality_P", "universality", ALL, "[A] PHI -> [P] PHI"),
    ("plausible_evidence", "plausible_evidence", ALL, "[E] PHI -> [E](PHI & [P] PHI)"),
    ("B_monotonicity", "B_monotonicity", ALL, "[B] PHI -> [B][P] PHI"),
    ("flatness", "flatness", FLAT, "[E] PHI -> <B> PHI"),
    ("uniformity_[B]", "uniformity", UNIFORM, "[B] PHI -> [A][B] PHI"),
    ("uniformity_<B>", "uniformity", UNIFORM, "<B> PHI -> [A]<B> PHI"),
    ("uniformity_[E]", "uniformity", UNIFORM, "[E] PHI -> [A][E] PHI"),
    ("uniformity_<E>", "uniformity", UNIFORM, "<E> PHI -> [A]<E> PHI"),
    ("maximality", "maximality", UNIFORM, "<B>(<P> ALPHA & BETA) -> <B>(ALPHA & <P> BETA)"),
    ("conciseness", "conciseness", CONCISE, "[B] PHI -> <P>[P] PHI"),
]

_RULES = [
    ("E_monotonicity", ALL, ("PHI -> PSI",), "[E] PHI -> [E] PSI"),
    ("MP", ALL, ("PHI", "PHI -> PSI"), "PSI"),
    ("N_A", ALL, ("PHI",), "[A] PHI"),
]

REGISTRY: dict[str, AxiomEntry] = {}
for _name, _group, _classes, _text in _ROWS:
    REGISTRY[_name] = AxiomEntry(_name, _group, _classes, F.parse_schema(_text))
for _name, _classes, _prem, _concl in _RULES:
    REGISTRY[_name] = AxiomEntry(_name, _name, _classes, None,
                                 tuple(F.parse_schema(p) for p in _prem), F.parse_schema(_concl))

AXIOMS = [e for e in REGISTRY.values() if not e.is_rule]
RULES = [e for e in REGISTRY.values() if e.is_rule]

RECURSION_LAWS: dict[str, F.Formula] = {
    name: F.parse_schema(text) for name, text in [
        # Q stands for an atom: a metavariable whose truth set is rigid under update
        ("atoms", "[+PHI] Q <-> (<A> PHI -> Q)"),
        ("conjunction", "[+PHI](PSI & CHI) <-> ([+PHI] PSI & [+PHI] CHI)"),
        ("negation", "[+PHI] ~PSI <-> (<A> PHI -> ~[+PHI] PSI)"),
        ("evidence", "[+PHI][E] PSI <-> (<A> PHI -> ([E][+PHI] PSI | [A](PHI -> [+PHI] PSI)))"),
        ("universal", "[+PHI][A] PSI <-> (<A> PHI -> [A][+PHI] PSI)"),
        ("belief", "[+PHI][B] PSI <-> (<A> PHI -> (B{PHI; true}[+PHI] PSI & B{true; ~PHI}[+PHI] PSI))"),
        ("conditional", "[+PHI] B{PSI; ALPHA} CHI <-> (<A> PHI -> "
                        "(B{PHI & [+PHI] PSI; [+PHI] ALPHA}[+PHI] CHI & B{[+PHI] PSI; ~PHI & [+PHI] ALPHA}[+PHI] CHI))"),
    ]
}


# ---------------------------------------------------------------------------
# results

@dataclass
class Counterexample:
    model: EvidenceModel | GeneralModel
    world: object
    instance: F.Formula
    mode: str  # explicit | intended

    def reverify(self) -> bool:
        """True when the instance really fails at the world."""
        return not eval_at(EvalContext(self.model, self.mode), self.world, self.instance)


@dataclass
class SweepResult:
    axiom: str
    cls: str
    models: int = 0
    instances: int = 0
    counterexample: Counterexample | None = None
    strategy: str = ""
    exploration: bool = False
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return self.counterexample is None

    def summary(self) -> str:
        tag = " [exploration]" if self.exploration else ""
        if self.ok:
            verdict = "no counterexample within bounds"
        else:
            c = self.counterexample
            verdict = f"COUNTEREXAMPLE at world {c.world!r}: {F.render(c.instance)}"
        return (f"{self.axiom} / {self.cls}{tag}: {verdict} "
                f"({self.models} models, {self.instances} instances, {self.strategy})")


# ---------------------------------------------------------------------------
# pointwise analysis

_LOCAL = (F.CondB, F.CondB2)


def _is_local(g: F.Formula) -> bool:
    if isinstance(g, _LOCAL):
        return True
    return isinstance(g, (F.Box, F.Diamond)) and g.mod in ("E", "B", "C", "U")


def pointwise(schema: F.Formula, intended: bool) -> bool:
    """See the module docstring."""

    def walk(g: F.Formula, shifted: bool) -> bool:
        if intended and isinstance(g, (F.Box, F.Diamond)) and g.mod == "P":
            return False
        if shifted and _is_local(g):
            return False
        if isinstance(g, (F.Box, F.Diamond, F.CondB, F.CondB2)):
            return all(walk(c, True) for c in g.children())
        if isinstance(g, F.AddEv):
            return walk(g.evidence, True) and walk(g.body, shifted)
        return all(walk(c, shifted) for c in g.children())

    return walk(schema, False)


def localize(m: GeneralModel | EvidenceModel, w) -> tuple:
    """The pointed model equivalent to (m, w) for pointwise schemas: w moved to
    position 0, every other world given trivial evidence and belief."""
    em = m.evidence_model
    i = em.world_index(w)
    order = [i] + [k for k in range(em.n) if k != i]
    perm = {old: new for new, old in enumerate(order)}

    def move(mask: int) -> int:
        r = 0
        for k in range(em.n):
            if mask >> k & 1:
                r |= 1 << perm[k]
        return r

    full = em.full
    ev = [tuple(sorted(move(x) for x in em.evidence[i]))] + [(full,)] * (em.n - 1)
    val = {p: move(mk) for p, mk in em.valuation}
    labels = tuple(range(1, em.n + 1))
    base = EvidenceModel(labels, tuple(ev), tuple(sorted(val.items())))
    if isinstance(m, GeneralModel):
        up = [0] * em.n
        for k in range(em.n):
            up[perm[k]] = move(m.plausibility[k])
        bel = [move(m.belief[i])] + [full] * (em.n - 1)
        return GeneralModel(base, tuple(bel), tuple(up)), 1
    return base, 1


# ---------------------------------------------------------------------------
# model families

def _pointed_explicit(max_worlds: int, max_sets: int, cls: str) -> Iterator[GeneralModel]:
    for n in range(1, max_worlds + 1):
        full = (1 << n) - 1
        labels = tuple(range(1, n + 1))
        for up in preorders(n):
            ups = upsets(up)
            for fam in _families(ups, full, max_sets):
                for b in ups:
                    if cls == "flat" and not all(x & b for x in fam):
                        continue
                    base = EvidenceModel(labels, (fam,) + ((full,),) * (n - 1))
                    yield GeneralModel(base, (b,) + (full,) * (n - 1), up)


def _pointed_evidence(max_worlds: int, max_sets: int) -> Iterator[EvidenceModel]:
    for n in range(1, max_worlds + 1):
        full = (1 << n) - 1
        labels = tuple(range(1, n + 1))
        for fam in _families(range(1, full + 1), full, max_sets):
            yield EvidenceModel(labels, (fam,) + ((full,),) * (n - 1))


def model_family(cls: str, max_worlds: int, max_sets: int, pointed: bool) -> Iterator[tuple]:
    """Yield ``(model, frame, mode)`` for an exhaustive sweep of a class.

    ``concise`` and ``uniform`` include the lifts of uniform evidence models
    alongside the explicit models.
    """
    if cls in ("all", "flat"):
        src = (_pointed_explicit(max_worlds, max_sets, cls) if pointed
               else enumerate_models(ModelBounds(max_worlds, max_sets, (), cls)))
        for m in src:
            yield m, Frame.explicit(m), "explicit"
    elif cls == "intended":
        src = (_pointed_evidence(max_worlds, max_sets) if pointed
               else enumerate_evidence_models(max_worlds, max_sets, up_to_iso=True))
        for em in src:
            yield em, Frame.intended(em), "intended"
    elif cls in ("uniform", "concise"):
        for m in enumerate_models(ModelBounds(max_worlds, max_sets, (), cls)):
            yield m, Frame.explicit(m), "explicit"
        for em in enumerate_evidence_models(max_worlds, max_sets, uniform=True, up_to_iso=True):
            if cls == "uniform" or validate(em.lifted).is_concise:
                yield em, Frame.intended(em), "intended"
    else:
        raise ValueError(f"unknown class {cls!r}; expected one of {CLASSES}")


def random_family(cls: str, count: int, seed: int, bounds: ModelBounds) -> Iterator[tuple]:
    """``count`` seeded models of the class, with random valuations of ``bounds.atoms``."""
    for k in range(count):
        s = seed * 1_000_003 + k
        if cls == "intended":
            em = random_evidence_model(s, bounds)
            yield em, Frame.intended(em), "intended"
        elif cls in ("uniform", "concise") and k % 4 == 3:
            em = random_evidence_model(s, bounds, uniform=True)
            yield em, Frame.intended(em), "intended"
        else:
            m = random_model(s, ModelBounds(bounds.max_worlds, bounds.max_evidence_sets_per_world,
                                            bounds.atoms, cls))
            yield m, Frame.explicit(m), "explicit"


# ---------------------------------------------------------------------------
# instance pools

def instance_denotations(fr: Frame, atoms: Sequence[str], depth: int,
                         operators: Iterable[str] = F.BASE_OPERATORS) -> dict[int, F.Formula]:
    """Truth set -> a shortest formula realizing it, over formulas of depth <= depth."""
    ops = set(operators)
    found: dict[int, F.Formula] = {}
    layer: dict[int, F.Formula] = {}
    for f in [F.Atom(a) for a in atoms] + [F.TRUE, F.FALSE]:
        s = fr.em.valuation_masks.get(f.name, 0) if isinstance(f, F.Atom) else (fr.full if f == F.TRUE else 0)
        layer.setdefault(s, f)
    found.update(layer)
    unary = [(name, mod) for name, mod in (("BoxB", "B"), ("BoxE", "E"), ("BoxA", "A"), ("BoxP", "P"))
             if name in ops]
    dias = [(name, mod) for name, mod in (("DiaB", "B"), ("DiaE", "E"), ("DiaA", "A"), ("DiaP", "P"))
            if name in ops]
    for _ in range(depth):
        nxt = dict(found)
        items = list(found.items())
        for s, f in items:
            if "Not" in ops:
                nxt.setdefault(fr.full & ~s, F.Not(f))
            for _, mod in unary:
                nxt.setdefault(fr.box(mod, s), F.Box(mod, f))
            for _, mod in dias:
                nxt.setdefault(fr.dia(mod, s), F.Diamond(mod, f))
        if "And" in ops:
            for (s, f), (t, g) in itertools.product(items, repeat=2):
                nxt.setdefault(s & t, F.And(f, g))
        if "Or" in ops:
            for (s, f), (t, g) in itertools.product(items, repeat=2):
                nxt.setdefault(s | t, F.Or(f, g))
        found = nxt
    return found


# ---------------------------------------------------------------------------
# sweep engine

@dataclass
class _Job:
    name: str
    schema: F.Formula
    metas: tuple
    fn: object
    pointed: bool
    result: SweepResult


def _fresh_instance(schema: F.Formula, metas: Sequence[str], values: Sequence[int],
                    model, taken: set) -> tuple:
    """Bind each metavariable to a fresh atom whose valuation is its truth set."""
    binding, val = {}, dict(model.valuation)
    for name, s in zip(metas, values):
        atom = name.lower()
        while atom in taken:
            atom += "_"
        taken.add(atom)
        binding[name] = F.Atom(atom)
        val[atom] = s
    em = model.evidence_model
    base = EvidenceModel(em.worlds, em.evidence, tuple(sorted(val.items())))
    out = GeneralModel(base, model.belief, model.plausibility) if isinstance(model, GeneralModel) else base
    return F.instantiate(schema, binding), out


def _run(jobs: list[_Job], family: Iterable[tuple], pool=None) -> None:
    """Evaluate every job on every model; stop a job at its first counterexample.

    ``pool(frame)`` returns a mask->formula dict for random sweeps; None means
    metavariables range over all subsets.
    """
    for model, fr, mode in family:
        live = [j for j in jobs if j.result.counterexample is None]
        if not live:
            return
        full = fr.full
        space = pool(fr) if pool else None
        domain = list(space) if space is not None else range(full + 1)
        for job in live:
            job.result.models += 1
            fn, target = job.fn, (1 if job.pointed else full)
            for values in itertools.product(domain, repeat=len(job.metas)):
                job.result.instances += 1
                got = fn(fr, values)
                if got & target != target:
                    bad = (~got & target).bit_length() - 1
                    world = model.worlds[bad]
                    if space is not None:
                        inst = F.instantiate(job.schema, {k: space[v] for k, v in zip(job.metas, values)})
                        cm = model
                    else:
                        inst, cm = _fresh_instance(job.schema, job.metas, values, model,
                                                   set(model.evidence_model.atoms))
                    job.result.counterexample = Counterexample(cm, world, inst, mode)
                    break


def _job(name: str, schema: F.Formula, cls: str, pointed: bool, strategy: str,
         exploration: bool = False) -> _Job:
    metas = tuple(F.metavariables(schema))
    return _Job(name, schema, metas, compile_formula(schema, metas), pointed,
                SweepResult(name, cls, strategy=strategy, exploration=exploration))


def _use_pointed(schema: F.Formula, cls: str, strategy: str) -> bool:
    if strategy == "full" or cls not in ("all", "flat", "intended"):
        return False
    ok = pointwise(schema, intended=(cls == "intended"))
    if strategy == "pointed" and not ok:
        raise ValueError("schema is not pointwise; pointed sweep would be unsound")
    return ok


def sweep(names: Sequence[str], cls: str, bounds: ModelBounds | None = None, *,
          instance_depth: int = 2, random_models: int = 0, seed: int = 0,
          strategy: str = "auto", exhaustive: bool = True) -> list[SweepResult]:
    """Sweep several registry axioms over one class; shares frames across axioms."""
    bounds = bounds or ModelBounds(3, 4, ("p", "q"))
    entries = []
    for name in names:
        if name not in REGISTRY:
            raise KeyError(f"unknown axiom {name!r}")
        e = REGISTRY[name]
        if e.is_rule:
            raise ValueError(f"{name} is a rule; use check_rule")
        entries.append(e)
    t0 = time.perf_counter()
    results = []
    if exhaustive:
        for pointed in (True, False):
            jobs = []
            for e in entries:
                if _use_pointed(e.schema, cls, strategy) == pointed:
                    label = ("pointed" if pointed else "full") + "-exhaustive/all-subsets"
                    jobs.append(_job(e.name, e.schema, cls, pointed, label, cls not in e.classes))
            if jobs:
                _run(jobs, model_family(cls, bounds.max_worlds, bounds.max_evidence_sets_per_world, pointed))
                results += jobs
    by_name = {j.name: j for j in results}
    if random_models:
        rjobs = [_job(e.name, e.schema, cls, False, "random", cls not in e.classes) for e in entries]
        _run(rjobs, random_family(cls, random_models, seed, bounds),
             pool=lambda fr: instance_denotations(fr, bounds.atoms, instance_depth))
        for rj in rjobs:
            j = by_name.get(rj.name)
            if j is None:
                by_name[rj.name] = rj
                continue
            j.result.models += rj.result.models
            j.result.instances += rj.result.instances
            j.result.strategy += f" + random({random_models})"
            if j.result.counterexample is None:
                j.result.counterexample = rj.result.counterexample
    out = [by_name[e.name].result for e in entries]
    elapsed = time.perf_counter() - t0
    for r in out:
        r.seconds = elapsed
    return out


def check_axiom(name: str, cls: str, bounds: ModelBounds | None = None, instance_depth: int = 2,
                *, random_models: int = 0, seed: int = 0, strategy: str = "auto") -> SweepResult:
    """Search the class for a counterexample to one registry axiom."""
    return sweep([name], cls, bounds, instance_depth=instance_depth,
                 random_models=random_models, seed=seed, strategy=strategy)[0]


def check_schema(schema, cls: str, bounds: ModelBounds | None = None, *, name: str = "schema",
                 strategy: str = "auto", random_models: int = 0, seed: int = 0,
                 instance_depth: int = 2) -> SweepResult:
    """Like :func:`check_axiom` for an arbitrary schema (text or formula)."""
    schema = F.parse_schema(schema) if isinstance(schema, str) else schema
    bounds = bounds or ModelBounds(3, 4, ("p", "q"))
    t0 = time.perf_counter()
    pointed = _use_pointed(schema, cls, strategy)
    job = _job(name, schema, cls, pointed, ("pointed" if pointed else "full") + "-exhaustive/all-subsets")
    _run([job], model_family(cls, bounds.max_worlds, bounds.max_evidence_sets_per_world, pointed))
    if random_models and job.result.counterexample is None:
        rj = _job(name, schema, cls, False, "random")
        _run([rj], random_family(cls, random_models, seed, bounds),
             pool=lambda fr: instance_denotations(fr, bounds.atoms, instance_depth))
        job.result.models += rj.result.models
        job.result.instances += rj.result.instances
        job.result.counterexample = rj.result.counterexample
        job.result.strategy += f" + random({random_models})"
    job.result.seconds = time.perf_counter() - t0
    return job.result


def check_rule(name: str, bounds: ModelBounds | None = None, instance_depth: int = 1, *,
               cls: str = "all", random_models: int = 0, seed: int = 0,
               instances: Sequence[Sequence[F.Formula]] | None = None) -> SweepResult:
    """Model-wise rule soundness: on each model, valid premises give a valid conclusion.

    Without ``instances`` the metavariables range over all subsets; with them,
    each tuple of formulas (one per metavariable, in order of first occurrence)
    is checked on every model of the family, over every valuation of its atoms.
    """
    entry = REGISTRY.get(name)
    if entry is None or not entry.is_rule:
        raise KeyError(f"unknown rule {name!r}")
    bounds = bounds or ModelBounds(2, 3, ("p", "q"))
    metas: list[str] = []
    for part in entry.premises + (entry.conclusion,):
        for mv in F.metavariables(part):
            if mv not in metas:
                metas.append(mv)
    prem = [compile_formula(p, tuple(metas)) for p in entry.premises]
    concl = compile_formula(entry.conclusion, tuple(metas))
    # with modality-free premises, premise validity is a set condition, so a
    # pointwise conclusion can be checked on pointed models
    pointed = (instances is None and cls in ("all", "flat", "intended")
               and all(F.modal_depth(p) == 0 for p in entry.premises)
               and pointwise(entry.conclusion, intended=cls == "intended"))
    res = SweepResult(name, cls, strategy="model-wise" + (", pointed" if pointed else ""))
    t0 = time.perf_counter()

    def families():
        yield from model_family(cls, bounds.max_worlds, bounds.max_evidence_sets_per_world, pointed)
        if random_models:
            yield from random_family(cls, random_models, seed, bounds)

    atoms = sorted({a for inst in (instances or []) for f in inst for a in F.atoms_of(f)})
    for model, fr, mode in families():
        res.models += 1
        full = fr.full
        if instances is None:
            tuples = itertools.product(range(full + 1), repeat=len(metas))
            frames = [(fr, model)]
        else:
            frames = []
            for masks in itertools.product(range(full + 1), repeat=len(atoms)):
                em = model.evidence_model.with_valuation(dict(zip(atoms, masks)))
                m2 = GeneralModel(em, model.belief, model.plausibility) if isinstance(model, GeneralModel) else em
                frames.append((Frame.explicit(m2) if mode == "explicit" else Frame.intended(em), m2))
            tuples = None
        for fr2, m2 in frames:
            if instances is None:
                cases = ((v, None) for v in tuples)
            else:
                ctx = EvalContext(m2, mode)
                from .semantics import truth_mask
                cases = ((tuple(truth_mask(ctx, f) for f in inst), inst) for inst in instances)
            for values, inst in cases:
                res.instances += 1
                if all(p(fr2, values) == full for p in prem):
                    got = concl(fr2, values)
                    if got != full:
                        bad = (~got & full).bit_length() - 1
                        if inst is not None:
                            f = F.instantiate(entry.conclusion, dict(zip(metas, inst)))
                            cm = m2
                        else:
                            f, cm = _fresh_instance(entry.conclusion, metas, values, m2, set(m2.evidence_model.atoms))
                        res.counterexample = Counterexample(cm, cm.worlds[bad], f, mode)
                        res.seconds = time.perf_counter() - t0
                        return res
    res.seconds = time.perf_counter() - t0
    return res


def recursion_suite(bounds: ModelBounds | None = None, instance_depth: int = 0, *,
                    laws: Sequence[str] | None = None, strategy: str = "auto") -> list[SweepResult]:
    """Check each dynamic recursion law as a biconditional over evidence models (intended mode).

    Metavariables range over all subsets; the laws only feed them into rigid
    positions, so this covers every Boolean instance under every valuation.
    """
    bounds = bounds or ModelBounds(3, 4, ("p", "q"))
    out = []
    for name in laws or RECURSION_LAWS:
        out.append(check_schema(RECURSION_LAWS[name], "intended", bounds, name=name, strategy=strategy))
    return out


def soundness_sweep(bounds: ModelBounds | None = None, *, instance_depth: int = 2,
                    random_models: int = 1000, seed: int = 0,
                    classes: Sequence[str] = CLASSES) -> list[SweepResult]:
    """Every registry axiom over each of its declared classes."""
    out = []
    for cls in classes:
        names = [e.name for e in AXIOMS if cls in e.classes]
        out += sweep(names, cls, bounds, instance_depth=instance_depth,
                     random_models=random_models, seed=seed)
    return out


# ---------------------------------------------------------------------------
# worked examples

def counterexample_model() -> EvidenceModel:
    """Six worlds, two incompatible pairs of overlapping evidence."""
    W = [1, 2, 3, 4, 5, 6]
    return EvidenceModel.build(W, valuation={"p": [2, 3, 4], "q": [2, 5]},
                               uniform_evidence=[W, [1, 2], [2, 3], [4, 5], [5, 6]])


def chain_model() -> EvidenceModel:
    """Four worlds with overlapping consecutive evidence."""
    W = [1, 2, 3, 4]
    return EvidenceModel.build(W, valuation={"p": [2, 3]}, uniform_evidence=[W, [1, 2], [2, 3], [3, 4]])


def constraint3_structure() -> GeneralModel:
    """Two worlds, trivial evidence, w believes only itself yet v is as plausible."""
    base = EvidenceModel.build(["w", "v"], evidence={})
    return GeneralModel.build(base, [("w", "w")], [(a, b) for a in "wv" for b in "wv"])


@dataclass
class ExampleCheck:
    name: str
    ok: bool
    detail: str = ""


def worked_examples() -> list[ExampleCheck]:
    from .semantics import truth_set
    out = []
    cb = counterexample_model()
    ctx = EvalContext(cb, "intended")
    W = frozenset(cb.worlds)
    out.append(ExampleCheck("[B] q true everywhere", truth_set(ctx, "[B] q") == W))
    out.append(ExampleCheck("B{p} q | B{~p} q false everywhere", truth_set(ctx, "B{p} q | B{~p} q") == frozenset()))
    out.append(ExampleCheck("[B] q -> B{p} q not valid", truth_set(ctx, "[B] q -> B{p} q") != W))
    lifted = EvalContext(cb.lifted, "explicit")
    out.append(ExampleCheck("[A]<P>[P] q <-> [B] q everywhere", truth_set(lifted, "[A]<P>[P] q <-> [B] q") == W))
    rep = validate(cb.lifted)
    out.append(ExampleCheck("lift is a flat uniform model", rep.is_valid_model and rep.is_flat and rep.is_uniform))
    c3 = validate(constraint3_structure())
    out.append(ExampleCheck("constraint-3 structure rejected",
                            not c3.is_valid_model and any(v[0] == "constraint3" for v in c3.violations),
                            str(c3.violations)))
    sp = chain_model()
    from .scenario import derived_plausibility
    expected = {(w, w) for w in sp.worlds} | {(1, 2), (4, 3)}
    out.append(ExampleCheck("chain model derived order", derived_plausibility(sp) == expected))
    out.append(ExampleCheck("chain model is a valid lift", validate(sp.lifted).is_valid_model))
    return out
