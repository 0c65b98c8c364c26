"""Model checking for the full language on finite models.

A :class:`Frame` is the bitmask view of a model (evidence, belief, upsets)
together with memo tables for every modality; both the reference evaluator
and the compiled schema evaluator used by sweeps call the same primitives.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Mapping

from . import formula as F
from .model import EvidenceModel, GeneralModel, ModelError, bits
from .scenario import (derived_belief_masks, derived_plausibility_masks, reliable_core,
                       scenario_intersections, unreliable_union)

MODES = ("explicit", "intended")


class Frame:
    """Mask-level structure: ``ev[i]`` evidence masks, ``bel[i]`` successors, ``up[i]`` upset."""

    __slots__ = ("em", "n", "full", "ev", "bel", "up", "_memo", "_rel", "_added",
                 "_core", "_ucore")

    def __init__(self, em: EvidenceModel, bel, up):
        self.em = em
        self.n = em.n
        self.full = em.full
        self.ev = em.evidence
        self.bel = tuple(bel)
        self.up = tuple(up)
        self._memo: dict = {}
        self._rel: dict = {}
        self._added: dict = {}
        self._core = None
        self._ucore = None

    @classmethod
    def intended(cls, em: EvidenceModel) -> "Frame":
        return cls(em, derived_belief_masks(em.evidence, em.full),
                   derived_plausibility_masks(em.evidence, em.n))

    @classmethod
    def explicit(cls, m: GeneralModel) -> "Frame":
        return cls(m.base, m.belief, m.plausibility)

    # -- relational modalities ---------------------------------------------

    def _rel_box(self, rel, s: int) -> int:
        r = 0
        for i, succ in enumerate(rel):
            if succ & ~s == 0:
                r |= 1 << i
        return r

    def _rel_dia(self, rel, s: int) -> int:
        r = 0
        for i, succ in enumerate(rel):
            if succ & s:
                r |= 1 << i
        return r

    def box(self, mod: str, s: int) -> int:
        key = (mod, s)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        full = self.full
        if mod == "A":
            r = full if s == full else 0
        elif mod == "B":
            r = self._rel_box(self.bel, s)
        elif mod == "P":
            r = self._rel_box(self.up, s)
        elif mod == "E":
            r = 0
            for i, fam in enumerate(self.ev):
                if any(x & ~s == 0 for x in fam):
                    r |= 1 << i
        elif mod == "C":
            r = self._rel_box(self.cores, s)
        elif mod == "U":
            r = self._rel_box(self.unreliable, s)
        else:
            raise ValueError(f"unknown modality {mod}")
        self._memo[key] = r
        return r

    def dia(self, mod: str, s: int) -> int:
        key = ("<" + mod, s)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        if mod == "A":
            r = self.full if s else 0
        elif mod == "B":
            r = self._rel_dia(self.bel, s)
        elif mod == "P":
            r = self._rel_dia(self.up, s)
        elif mod == "E":
            r = 0
            for i, fam in enumerate(self.ev):
                if all(x & s for x in fam):
                    r |= 1 << i
        else:
            raise ValueError(f"no diamond for modality {mod}")
        self._memo[key] = r
        return r

    @property
    def cores(self) -> tuple[int, ...]:
        if self._core is None:
            self._core = tuple(reliable_core(fam, i, self.full) for i, fam in enumerate(self.ev))
        return self._core

    @property
    def unreliable(self) -> tuple[int, ...]:
        if self._ucore is None:
            self._ucore = tuple(unreliable_union(fam, i) for i, fam in enumerate(self.ev))
        return self._ucore

    # -- conditional belief -----------------------------------------------

    def relative_intersections(self, p: int) -> tuple[list[int], ...]:
        hit = self._rel.get(p)
        if hit is None:
            hit = tuple(scenario_intersections(fam, p, self.full) for fam in self.ev)
            self._rel[p] = hit
        return hit

    def cond(self, p: int, q: int) -> int:
        """B{p} q: each relative scenario's restricted intersection lies in q."""
        key = ("cond", p, q)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        r = 0
        for i, inters in enumerate(self.relative_intersections(p)):
            if all(x & ~q == 0 for x in inters):
                r |= 1 << i
        self._memo[key] = r
        return r

    def cond2(self, p: int, a: int, c: int) -> int:
        """B{p; a} c: for each relative scenario, I ⊆ a implies I ⊆ c."""
        key = ("cond2", p, a, c)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        r = 0
        for i, inters in enumerate(self.relative_intersections(p)):
            if all(x & ~a or x & ~c == 0 for x in inters):
                r |= 1 << i
        self._memo[key] = r
        return r

    # -- dynamics ------------------------------------------------------------

    def added(self, x: int) -> "Frame":
        """Intended frame of the model with x added to every E(w); x must be nonempty."""
        hit = self._added.get(x)
        if hit is None:
            ev = tuple(fam if x in fam else tuple(sorted(fam + (x,))) for fam in self.ev)
            em = EvidenceModel(self.em.worlds, ev, self.em.valuation)
            hit = Frame.intended(em)
            self._added[x] = hit
        return hit


@dataclass
class EvalContext:
    """A model plus the mode used for [B] and [P].

    ``explicit`` reads the stored relations of a GeneralModel; ``intended``
    derives them from the evidence.  Conditional and dynamic operators always
    work from the evidence component.
    """

    model: EvidenceModel | GeneralModel
    mode: str = "intended"
    _frame: Frame | None = field(default=None, repr=False)

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}")
        if self.mode == "explicit" and not isinstance(self.model, GeneralModel):
            raise ModelError("explicit mode requires a model with belief and plausibility relations")

    @property
    def frame(self) -> Frame:
        if self._frame is None:
            if self.mode == "explicit":
                self._frame = Frame.explicit(self.model)
            else:
                self._frame = Frame.intended(self.model.evidence_model)
        return self._frame


# ---------------------------------------------------------------------------
# reference evaluator (recursive, memoized per call tree)

def _meta_mask(env, name) -> int:
    if env is None or name not in env:
        raise KeyError(f"unbound metavariable {name}")
    return env[name]


def _truth(fr: Frame, f: F.Formula, env, memo: dict) -> int:
    key = (id(fr), f)
    hit = memo.get(key)
    if hit is not None:
        return hit
    full = fr.full
    if isinstance(f, F.Atom):
        r = fr.em.valuation_masks.get(f.name, 0)
    elif isinstance(f, F.Meta):
        r = _meta_mask(env, f.name)
    elif isinstance(f, F.Top):
        r = full
    elif isinstance(f, F.Bottom):
        r = 0
    elif isinstance(f, F.Not):
        r = full & ~_truth(fr, f.arg, env, memo)
    elif isinstance(f, F.And):
        r = _truth(fr, f.left, env, memo) & _truth(fr, f.right, env, memo)
    elif isinstance(f, F.Or):
        r = _truth(fr, f.left, env, memo) | _truth(fr, f.right, env, memo)
    elif isinstance(f, F.Implies):
        r = (full & ~_truth(fr, f.left, env, memo)) | _truth(fr, f.right, env, memo)
    elif isinstance(f, F.Iff):
        r = full & ~(_truth(fr, f.left, env, memo) ^ _truth(fr, f.right, env, memo))
    elif isinstance(f, F.Box):
        r = fr.box(f.mod, _truth(fr, f.arg, env, memo))
    elif isinstance(f, F.Diamond):
        r = fr.dia(f.mod, _truth(fr, f.arg, env, memo))
    elif isinstance(f, F.CondB):
        r = fr.cond(_truth(fr, f.condition, env, memo), _truth(fr, f.body, env, memo))
    elif isinstance(f, F.CondB2):
        r = fr.cond2(_truth(fr, f.condition, env, memo), _truth(fr, f.settled, env, memo),
                     _truth(fr, f.body, env, memo))
    elif isinstance(f, F.AddEv):
        x = _truth(fr, f.evidence, env, memo)
        r = full if x == 0 else _truth(fr.added(x), f.body, env, memo)
    else:
        raise TypeError(f"not a formula: {f!r}")
    memo[key] = r
    return r


def _as_formula(f) -> F.Formula:
    return F.parse(f) if isinstance(f, str) else f


def _env_masks(ctx: EvalContext, env: Mapping | None) -> dict | None:
    if env is None:
        return None
    return {k: v if isinstance(v, int) else ctx.model.mask(v) for k, v in env.items()}


def truth_mask(ctx: EvalContext, f, env: Mapping | None = None, memo: dict | None = None) -> int:
    """Truth set as a mask; pass one ``memo`` dict to share work across calls."""
    return _truth(ctx.frame, _as_formula(f), _env_masks(ctx, env), {} if memo is None else memo)


def truth_set(ctx: EvalContext, f, env: Mapping | None = None) -> frozenset:
    """All worlds where f holds; ``env`` binds metavariables to world sets or masks."""
    return ctx.model.world_set(truth_mask(ctx, f, env))


def eval(ctx: EvalContext, w, f, env: Mapping | None = None) -> bool:  # noqa: A001
    i = ctx.model.world_index(w)
    return bool(truth_mask(ctx, f, env) >> i & 1)


def valid_on_model(ctx: EvalContext, f, env: Mapping | None = None) -> bool:
    return truth_mask(ctx, f, env) == ctx.frame.full


# ---------------------------------------------------------------------------
# compiled evaluator for sweeps

Compiled = Callable[[Frame, tuple], int]


def compile_formula(f: F.Formula, metas: tuple[str, ...] = ()) -> Compiled:
    """Turn f into ``fn(frame, values)`` where ``values[k]`` is the mask of ``metas[k]``.

    Repeated subformulas are shared; there is no per-call memo beyond the
    frame's operator tables.
    """
    slot = {name: k for k, name in enumerate(metas)}
    cache: dict = {}

    def go(g: F.Formula) -> Compiled:
        if g in cache:
            return cache[g]
        if isinstance(g, F.Atom):
            name = g.name
            fn = lambda fr, v: fr.em.valuation_masks.get(name, 0)  # noqa: E731
        elif isinstance(g, F.Meta):
            if g.name not in slot:
                raise KeyError(f"unbound metavariable {g.name}")
            k = slot[g.name]
            fn = lambda fr, v: v[k]  # noqa: E731
        elif isinstance(g, F.Top):
            fn = lambda fr, v: fr.full  # noqa: E731
        elif isinstance(g, F.Bottom):
            fn = lambda fr, v: 0  # noqa: E731
        elif isinstance(g, F.Not):
            a = go(g.arg)
            fn = lambda fr, v: fr.full & ~a(fr, v)  # noqa: E731
        elif isinstance(g, F.And):
            a, b = go(g.left), go(g.right)
            fn = lambda fr, v: a(fr, v) & b(fr, v)  # noqa: E731
        elif isinstance(g, F.Or):
            a, b = go(g.left), go(g.right)
            fn = lambda fr, v: a(fr, v) | b(fr, v)  # noqa: E731
        elif isinstance(g, F.Implies):
            a, b = go(g.left), go(g.right)
            fn = lambda fr, v: (fr.full & ~a(fr, v)) | b(fr, v)  # noqa: E731
        elif isinstance(g, F.Iff):
            a, b = go(g.left), go(g.right)
            fn = lambda fr, v: fr.full & ~(a(fr, v) ^ b(fr, v))  # noqa: E731
        elif isinstance(g, F.Box):
            a, mod = go(g.arg), g.mod
            fn = lambda fr, v: fr.box(mod, a(fr, v))  # noqa: E731
        elif isinstance(g, F.Diamond):
            a, mod = go(g.arg), g.mod
            fn = lambda fr, v: fr.dia(mod, a(fr, v))  # noqa: E731
        elif isinstance(g, F.CondB):
            a, b = go(g.condition), go(g.body)
            fn = lambda fr, v: fr.cond(a(fr, v), b(fr, v))  # noqa: E731
        elif isinstance(g, F.CondB2):
            a, s, b = go(g.condition), go(g.settled), go(g.body)
            fn = lambda fr, v: fr.cond2(a(fr, v), s(fr, v), b(fr, v))  # noqa: E731
        elif isinstance(g, F.AddEv):
            a, b = go(g.evidence), go(g.body)

            def fn(fr, v, a=a, b=b):
                x = a(fr, v)
                return fr.full if x == 0 else b(fr.added(x), v)
        else:
            raise TypeError(f"not a formula: {g!r}")
        cache[g] = fn
        return fn

    return go(f)
