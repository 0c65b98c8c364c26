"""Finite evidence models and general models.

Worlds carry arbitrary hashable labels; internally a world set is an ``int``
bitmask over the position of each world in ``worlds``.  Public accessors
return ``frozenset`` views.
"""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Hashable, Iterable, Iterator, Mapping, Sequence

World = Hashable

CLASS_FILTERS = ("all", "flat", "uniform", "concise", "intended")


class ModelError(ValueError):
    """Malformed model data (unknown world, empty evidence set, ...)."""


def bits(mask: int) -> Iterator[int]:
    """Indices of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class EvidenceModel:
    """``<W, E, V>``: worlds, per-world evidence families, valuation.

    ``evidence[i]`` is the sorted tuple of distinct masks of E(worlds[i]);
    ``valuation`` is a sorted tuple of ``(atom, mask)`` pairs.
    """

    worlds: tuple
    evidence: tuple[tuple[int, ...], ...]
    valuation: tuple[tuple[str, int], ...] = ()

    def __post_init__(self):
        if not self.worlds:
            raise ModelError("a model needs at least one world")
        if len(set(self.worlds)) != len(self.worlds):
            raise ModelError("duplicate world labels")
        if len(self.evidence) != len(self.worlds):
            raise ModelError("one evidence family per world is required")

    # -- construction ------------------------------------------------------

    @classmethod
    def from_masks(cls, worlds: Sequence[World], evidence: Iterable[Iterable[int]],
                   valuation: Mapping[str, int] | None = None) -> "EvidenceModel":
        ev = tuple(tuple(sorted(set(fam))) for fam in evidence)
        val = tuple(sorted((valuation or {}).items()))
        return cls(tuple(worlds), ev, val)

    @classmethod
    def build(cls, worlds: Sequence[World],
              evidence: Mapping[World, Iterable[Iterable[World]]] | None = None,
              valuation: Mapping[str, Iterable[World]] | None = None, *,
              uniform_evidence: Iterable[Iterable[World]] | None = None,
              strict: bool = False) -> "EvidenceModel":
        """Build from plain sets.

        Lenient mode inserts W into every E(w); ``strict=True`` instead
        rejects families that omit W.  Empty evidence sets are always errors.
        """
        worlds = tuple(worlds)
        if not worlds:
            raise ModelError("a model needs at least one world")
        index = {w: i for i, w in enumerate(worlds)}
        full = (1 << len(worlds)) - 1

        def to_mask(ws: Iterable[World]) -> int:
            m = 0
            for w in ws:
                if w not in index:
                    raise ModelError(f"unknown world {w!r}")
                m |= 1 << index[w]
            return m

        if (evidence is None) == (uniform_evidence is None):
            raise ModelError("give exactly one of evidence / uniform_evidence")
        if uniform_evidence is not None:
            fam = [list(x) for x in uniform_evidence]
            per_world = {w: fam for w in worlds}
        else:
            per_world = dict(evidence)
            for w in per_world:
                if w not in index:
                    raise ModelError(f"unknown world {w!r} in evidence")
        families = []
        for w in worlds:
            fam = set()
            for x in per_world.get(w, ()):
                m = to_mask(x)
                if m == 0:
                    raise ModelError(f"empty evidence set at world {w!r}")
                fam.add(m)
            if full not in fam:
                if strict:
                    raise ModelError(f"W is missing from E({w!r}) (strict mode)")
                fam.add(full)
            families.append(fam)
        val = {p: to_mask(ws) for p, ws in (valuation or {}).items()}
        return cls.from_masks(worlds, families, val)

    # -- views -------------------------------------------------------------

    @cached_property
    def index(self) -> dict:
        return {w: i for i, w in enumerate(self.worlds)}

    @property
    def n(self) -> int:
        return len(self.worlds)

    @property
    def full(self) -> int:
        return (1 << len(self.worlds)) - 1

    @cached_property
    def valuation_masks(self) -> dict[str, int]:
        return dict(self.valuation)

    @property
    def atoms(self) -> list[str]:
        return [p for p, _ in self.valuation]

    def mask(self, ws: Iterable[World]) -> int:
        m = 0
        for w in ws:
            try:
                m |= 1 << self.index[w]
            except KeyError:
                raise ModelError(f"unknown world {w!r}") from None
        return m

    def world_set(self, mask: int) -> frozenset:
        return frozenset(self.worlds[i] for i in bits(mask))

    def world_index(self, w: World) -> int:
        try:
            return self.index[w]
        except KeyError:
            raise ModelError(f"unknown world {w!r}") from None

    def E(self, w: World) -> frozenset[frozenset]:
        return frozenset(self.world_set(x) for x in self.evidence[self.world_index(w)])

    def V(self, atom: str) -> frozenset:
        return self.world_set(self.valuation_masks.get(atom, 0))

    @cached_property
    def all_evidence(self) -> tuple[int, ...]:
        """Every distinct evidence set occurring at some world."""
        return tuple(sorted({x for fam in self.evidence for x in fam}))

    @property
    def is_uniform(self) -> bool:
        return all(fam == self.evidence[0] for fam in self.evidence)

    @property
    def evidence_model(self) -> "EvidenceModel":
        return self

    def with_valuation(self, valuation: Mapping[str, int]) -> "EvidenceModel":
        return EvidenceModel(self.worlds, self.evidence, tuple(sorted(valuation.items())))

    @cached_property
    def lifted(self) -> "GeneralModel":
        """The intended model: belief and plausibility derived from evidence."""
        from .scenario import lift
        return lift(self)

    def to_dict(self) -> dict:
        d: dict = {"worlds": list(self.worlds),
                   "valuation": {p: sorted_labels(self.world_set(m)) for p, m in self.valuation}}
        if self.is_uniform:
            d["uniform_evidence"] = [sorted_labels(self.world_set(x)) for x in self.evidence[0]]
        else:
            d["evidence"] = {str(w): [sorted_labels(self.world_set(x)) for x in fam]
                             for w, fam in zip(self.worlds, self.evidence)}
        return d


def sorted_labels(ws: Iterable[World]) -> list:
    return sorted(ws, key=lambda w: (str(type(w)), w if isinstance(w, (int, str)) else str(w)))


@dataclass(frozen=True)
class GeneralModel:
    """An evidence model with explicit belief relation and plausibility order.

    ``belief[i]`` is the mask of B-successors of world i; ``plausibility[i]``
    is the mask of worlds at least as plausible as world i (its upset).
    Constraints are not enforced here; :func:`validate` reports violations.
    """

    base: EvidenceModel
    belief: tuple[int, ...]
    plausibility: tuple[int, ...]

    @classmethod
    def build(cls, base: EvidenceModel, belief: Iterable[tuple[World, World]],
              plausibility: Iterable[tuple[World, World]] | None = None) -> "GeneralModel":
        """Relations are given as pairs; a missing plausibility means the identity."""
        b = [0] * base.n
        for u, v in belief:
            b[base.world_index(u)] |= 1 << base.world_index(v)
        if plausibility is None:
            p = [1 << i for i in range(base.n)]
        else:
            p = [0] * base.n
            for u, v in plausibility:
                p[base.world_index(u)] |= 1 << base.world_index(v)
        return cls(base, tuple(b), tuple(p))

    # delegate the evidence part
    worlds = property(lambda self: self.base.worlds)
    evidence = property(lambda self: self.base.evidence)
    valuation = property(lambda self: self.base.valuation)
    n = property(lambda self: self.base.n)
    full = property(lambda self: self.base.full)
    index = property(lambda self: self.base.index)
    atoms = property(lambda self: self.base.atoms)
    all_evidence = property(lambda self: self.base.all_evidence)
    valuation_masks = property(lambda self: self.base.valuation_masks)

    def mask(self, ws):
        return self.base.mask(ws)

    def world_set(self, mask):
        return self.base.world_set(mask)

    def world_index(self, w):
        return self.base.world_index(w)

    def E(self, w):
        return self.base.E(w)

    def V(self, atom):
        return self.base.V(atom)

    @property
    def evidence_model(self) -> EvidenceModel:
        return self.base

    def belief_pairs(self) -> frozenset[tuple]:
        return _pairs(self.base.worlds, self.belief)

    def plausibility_pairs(self) -> frozenset[tuple]:
        return _pairs(self.base.worlds, self.plausibility)

    @cached_property
    def belief_range(self) -> int:
        """Mask of B[W], the worlds that some world considers possible."""
        r = 0
        for m in self.belief:
            r |= m
        return r

    @cached_property
    def maximal_mask(self) -> int:
        up = self.plausibility
        r = 0
        for i in range(self.n):
            if all(up[j] >> i & 1 for j in bits(up[i])):
                r |= 1 << i
        return r

    def to_dict(self) -> dict:
        d = self.base.to_dict()
        d["belief"] = [list(p) for p in sorted(self.belief_pairs(), key=str)]
        d["plausibility"] = [list(p) for p in sorted(self.plausibility_pairs(), key=str)]
        return d


def _pairs(worlds, masks) -> frozenset[tuple]:
    return frozenset((worlds[i], worlds[j]) for i, m in enumerate(masks) for j in bits(m))


AnyModel = EvidenceModel | GeneralModel


# ---------------------------------------------------------------------------
# validation and classes

@dataclass
class ClassReport:
    is_valid_model: bool
    violations: list[tuple] = field(default_factory=list)
    is_flat: bool = False
    is_uniform: bool = False
    is_concise: bool = False

    def classes(self) -> list[str]:
        return [name for name, ok in (("flat", self.is_flat), ("uniform", self.is_uniform),
                                      ("concise", self.is_concise)) if ok]


def validate(m: GeneralModel) -> ClassReport:
    """Check constraints 1-3, the preorder axioms and the class predicates.

    Every violating tuple is listed as ``(kind, *worlds)``.
    """
    W, full, n = m.worlds, m.full, m.n
    up, bel = m.plausibility, m.belief
    v: list[tuple] = []
    for i in range(n):
        fam = m.evidence[i]
        if 0 in fam:
            v.append(("empty_evidence", W[i]))
        if full not in fam:
            v.append(("missing_W", W[i]))
        if not up[i] >> i & 1:
            v.append(("not_reflexive", W[i]))
    for i in range(n):
        for j in bits(up[i]):
            for k in bits(up[j] & ~up[i]):
                v.append(("not_transitive", W[i], W[j], W[k]))
    # constraint 2: w <= v and w in X in E(u) imply v in X
    for u in range(n):
        for x in m.evidence[u]:
            for i in bits(x):
                for j in bits(up[i] & ~x):
                    v.append(("constraint2", W[i], W[j], W[u], m.world_set(x)))
    # constraint 3: w <= v and u B w imply u B v
    for u in range(n):
        for i in bits(bel[u]):
            for j in bits(up[i] & ~bel[u]):
                v.append(("constraint3", W[u], W[i], W[j]))
    flat = all(x & bel[i] for i in range(n) for x in m.evidence[i])
    uniform = (all(fam == m.evidence[0] for fam in m.evidence)
               and all(b == bel[0] for b in bel)
               and m.belief_range & ~m.maximal_mask == 0)
    concise = flat and uniform and m.maximal_mask & ~m.belief_range == 0
    return ClassReport(not v, v, flat, uniform, concise)


def in_class(m: GeneralModel, cls: str) -> bool:
    r = validate(m)
    if not r.is_valid_model:
        return False
    if cls in ("all", "intended"):
        return True
    return {"flat": r.is_flat, "uniform": r.is_uniform, "concise": r.is_concise}[cls]


# ---------------------------------------------------------------------------
# order utilities

def upset(m: GeneralModel, w: World) -> frozenset:
    return m.world_set(m.plausibility[m.world_index(w)])


def maximal_worlds(m: GeneralModel) -> frozenset:
    """Worlds w such that w <= v implies v <= w."""
    return m.world_set(m.maximal_mask)


def _upper_bound_in(m: GeneralModel, a: int, b: int, within: int) -> bool:
    return bool(m.plausibility[a] & m.plausibility[b] & within)


def is_directed(m: GeneralModel, d: Iterable[World]) -> bool:
    """Every pair of elements of d has an upper bound inside d."""
    dm = m.mask(d)
    idx = list(bits(dm))
    return all(_upper_bound_in(m, a, b, dm) for a, b in itertools.combinations_with_replacement(idx, 2))


def has_boundedness(m: GeneralModel) -> bool:
    """Every directed subset has an upper bound in W (exhaustive; tiny models only)."""
    for dm in range(1 << m.n):
        ws = m.world_set(dm)
        if is_directed(m, ws):
            common = m.full
            for i in bits(dm):
                common &= m.plausibility[i]
            if not common:
                return False
    return True


# ---------------------------------------------------------------------------
# enumeration

@dataclass(frozen=True)
class ModelBounds:
    max_worlds: int = 2
    max_evidence_sets_per_world: int = 2  # counts W itself
    atoms: tuple[str, ...] = ("p",)
    class_filter: str = "all"

    def __post_init__(self):
        object.__setattr__(self, "atoms", tuple(self.atoms))
        if self.max_worlds < 1 or self.max_evidence_sets_per_world < 1:
            raise ValueError("bounds must be >= 1")
        if self.class_filter not in CLASS_FILTERS:
            raise ValueError(f"class_filter must be one of {CLASS_FILTERS}")


def preorders(n: int) -> list[tuple[int, ...]]:
    """All reflexive transitive relations on n points, as upset-mask tuples."""
    pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
    out = []
    for choice in range(1 << len(pairs)):
        up = [1 << i for i in range(n)]
        for k, (i, j) in enumerate(pairs):
            if choice >> k & 1:
                up[i] |= 1 << j
        if all(up[j] & ~up[i] == 0 for i in range(n) for j in bits(up[i])):
            out.append(tuple(up))
    return out


def upsets(up: Sequence[int]) -> list[int]:
    """All upward-closed subsets (including the empty set) of a preorder."""
    n = len(up)
    return [s for s in range(1 << n) if all(up[i] & ~s == 0 for i in bits(s))]


def _families(candidates: Sequence[int], full: int, max_sets: int) -> list[tuple[int, ...]]:
    """Families {W} + up to max_sets-1 distinct proper candidate sets."""
    proper = [c for c in candidates if c and c != full]
    out = []
    for k in range(0, max_sets):
        for combo in itertools.combinations(proper, k):
            out.append(tuple(sorted((full,) + combo)))
    return out


def valuations(atoms: Sequence[str], n: int) -> Iterator[dict[str, int]]:
    for masks in itertools.product(range(1 << n), repeat=len(atoms)):
        yield dict(zip(atoms, masks))


def _labels(n: int) -> tuple[int, ...]:
    return tuple(range(1, n + 1))


def _permutations_apply(mask: int, perm: Sequence[int]) -> int:
    r = 0
    for i in bits(mask):
        r |= 1 << perm[i]
    return r


def _canonical_evidence(families: Sequence[tuple[int, ...]], n: int) -> bool:
    """True when the per-world families are lexicographically least under renaming."""
    key = tuple(families)
    for perm in itertools.permutations(range(n)):
        moved = [None] * n
        for i, fam in enumerate(families):
            moved[perm[i]] = tuple(sorted(_permutations_apply(x, perm) for x in fam))
        if tuple(moved) < key:
            return False
    return True


def enumerate_evidence_models(max_worlds: int, max_sets: int, atoms: Sequence[str] = (),
                              *, uniform: bool = False, up_to_iso: bool = False,
                              min_worlds: int = 1) -> Iterator[EvidenceModel]:
    """Evidence models with worlds 1..n (n <= max_worlds), each E(w) holding W
    plus at most ``max_sets - 1`` further sets.

    ``up_to_iso`` keeps one representative per renaming class of the evidence
    structure; it is only sound when the valuation is quantified separately.
    """
    for n in range(min_worlds, max_worlds + 1):
        full = (1 << n) - 1
        fams = _families(range(1, full + 1), full, max_sets)
        if uniform:
            structures = (tuple([f] * n) for f in fams)
        else:
            structures = itertools.product(fams, repeat=n)
        for ev in structures:
            if up_to_iso and n > 1 and not _canonical_evidence(ev, n):
                continue
            for val in valuations(atoms, n):
                yield EvidenceModel(_labels(n), tuple(ev), tuple(sorted(val.items())))


def _explicit_frames(n: int, max_sets: int, cls: str) -> Iterator[tuple]:
    """(upsets, per-world evidence, per-world belief) satisfying constraints 1-3
    and the structural part of the requested class."""
    full = (1 << n) - 1
    for up in preorders(n):
        ups = upsets(up)
        fams = _families(ups, full, max_sets)
        maximal = 0
        for i in range(n):
            if all(up[j] >> i & 1 for j in bits(up[i])):
                maximal |= 1 << i
        if cls in ("uniform", "concise"):
            beliefs = [b for b in ups if b & ~maximal == 0]
            if cls == "concise":
                beliefs = [maximal]
            for fam in fams:
                for b in beliefs:
                    if cls == "concise" and not all(x & b for x in fam):
                        continue
                    yield up, (fam,) * n, (b,) * n
        else:
            local = [(fam, b) for fam in fams for b in ups
                     if cls != "flat" or all(x & b for x in fam)]
            for choice in itertools.product(local, repeat=n):
                yield up, tuple(c[0] for c in choice), tuple(c[1] for c in choice)


def enumerate_models(b: ModelBounds) -> Iterator[GeneralModel]:
    """Exhaustive stream of models of the requested class (worlds 1..n).

    ``intended`` lifts every evidence model; the other filters enumerate
    explicit general models satisfying the constraints and the class.
    """
    if b.class_filter == "intended":
        for em in enumerate_evidence_models(b.max_worlds, b.max_evidence_sets_per_world, b.atoms):
            yield em.lifted
        return
    for n in range(1, b.max_worlds + 1):
        for up, ev, bel in _explicit_frames(n, b.max_evidence_sets_per_world, b.class_filter):
            for val in valuations(b.atoms, n):
                base = EvidenceModel(_labels(n), ev, tuple(sorted(val.items())))
                yield GeneralModel(base, bel, up)


def random_preorder(rng: random.Random, n: int, density: float = 0.3) -> tuple[int, ...]:
    up = [1 << i for i in range(n)]
    for i in range(n):
        for j in range(n):
            if i != j and rng.random() < density:
                up[i] |= 1 << j
    changed = True
    while changed:  # transitive closure
        changed = False
        for i in range(n):
            closure = up[i]
            for j in bits(up[i]):
                closure |= up[j]
            if closure != up[i]:
                up[i] = closure
                changed = True
    return tuple(up)


def _random_family(rng: random.Random, candidates: list[int], full: int, max_sets: int) -> tuple[int, ...]:
    proper = [c for c in candidates if c and c != full]
    k = rng.randint(0, min(max_sets - 1, len(proper)))
    return tuple(sorted({full, *rng.sample(proper, k)}))


def random_evidence_model(seed: int, b: ModelBounds, *, uniform: bool = False) -> EvidenceModel:
    rng = random.Random(seed)
    n = rng.randint(1, b.max_worlds)
    full = (1 << n) - 1
    cands = list(range(1, full + 1))
    if uniform:
        fam = _random_family(rng, cands, full, b.max_evidence_sets_per_world)
        ev = (fam,) * n
    else:
        ev = tuple(_random_family(rng, cands, full, b.max_evidence_sets_per_world) for _ in range(n))
    val = {p: rng.randrange(1 << n) for p in b.atoms}
    return EvidenceModel(_labels(n), ev, tuple(sorted(val.items())))


def random_model(seed: int, b: ModelBounds) -> GeneralModel:
    """A model of the requested class, determined entirely by ``seed``."""
    cls = b.class_filter
    if cls == "intended":
        return random_evidence_model(seed, b).lifted
    rng = random.Random(seed)
    n = rng.randint(1, b.max_worlds)
    full = (1 << n) - 1
    up = random_preorder(rng, n, rng.choice((0.0, 0.2, 0.4, 0.7)))
    ups = upsets(up)
    maximal = 0
    for i in range(n):
        if all(up[j] >> i & 1 for j in bits(up[i])):
            maximal |= 1 << i
    max_sets = b.max_evidence_sets_per_world
    if cls in ("uniform", "concise"):
        if cls == "concise":
            bel = maximal
        else:
            clusters = [s for s in ups if s & ~maximal == 0]
            bel = rng.choice(clusters)
        cands = [s for s in ups if cls != "concise" or s & bel]
        fam = _random_family(rng, cands, full, max_sets)
        ev, beliefs = (fam,) * n, (bel,) * n
    else:
        ev, beliefs = [], []
        for _ in range(n):
            if cls == "flat":
                bel = rng.choice([s for s in ups if s])
                cands = [s for s in ups if s & bel]
            else:
                bel = rng.choice(ups)
                cands = ups
            ev.append(_random_family(rng, cands, full, max_sets))
            beliefs.append(bel)
        ev, beliefs = tuple(ev), tuple(beliefs)
    val = {p: rng.randrange(1 << n) for p in b.atoms}
    base = EvidenceModel(_labels(n), ev, tuple(sorted(val.items())))
    return GeneralModel(base, beliefs, up)


# ---------------------------------------------------------------------------
# files

def model_from_dict(data: Mapping, *, strict: bool = False) -> AnyModel:
    if not isinstance(data, Mapping) or "worlds" not in data:
        raise ModelError("malformed model file: missing 'worlds'")
    worlds = list(data["worlds"])
    if len(set(map(str, worlds))) != len(worlds):
        raise ModelError("duplicate world ids")
    by_str = {str(w): w for w in worlds}

    def world(x):
        if x in worlds:
            return x
        try:
            return by_str[str(x)]
        except KeyError:
            raise ModelError(f"unknown world id {x!r}") from None

    def wset(xs):
        if not isinstance(xs, list):
            raise ModelError(f"malformed world set {xs!r}")
        return [world(x) for x in xs]

    valuation = {p: wset(ws) for p, ws in data.get("valuation", {}).items()}
    kwargs = {}
    if "uniform_evidence" in data:
        sets = [wset(x) for x in data["uniform_evidence"]]
        if any(not s for s in sets):
            raise ModelError("empty evidence set")
        kwargs["uniform_evidence"] = sets
    elif "evidence" in data:
        ev = {}
        for key, fam in data["evidence"].items():
            sets = [wset(x) for x in fam]
            if any(not s for s in sets):
                raise ModelError("empty evidence set")
            ev[world(key)] = sets
        kwargs["evidence"] = ev
    else:
        kwargs["evidence"] = {}
    base = EvidenceModel.build(worlds, valuation=valuation, strict=strict, **kwargs)
    if "belief" not in data and "plausibility" not in data:
        return base

    def rel(name):
        pairs = data.get(name, [])
        if any(not isinstance(p, list) or len(p) != 2 for p in pairs):
            raise ModelError(f"malformed relation {name!r}")
        return [(world(a), world(b)) for a, b in pairs]

    plaus = rel("plausibility") if "plausibility" in data else None
    m = GeneralModel.build(base, rel("belief"), plaus)
    if strict:
        report = validate(m)
        if not report.is_valid_model:
            raise ModelError(f"constraint violation (strict mode): {report.violations[0]}")
    return m


def load(path, *, strict: bool = False) -> AnyModel:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ModelError(f"malformed model file: {exc}") from None
    return model_from_dict(data, strict=strict)


def save(m: AnyModel, path) -> None:
    Path(path).write_text(json.dumps(m.to_dict(), indent=2) + "\n")
