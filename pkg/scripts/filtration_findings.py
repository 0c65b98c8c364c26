"""Filtrate seeded models through random pivots; report truth preservation and which quotients stay models."""

import random
from collections import Counter

from evlogic import formula as F
from evlogic.config import FiltrationConfig, from_argv
from evlogic.model import ModelBounds, random_model, validate
from evlogic.representation import filtrate

CLASSES = ("all", "flat", "uniform", "concise", "intended")


def main(argv=None):
    cfg = from_argv(FiltrationConfig, argv, __doc__)
    rng = random.Random(cfg.seed)
    pivots = list(F.enumerate_formulas(list(cfg.atoms), cfg.pivot_depth, F.BASE_OPERATORS))
    broken = 0
    violations = Counter()
    per_class = Counter()
    example = None
    for seed in range(cfg.models):
        cls = CLASSES[seed % len(CLASSES)]
        m = random_model(seed, ModelBounds(cfg.max_worlds, cfg.max_sets, cfg.atoms, cls))
        pivot = rng.choice(pivots)
        q = filtrate(m, pivot)
        ok, _ = q.preserves_truth()
        broken += not ok
        src = validate(m)
        per_class[cls, "quotient valid"] += q.report.is_valid_model
        per_class[cls, "total"] += 1
        if src.is_concise:
            per_class["concise source", "quotient concise"] += q.report.is_concise
            per_class["concise source", "total"] += 1
        kinds = {v[0] for v in q.report.violations}
        violations.update(kinds)
        if kinds and example is None:
            example = (seed, cls, F.render(pivot), q.report.violations[0])
    print(f"truth preserved: {cfg.models - broken}/{cfg.models}")
    for key in sorted({k for k, _ in per_class}):
        good = per_class[key, "quotient valid"] or per_class[key, "quotient concise"]
        print(f"  {key:>15}: {good}/{per_class[key, 'total']}")
    print("violation kinds:", dict(violations) or "none")
    if example:
        print("first violating quotient (seed, class, pivot, violation):", example)
    return 1 if broken else 0


if __name__ == "__main__":
    raise SystemExit(main())
