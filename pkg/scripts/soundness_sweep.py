"""Every registry axiom and rule over each declared class: exhaustive family plus seeded random models."""

import time

from evlogic.config import SweepConfig, from_argv
from evlogic.validity import AXIOMS, RULES, check_rule, sweep


def main(argv=None):
    cfg = from_argv(SweepConfig, argv, __doc__)
    t0 = time.perf_counter()
    failures = 0
    for cls in cfg.classes:
        names = [e.name for e in AXIOMS if cls in e.classes]
        runs = sweep(names, cls, cfg.bounds, instance_depth=cfg.instance_depth)
        if cfg.random_models:
            runs += sweep(names, cls, cfg.random_bounds, instance_depth=cfg.instance_depth,
                          random_models=cfg.random_models, seed=cfg.seed, exhaustive=False)
        runs += [check_rule(r.name, cfg.bounds, cls=cls, random_models=cfg.random_models, seed=cfg.seed)
                 for r in RULES]
        for r in runs:
            print(r.summary())
            failures += not r.ok
    print(f"\n{failures} counterexamples, {time.perf_counter() - t0:.1f}s")
    return 1 if failures else 0


if __name__ == "__main__":
    raise SystemExit(main())
