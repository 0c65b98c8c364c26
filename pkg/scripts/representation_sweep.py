"""Build and verify representations: all flat models up to the exhaustive bound, then seeded flat/concise ones."""

import time
from collections import Counter

from evlogic.config import RepresentationConfig, from_argv
from evlogic.model import ModelBounds, enumerate_models, random_model
from evlogic.representation import verify_representation


def main(argv=None):
    cfg = from_argv(RepresentationConfig, argv, __doc__)
    t0 = time.perf_counter()
    failed = Counter()
    done = 0
    for m in enumerate_models(ModelBounds(cfg.exhaustive_worlds, 4, cfg.atoms, "flat")):
        r = verify_representation(m, cfg.depth, max_worlds=cfg.exhaustive_worlds)
        done += 1
        failed.update(k for k, v in r.checks.items() if not v)
    print(f"exhaustive flat |W|<={cfg.exhaustive_worlds}: {done} models")
    seed, sampled = cfg.seed, 0
    while sampled < cfg.sampled:
        cls = "flat" if sampled % 2 == 0 else "concise"
        m = random_model(seed, ModelBounds(cfg.sample_worlds, 4, cfg.atoms, cls))
        seed += 1
        if not m.belief_range:
            continue
        r = verify_representation(m, cfg.depth, cls, max_worlds=cfg.sample_worlds)
        sampled += 1
        failed.update(k for k, v in r.checks.items() if not v)
    print(f"seeded flat/concise |W|<={cfg.sample_worlds}: {sampled} models")
    print("failed checks:", dict(failed) or "none")
    print(f"{time.perf_counter() - t0:.1f}s")
    return 1 if failed else 0


if __name__ == "__main__":
    raise SystemExit(main())
