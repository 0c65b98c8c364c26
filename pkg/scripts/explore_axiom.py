"""Search for counterexamples to one axiom outside (or inside) its declared classes."""

from pathlib import Path

from evlogic import formula as F
from evlogic.config import ExplorationConfig, from_argv
from evlogic.model import ModelBounds, save
from evlogic.validity import check_axiom


def main(argv=None):
    cfg = from_argv(ExplorationConfig, argv, __doc__)
    bounds = ModelBounds(cfg.max_worlds, cfg.max_sets, cfg.atoms)
    for cls in cfg.classes:
        r = check_axiom(cfg.axiom, cls, bounds)
        print(r.summary())
        c = r.counterexample
        if c is None:
            continue
        print(f"  re-verifies: {c.reverify()}; model: {c.model.to_dict()}")
        if cfg.emit_dir:
            path = Path(cfg.emit_dir) / f"{cfg.axiom}_{cls}.json"
            path.parent.mkdir(parents=True, exist_ok=True)
            save(c.model, path)
            print(f"  wrote {path}  (check with: evlogic check {path} '{F.render(c.instance)}' "
                  f"--world {c.world} --mode {c.mode})")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
