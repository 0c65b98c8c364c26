"""Run configurations for the experiment scripts."""

from __future__ import annotations

import argparse
import dataclasses
from dataclasses import dataclass

from .model import ModelBounds


@dataclass
class SweepConfig:
    max_worlds: int = 3
    max_sets: int = 4  # W included
    atoms: tuple[str, ...] = ("p", "q")
    instance_depth: int = 2
    random_models: int = 1000
    random_worlds: int = 4
    seed: int = 2024
    classes: tuple[str, ...] = ("all", "flat", "uniform", "concise", "intended")

    @property
    def bounds(self) -> ModelBounds:
        return ModelBounds(self.max_worlds, self.max_sets, self.atoms)

    @property
    def random_bounds(self) -> ModelBounds:
        return ModelBounds(self.random_worlds, self.max_sets, self.atoms)


@dataclass
class RepresentationConfig:
    exhaustive_worlds: int = 2
    sampled: int = 200
    sample_worlds: int = 3
    depth: int = 2
    atoms: tuple[str, ...] = ("p",)
    seed: int = 0


@dataclass
class FiltrationConfig:
    models: int = 500
    max_worlds: int = 4
    max_sets: int = 4
    pivot_depth: int = 2
    atoms: tuple[str, ...] = ("p", "q")
    seed: int = 88


@dataclass
class ExplorationConfig:
    axiom: str = "maximality"
    classes: tuple[str, ...] = ("all", "flat", "intended")
    max_worlds: int = 3
    max_sets: int = 4
    atoms: tuple[str, ...] = ("p", "q")
    emit_dir: str | None = None


def from_argv(cls, argv=None, description: str = ""):
    """Build a config of type ``cls`` from command line flags named after its fields."""
    parser = argparse.ArgumentParser(description=description)
    for f in dataclasses.fields(cls):
        flag = "--" + f.name.replace("_", "-")
        default = f.default if f.default is not dataclasses.MISSING else f.default_factory()
        if isinstance(default, tuple):
            parser.add_argument(flag, default=",".join(default), help=f"comma separated (default {default})")
        elif default is None:
            parser.add_argument(flag, default=None)
        else:
            parser.add_argument(flag, type=type(default), default=default)
    args = vars(parser.parse_args(argv))
    kwargs = {}
    for f in dataclasses.fields(cls):
        v = args[f.name]
        default = f.default
        if isinstance(default, tuple) and isinstance(v, str):
            v = tuple(x for x in v.split(",") if x)
        kwargs[f.name] = v
    return cls(**kwargs)
