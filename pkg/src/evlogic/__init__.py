"""Evidence logic over finite neighbourhood models."""

from .formula import parse, parse_schema, render
from .model import EvidenceModel, GeneralModel, ModelBounds, load, save, validate
from .semantics import EvalContext, eval, truth_set, valid_on_model

__all__ = [
    "parse", "parse_schema", "render", "EvidenceModel", "GeneralModel", "ModelBounds",
    "load", "save", "validate", "EvalContext", "eval", "truth_set", "valid_on_model",
]
