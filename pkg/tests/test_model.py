import itertools
import json

import pytest

from evlogic.model import (EvidenceModel, GeneralModel, ModelBounds, ModelError, enumerate_evidence_models,
                           enumerate_models, has_boundedness, is_directed, load, maximal_worlds,
                           model_from_dict, preorders, random_model, save, upset, validate)
from evlogic.validity import constraint3_structure


def test_one_point_classes(one_point):
    r = validate(one_point)
    assert r.is_valid_model and r.is_flat and r.is_uniform and r.is_concise
    assert upset(one_point, 1) == {1}
    assert maximal_worlds(one_point) == {1}


def test_constraint3_violation():
    r = validate(constraint3_structure())
    assert not r.is_valid_model
    assert ("constraint3", "w", "w", "v") in r.violations


def test_lift_of_counterexample_model(m_cb):
    r = validate(m_cb.lifted)
    assert r.is_valid_model and r.is_flat and r.is_uniform


def test_chain_orders(chain3, m_sp):
    assert upset(chain3, 1) == {1, 2, 3}
    assert maximal_worlds(chain3) == {3}
    assert upset(m_sp.lifted, 1) == {1, 2}
    assert maximal_worlds(m_sp.lifted) == {2, 3}


def test_directedness(chain3):
    assert is_directed(chain3, [])
    assert is_directed(chain3, [2])
    base = EvidenceModel.build(["a", "b"], {})
    anti = GeneralModel.build(base, [], None)
    assert not is_directed(anti, ["a", "b"])
    assert has_boundedness(anti)  # {a, b} is not directed, so nothing needs a bound


def test_boundedness_every_preorder_up_to_4():
    # boundedness only looks at the order, so sweep preorders with trivial evidence
    for n in range(1, 5):
        base = EvidenceModel(tuple(range(1, n + 1)), (((1 << n) - 1,),) * n)
        for up in preorders(n):
            assert has_boundedness(GeneralModel(base, (0,) * n, up))


def test_validate_flags_each_constraint():
    base = EvidenceModel.build([1, 2], {1: [[1]], 2: []})
    # 1 <= 2 but {1} in E(1) does not contain 2
    m = GeneralModel.build(base, [], [(1, 1), (2, 2), (1, 2)])
    kinds = {v[0] for v in validate(m).violations}
    assert "constraint2" in kinds
    m = GeneralModel.build(base, [], [(1, 1)])
    assert ("not_reflexive", 2) in validate(m).violations
    base3 = EvidenceModel.build([1, 2, 3], {})
    m = GeneralModel.build(base3, [], [(i, i) for i in (1, 2, 3)] + [(1, 2), (2, 3)])
    assert ("not_transitive", 1, 2, 3) in validate(m).violations


def test_enumeration_spec_count():
    got = list(enumerate_evidence_models(1, 1, ["p"]))
    assert len(got) == 2
    assert {m.V("p") for m in got} == {frozenset(), frozenset({1})}
    assert all(m.E(1) == {frozenset({1})} for m in got)
    assert len(list(enumerate_models(ModelBounds(1, 1, ("p",), "intended")))) == 2


def _evidence_oracle(max_worlds, max_sets):
    total = 0
    for n in range(1, max_worlds + 1):
        W = frozenset(range(1, n + 1))
        subsets = [frozenset(c) for k in range(1, n + 1) for c in itertools.combinations(sorted(W), k)]
        fams = [f for k in range(len(subsets) + 1) for f in itertools.combinations(subsets, k)
                if W in f and len(f) <= max_sets]
        total += len(fams) ** n
    return total


@pytest.mark.parametrize("worlds, sets", [(2, 2), (2, 3), (3, 2)])
def test_evidence_count_oracle(worlds, sets):
    assert len(list(enumerate_evidence_models(worlds, sets))) == _evidence_oracle(worlds, sets)


def test_evidence_count_2_2_is_ten():
    assert _evidence_oracle(2, 2) == 10


def _raw_models(n):
    """Every (evidence, belief, reflexive relation) on n worlds, unfiltered."""
    W = list(range(1, n + 1))
    full = frozenset(W)
    subsets = [frozenset(c) for k in range(1, n + 1) for c in itertools.combinations(W, k)]
    fams = [f for k in range(len(subsets) + 1) for f in itertools.combinations(subsets, k) if full in f]
    pairs = [(a, b) for a in W for b in W]
    offdiag = [(a, b) for a, b in pairs if a != b]
    for ev in itertools.product(fams, repeat=n):
        base = EvidenceModel.build(W, dict(zip(W, [list(map(list, f)) for f in ev])))
        for bsel in range(1 << len(pairs)):
            bel = [pairs[k] for k in range(len(pairs)) if bsel >> k & 1]
            for psel in range(1 << len(offdiag)):
                rel = [(w, w) for w in W] + [offdiag[k] for k in range(len(offdiag)) if psel >> k & 1]
                yield GeneralModel.build(base, bel, rel)


def _signature(m):
    return (m.evidence, m.belief, m.plausibility)


@pytest.mark.parametrize("cls", ["all", "flat", "uniform", "concise"])
def test_class_enumeration_matches_validate_filter(cls):
    want = set()
    for n in (1, 2):
        for m in _raw_models(n):
            r = validate(m)
            if r.is_valid_model and (cls == "all" or getattr(r, f"is_{cls}")):
                want.add(_signature(m))
    got = [_signature(m) for m in enumerate_models(ModelBounds(2, 3, (), cls))]
    assert len(got) == len(set(got))
    assert set(got) == want


def test_concise_enumeration_invariant():
    for m in enumerate_models(ModelBounds(3, 3, (), "concise")):
        assert m.belief_range == m.maximal_mask
        assert len(set(m.evidence)) == 1 and len(set(m.belief)) == 1


def test_random_model_deterministic():
    b = ModelBounds(3, 3, ("p", "q"), "flat")
    assert random_model(7, b) == random_model(7, b)
    for seed in range(50):
        for cls in ("all", "flat", "uniform", "concise", "intended"):
            m = random_model(seed, ModelBounds(3, 3, ("p",), cls))
            assert validate(m).is_valid_model
            if cls in ("flat", "uniform", "concise"):
                assert getattr(validate(m), f"is_{cls}")


def test_load_minimal(tmp_path):
    path = tmp_path / "m.json"
    path.write_text(json.dumps({"worlds": ["w"], "evidence": {"w": [["w"]]}}))
    m = load(path)
    assert m.worlds == ("w",) and m.E("w") == {frozenset({"w"})}


def test_load_inserts_W_unless_strict():
    data = {"worlds": [1, 2], "evidence": {"1": [[1]], "2": [[2]]}}
    m = model_from_dict(data)
    assert frozenset({1, 2}) in m.E(1)
    with pytest.raises(ModelError):
        model_from_dict(data, strict=True)


@pytest.mark.parametrize("data, msg", [
    ({"worlds": [1], "evidence": {"1": [[]]}}, "empty evidence set"),
    ({"worlds": [1], "evidence": {"1": [[3]]}}, "unknown world"),
    ({"evidence": {}}, "malformed"),
    ({"worlds": [1, 2], "uniform_evidence": [[1, 2]], "belief": [[1, 1]],
      "plausibility": [[1, 1], [2, 2], [1, 2]]}, None),
])
def test_load_errors(data, msg):
    if msg is None:
        # violates constraint 3 only in strict mode
        model_from_dict(data)
        with pytest.raises(ModelError, match="strict"):
            model_from_dict(data, strict=True)
    else:
        with pytest.raises(ModelError, match=msg):
            model_from_dict(data)


def test_save_load_roundtrip(tmp_path, m_cb):
    for m in [m_cb, m_cb.lifted, random_model(3, ModelBounds(3, 3, ("p",), "all"))]:
        path = tmp_path / "x.json"
        save(m, path)
        assert load(path) == m
