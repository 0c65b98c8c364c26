import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from evlogic import formula as F
from evlogic.model import ModelBounds, enumerate_evidence_models, enumerate_models, load, random_evidence_model, \
    random_model, save, validate
from evlogic.semantics import EvalContext, eval, truth_set
from evlogic.validity import (AXIOMS, RECURSION_LAWS, REGISTRY, RULES, check_axiom, check_rule, check_schema,
                              constraint3_structure, localize, worked_examples, pointwise, recursion_suite, sweep)

SMALL = ModelBounds(2, 3, ("p", "q"))


def test_registry_rows():
    names = set(REGISTRY)
    for required in ("K_A", "T_A", "4_A", "5_A", "K_B", "K_P", "T_P", "4_P", "no_empty_evidence", "pullout",
                     "universality_E", "universality_B", "universality_P", "plausible_evidence",
                     "B_monotonicity", "flatness", "uniformity_[B]", "uniformity_<B>", "uniformity_[E]",
                     "uniformity_<E>", "maximality", "conciseness", "E_monotonicity", "MP", "N_A"):
        assert required in names
    assert REGISTRY["conciseness"].schema == F.parse_schema("[B]PHI -> <P>[P]PHI")
    assert {r.name for r in RULES} == {"E_monotonicity", "MP", "N_A"}
    assert REGISTRY["maximality"].classes == {"uniform", "concise"}


def test_pullout_small():
    res = check_axiom("pullout", "all", ModelBounds(2, 4, ("p", "q")), 1)
    assert res.ok and res.models > 0 and res.instances > 0
    assert "no counterexample" in res.summary()


def test_flatness_on_intended():
    assert check_axiom("flatness", "intended", ModelBounds(3, 4, ("p", "q"))).ok


def test_conciseness_fails_outside_its_class(tmp_path):
    res = check_axiom("conciseness", "all", ModelBounds(3, 4, ("p",)))
    assert res.exploration and not res.ok
    ce = res.counterexample
    assert ce.reverify()
    path = tmp_path / "ce.json"
    save(ce.model, path)
    back = load(path)
    assert not eval(EvalContext(back, ce.mode), ce.world, ce.instance)


@pytest.mark.parametrize("name, cls", [("uniformity_[E]", "all"), ("maximality", "all"),
                                       ("maximality", "intended"), ("flatness", "all")])
def test_outside_class_counterexamples_reverify(name, cls):
    res = check_axiom(name, cls, ModelBounds(3, 4, ("p",)))
    assert not res.ok and res.counterexample.reverify()


def test_unknown_names():
    with pytest.raises(KeyError):
        check_axiom("nope", "all")
    with pytest.raises(KeyError):
        check_rule("pullout")
    with pytest.raises(ValueError):
        check_axiom("MP", "all")


def test_rules_examples():
    p, q = F.Atom("p"), F.Atom("q")
    assert check_rule("E_monotonicity", SMALL, instances=[(F.And(p, q), p)]).ok
    assert check_rule("N_A", SMALL, instances=[(F.parse("p | ~p"),)]).ok
    taut = F.parse("p -> p")
    assert check_rule("MP", SMALL, instances=[(taut, taut), (F.parse("p | ~p"), F.parse("q | ~q"))]).ok
    for r in RULES:
        assert check_rule(r.name, SMALL).ok


def test_rule_instance_with_invalid_premise_is_skipped():
    # p -> [E]p is not valid, so the rule says nothing about it
    res = check_rule("N_A", SMALL, instances=[(F.parse("p -> [E] p"),)])
    assert res.ok


def test_recursion_examples():
    (atoms,) = recursion_suite(ModelBounds(2, 4), laws=["atoms"])
    assert atoms.ok
    (ev,) = recursion_suite(ModelBounds(2, 4), laws=["evidence"])
    assert ev.ok
    law = F.instantiate(RECURSION_LAWS["universal"], {"PHI": F.FALSE, "PSI": F.Atom("q")})
    for em in enumerate_evidence_models(2, 3, ("q",)):
        ctx = EvalContext(em)
        lhs, rhs = law.left, law.right
        assert truth_set(ctx, lhs) == truth_set(ctx, rhs) == set(em.worlds)


def test_recursion_law_fails_without_precondition():
    # dropping <A>PHI from the atom law breaks it at PHI = false
    res = check_schema("[+PHI] Q <-> Q", "intended", ModelBounds(2, 2))
    assert not res.ok and res.counterexample.reverify()


def test_worked_examples_all_pass():
    checks = worked_examples()
    assert len(checks) >= 3
    assert all(c.ok for c in checks), [c for c in checks if not c.ok]
    assert not validate(constraint3_structure()).is_valid_model


def test_sweeps_are_deterministic():
    a = sweep(["conciseness", "maximality"], "all", ModelBounds(2, 3, ("p",)), random_models=50, seed=3)
    b = sweep(["conciseness", "maximality"], "all", ModelBounds(2, 3, ("p",)), random_models=50, seed=3)
    assert [r.summary().split(" (")[0] for r in a] == [r.summary().split(" (")[0] for r in b]
    assert [(r.models, r.instances) for r in a] == [(r.models, r.instances) for r in b]


# the pointed reduction must agree with evaluation on the original model

_leaf = st.sampled_from([F.Atom("p"), F.Atom("q"), F.TRUE])


def _grow(c):
    return (st.builds(F.Not, c) | st.builds(F.Box, st.sampled_from(F.BOX_MODS), c)
            | st.builds(F.Diamond, st.sampled_from(F.DIA_MODS), c) | st.builds(F.And, c, c)
            | st.builds(F.Implies, c, c) | st.builds(F.CondB, c, c) | st.builds(F.AddEv, c, c))


formulas = st.recursive(_leaf, _grow, max_leaves=5)


@settings(max_examples=400, deadline=None)
@given(st.integers(0, 10**6), formulas)
def test_localize_explicit(seed, f):
    if not pointwise(f, intended=False):
        return
    m = random_model(seed, ModelBounds(3, 4, ("p", "q"), "all"))
    for w in m.worlds:
        pm, point = localize(m, w)
        assert eval(EvalContext(m, "explicit"), w, f) == eval(EvalContext(pm, "explicit"), point, f)


@settings(max_examples=400, deadline=None)
@given(st.integers(0, 10**6), formulas)
def test_localize_intended(seed, f):
    if not pointwise(f, intended=True):
        return
    em = random_evidence_model(seed, ModelBounds(3, 4, ("p", "q")))
    for w in em.worlds:
        pm, point = localize(em, w)
        assert eval(EvalContext(em), w, f) == eval(EvalContext(pm), point, f)


def test_pointwise_classification():
    assert pointwise(F.parse_schema("[E]PHI -> <B>PHI"), intended=True)
    assert not pointwise(F.parse_schema("[B]PHI -> [A][B]PHI"), intended=False)
    assert not pointwise(F.parse_schema("[B]PHI -> <P>[P]PHI"), intended=True)
    assert pointwise(F.parse_schema("[B]PHI -> [B][P]PHI"), intended=False)


@pytest.mark.parametrize("cls", ["all", "intended"])
def test_pointed_and_full_sweeps_agree(cls):
    b = ModelBounds(2, 3, ("p",))
    for e in AXIOMS:
        if not pointwise(e.schema, intended=cls == "intended"):
            continue
        full = check_axiom(e.name, cls, b, strategy="full")
        pointed = check_axiom(e.name, cls, b, strategy="pointed")
        assert full.ok == pointed.ok, e.name
