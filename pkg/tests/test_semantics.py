import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from evlogic import formula as F
from evlogic.dynamics import add_evidence
from evlogic.model import EvidenceModel, ModelBounds, ModelError, enumerate_evidence_models, enumerate_models, \
    random_model
from evlogic.scenario import derived_belief, derived_plausibility, relative_scenarios, reliable_evidence, \
    scenarios, unreliable_evidence
from evlogic.semantics import EvalContext, compile_formula, eval, truth_mask, truth_set, valid_on_model


def ref(m, f, mode="intended"):
    """Set-level evaluator written straight from the truth clauses."""
    em = m.evidence_model
    W = frozenset(em.worlds)
    if mode == "explicit":
        B, P = m.belief_pairs(), m.plausibility_pairs()
    else:
        B, P = derived_belief(em), derived_plausibility(em)

    def succ(rel, w):
        return {v for (a, v) in rel if a == w}

    def go(g):
        t = type(g)
        if t is F.Atom:
            return em.V(g.name)
        if t is F.Top:
            return W
        if t is F.Bottom:
            return frozenset()
        if t is F.Not:
            return W - go(g.arg)
        if t in (F.And, F.Or, F.Implies, F.Iff):
            a, b = go(g.left), go(g.right)
            return {F.And: a & b, F.Or: a | b, F.Implies: (W - a) | b, F.Iff: W - (a ^ b)}[t]
        if t is F.Box:
            s = go(g.arg)
            if g.mod == "A":
                return W if s == W else frozenset()
            if g.mod == "E":
                return {w for w in W if any(x <= s for x in em.E(w))}
            if g.mod == "B":
                return {w for w in W if succ(B, w) <= s}
            if g.mod == "P":
                return {w for w in W if succ(P, w) <= s}
            if g.mod == "C":
                return {w for w in W if frozenset.intersection(*reliable_evidence(em, w)) <= s}
            if g.mod == "U":
                return {w for w in W if frozenset().union(*unreliable_evidence(em, w)) <= s}
        if t is F.Diamond:
            s = go(g.arg)
            if g.mod == "A":
                return W if s else frozenset()
            if g.mod == "E":
                return {w for w in W if all(x & s for x in em.E(w))}
            rel = B if g.mod == "B" else P
            return {w for w in W if succ(rel, w) & s}
        if t is F.CondB:
            c, b = go(g.condition), go(g.body)
            return {w for w in W if all(s.intersection <= b for s in relative_scenarios(em, w, c))}
        if t is F.CondB2:
            c, a, b = go(g.condition), go(g.settled), go(g.body)
            out = set()
            for w in W:
                cores = [s.intersection for s in relative_scenarios(em, w, c)]
                if all(k <= b for k in cores if k <= a):
                    out.add(w)
            return out
        if t is F.AddEv:
            x = go(g.evidence)
            if not x:
                return W
            return ref(add_evidence(em, x), g.body)
        raise TypeError(g)

    return frozenset(go(f))


def test_one_point(one_point):
    for mode in ("intended", "explicit"):
        assert eval(EvalContext(one_point, mode), 1, "[B] true & [E] true & [C] true")


def test_counterexample_verdicts(m_cb):
    ctx = EvalContext(m_cb)
    assert truth_set(ctx, "[B] q") == set(m_cb.worlds)
    for w in m_cb.worlds:
        assert not eval(ctx, w, "B{p} q")
        assert not eval(ctx, w, "B{~p} q")
    assert not valid_on_model(ctx, "[B] q -> B{p} q")


def test_safe_belief_on_chain(m_sp):
    assert truth_set(EvalContext(m_sp), "[P] p") == {2, 3}


def test_basic_validities(m_cb):
    ctx = EvalContext(m_cb)
    assert truth_set(ctx, "[A] true") == set(m_cb.worlds)
    assert valid_on_model(ctx, "p | ~p")
    assert valid_on_model(ctx, "[C] p -> p")


def test_errors(m_cb):
    with pytest.raises(ModelError):
        EvalContext(m_cb, "explicit")
    with pytest.raises(ValueError):
        EvalContext(m_cb, "sideways")
    with pytest.raises(ModelError):
        eval(EvalContext(m_cb), 99, "p")
    with pytest.raises(KeyError):
        truth_set(EvalContext(m_cb), F.parse_schema("PHI"))


def test_explicit_and_intended_can_differ(m_cb):
    m = m_cb.lifted
    # the same relations, so both modes agree on the lift
    f = "[B] q & [P] p"
    assert truth_set(EvalContext(m, "explicit"), f) == truth_set(EvalContext(m, "intended"), f)


def test_addition_with_empty_condition_is_vacuous(m_cb):
    assert valid_on_model(EvalContext(m_cb), "[+ false] false")


_atoms = st.sampled_from([F.Atom("p"), F.Atom("q"), F.TRUE, F.FALSE])


def _grow(c):
    return (st.builds(F.Not, c) | st.builds(F.Box, st.sampled_from(F.BOX_MODS), c)
            | st.builds(F.Diamond, st.sampled_from(F.DIA_MODS), c)
            | st.builds(F.And, c, c) | st.builds(F.Or, c, c) | st.builds(F.Implies, c, c)
            | st.builds(F.CondB, c, c) | st.builds(F.CondB2, c, c, c) | st.builds(F.AddEv, c, c))


formulas = st.recursive(_atoms, _grow, max_leaves=6)


@settings(max_examples=300, deadline=None)
@given(st.integers(0, 10_000), formulas)
def test_engine_matches_reference_intended(seed, f):
    from evlogic.model import random_evidence_model
    em = random_evidence_model(seed, ModelBounds(3, 4, ("p", "q")))
    assert truth_set(EvalContext(em), f) == ref(em, f)


@settings(max_examples=300, deadline=None)
@given(st.integers(0, 10_000), formulas)
def test_engine_matches_reference_explicit(seed, f):
    m = random_model(seed, ModelBounds(3, 4, ("p", "q"), "all"))
    assert truth_set(EvalContext(m, "explicit"), f) == ref(m, f, "explicit")


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 10_000), formulas)
def test_compiled_matches_recursive(seed, f):
    m = random_model(seed, ModelBounds(3, 4, ("p", "q"), "all"))
    for mode in ("explicit", "intended"):
        ctx = EvalContext(m, mode)
        assert compile_formula(f)(ctx.frame, ()) == truth_mask(ctx, f)


def _all_subsets(n):
    return range(1 << n)


def test_laws_over_enumerated_models():
    dual = [(F.parse_schema(f"<{x}>PHI"), F.parse_schema(f"~[{x}]~PHI")) for x in "BEAP"]
    mono = F.parse_schema("[E]PHI -> [E](PHI | PSI)")
    boxb, cond_true = F.parse_schema("[B]PHI"), F.parse_schema("B{true}PHI")
    ct = F.parse_schema("[C]PHI -> PHI")
    ubot = F.parse_schema("[U]false")
    for em in enumerate_evidence_models(3, 3, up_to_iso=True):
        for mode, m in (("intended", em), ("explicit", em.lifted)):
            ctx = EvalContext(m, mode)
            full = (1 << m.n) - 1
            none_unreliable = sum(1 << i for i in range(m.n) if not unreliable_evidence(m, m.worlds[i]))
            assert truth_mask(ctx, ubot) == none_unreliable
            for s in _all_subsets(m.n):
                env = {"PHI": s}
                for a, b in dual:
                    assert truth_mask(ctx, a, env) == truth_mask(ctx, b, env)
                assert truth_mask(ctx, boxb, env) == truth_mask(ctx, cond_true, env)
                assert truth_mask(ctx, ct, env) == full
                for t in _all_subsets(m.n):
                    assert truth_mask(ctx, mono, {"PHI": s, "PSI": t}) == full


def test_belief_equals_scenario_brute_force():
    for em in enumerate_evidence_models(3, 3, up_to_iso=True):
        ctx = EvalContext(em)
        for s in range(1 << em.n):
            got = truth_set(ctx, F.parse_schema("[B]PHI"), {"PHI": s})
            phi = em.world_set(s)
            want = {w for w in em.worlds if all(sc.intersection <= phi for sc in scenarios(em, w))}
            assert got == want


def test_dual_laws_general_models():
    for m in itertools.islice(enumerate_models(ModelBounds(2, 3, ("p",), "all")), 0, None, 3):
        ctx = EvalContext(m, "explicit")
        for x in "BEAP":
            for f in ("p", "~p", "[A]p"):
                assert truth_set(ctx, f"<{x}>{f}") == truth_set(ctx, f"~[{x}]~{f}")
