import threading

import pytest

from redukt.checker import (FALSE, TRUE, UNKNOWN, Sensitivity, Verdict,
                            check_full, check_semi, classify, make_guard, portfolio,
                            verdict_record, verify_reduction)
from redukt.errors import Cancelled, InternalError
from redukt.ltl import ApSet, is_x_free, parse_formula
from redukt.petri import Transition, ap_set, parse_model, reduce
from redukt.words import format_word, shorter_than

from conftest import FIG1_PHI, FIG1_PHI_PRIME, PQ, fixture_paths, load, suite

P = ApSet(["p"])


def sens(text, aps=PQ):
    c = classify(parse_formula(text), aps)
    return (c.phi.shortening, c.phi.lengthening)


@pytest.mark.parametrize("text, expected", [
    ("F p", (True, True)),
    ("F(p & X p)", (False, True)),
    ("G !(q & X q)", (True, False)),
    ("X p", (False, False)),
    ("true", (True, True)),
    ("G(p -> X p)", (True, True)),
    (FIG1_PHI, (True, False)),
])
def test_classification_examples(text, expected):
    assert sens(text) == expected


def test_classification_reports_both_polarities():
    c = classify(parse_formula("F(p & X p)"), P)
    assert c.neg_phi == Sensitivity(True, False)
    assert not c.phi.stutter_insensitive
    assert Sensitivity(True, True).stutter_insensitive


@pytest.mark.parametrize("f", suite(), ids=str)
def test_x_free_formulas_are_stutter_insensitive(f):
    if is_x_free(f):
        assert classify(f, PQ).phi.stutter_insensitive


def test_classification_defaults_to_the_formula_aps():
    assert classify(parse_formula("F(p & X p)")) == classify(parse_formula("F(p & X p)"), P)


def test_verdict_invariants():
    with pytest.raises(InternalError):
        Verdict(FALSE, True)
    with pytest.raises(ValueError):
        Verdict("MAYBE", True)


def test_semi_trusted_true_on_fig1(fig1):
    net, props = fig1
    v = check_semi(net, props, parse_formula(FIG1_PHI_PRIME))
    assert (v.value, v.trusted) == (TRUE, True)
    assert v.stats["ksStates"] == 3 and v.stats["reducedPlaces"] == 6
    assert v.stats["trustBasis"] == "negation shortening insensitive"


def test_semi_untrusted_true_on_fig1(fig1):
    net, props = fig1
    f = parse_formula(FIG1_PHI)
    semi = check_semi(net, props, f)
    full = check_full(net, props, f)
    assert (semi.value, semi.trusted) == (TRUE, False)
    assert (full.value, full.trusted) == (FALSE, True)
    # the counterexample is a run of the original net with four q-states in a row
    assert format_word(full.witness.word, ["p", "q"]) == "{p,q}.{q}.{q}.{q} | ({})"


def test_full_on_fig1(fig1):
    net, props = fig1
    assert check_full(net, props, parse_formula(FIG1_PHI_PRIME)).value == TRUE


def test_true_is_always_trusted():
    for path in fixture_paths()[:4]:
        net, props = parse_model(path.read_text())
        v = check_semi(net, props, parse_formula("true"))
        assert (v.value, v.trusted) == (TRUE, True)


def test_deadlocked_state_satisfies_invariant():
    net, props = load("deadlock")
    assert check_full(net, props, parse_formula("G p")).value == TRUE
    assert check_full(net, props, parse_formula("G X q")).value == TRUE


def test_false_verdicts_carry_a_run_of_the_checked_structure(fig1):
    net, props = fig1
    v = check_semi(net, props, parse_formula("G p"))
    assert v.value == FALSE and v.trusted
    assert format_word(v.witness.word, ["p", "q"]) == "{p,q}.{q} | ({})"


def test_stutter_insensitive_formulas_are_trusted_both_ways():
    for path in fixture_paths():
        net, props = parse_model(path.read_text())
        for text in ("G(p -> F q)", "F p", "G p"):
            v = check_semi(net, props, parse_formula(text))
            assert v.trusted


def test_state_limit_yields_unknown():
    net, props = parse_model("pl a 1\ntr t a -> a a\nap p = tok(a) = 0\nap q = tok(a) = 1\n")
    v = check_full(net, props, parse_formula("G p"), state_limit=20)
    assert v.value == UNKNOWN and not v.trusted and "20" in v.stats["note"]


def test_timeout_yields_unknown():
    net, props = parse_model("pl a 1\ntr t a -> a a\nap p = tok(a) = 0\nap q = tok(a) = 1\n")
    v = check_full(net, props, parse_formula("G p"), state_limit=10**7, guard=make_guard(50))
    assert v.value == UNKNOWN and "timeout" in v.stats["note"]


def test_guard_cancellation():
    ev = threading.Event()
    g = make_guard(cancel=ev)
    g()
    ev.set()
    with pytest.raises(Cancelled):
        g()
    assert make_guard() is None


def test_portfolio_keeps_the_trusted_semi_answer(fig1):
    net, props = fig1
    v = portfolio(net, props, parse_formula(FIG1_PHI_PRIME))
    assert (v.value, v.trusted) == (TRUE, True)
    assert v.stats["portfolio"]["winner"] in ("semi", "full")


def test_portfolio_discards_an_untrusted_semi_answer(fig1):
    net, props = fig1
    v = portfolio(net, props, parse_formula(FIG1_PHI))
    assert (v.value, v.trusted) == (FALSE, True)
    assert v.stats["portfolio"]["winner"] == "full"


def test_portfolio_unknown_when_both_arms_fail():
    net, props = parse_model("pl a 1\ntr t a -> a a\nap p = tok(a) = 0\nap q = tok(a) = 1\n")
    v = portfolio(net, props, parse_formula("G p"), state_limit=20)
    assert v.value == UNKNOWN and v.stats["portfolio"]["winner"] is None


def test_verify_fig1_reduction(fig1):
    net, props = fig1
    red, _ = reduce(net, props)
    rc = verify_reduction(net, red, props)
    assert rc.passed and not rc.partial
    assert (rc.reduced_runs, rc.original_runs) == (1, 3)
    target = {format_word(w, ["p", "q"]) for w in rc.witness_map.values()}
    assert target == {"{p,q}.{q} | ({})"}


def test_identity_is_a_reduction():
    net, props = load("mutex")
    assert verify_reduction(net, net, props, budget=6).passed


def test_dropping_a_branch_breaks_completeness():
    net, props = load("two_branch")
    cut = type(net)(net.name, net.places, net.initial,
                    tuple(t for t in net.transitions if t.name != "right"))
    rc = verify_reduction(net, cut, props)
    assert rc.completeness_violations and not rc.soundness_violations


def test_adding_behaviour_breaks_soundness():
    net, props = load("chain")
    extra = type(net)(net.name, net.places, net.initial,
                      net.transitions + (Transition.make("skip", {"s0": 1}, {"Y": 1}),))
    rc = verify_reduction(net, extra, props)
    assert rc.soundness_violations


def test_witness_map_sends_runs_to_shorter_ones():
    net, props = load("pipeline")
    red, _ = reduce(net, props)
    rc = verify_reduction(net, red, props)
    for r, w in rc.witness_map.items():
        assert w is not None and shorter_than(w, r)


def test_verdict_record(fig1):
    net, props = fig1
    v = check_full(net, props, parse_formula(FIG1_PHI))
    rec = verdict_record(v, ap_set(props))
    assert rec["value"] == FALSE and rec["trusted"] and rec["mode"] == "full"
    assert rec["witness"] == "{p,q}.{q}.{q}.{q} | ({})"
    assert rec["sensitivityOfNegPhi"] == {"shortening": False, "lengthening": True, "stutterInsensitive": False}
    assert set(rec["stats"]) >= {"originalPlaces", "reducedPlaces", "originalTransitions",
                                 "reducedTransitions", "ksStates", "productStates", "wallTimeMs"}


def test_duality_failure_is_an_internal_error(monkeypatch):
    import redukt.checker as checker
    monkeypatch.setattr(checker, "_sensitivity", lambda a, b, *_: Sensitivity(True, False))
    with pytest.raises(InternalError):
        classify(parse_formula("F p"), PQ)
