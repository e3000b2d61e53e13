import pytest

from redukt.errors import ModelSyntaxError, ResourceLimitExceeded
from redukt.petri import (PetriNet, Transition, build_kripke, format_model, is_invisible,
                          kripke_lassos, kripke_to_dot, parse_model, post_agglomerate,
                          pre_agglomerate, reduce, remove_dead_transitions, successors)
from redukt.words import format_word

from conftest import fixture_paths, load

NAMES = ["p", "q"]


def words(name, net_props=None, limit=10):
    net, props = net_props or load(name)
    ws, complete = kripke_lassos(build_kripke(net, props), limit)
    assert complete
    return sorted(format_word(w, NAMES) for w in ws)


def test_parse_fig1():
    net, props = load("fig1")
    assert net.places == ("a0", "a1", "a2", "b0", "b1", "chan", "X", "Y")
    assert net.initial == (1, 0, 0, 1, 0, 0, 0, 0)
    assert net.transition("recv").pre == (("a1", 1), ("chan", 1))
    assert [d.name for d in props] == NAMES


@pytest.mark.parametrize("text, line", [
    ("pl a 1\npl a 0\n", 2),
    ("pl a 1\ntr t a -> b\n", 2),
    ("pl a 1\ntr t a*0 -> a\n", 2),
    ("pl a 1\npl b\n", 2),
    ("pl a 1\nbogus\n", 2),
    ("pl a 1\nap p = tok(z) = 0\n", 2),
    ("pl a 1\nap p = tok(a) ~ 0\n", 2),
    ("pl a 1\ntr t a\n", 2),
])
def test_parse_errors_report_lines(text, line):
    with pytest.raises(ModelSyntaxError) as err:
        parse_model(text)
    assert err.value.line == line


def test_linear_propositions():
    net, props = parse_model("pl a 2\npl b 1\nap big = 2*tok(a) - tok(b) >= 3\n")
    assert props[0].terms == ((2, "a"), (-1, "b"))
    assert props[0].evaluate(net, net.initial)
    assert not props[0].evaluate(net, (1, 1))


@pytest.mark.parametrize("path", fixture_paths(), ids=lambda p: p.stem)
def test_format_roundtrip(path):
    net, props = parse_model(path.read_text())
    again = parse_model(format_model(net, props))
    assert again == (net, props)


def test_net_validation():
    with pytest.raises(ValueError):
        PetriNet("n", ("a", "a"), (0, 0), ())
    with pytest.raises(ValueError):
        PetriNet("n", ("a",), (0,), (Transition.make("t", {"b": 1}, {}),))


def test_successors():
    net, _ = load("fig1")
    out = dict(successors(net, net.initial))
    assert set(out) == {"x1", "z40"}


def test_fig1_kripke_structure():
    net, props = load("fig1")
    ks = build_kripke(net, props)
    assert ks.num_states == 7
    # only the final marking is a deadlock, closed by a self-loop
    assert sum(1 for s, nxt in enumerate(ks.succ) if nxt == (s,)) == 1
    assert ks.labels[0] == 3


def test_fig1_languages():
    assert words("fig1") == ["{p,q}.{p,q}.{p,q}.{q} | ({})", "{p,q}.{p,q}.{q}.{q} | ({})",
                             "{p,q}.{q}.{q}.{q} | ({})"]
    assert words("fig1_panel3") == ["{p,q}.{p,q}.{q} | ({})", "{p,q}.{q}.{q} | ({})"]
    assert words("fig1_panel4") == ["{p,q}.{q} | ({})"]


def test_build_kripke_is_deterministic():
    net, props = load("producer_consumer")
    assert build_kripke(net, props) == build_kripke(net, props)


def test_state_limit():
    net, props = parse_model("pl a 1\ntr t a -> a a\nap p = tok(a) = 0\n")
    with pytest.raises(ResourceLimitExceeded):
        build_kripke(net, props, state_limit=50)
    with pytest.raises(ValueError):
        build_kripke(net, props, state_limit=0)


def test_deadlock_gets_a_self_loop():
    net, props = load("deadlock")
    ks = build_kripke(net, props)
    assert ks.num_states == 1 and ks.succ == ((0,),)


def test_invisibility():
    net, props = load("fig1")
    assert is_invisible(net, props, "z40") and is_invisible(net, props, "send")
    assert not is_invisible(net, props, "x1") and not is_invisible(net, props, "recv")


def test_fig1_reduction_steps():
    net, props = load("fig1")
    shapes = []
    red, report = reduce(net, props, on_step=lambda n, app: shapes.append((app.place, n)))
    assert [p for p, _ in shapes] == ["b1", "chan"]
    assert words(None, (shapes[0][1], props)) == words("fig1_panel3")
    assert words(None, (red, props)) == words("fig1_panel4")
    assert [t.name for t in red.transitions] == ["x1", "z40.send.recv"]
    assert red.transition("z40.send.recv").pre == (("a1", 1), ("b0", 1))
    assert (report.places_before, report.places_after) == (8, 6)
    assert (report.transitions_before, report.transitions_after) == (4, 2)


def test_pre_agglomeration_alone():
    net, props = load("chain")
    red, report = pre_agglomerate(net, props)
    assert [t.name for t in red.transitions] == ["t1.t2.t3", "t4"]
    assert len(report.steps) == 2


def test_pre_agglomeration_needs_a_private_input():
    # q feeds two transitions, so delaying h would change the choice
    net, props = parse_model(
        "pl q 1\npl p 0\npl X 0\ntr h q -> p\ntr g q -> X\ntr f p -> X\nap a = tok(X) = 0\n")
    assert pre_agglomerate(net, props)[0] == net


def test_post_agglomeration_alone():
    net, props = load("post_agg")
    assert pre_agglomerate(net, props)[0] == net
    red, report = post_agglomerate(net, props)
    assert [t.name for t in red.transitions] == ["h.f.g2", "g1"]
    assert red.transition("h.f.g2").post == (("X", 1), ("k", 1), ("n1", 1))


def test_post_agglomeration_needs_invisible_consumers():
    net, props = parse_model("pl s 1\npl m 0\npl X 0\ntr h s -> m\ntr f m -> X\nap a = tok(X) = 0\n")
    assert post_agglomerate(net, props)[0] == net


def test_weighted_arcs_block_agglomeration():
    net, props = parse_model("pl s 1\npl m 0\npl X 0\ntr h s -> m*2\ntr f m*2 -> X\nap a = tok(X) = 0\n")
    assert reduce(net, props)[0] == net


def test_initially_marked_place_blocks_agglomeration():
    net, props = parse_model("pl s 1\npl m 1\npl X 0\ntr h s -> m\ntr f m -> X\nap a = tok(X) = 0\n")
    assert reduce(net, props)[0] == net


def test_fused_names_are_unique():
    text = ("pl s 1\npl m 0\npl X 0\ntr h s -> m\ntr f m -> X\ntr h.f X -> s\n"
            "ap a = tok(X) = 0\n")
    net, props = parse_model(text)
    red, _ = pre_agglomerate(net, props)
    names = [t.name for t in red.transitions]
    assert len(set(names)) == len(names) and "h.f#2" in names


def test_dead_transitions():
    net, _ = parse_model("pl a 1\npl z 0\npl y 0\ntr live a -> a\ntr dead z -> y\ntr later y -> a\n")
    red, steps = remove_dead_transitions(net)
    assert [t.name for t in red.transitions] == ["live"]
    assert [s.removed for s in steps] == [("dead",), ("later",)]


def test_observable_net_is_unchanged():
    net, props = load("observable")
    red, report = reduce(net, props)
    assert red == net and report.steps == []


@pytest.mark.parametrize("path", fixture_paths(), ids=lambda p: p.stem)
def test_reduction_invariants(path):
    net, props = parse_model(path.read_text())
    red, report = reduce(net, props)
    assert len(red.places) <= len(net.places) and len(red.transitions) <= len(net.transitions)
    assert reduce(red, props)[0] == red
    assert build_kripke(red, props).num_states <= build_kripke(net, props).num_states


def test_kripke_dot():
    net, props = load("fig1_panel4")
    text = kripke_to_dot(build_kripke(net, props))
    assert text.count("->") == 4 and "{p,q}" in text
