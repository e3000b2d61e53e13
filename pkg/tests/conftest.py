import random
from pathlib import Path

import pytest
from hypothesis import strategies as st

from redukt.ltl import (And, Ap, ApSet, Finally, Globally, Implies, Next, Not, Or, Release,
                        Until, parse_formula)
from redukt.petri import read_model
from redukt.words import canonicalize, rle_view

FIXTURES = Path(__file__).resolve().parents[1] / "src" / "redukt" / "fixtures"
PQ = ApSet(["p", "q"])

SUITE_TEXT = [
    "F p", "G p", "F(p & X p)", "G !(q & X q)", "X p", "G(p -> F q)", "p U q",
    "F(q & X q)", "G !(q & X q & X X q & X X X q)", "G F p", "G(p -> X q)", "G(p -> X p)",
]
FIG1_PHI = "G !(q & X q & X X q & X X X q)"
FIG1_PHI_PRIME = "F(q & X q)"


def fixture_paths():
    return sorted(FIXTURES.glob("*.rnet"))


def load(name):
    return read_model(FIXTURES / f"{name}.rnet")


def suite():
    return [parse_formula(t) for t in SUITE_TEXT]


@pytest.fixture(scope="session")
def fig1():
    return load("fig1")


# words

def lasso_words(alphabet=(0, 1, 2), max_len=4):
    letters = st.sampled_from(list(alphabet))
    return st.builds(lambda p, c: canonicalize(p, c, alphabet),
                     st.lists(letters, max_size=max_len), st.lists(letters, min_size=1, max_size=max_len))


def stretch(w, rng: random.Random, direction: int, alphabet=None):
    """A random word above (``direction=1``) or below (``-1``) ``w``, up to equality."""
    r = rle_view(w)
    copies = 0 if r.is_terminal else rng.randint(0, 2)
    blocks = list(r.prefix) + list(r.cycle) * copies
    out = []
    for a, n in blocks:
        if direction > 0:
            n += rng.choice((0, 0, 1, 2))
        else:
            n -= rng.randint(0, n - 1)
        out += [a] * n
    tail = [r.omega] if r.is_terminal else [a for a, n in r.cycle for _ in range(n)]
    return canonicalize(out, tail, alphabet if alphabet is not None else w.alphabet)


def random_word(rng: random.Random, alphabet=(0, 1, 2), max_len=5):
    pre = [rng.choice(alphabet) for _ in range(rng.randint(0, max_len))]
    cyc = [rng.choice(alphabet) for _ in range(rng.randint(1, max_len))]
    return canonicalize(pre, cyc, alphabet)


# formulas

_UNARY = (Not, Next, Finally, Globally)
_BINARY = (And, Or, Implies, Until, Release)


def random_formula(rng: random.Random, depth: int, names=("p", "q")):
    if depth == 0 or rng.random() < 0.2:
        return Ap(rng.choice(names))
    if rng.random() < 0.45:
        return rng.choice(_UNARY)(random_formula(rng, depth - 1, names))
    op = rng.choice(_BINARY)
    return op(random_formula(rng, depth - 1, names), random_formula(rng, depth - 1, names))


def formulas(max_depth=3, names=("p", "q")):
    leaves = st.sampled_from([Ap(n) for n in names])

    def extend(children):
        return st.one_of(
            st.builds(lambda op, a: op(a), st.sampled_from(_UNARY), children),
            st.builds(lambda op, a, b: op(a, b), st.sampled_from(_BINARY), children, children),
        )

    return st.recursive(leaves, extend, max_leaves=2 ** max_depth)


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    if mod is None or not getattr(mod, "RESULTS", None):
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
