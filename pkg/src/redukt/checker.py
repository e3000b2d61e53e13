"""Sensitivity classification and reduced/unreduced LTL model checking.

A property is checked by intersecting the automaton of its negation with
the Kripke structure of a net.  On a reduced net the emptiness answer
transfers back to the original only in one polarity or the other,
depending on whether the negation's language is closed under shortening
(an empty product stays empty) or under lengthening (a nonempty product
stays nonempty).  Verdicts carry that trust bit.
"""
from __future__ import annotations

import threading
import time
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

from .alphabet import ApSet
from .automata import (DEFAULT_STATE_CAP, LassoWitness, Tgba, cl, emptiness_check, is_empty,
                       kripke_to_tgba, member, product, sl, word_to_tgba)
from .errors import Cancelled, InternalError, ResourceLimitExceeded
from .ltl import Formula, atomic_propositions, check_aps, negate, to_text, translate
from .petri.kripke import DEFAULT_STATE_LIMIT, build_kripke, kripke_lassos
from .petri.model import AtomicPropDef, PetriNet, ap_set
from .petri.reduction import reduce
from .words import CanonicalWord, format_word, shorter_than

TRUE, FALSE, UNKNOWN = "TRUE", "FALSE", "UNKNOWN"
Guard = Optional[Callable[[], None]]


@dataclass(frozen=True)
class Sensitivity:
    shortening: bool
    lengthening: bool

    @property
    def stutter_insensitive(self) -> bool:
        return self.shortening and self.lengthening

    def as_dict(self) -> dict:
        return {"shortening": self.shortening, "lengthening": self.lengthening,
                "stutterInsensitive": self.stutter_insensitive}


@dataclass(frozen=True)
class Classification:
    phi: Sensitivity
    neg_phi: Sensitivity


@dataclass(frozen=True)
class Verdict:
    value: str
    trusted: bool
    witness: Optional[LassoWitness] = None
    stats: dict = field(default_factory=dict, compare=False)
    formula: Optional[Formula] = None
    mode: str = ""
    classification: Optional[Classification] = None

    def __post_init__(self):
        if self.value not in (TRUE, FALSE, UNKNOWN):
            raise ValueError(f"bad verdict value {self.value!r}")
        if (self.witness is not None) != (self.value == FALSE):
            raise InternalError("a witness must accompany exactly the FALSE verdicts")


def default_aps(f: Formula) -> ApSet:
    return ApSet(sorted(atomic_propositions(f)))


def _sensitivity(a: Tgba, a_neg: Tgba, max_states: int, guard: Guard) -> Sensitivity:
    return Sensitivity(
        is_empty(product(cl(a, max_states), a_neg, max_states, guard)),
        is_empty(product(sl(a, max_states), a_neg, max_states, guard)),
    )


def classify(f: Formula, aps: Optional[ApSet] = None, max_states: int = DEFAULT_STATE_CAP,
             guard: Guard = None) -> Classification:
    """Shortening/lengthening insensitivity of ``L(f)`` and of ``L(!f)``.

    ``L`` is shortening insensitive when ``cl(L)`` adds nothing to it, that
    is when ``cl(A_f)`` meets no word of ``A_!f``; lengthening likewise with
    ``sl``.  The two results are cross-checked against each other: ``f`` is
    shortening insensitive exactly when ``!f`` is lengthening insensitive.
    """
    aps = aps if aps is not None else default_aps(f)
    a = translate(f, aps, max_states)
    a_neg = translate(negate(f), aps, max_states)
    phi = _sensitivity(a, a_neg, max_states, guard)
    neg = _sensitivity(a_neg, a, max_states, guard)
    if phi.shortening != neg.lengthening or phi.lengthening != neg.shortening:
        raise InternalError(f"duality violated for {to_text(f)}: {phi} vs {neg}")
    return Classification(phi, neg)


def make_guard(timeout_ms: Optional[float] = None,
               cancel: Optional[threading.Event] = None) -> Guard:
    """Callable that raises :class:`Cancelled` past the deadline or once cancelled."""
    if timeout_ms is None and cancel is None:
        return None
    deadline = None if timeout_ms is None else time.monotonic() + timeout_ms / 1000.0

    def guard() -> None:
        if cancel is not None and cancel.is_set():
            raise Cancelled("cancelled")
        if deadline is not None and time.monotonic() > deadline:
            raise Cancelled(f"timeout after {timeout_ms:g} ms")

    return guard


def _run(net: PetriNet, props: Sequence[AtomicPropDef], f: Formula, reduced: bool,
         state_limit: int, guard: Guard, mode: str) -> Verdict:
    start = time.perf_counter()
    aps = ap_set(props)
    stats: dict = {"originalPlaces": len(net.places), "originalTransitions": len(net.transitions)}
    cls = None
    try:
        check_aps(f, aps)
        cls = classify(f, aps, guard=guard)
        target, report = (reduce(net, props) if reduced else (net, None))
        stats.update(reducedPlaces=len(target.places), reducedTransitions=len(target.transitions),
                     reduction=report.as_dict() if report else None)
        if guard:
            guard()
        ks = build_kripke(target, props, state_limit, guard)
        stats["ksStates"] = ks.num_states
        prod = product(translate(negate(f), aps), kripke_to_tgba(ks), DEFAULT_STATE_CAP, guard)
        stats["productStates"] = prod.num_states
        res = emptiness_check(prod)
    except (ResourceLimitExceeded, Cancelled) as exc:
        stats["note"] = str(exc)
        stats["wallTimeMs"] = (time.perf_counter() - start) * 1000.0
        return Verdict(UNKNOWN, False, None, stats, f, mode, cls)
    value = TRUE if res.empty else FALSE
    if not reduced:
        trusted, basis = True, "no reduction"
    elif value == TRUE:
        trusted = cls.neg_phi.shortening
        basis = "negation shortening insensitive" if trusted else "negation not shortening insensitive"
    else:
        trusted = cls.neg_phi.lengthening
        basis = "negation lengthening insensitive" if trusted else "negation not lengthening insensitive"
    stats["trustBasis"] = basis
    stats["wallTimeMs"] = (time.perf_counter() - start) * 1000.0
    return Verdict(value, trusted, res.witness, stats, f, mode, cls)


def check_semi(net: PetriNet, props: Sequence[AtomicPropDef], f: Formula,
               state_limit: int = DEFAULT_STATE_LIMIT, guard: Guard = None) -> Verdict:
    """Check ``f`` on the reduced net; trust depends on the classification of ``!f``."""
    return _run(net, props, f, True, state_limit, guard, "semi")


def check_full(net: PetriNet, props: Sequence[AtomicPropDef], f: Formula,
               state_limit: int = DEFAULT_STATE_LIMIT, guard: Guard = None) -> Verdict:
    """Check ``f`` on the unreduced net; always trusted."""
    return _run(net, props, f, False, state_limit, guard, "full")


def _summary(v: Optional[Verdict]) -> Optional[dict]:
    if v is None:
        return None
    return {"value": v.value, "trusted": v.trusted, "wallTimeMs": v.stats.get("wallTimeMs")}


def portfolio(net: PetriNet, props: Sequence[AtomicPropDef], f: Formula,
              state_limit: int = DEFAULT_STATE_LIMIT, timeout_ms: Optional[float] = None) -> Verdict:
    """Race the reduced and unreduced checks; keep the first trusted answer.

    An untrusted reduced answer is recorded in the stats but never returned.
    """
    cancel = threading.Event()
    done = threading.Condition()
    results: dict[str, Verdict] = {}
    errors: list[BaseException] = []

    def arm(name: str, fn) -> None:
        try:
            v = fn(net, props, f, state_limit, make_guard(timeout_ms, cancel))
        except BaseException as exc:  # surfaced in the caller's thread
            with done:
                errors.append(exc)
                done.notify_all()
            return
        with done:
            results[name] = v
            done.notify_all()

    threads = [threading.Thread(target=arm, args=(name, fn), daemon=True)
               for name, fn in (("semi", check_semi), ("full", check_full))]
    for t in threads:
        t.start()
    winner = None
    with done:
        while True:
            if errors:
                cancel.set()
                break
            for name in ("semi", "full"):
                v = results.get(name)
                if v is not None and v.trusted and v.value != UNKNOWN:
                    winner = name
                    break
            if winner or len(results) == 2:
                break
            done.wait()
    cancel.set()
    for t in threads:
        t.join()
    if errors:
        raise errors[0]
    semi, full = results.get("semi"), results.get("full")
    both = [v for v in (semi, full) if v is not None and v.trusted and v.value != UNKNOWN]
    if len(both) == 2 and both[0].value != both[1].value:
        raise InternalError(f"trusted verdicts disagree on {to_text(f)}")
    chosen = results[winner] if winner else (full if full is not None else semi)
    stats = dict(chosen.stats)
    stats["portfolio"] = {"winner": winner, "semi": _summary(semi), "full": _summary(full)}
    if winner is None:
        return Verdict(UNKNOWN, False, None, stats, f, "portfolio", chosen.classification)
    return Verdict(chosen.value, True, chosen.witness, stats, f, "portfolio", chosen.classification)


@dataclass
class ReductionCheck:
    """Outcome of checking that one net's runs are shortenings of another's."""

    reduced_runs: int
    original_runs: int
    soundness_violations: list[CanonicalWord]
    completeness_violations: list[CanonicalWord]
    witness_map: dict[CanonicalWord, Optional[CanonicalWord]]
    partial: bool

    @property
    def passed(self) -> bool:
        return not self.soundness_violations and not self.completeness_violations


def verify_reduction(original: PetriNet, reduced: PetriNet, props: Sequence[AtomicPropDef],
                     budget: int = 8, state_limit: int = DEFAULT_STATE_LIMIT,
                     max_paths: int = 2_000_000) -> ReductionCheck:
    """Check both directions of "the reduced runs are shortenings of the original runs".

    Soundness: every reduced lasso of at most ``budget`` states is shorter
    than some original run.  Completeness: every original lasso of at most
    ``budget`` states has a shorter-or-equal reduced run.  Both directions
    are exact automaton queries; only the enumerated lassos are sampled.
    """
    ks_o = build_kripke(original, props, state_limit)
    ks_r = build_kripke(reduced, props, state_limit)
    if ks_o.aps != ks_r.aps:
        raise ValueError("nets disagree on atomic propositions")
    aps = ks_o.aps
    a_o = kripke_to_tgba(ks_o)
    longer_r = sl(kripke_to_tgba(ks_r))
    runs_r, done_r = kripke_lassos(ks_r, budget, max_paths)
    runs_o, done_o = kripke_lassos(ks_o, budget, max_paths)
    order = lambda ws: sorted(ws, key=lambda w: (len(w), w.prefix, w.cycle))  # noqa: E731
    runs_r, runs_o = order(runs_r), order(runs_o)
    unsound = [w for w in runs_r if is_empty(product(sl(word_to_tgba(w, aps)), a_o))]
    incomplete = [r for r in runs_o if not member(r, longer_r)]
    witness_map = {r: next((w for w in runs_r if shorter_than(w, r)), None) for r in runs_o}
    return ReductionCheck(len(runs_r), len(runs_o), unsound, incomplete, witness_map,
                          not (done_r and done_o))


def verdict_record(v: Verdict, aps: Optional[ApSet] = None) -> dict:
    """JSON-ready record of a verdict."""
    names = aps.names if aps is not None else None
    keys = ("originalPlaces", "reducedPlaces", "originalTransitions", "reducedTransitions",
            "ksStates", "productStates", "wallTimeMs")
    stats = {k: v.stats.get(k) for k in keys}
    for extra in ("trustBasis", "note", "reduction", "portfolio"):
        if extra in v.stats:
            stats[extra] = v.stats[extra]
    rec = {
        "formula": to_text(v.formula) if v.formula is not None else None,
        "sensitivityOfPhi": v.classification.phi.as_dict() if v.classification else None,
        "sensitivityOfNegPhi": v.classification.neg_phi.as_dict() if v.classification else None,
        "mode": v.mode,
        "value": v.value,
        "trusted": v.trusted,
    }
    if v.witness is not None:
        rec["witness"] = format_word(v.witness.word, names)
    rec["stats"] = stats
    return rec
