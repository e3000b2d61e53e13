"""Structural reductions that only ever shorten runs: pre/post agglomeration.

Both rules fuse an invisible transition with a causally adjacent one and
delete the intermediate place.  Their side conditions are deliberately
conservative (weight-1 arcs, sole-input / sole-output patterns, syntactic
invisibility, initially empty intermediate place), so every match removes
one finite stutter from the runs it touches and drops nothing else.

The "redundant transition" rule is intentionally absent: it keeps a longer
run as representative, which is not a reduction in the run-shortening sense.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

from .model import AtomicPropDef, PetriNet, Transition, observed_places

DEFAULT_MAX_STEPS = 10_000


@dataclass(frozen=True)
class RuleApplication:
    rule: str
    place: Optional[str]
    removed: tuple[str, ...]
    added: tuple[str, ...]

    def as_dict(self) -> dict:
        return {"rule": self.rule, "place": self.place,
                "removed": list(self.removed), "added": list(self.added)}


@dataclass
class ReductionReport:
    places_before: int
    transitions_before: int
    places_after: int = 0
    transitions_after: int = 0
    steps: list[RuleApplication] = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "placesBefore": self.places_before,
            "placesAfter": self.places_after,
            "transitionsBefore": self.transitions_before,
            "transitionsAfter": self.transitions_after,
            "steps": [s.as_dict() for s in self.steps],
        }


def is_invisible(net: PetriNet, props: Sequence[AtomicPropDef], t: Transition | str) -> bool:
    """No net effect on any place an atomic proposition reads."""
    if isinstance(t, str):
        t = net.transition(t)
    return all(t.effect(p) == 0 for p in observed_places(props))


def _fresh(name: str, taken: set[str]) -> str:
    out, k = name, 1
    while out in taken:
        k += 1
        out = f"{name}#{k}"
    taken.add(out)
    return out


def _unit_arcs(net: PetriNet, place: str) -> bool:
    for t in net.transitions:
        if t.pre_map.get(place, 1) != 1 or t.post_map.get(place, 1) != 1:
            return False
    return True


def _rebuild(net: PetriNet, drop_places: set[str], drop: set[str], add: list[Transition]) -> PetriNet:
    keep = [(p, m) for p, m in zip(net.places, net.initial) if p not in drop_places]
    transitions = []
    for t in net.transitions:
        if t.name in drop:
            # fused transitions replace the first removed one, keeping order stable
            transitions += add
            add = []
        else:
            transitions.append(t)
    transitions += add
    return PetriNet(net.name, tuple(p for p, _ in keep), tuple(m for _, m in keep), tuple(transitions))


def _pre_match(net: PetriNet, props, p: str):
    if net.tokens(p) != 0 or not _unit_arcs(net, p):
        return None
    producers = net.producers(p)
    consumers = net.consumers(p)
    if len(producers) != 1 or not consumers:
        return None
    h = producers[0]
    if h.post != ((p, 1),) or h in consumers or not is_invisible(net, props, h):
        return None
    if len(h.pre) != 1 or h.pre[0][1] != 1:
        return None
    q = h.pre[0][0]
    if q == p or net.consumers(q) != [h]:
        return None
    return h, consumers


def _pre_fuse(net: PetriNet, p: str, h: Transition, consumers: list[Transition]):
    taken = {t.name for t in net.transitions} - {h.name} - {f.name for f in consumers}
    added = []
    for f in consumers:
        pre = list(h.pre) + [(r, w) for r, w in f.pre if r != p]
        added.append(Transition.make(_fresh(f"{h.name}.{f.name}", taken), pre, f.post))
    gone = {h.name} | {f.name for f in consumers}
    return _rebuild(net, {p}, gone, added), RuleApplication(
        "pre-agglomeration", p, tuple(sorted(gone)), tuple(t.name for t in added))


def _post_match(net: PetriNet, props, p: str):
    if net.tokens(p) != 0 or not _unit_arcs(net, p):
        return None
    producers = net.producers(p)
    consumers = net.consumers(p)
    if not producers or not consumers:
        return None
    if {t.name for t in producers} & {t.name for t in consumers}:
        return None
    for f in consumers:
        if f.pre != ((p, 1),) or not is_invisible(net, props, f):
            return None
    return producers, consumers


def _post_fuse(net: PetriNet, p: str, producers: list[Transition], consumers: list[Transition]):
    gone = {t.name for t in producers} | {t.name for t in consumers}
    taken = {t.name for t in net.transitions} - gone
    added = []
    for h in producers:
        for f in consumers:
            post = [(r, w) for r, w in h.post if r != p] + list(f.post)
            added.append(Transition.make(_fresh(f"{h.name}.{f.name}", taken), h.pre, post))
    return _rebuild(net, {p}, gone, added), RuleApplication(
        "post-agglomeration", p, tuple(sorted(gone)), tuple(t.name for t in added))


def _first_match(net: PetriNet, props, match):
    for p in sorted(net.places):
        m = match(net, props, p)
        if m is not None:
            return p, m
    return None


def _apply(net: PetriNet, props, match, fuse, max_steps: int):
    steps = []
    for _ in range(max_steps):
        hit = _first_match(net, props, match)
        if hit is None:
            break
        net, app = fuse(net, hit[0], *hit[1])
        steps.append(app)
    return net, steps


def _report(before: PetriNet, after: PetriNet, steps) -> ReductionReport:
    return ReductionReport(len(before.places), len(before.transitions),
                           len(after.places), len(after.transitions), list(steps))


def pre_agglomerate(net: PetriNet, props: Sequence[AtomicPropDef],
                    max_steps: int = DEFAULT_MAX_STEPS) -> tuple[PetriNet, ReductionReport]:
    """Delay an invisible transition ``h`` whose only output feeds consumers ``F``.

    Conditions on place ``p``: initially empty; weight-1 arcs; a single
    producer ``h`` with ``post(h) = {p}``; ``h`` invisible with a single
    weight-1 input place ``q`` that nothing but ``h`` consumes; at least one
    consumer, none of them ``h``.  Each consumer ``f`` becomes ``h.f`` with
    ``pre = pre(h) + pre(f) - p`` and ``post = post(f)``.
    """
    out, steps = _apply(net, props, _pre_match, _pre_fuse, max_steps)
    return out, _report(net, out, steps)


def post_agglomerate(net: PetriNet, props: Sequence[AtomicPropDef],
                     max_steps: int = DEFAULT_MAX_STEPS) -> tuple[PetriNet, ReductionReport]:
    """Anticipate invisible consumers ``F`` whose sole input is ``p``.

    Conditions on place ``p``: initially empty; weight-1 arcs; producers
    ``H`` and consumers ``F`` nonempty and disjoint; every ``f`` in ``F``
    invisible with ``pre(f) = {p}``.  Every pair gives ``h.f`` with
    ``pre = pre(h)`` and ``post = post(h) - p + post(f)``.
    """
    out, steps = _apply(net, props, _post_match, _post_fuse, max_steps)
    return out, _report(net, out, steps)


def remove_dead_transitions(net: PetriNet) -> tuple[PetriNet, list[RuleApplication]]:
    """Drop transitions needing a place that is initially empty and never fed."""
    steps = []
    while True:
        fed = {p for t in net.transitions for p, _ in t.post}
        dead = [t.name for t in net.transitions
                if any(net.tokens(p) == 0 and p not in fed for p, _ in t.pre)]
        if not dead:
            return net, steps
        net = _rebuild(net, set(), set(dead), [])
        steps.append(RuleApplication("dead-transition", None, tuple(dead), ()))


def reduce(net: PetriNet, props: Sequence[AtomicPropDef], max_rounds: int = 1000,
           on_step: Optional[Callable[[PetriNet, RuleApplication], None]] = None
           ) -> tuple[PetriNet, ReductionReport]:
    """Alternate dead-transition removal, pre- and post-agglomeration to a fixpoint.

    ``on_step`` sees the net after each rule application, e.g. to record
    intermediate shapes.
    """
    report = ReductionReport(len(net.places), len(net.transitions))
    current = net
    for _ in range(max_rounds):
        changed = False
        current, dead = remove_dead_transitions(current)
        for app in dead:
            report.steps.append(app)
            changed = True
            if on_step:
                on_step(current, app)
        for match, fuse in ((_pre_match, _pre_fuse), (_post_match, _post_fuse)):
            while True:
                hit = _first_match(current, props, match)
                if hit is None:
                    break
                current, app = fuse(current, hit[0], *hit[1])
                report.steps.append(app)
                changed = True
                if on_step:
                    on_step(current, app)
        if not changed:
            break
    report.places_after = len(current.places)
    report.transitions_after = len(current.transitions)
    return current, report
