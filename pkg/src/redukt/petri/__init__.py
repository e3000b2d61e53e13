"""Petri nets, their Kripke structures and run-shortening reductions."""
from .kripke import (DEFAULT_STATE_LIMIT, KripkeStructure, build_kripke, kripke_lassos,
                     kripke_to_dot, label_of, successors)
from .model import (AtomicPropDef, PetriNet, Transition, ap_set, format_model, observed_places,
                    parse_model, read_model)
from .reduction import (ReductionReport, RuleApplication, is_invisible, post_agglomerate,
                        pre_agglomerate, reduce, remove_dead_transitions)

__all__ = [
    "AtomicPropDef", "DEFAULT_STATE_LIMIT", "KripkeStructure", "PetriNet", "ReductionReport",
    "RuleApplication", "Transition", "ap_set", "build_kripke", "format_model", "is_invisible",
    "kripke_lassos", "kripke_to_dot", "label_of", "observed_places", "parse_model",
    "post_agglomerate", "pre_agglomerate", "read_model", "reduce", "remove_dead_transitions",
    "successors",
]
