"""Coherence-space semantics for pomset logic: the ``before`` connective,
generic trees and the flag modality, handsome proof nets and
hypercoherences."""
from __future__ import annotations

from .coherence import (
    EQUAL,
    SCOH,
    SINCOH,
    Clique,
    CoherenceSpace,
    DomainError,
    LinearTrace,
    Rel3,
    Space,
    after,
    before,
    combine,
    is_clique,
    is_linear_trace,
    lollipop,
    negation,
    par,
    rel3,
    spaces_isomorphic,
    tensor,
    trace_apply,
    trace_compose,
)
from .flag import FlagLift, FlagSpace, flag_rel3, verify_no_counit
from .formulas import dicograph_of, format_formula, parse_formula
from .hyper import HFlag, Hypercoherence, hc_before, hc_lollipop, hc_negation, hc_par, hc_tensor
from .proofnets import ProofStructure, is_correct, parse_structure, semantic_correctness_check
from .trees import Leaf, Node, first_difference, from_pairs, normalize, parse_tree, to_pairs

__version__ = "0.1.0"
