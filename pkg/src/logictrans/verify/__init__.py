"""Semantic property checks, expressiveness gates and the preorder registry."""

from .checks import (DEFAULT_ATOMS, ROLES, GvWitness, bounded_surjective, conditional_template, default_pool,
                     search_general_dt, source_formulas, template_candidates, verify_conservativity,
                     verify_dt_preservation, verify_ec_bounded, verify_gv_sublogic, verify_pt_connective,
                     verify_standard_dt, verify_theoremhood, verify_triviality, verify_truth_preservation)
from .gates import gate_expressiveness_g, gate_expressiveness_gg
from .kripke import (StatusCache, iso_representatives, verify_correspondence, verify_corpus,
                     verify_image_consistency)
from .oracle import Oracle
from .registry import Derived, Edge, Registry, build_preorder, build_registry, evaluate_edge
from .report import CheckEntry, VerificationError, dumps, report_json, strip_timing
