"""Executable semantics: matrices, Kripke models, bivaluations, relatedness
models, finite first-order structures and explicit consequence relations."""

from .bivaluation import BivaluationEngine, BivaluationModel, enumerate_bivaluations
from .explicit import ExplicitConsequence, ExplicitEngine
from .fol import FOEngine, FOStructure, fol_evaluate, kripke_to_structure, predicate_name
from .kripke import KripkeEngine, KripkeModel, make_model
from .logic import (REFUTED, SKIPPED, VALID_BOUNDED, VALID_EXACT, LogicSpec, Verdict, consequence, consequence_table,
                    entails, enumerate_models, evaluate, first_counter, holds_in, validity_table)
from .matrix import (EvaluationError, MatrixEngine, MatrixModel, MatrixSemantics, classical_matrix,
                     lukasiewicz3_matrix, trivial_matrix)
from .modelmaps import GuardError, ModelMap, apply_model_map, builtin_model_maps, mossakowski_delta, p_atom
from .relatedness import RelatednessEngine, RelatednessModel, make_relatedness_model
