"""Translations between logics: formulas, executable semantics, clause
systems, bounded property checks and an expressiveness preorder."""

from .catalog import Catalog, CatalogError, build_counterexamples, kripke_corpus, load_catalog
from .formula import Formula, FormulaError, Signature, enumerate_formulas, parse, render
from .semantics import LogicSpec, Verdict, consequence, evaluate, first_counter
from .translation import ClauseSystem, TranslationError, apply_translation, classify_shape, compose_translations
from .verify import (CheckEntry, build_preorder, build_registry, gate_expressiveness_g, gate_expressiveness_gg,
                     verify_conservativity, verify_theoremhood, verify_truth_preservation)

__version__ = "0.1.0"

__all__ = ["Catalog", "CatalogError", "CheckEntry", "ClauseSystem", "Formula", "FormulaError", "LogicSpec",
           "Signature", "TranslationError", "Verdict", "__version__", "apply_translation", "build_counterexamples",
           "build_preorder", "build_registry", "classify_shape", "compose_translations", "consequence",
           "enumerate_formulas", "evaluate", "first_counter", "gate_expressiveness_g", "gate_expressiveness_gg",
           "kripke_corpus", "load_catalog", "parse", "render", "verify_conservativity", "verify_theoremhood",
           "verify_truth_preservation"]
