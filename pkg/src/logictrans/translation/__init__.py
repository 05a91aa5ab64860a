"""Clause-system translations: application, shape classification, fusion."""

from .clauses import (AtomClause, Clause, ClauseSystem, OpaqueRule, PlanItem, TranslationError, Translator,
                      apply_translation, idx, image_size_constant, literal_clause, match, via)
from .compose import compose_translations
from .shape import ShapeClass, classify_shape
from .textformat import FormatError, parse_clause_systems, render_clause_system
