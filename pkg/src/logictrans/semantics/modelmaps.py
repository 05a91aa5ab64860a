"""Builtin structure transformations between model classes.

``keep_valuation``        half-negation bivaluation -> classical valuation
``delta_to_bivaluation``  classical valuation on p-indexed atoms -> bivaluation
``relatedness_to_cpl``    relatedness model -> valuation deciding d-atoms
``kripke_to_atoms``       Kripke model -> structureless model on p-indexed atoms
``to_trivial``            anything -> the single trivial model
"""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass, field
from typing import Callable, Iterator, Sequence

from ..formula import Apply, Atom, Formula, IndexedAtom, iff, imp, indexed_atom, is_subformula_closed, neg, render
from .bivaluation import BivaluationModel, satisfies_constraints
from .kripke import KripkeModel, extension
from .matrix import MatrixModel, classical_matrix, trivial_matrix
from .relatedness import RelatednessModel


class GuardError(ValueError):
    """A model map was applied outside its guard."""

    def __init__(self, message: str, formula: Formula | None = None):
        super().__init__(message if formula is None else f"{message}: {render(formula)}")
        self.formula = formula


class LazyValuation(Mapping):
    """Explicit values for some atoms, computed values for indexed ones.

    Iteration and ``len`` cover only the explicit part, which is what gets
    serialized; lookups of other indexed atoms go through ``compute``.
    """

    def __init__(self, explicit: Mapping, compute: Callable[[IndexedAtom], object], bases: Sequence[str] = ()):
        self._explicit = dict(explicit)
        self._compute = compute
        self._bases = tuple(bases)
        self._cache: dict = {}

    def __getitem__(self, key):
        try:
            return self._explicit[key]
        except KeyError:
            pass
        if isinstance(key, IndexedAtom) and (not self._bases or key.base in self._bases):
            try:
                return self._cache[key]
            except KeyError:
                v = self._compute(key)
                self._cache[key] = v
                return v
        raise KeyError(key)

    def __iter__(self) -> Iterator:
        return iter(self._explicit)

    def __len__(self) -> int:
        return len(self._explicit)


@dataclass(frozen=True, eq=False)
class ModelMap:
    """A model transformation attached to a translation ``source -> target``.

    ``direction`` says which way models travel.
    """

    name: str
    source: str
    target: str
    direction: str
    transform: Callable
    model_based: bool = True
    surjective: bool = True
    description: str = ""

    def __call__(self, model, context: Sequence[Formula] = ()):
        return self.transform(model, context)

    def describe(self) -> dict:
        return {"name": self.name, "source": self.source, "target": self.target, "direction": self.direction,
                "model_based": self.model_based, "surjective": self.surjective}


def apply_model_map(mm: ModelMap, model, context: Sequence[Formula] = ()):
    return mm(model, context)


# --------------------------------------------------------------------------
# The Δ axioms
# --------------------------------------------------------------------------


def p_atom(f: Formula) -> IndexedAtom:
    """The fresh atom ``p{φ}`` standing for ``φ``."""
    return indexed_atom("p", [f])


def mossakowski_delta(closure: Sequence[Formula]) -> list[Formula]:
    """Classical axioms over ``p{·}`` atoms forcing half-negation behaviour.

    Binary members give ``p{φ#ψ} <-> (p{φ} # p{ψ})``; each negation ``¬φ``
    gives ``p{φ} -> ¬p{¬φ}``.
    """
    closure = list(closure)
    if not is_subformula_closed(closure):
        raise ValueError("Δ needs a subformula-closed set")
    out = []
    for f in closure:
        if isinstance(f, Apply) and f.op in ("and", "or", "->"):
            a, b = f.args
            out.append(iff(p_atom(f), Apply(f.op, (p_atom(a), p_atom(b)))))
        elif isinstance(f, Apply) and f.op == "not":
            out.append(imp(p_atom(f.args[0]), neg(p_atom(f))))
    return out


# --------------------------------------------------------------------------
# Transforms
# --------------------------------------------------------------------------

_CPL = classical_matrix()
_TRIVIAL = trivial_matrix()


def keep_valuation(model: BivaluationModel, context=()) -> MatrixModel:
    """Keep the atom valuation, read it with the classical tables."""
    return MatrixModel(_CPL, {a: int(v) for a, v in model.atom_valuation().items()})


def delta_to_bivaluation(model: MatrixModel, context: Sequence[Formula]) -> BivaluationModel:
    """Assign ``φ`` the classical value of ``p{φ}`` on the closure ``context``.

    Guard: ``model`` satisfies Δ(context).
    """
    closure = tuple(context)
    for ax in mossakowski_delta(closure):
        if not model.designates(ax):
            raise GuardError("model violates Δ", ax)
    assignment = {f: bool(model.value(p_atom(f))) for f in closure}
    if not satisfies_constraints(assignment):
        raise GuardError("image violates the bivaluation constraints")
    return BivaluationModel(closure, assignment)


def relatedness_to_cpl(model: RelatednessModel, context=()) -> MatrixModel:
    """Copy the atom valuation; ``d{φ,ψ}`` is true iff φ and ψ are related."""

    def decide(atom: IndexedAtom) -> int:
        ops = atom.operands
        if len(ops) != 2:
            raise KeyError(atom)
        return int(model.lifted(ops[0], ops[1]))

    return MatrixModel(_CPL, LazyValuation({a: int(v) for a, v in model.valuation.items()}, decide, ("d",)))


def kripke_to_atoms(model: KripkeModel, context=()) -> KripkeModel:
    """Same worlds, no accessibility; ``p{φ}`` holds where φ is forced."""
    memo: dict = {}

    def decide(atom: IndexedAtom) -> int:
        (f,) = atom.operands
        return extension(model, f, memo)

    return KripkeModel("atom-only", model.n, (0,) * model.n, LazyValuation({}, decide, ("p",)), model.point)


def to_trivial(model, context=()) -> MatrixModel:
    return MatrixModel(_TRIVIAL, _AllOne())


class _AllOne(Mapping):
    """Valuation sending every atom to the single trivial value."""

    def __getitem__(self, key):
        if isinstance(key, (Atom, IndexedAtom)):
            return 1
        raise KeyError(key)

    def __iter__(self):
        return iter(())

    def __len__(self):
        return 0


def builtin_model_maps() -> dict[str, ModelMap]:
    maps = [
        ModelMap("f", "CPL", "WPL", "target-models->source-models", keep_valuation,
                 description="keeps the valuation and replaces the tables by the classical ones"),
        ModelMap("f_prime", "WPL", "CPL", "target-models->source-models", delta_to_bivaluation,
                 description="reads the bivaluation off the p-indexed atoms of a Δ-model"),
        ModelMap("f_E", "R", "CPL", "source-models->target-models", relatedness_to_cpl,
                 description="d-atoms record relatedness of their indices"),
        ModelMap("f_t", "K", "atom-only", "source-models->target-models", kripke_to_atoms,
                 description="p-atoms record where their index is forced"),
        ModelMap("to_trivial", "Trivial", "CPL", "target-models->source-models", to_trivial,
                 description="every model goes to the single trivial model"),
    ]
    return {m.name: m for m in maps}
