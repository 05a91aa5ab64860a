"""Structured text descriptors for logics.

::

    logic L3
      engine matrix
      signature L3
      values 0 1/2 1
      designated 1
      table -> 1 1 1 / 1/2 1 1 / 0 1/2 1
      constant top 1

Binary tables list rows separated by `` / ``; row ``i`` holds the values for
first operand ``values[i]``. ``like NAME`` copies an earlier descriptor and
lets later lines override it. Other engines: ``kripke <class>``,
``bivaluation half-negation``, ``relatedness``, ``explicit`` (with
``formulas`` and ``entails Γ |- φ`` lines), ``fo``, ``syntax``.
"""

from __future__ import annotations

import itertools
import re
from fractions import Fraction

from ..formula import FormulaError, Signature, parse
from ..semantics import (BivaluationEngine, ExplicitConsequence, ExplicitEngine, FOEngine, KripkeEngine, LogicSpec,
                         MatrixEngine, MatrixSemantics, RelatednessEngine)
from ..signatures import ALL as SIGNATURES
from ..translation.textformat import ARITY_HINT


class DescriptorError(ValueError):
    pass


class SyntaxOnlyEngine:
    """Placeholder for logics carried without semantics."""

    kind = "syntax"
    exact = False

    def space(self, context, size_bound):
        raise DescriptorError("this logic is syntax-only and has no models")

    enumerate = space


def _value(tok: str):
    return Fraction(tok) if "/" in tok else int(tok)


def _normalize(values):
    if any(isinstance(v, Fraction) for v in values):
        return [Fraction(v) for v in values]
    return values


def parse_signature_spec(text: str) -> Signature:
    text = text.strip()
    if text in SIGNATURES:
        return SIGNATURES[text]
    raise DescriptorError(f"unknown signature {text!r}")


def _build(d: dict, where: str) -> LogicSpec:
    name = d["name"]
    if "engine" not in d:
        raise DescriptorError(f"{where}: logic {name} lacks an engine")
    if "signature" in d:
        sig = parse_signature_spec(d["signature"])
    elif "connectives" in d:
        conns = tuple((s.split("/")[0], int(s.split("/")[1])) for s in d["connectives"].split())
        sig = Signature(name, conns, frozenset(d.get("constants", "").split()))
    else:
        raise DescriptorError(f"{where}: logic {name} lacks a signature")
    kind, _, arg = d["engine"].partition(" ")
    bound = int(d.get("bound", 1))
    if kind == "matrix":
        values = _normalize([_value(t) for t in d["values"].split()])
        designated = frozenset(_normalize([_value(t) for t in d["designated"].split()]))
        tables = {}
        for op, spec in d.get("tables", {}).items():
            rows = [r.split() for r in re.split(r"\s/\s", spec)]
            cells = [_value(t) for r in rows for t in r]
            cells = _normalize(cells) if isinstance(values[0], Fraction) else cells
            arity = sig.arity(op) or ARITY_HINT.get(op)
            if arity is None:
                raise DescriptorError(f"{where}: unknown arity for table {op}")
            n = len(values)
            if len(cells) != n ** arity:
                raise DescriptorError(f"{where}: table {op} of {name} has {len(cells)} cells, expected {n ** arity}")
            tables[op] = {args: cells[i] for i, args in enumerate(itertools.product(values, repeat=arity))}
        consts = {c: _value(v) for c, v in d.get("constants_values", {}).items()}
        if isinstance(values[0], Fraction):
            consts = {c: Fraction(v) for c, v in consts.items()}
        try:
            engine = MatrixEngine(MatrixSemantics(name, tuple(values), designated, tables, consts))
        except ValueError as e:
            raise DescriptorError(f"{where}: {e}") from None
    elif kind == "kripke":
        engine = KripkeEngine(arg.strip())
        bound = int(d.get("bound", 3))
    elif kind == "bivaluation":
        engine = BivaluationEngine(arg.strip() or "half-negation")
    elif kind == "relatedness":
        engine = RelatednessEngine()
    elif kind == "explicit":
        formulas = tuple(parse(t) for t in d.get("formulas", "").split())
        base = []
        for line in d.get("entails", []):
            left, sep, right = line.partition("|-")
            if not sep:
                raise DescriptorError(f"{where}: entails line needs '|-'")
            prem = frozenset(parse(t) for t in left.split())
            base.append((prem, parse(right.strip())))
        engine = ExplicitEngine(ExplicitConsequence(formulas, tuple(base)))
    elif kind == "fo":
        engine = FOEngine()
        bound = int(d.get("bound", 2))
    elif kind == "syntax":
        engine = SyntaxOnlyEngine()
    else:
        raise DescriptorError(f"{where}: unknown engine {kind!r}")
    conditional = d.get("conditional", "->")
    if conditional == "none":
        conditional = None
    return LogicSpec(name, sig, engine, decidable=d.get("decidable", "yes"),
                     consequence_mode=d.get("consequence", "full"), conditional=conditional,
                     default_bound=bound, metadata=dict(d.get("meta", {})))


def parse_logics(text: str, source: str = "<text>", known: dict | None = None) -> list[LogicSpec]:
    raw, order = parse_descriptors(text, source, known)
    return build_logics(raw, order)


def parse_descriptors(text: str, source: str = "<text>", known: dict | None = None) -> tuple[dict, list[str]]:
    """Raw logic blocks keyed by name; ``like`` may refer to ``known`` blocks."""
    raw: dict[str, dict] = dict(known or {})
    order: list[str] = []
    cur: dict | None = None
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split(";;", 1)[0].strip()
        if not line:
            continue
        word, _, rest = line.partition(" ")
        rest = rest.strip()
        where = f"{source}:{lineno}"
        if word == "logic":
            cur = {"name": rest, "tables": {}, "constants_values": {}, "entails": [], "meta": {}, "_where": where}
            raw[rest] = cur
            order.append(rest)
            continue
        if cur is None:
            raise DescriptorError(f"{where}: {word!r} outside a logic block")
        if word == "like":
            if rest not in raw:
                raise DescriptorError(f"{where}: unknown logic {rest!r}")
            base = raw[rest]
            for k, v in base.items():
                if k not in ("name", "_where", "meta"):
                    cur[k] = dict(v) if isinstance(v, dict) else (list(v) if isinstance(v, list) else v)
        elif word == "table":
            op, _, grid = rest.partition(" ")
            cur["tables"][op] = grid
        elif word == "constant":
            c, _, v = rest.partition(" ")
            cur["constants_values"][c] = v.strip()
        elif word == "entails":
            cur["entails"].append(rest)
        elif word == "meta":
            k, _, v = rest.partition(" ")
            cur["meta"][k] = v.strip()
        elif word in ("engine", "signature", "values", "designated", "bound", "decidable", "consequence",
                      "conditional", "formulas", "connectives", "constants"):
            cur[word] = rest
        else:
            raise DescriptorError(f"{where}: unknown directive {word!r}")
    return raw, order


def build_logics(raw: dict, order: list[str]) -> list[LogicSpec]:
    out = []
    for name in order:
        try:
            out.append(_build(raw[name], raw[name]["_where"]))
        except FormulaError as e:
            raise DescriptorError(f"{raw[name]['_where']}: {e}") from None
    return out
