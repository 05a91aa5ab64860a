"""Structured text format for clause systems.

Example::

    translation Tl
    source CPL{not,->}
    target L3
    main T
    requires-model-map no
    expect compositional yes

    translator T
      atom identity
      clause not -> (-> #1 (not #1))
      clause -> -> (-> #1 (-> #1 #2))

A clause line is ``clause <key> -> <template> [| annotation]...``. The key is
a connective, a dotted composite (``not.box``), a quantifier or a constant.
Without annotations placeholder ``#i`` is operand ``i`` translated by the
enclosing translator. Annotations:

``#k via <translator> <operand> [next]``   translate an operand
``#k idx <base> <i>,<j>,...``             fresh indexed atom over operands
``range <operand> atom``                  clause applies only to atomic operand

``literal and,or`` adds literal clauses. Atom clauses: ``atom identity``,
``atom template <tpl over #1>``, ``atom idx <base>``, ``atom predicate``.
``translator T context x,y`` declares a context family. A system with
``opaque <rule>`` has no translators.
"""

from __future__ import annotations

from ..formula import FormulaError, Template, parse, placeholder_index
from .clauses import AtomClause, Clause, ClauseSystem, OpaqueRule, PlanItem, Translator, literal_clause

ARITY_HINT = {"not": 1, "box": 1, "dia": 1, "and": 2, "or": 2, "->": 2, "<->": 2, "forall": 1, "exists": 1,
              "top": 0, "bot": 0}


class FormatError(ValueError):
    def __init__(self, message: str, line: int | None = None, source: str = "<text>"):
        where = f"{source}:{line}: " if line is not None else f"{source}: "
        super().__init__(where + message)


def _bool(text: str, lineno: int, src: str) -> bool:
    if text in ("yes", "true"):
        return True
    if text in ("no", "false"):
        return False
    raise FormatError(f"expected yes/no, got {text!r}", lineno, src)


def _expect_value(text: str):
    if text in ("yes", "true"):
        return True
    if text in ("no", "false"):
        return False
    return text


def _parse_clause(body: str, translator: str, lineno: int, src: str) -> Clause:
    parts = [p.strip() for p in body.split("|")]
    head = parts[0]
    try:
        key_text, rest = head.split(None, 1)
    except ValueError:
        raise FormatError("clause needs a key and a template", lineno, src) from None
    rest = rest.lstrip()
    if not rest.startswith("->"):
        raise FormatError("expected '->' after the clause key", lineno, src)
    tpl_text = rest[2:].strip()
    key = tuple(key_text.split("."))
    try:
        template = Template(parse(tpl_text))
    except FormulaError as e:
        raise FormatError(f"bad template: {e}", lineno, src) from None
    n_slots = max(template.placeholders(), default=0)
    plan: dict[int, PlanItem] = {}
    ranges: dict[int, str] = {}
    for ann in parts[1:]:
        toks = ann.split()
        if not toks:
            continue
        if toks[0] == "range":
            if len(toks) != 3:
                raise FormatError("range annotation is 'range <operand> atom|any'", lineno, src)
            ranges[int(toks[1])] = toks[2]
            continue
        k = placeholder_index(parse(toks[0])) if toks[0].startswith("#") else None
        if k is None or len(toks) < 3:
            raise FormatError(f"bad annotation {ann!r}", lineno, src)
        if toks[1] == "via":
            shift = len(toks) > 4 and toks[4] == "next"
            plan[k] = PlanItem("via", (int(toks[3]),), translator=toks[2], shift=shift)
        elif toks[1] == "idx":
            ops = tuple(int(x) for x in toks[3].split(",")) if len(toks) > 3 else (1,)
            plan[k] = PlanItem("idx", ops, base=toks[2])
        else:
            raise FormatError(f"unknown annotation {toks[1]!r}", lineno, src)
    n_slots = max([n_slots, *plan])
    items = tuple(plan.get(k, PlanItem("via", (k,), translator=translator)) for k in range(1, n_slots + 1))
    arity = ARITY_HINT.get(key[-1], max(ranges, default=0))
    range_t = tuple(ranges.get(i, "any") for i in range(1, max([arity, *ranges, 0]) + 1)) if ranges else ()
    try:
        return Clause(key, Template(template.body, n_slots), items, range_t)
    except (ValueError, FormulaError) as e:
        raise FormatError(str(e), lineno, src) from None


def _parse_opaque(rest: str, lineno: int, src: str) -> OpaqueRule:
    toks = rest.split(None, 1)
    kind = toks[0]
    arg = toks[1].strip() if len(toks) > 1 else None
    try:
        if kind == "constant":
            return OpaqueRule(kind, parse(arg))
        if kind == "validity-enumeration":
            pairs = tuple(tuple(p.split("=", 1)) for p in (arg or "").split())
            return OpaqueRule(kind, pairs)
        return OpaqueRule(kind, arg)
    except (ValueError, FormulaError, TypeError) as e:
        raise FormatError(str(e), lineno, src) from None


def parse_clause_systems(text: str, source: str = "<text>") -> list[ClauseSystem]:
    """Parse one or more ``translation`` blocks."""
    systems: list[ClauseSystem] = []
    cur: dict | None = None
    tr: dict | None = None

    def close_translator():
        nonlocal tr
        if tr is not None:
            cur["translators"][tr["name"]] = Translator(tr["name"], tr["atom"], tuple(tr["clauses"]), tr["context"])
            tr = None

    def close_system():
        nonlocal cur
        close_translator()
        if cur is not None:
            for req in ("source", "target"):
                if req not in cur:
                    raise FormatError(f"translation {cur['name']} lacks '{req}'", cur["line"], source)
            if cur["opaque"] is None and not cur["translators"]:
                raise FormatError(f"translation {cur['name']} has no translators and no opaque rule", cur["line"], source)
            main = cur.get("main") or (next(iter(cur["translators"]), "T"))
            try:
                systems.append(ClauseSystem(cur["name"], cur["source"], cur["target"], main, dict(cur["translators"]),
                                            cur["opaque"], cur["requires_model_map"], dict(cur["meta"])))
            except ValueError as e:
                raise FormatError(str(e), cur["line"], source) from None
            cur = None

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split(";;", 1)[0].rstrip()
        if not line.strip():
            continue
        word, _, rest = line.strip().partition(" ")
        rest = rest.strip()
        if word == "translation":
            close_system()
            cur = {"name": rest, "line": lineno, "translators": {}, "opaque": None, "requires_model_map": False,
                   "meta": {"expect": {}, "notes": []}}
            continue
        if cur is None:
            raise FormatError(f"{word!r} outside a translation block", lineno, source)
        if word in ("source", "target", "main"):
            cur[word] = rest
        elif word == "requires-model-map":
            cur["requires_model_map"] = _bool(rest, lineno, source)
        elif word == "opaque":
            cur["opaque"] = _parse_opaque(rest, lineno, source)
        elif word == "expect":
            k, _, v = rest.partition(" ")
            cur["meta"]["expect"][k] = _expect_value(v.strip())
        elif word == "note":
            cur["meta"]["notes"].append(rest)
        elif word == "meta":
            k, _, v = rest.partition(" ")
            cur["meta"][k] = v.strip()
        elif word == "translator":
            close_translator()
            toks = rest.split()
            context = None
            if len(toks) == 3 and toks[1] == "context":
                context = tuple(toks[2].split(","))
            elif len(toks) != 1:
                raise FormatError("translator header is 'translator NAME [context x,y]'", lineno, source)
            tr = {"name": toks[0], "atom": AtomClause(), "clauses": [], "context": context}
        elif word in ("atom", "clause", "literal"):
            if tr is None:
                raise FormatError(f"{word!r} outside a translator block", lineno, source)
            if word == "atom":
                kind, _, arg = rest.partition(" ")
                try:
                    if kind == "template":
                        tr["atom"] = AtomClause("template", Template(parse(arg.strip()), 1))
                    elif kind == "idx":
                        tr["atom"] = AtomClause("idx", base=arg.strip())
                    else:
                        tr["atom"] = AtomClause(kind)
                except (ValueError, FormulaError) as e:
                    raise FormatError(str(e), lineno, source) from None
            elif word == "clause":
                tr["clauses"].append(_parse_clause(rest, tr["name"], lineno, source))
            else:
                for sym in rest.replace(",", " ").split():
                    if sym not in ARITY_HINT:
                        raise FormatError(f"unknown arity for literal {sym!r}", lineno, source)
                    tr["clauses"].append(literal_clause(sym, ARITY_HINT[sym], tr["name"]))
        else:
            raise FormatError(f"unknown directive {word!r}", lineno, source)
    close_system()
    return systems


def render_clause_system(cs: ClauseSystem) -> str:
    """Text form readable by ``parse_clause_systems``."""
    lines = [f"translation {cs.name}", f"source {cs.source}", f"target {cs.target}"]
    if cs.opaque is not None:
        lines.append(f"opaque {cs.opaque.text()}")
    else:
        lines.append(f"main {cs.main}")
    lines.append(f"requires-model-map {'yes' if cs.requires_model_map else 'no'}")
    for name in (cs.reachable() if cs.opaque is None else []):
        t = cs.translators[name]
        header = f"translator {name}" + (f" context {','.join(t.context)}" if t.context else "")
        lines += ["", header, f"  atom {t.atom.text()}"]
        for c in t.clauses:
            anns = [f"#{k} {it.text()}" for k, it in enumerate(c.plan, 1)]
            anns += [f"range {i} {r}" for i, r in enumerate(c.ranges, 1) if r != "any"]
            lines.append("  clause " + " | ".join([f"{c.key_text} -> {c.template}", *anns]))
    return "\n".join(lines) + "\n"
