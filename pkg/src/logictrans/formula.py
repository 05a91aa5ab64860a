"""Formula syntax trees, signatures, the prefix text format, and enumeration.

Concrete syntax is a prefix s-expression language::

    formula := atom | indexed | const | "(" symbol formula* ")"
    indexed := base "{" key "}"

``key`` is the comma-joined canonical rendering of the indexed atom's
operands, which makes indexed atoms injective in their operand tuples.
First-order formulas add ``(forall x body)``, ``(exists x body)`` and
predicate applications ``(P x)`` / ``(R x y)`` under fo-capable signatures.
"""

from __future__ import annotations

import functools
import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

CONSTANTS = ("top", "bot")
QUANTIFIERS = ("forall", "exists")


class FormulaError(ValueError):
    """Raised for malformed formula text or signature violations."""

    def __init__(self, message: str, position: int | None = None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


# --------------------------------------------------------------------------
# Syntax tree
# --------------------------------------------------------------------------


class Formula:
    """Base class of the immutable formula node types.

    Nodes hash and compare structurally; the hash is computed once.
    """

    __slots__ = ("_hash", "_size")

    def _key(self) -> tuple:
        raise NotImplementedError

    def __hash__(self) -> int:
        try:
            return self._hash
        except AttributeError:
            h = hash(self._key())
            object.__setattr__(self, "_hash", h)
            return h

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, Formula) or hash(self) != hash(other):
            return False
        return self._key() == other._key()

    def __setattr__(self, name, value):
        raise AttributeError("formulas are immutable")

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {render(self)}>"

    def __str__(self) -> str:
        return render(self)

    def __lt__(self, other: "Formula") -> bool:
        return canonical_key(self) < canonical_key(other)

    @property
    def size(self) -> int:
        """Node count."""
        try:
            return self._size
        except AttributeError:
            s = self._compute_size()
            object.__setattr__(self, "_size", s)
            return s

    def _compute_size(self) -> int:
        return 1

    @property
    def children(self) -> tuple["Formula", ...]:
        return ()


class Atom(Formula):
    __slots__ = ("name",)

    def __init__(self, name: str):
        object.__setattr__(self, "name", name)

    def _key(self):
        return ("atom", self.name)


class IndexedAtom(Formula):
    """A fresh atom ``base{key}`` standing for a tuple of formulas."""

    __slots__ = ("base", "key", "_operands")

    def __init__(self, base: str, key: str):
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "key", key)

    def _key(self):
        return ("idx", self.base, self.key)

    @property
    def operands(self) -> tuple[Formula, ...]:
        """The indexed formulas, recovered by parsing the key."""
        try:
            return self._operands
        except AttributeError:
            ops = tuple(parse(part) for part in split_key(self.key))
            object.__setattr__(self, "_operands", ops)
            return ops


class Const(Formula):
    __slots__ = ("value",)

    def __init__(self, value: str):
        if value not in CONSTANTS:
            raise FormulaError(f"unknown constant {value!r}")
        object.__setattr__(self, "value", value)

    def _key(self):
        return ("const", self.value)


class Apply(Formula):
    __slots__ = ("op", "args")

    def __init__(self, op: str, args: Sequence[Formula]):
        object.__setattr__(self, "op", op)
        object.__setattr__(self, "args", tuple(args))

    def _key(self):
        return ("app", self.op, self.args)

    def _compute_size(self):
        return 1 + sum(a.size for a in self.args)

    @property
    def children(self):
        return self.args


class Pred(Formula):
    __slots__ = ("symbol", "variables")

    def __init__(self, symbol: str, variables: Sequence[str]):
        object.__setattr__(self, "symbol", symbol)
        object.__setattr__(self, "variables", tuple(variables))

    def _key(self):
        return ("pred", self.symbol, self.variables)


class Quant(Formula):
    __slots__ = ("kind", "var", "body")

    def __init__(self, kind: str, var: str, body: Formula):
        if kind not in QUANTIFIERS:
            raise FormulaError(f"unknown quantifier {kind!r}")
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "var", var)
        object.__setattr__(self, "body", body)

    def _key(self):
        return ("quant", self.kind, self.var, self.body)

    def _compute_size(self):
        return 1 + self.body.size

    @property
    def children(self):
        return (self.body,)


def is_atomic(f: Formula) -> bool:
    return isinstance(f, (Atom, IndexedAtom))


TOP = Const("top")
BOT = Const("bot")


def neg(f: Formula) -> Formula:
    return Apply("not", (f,))


def conj(a: Formula, b: Formula) -> Formula:
    return Apply("and", (a, b))


def disj(a: Formula, b: Formula) -> Formula:
    return Apply("or", (a, b))


def imp(a: Formula, b: Formula) -> Formula:
    return Apply("->", (a, b))


def iff(a: Formula, b: Formula) -> Formula:
    return Apply("<->", (a, b))


def box(a: Formula) -> Formula:
    return Apply("box", (a,))


# --------------------------------------------------------------------------
# Signatures
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class FOPart:
    """First-order vocabulary: unary predicates, a binary relation, variables.

    ``predicates`` of ``None`` admits any capitalised unary predicate symbol.
    """

    relation: str = "R"
    predicates: tuple[str, ...] | None = None
    variables: tuple[str, ...] = ("x", "y", "z")

    def is_predicate(self, symbol: str) -> bool:
        if symbol == self.relation:
            return True
        if self.predicates is None:
            return symbol[:1].isupper()
        return symbol in self.predicates

    def arity(self, symbol: str) -> int:
        return 2 if symbol == self.relation else 1


@dataclass(frozen=True)
class Signature:
    name: str
    connectives: tuple[tuple[str, int], ...]
    constants: frozenset[str] = frozenset()
    atom_prefix: str = ""
    fo: FOPart | None = None

    def __post_init__(self):
        symbols = [s for s, _ in self.connectives]
        if len(set(symbols)) != len(symbols):
            raise ValueError(f"duplicate connective in signature {self.name}")
        for s, n in self.connectives:
            if n < 1:
                raise ValueError(f"connective {s} needs arity >= 1")
        if not set(self.constants) <= set(CONSTANTS):
            raise ValueError(f"unknown constants {set(self.constants) - set(CONSTANTS)}")

    @functools.cached_property
    def arities(self) -> dict[str, int]:
        return dict(self.connectives)

    def arity(self, symbol: str) -> int | None:
        return self.arities.get(symbol)

    def restrict(self, symbols: Iterable[str], name: str | None = None) -> "Signature":
        keep = set(symbols)
        conns = tuple((s, n) for s, n in self.connectives if s in keep)
        consts = frozenset(c for c in self.constants if c in keep)
        label = name or f"{self.name}{{{','.join(s for s, _ in conns)}}}"
        return Signature(label, conns, consts, self.atom_prefix, self.fo)

    def admits(self, f: Formula) -> bool:
        try:
            check(f, self)
        except FormulaError:
            return False
        return True


def check(f: Formula, sig: Signature) -> None:
    """Raise FormulaError unless ``f`` is well formed over ``sig``."""
    if isinstance(f, (Atom, IndexedAtom)):
        return
    if isinstance(f, Const):
        if f.value not in sig.constants:
            raise FormulaError(f"constant {f.value} not in signature {sig.name}")
        return
    if isinstance(f, Apply):
        n = sig.arity(f.op)
        if n is None:
            raise FormulaError(f"unknown symbol {f.op!r} for signature {sig.name}")
        if n != len(f.args):
            raise FormulaError(f"arity mismatch: {f.op} takes {n}, got {len(f.args)}")
        for a in f.args:
            check(a, sig)
        return
    if isinstance(f, (Pred, Quant)):
        if sig.fo is None:
            raise FormulaError(f"first-order formula under propositional signature {sig.name}")
        if isinstance(f, Quant):
            check(f.body, sig)
        elif len(f.variables) != sig.fo.arity(f.symbol):
            raise FormulaError(f"arity mismatch for predicate {f.symbol}")
        return
    raise FormulaError(f"not a formula: {f!r}")


# --------------------------------------------------------------------------
# Rendering and parsing
# --------------------------------------------------------------------------


@functools.lru_cache(maxsize=1 << 18)
def render(f: Formula) -> str:
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, IndexedAtom):
        return f"{f.base}{{{f.key}}}"
    if isinstance(f, Const):
        return f.value
    if isinstance(f, Apply):
        return "(" + " ".join([f.op, *map(render, f.args)]) + ")"
    if isinstance(f, Pred):
        return "(" + " ".join([f.symbol, *f.variables]) + ")"
    if isinstance(f, Quant):
        return f"({f.kind} {f.var} {render(f.body)})"
    raise TypeError(f"not a formula: {f!r}")


def canonical_key(f: Formula) -> tuple[int, str]:
    """Sort key: node count, then canonical text."""
    return (f.size, render(f))


def split_key(key: str) -> list[str]:
    """Split an indexed-atom key at top-level commas."""
    parts, depth, start = [], 0, 0
    for i, ch in enumerate(key):
        if ch in "({":
            depth += 1
        elif ch in ")}":
            depth -= 1
        elif ch == "," and depth == 0:
            parts.append(key[start:i])
            start = i + 1
    parts.append(key[start:])
    return parts


def indexed_atom(base: str, operands: Sequence[Formula]) -> IndexedAtom:
    """Fresh atom ``base{...}`` whose key renders ``operands`` canonically."""
    return IndexedAtom(base, ",".join(render(f) for f in operands))


class _Parser:
    def __init__(self, text: str, sig: Signature | None):
        self.text = text
        self.pos = 0
        self.sig = sig

    def error(self, msg: str, pos: int | None = None):
        raise FormulaError(msg, self.pos if pos is None else pos)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def word(self) -> str:
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos] not in " \t\n(){}":
            self.pos += 1
        if self.pos == start:
            self.error("expected a symbol")
        return self.text[start:self.pos]

    def formula(self) -> Formula:
        self.skip_ws()
        if self.pos >= len(self.text):
            self.error("unexpected end of input")
        ch = self.text[self.pos]
        if ch == ")":
            self.error("unexpected ')'")
        if ch == "(":
            return self.compound()
        start = self.pos
        w = self.word()
        if self.pos < len(self.text) and self.text[self.pos] == "{":
            return self.indexed(w, start)
        if w in CONSTANTS:
            f = Const(w)
            if self.sig is not None:
                try:
                    check(f, self.sig)
                except FormulaError as e:
                    self.error(str(e), start)
            return f
        if self.sig is not None and self.sig.arity(w) is not None:
            self.error(f"connective {w!r} used as an atom", start)
        return Atom(w)

    def indexed(self, base: str, start: int) -> IndexedAtom:
        self.pos += 1
        depth, kstart = 1, self.pos
        while self.pos < len(self.text):
            ch = self.text[self.pos]
            if ch == "{":
                depth += 1
            elif ch == "}":
                depth -= 1
                if depth == 0:
                    break
            self.pos += 1
        else:
            self.error("unterminated indexed atom", start)
        key = self.text[kstart:self.pos]
        self.pos += 1
        for part in split_key(key):
            try:
                parse(part)
            except FormulaError as e:
                self.error(f"bad indexed-atom key: {e}", start)
        return IndexedAtom(base, key)

    def compound(self) -> Formula:
        open_pos = self.pos
        self.pos += 1
        self.skip_ws()
        sym_pos = self.pos
        sym = self.word()
        sig = self.sig
        if sym in QUANTIFIERS:
            self.skip_ws()
            var = self.word()
            body = self.formula()
            self.close(open_pos)
            f = Quant(sym, var, body)
            if sig is not None and sig.fo is None:
                self.error("quantifier under a propositional signature", sym_pos)
            return f
        if sig is not None and sig.fo is not None and sig.arity(sym) is None and sig.fo.is_predicate(sym):
            return self.predicate(sym, open_pos, sym_pos)
        if sig is None and sym[:1].isupper():
            return self.predicate(sym, open_pos, sym_pos)
        args = []
        while True:
            self.skip_ws()
            if self.pos >= len(self.text):
                self.error("missing ')'", open_pos)
            if self.text[self.pos] == ")":
                self.pos += 1
                break
            args.append(self.formula())
        if sig is not None:
            n = sig.arity(sym)
            if n is None:
                self.error(f"unknown symbol {sym!r}", sym_pos)
            if n != len(args):
                self.error(f"arity mismatch: {sym} takes {n} operand(s), got {len(args)}", sym_pos)
        elif not args:
            self.error(f"connective {sym!r} without operands", sym_pos)
        return Apply(sym, args)

    def predicate(self, sym: str, open_pos: int, sym_pos: int) -> Pred:
        variables = []
        while True:
            self.skip_ws()
            if self.pos >= len(self.text):
                self.error("missing ')'", open_pos)
            if self.text[self.pos] == ")":
                self.pos += 1
                break
            if self.text[self.pos] == "(":
                self.error("predicate arguments must be variables")
            variables.append(self.word())
        if self.sig is not None and self.sig.fo is not None and len(variables) != self.sig.fo.arity(sym):
            self.error(f"arity mismatch for predicate {sym}", sym_pos)
        return Pred(sym, variables)

    def close(self, open_pos: int):
        self.skip_ws()
        if self.pos >= len(self.text) or self.text[self.pos] != ")":
            self.error("missing ')'", open_pos)
        self.pos += 1


def parse(text: str, sig: Signature | None = None) -> Formula:
    """Parse prefix formula text; validate against ``sig`` when given.

    Without a signature any symbol is accepted as a connective with the
    arity it is used at (capitalised heads read as predicates).
    """
    p = _Parser(text, sig)
    f = p.formula()
    p.skip_ws()
    if p.pos != len(text):
        p.error("trailing input")
    return f


# --------------------------------------------------------------------------
# Structural utilities
# --------------------------------------------------------------------------


def subformulas(f: Formula) -> Iterator[Formula]:
    yield f
    for c in f.children:
        yield from subformulas(c)


def atoms(f: Formula) -> frozenset[Formula]:
    """Atomic leaves (plain and indexed), not looking inside index keys."""
    return _atoms(f)


@functools.lru_cache(maxsize=1 << 16)
def _atoms(f: Formula) -> frozenset[Formula]:
    if isinstance(f, (Atom, IndexedAtom)):
        return frozenset((f,))
    out: frozenset[Formula] = frozenset()
    for c in f.children:
        out |= _atoms(c)
    return out


def atoms_of(formulas: Iterable[Formula]) -> list[Formula]:
    acc: set[Formula] = set()
    for f in formulas:
        acc |= atoms(f)
    return sorted(acc, key=canonical_key)


def canonical_order(formulas: Iterable[Formula]) -> list[Formula]:
    return sorted(set(formulas), key=canonical_key)


def subformula_closure(formulas: Iterable[Formula]) -> list[Formula]:
    """Least superset closed under immediate subformulas, canonically ordered."""
    seen: set[Formula] = set()
    stack = list(formulas)
    while stack:
        f = stack.pop()
        if f in seen:
            continue
        seen.add(f)
        stack.extend(f.children)
    return canonical_order(seen)


def is_subformula_closed(formulas: Iterable[Formula]) -> bool:
    s = set(formulas)
    return all(c in s for f in s for c in f.children)


def connective_count(f: Formula) -> int:
    return sum(1 for g in subformulas(f) if isinstance(g, Apply))


# --------------------------------------------------------------------------
# Templates
# --------------------------------------------------------------------------

PLACEHOLDER = re.compile(r"#([1-9][0-9]*)$")


def placeholder(i: int) -> Atom:
    return Atom(f"#{i}")


def placeholder_index(f: Formula) -> int | None:
    if isinstance(f, Atom):
        m = PLACEHOLDER.match(f.name)
        if m:
            return int(m.group(1))
    return None


@dataclass(frozen=True)
class Template:
    """A formula over placeholder atoms ``#1..#m``."""

    body: Formula
    arity: int = field(default=-1)

    def __post_init__(self):
        used = self.placeholders()
        if self.arity < 0:
            object.__setattr__(self, "arity", max(used, default=0))
        elif used and max(used) > self.arity:
            raise FormulaError(f"placeholder #{max(used)} exceeds template arity {self.arity}")

    @classmethod
    def parse(cls, text: str, arity: int = -1) -> "Template":
        return cls(parse(text), arity)

    def placeholders(self) -> set[int]:
        return {i for g in subformulas(self.body) if (i := placeholder_index(g)) is not None}

    def occurrences(self, i: int) -> int:
        return sum(1 for g in subformulas(self.body) if placeholder_index(g) == i)

    def parameters(self) -> set[Formula]:
        """Atoms in the body that are not placeholders."""
        return {a for a in atoms(self.body) if placeholder_index(a) is None}

    def __str__(self):
        return render(self.body)


def substitute(t: Template | Formula, args: Sequence[Formula]) -> Formula:
    """Replace each placeholder ``#i`` by ``args[i-1]``."""
    if isinstance(t, Template):
        if len(args) != t.arity:
            raise FormulaError(f"template takes {t.arity} argument(s), got {len(args)}")
        body = t.body
    else:
        body = t
    return _subst(body, tuple(args))


def _subst(f: Formula, args: tuple[Formula, ...]) -> Formula:
    i = placeholder_index(f)
    if i is not None:
        if i > len(args):
            raise FormulaError(f"placeholder #{i} has no argument")
        return args[i - 1]
    if isinstance(f, Apply):
        return Apply(f.op, [_subst(a, args) for a in f.args])
    if isinstance(f, Quant):
        return Quant(f.kind, f.var, _subst(f.body, args))
    return f


def rename_variables(f: Formula, mapping: dict[str, str]) -> Formula:
    """Rename first-order variable names (free and bound) by ``mapping``."""
    if isinstance(f, Pred):
        return Pred(f.symbol, [mapping.get(v, v) for v in f.variables])
    if isinstance(f, Quant):
        return Quant(f.kind, mapping.get(f.var, f.var), rename_variables(f.body, mapping))
    if isinstance(f, Apply):
        return Apply(f.op, [rename_variables(a, mapping) for a in f.args])
    return f


# --------------------------------------------------------------------------
# Enumeration
# --------------------------------------------------------------------------


def _leaves(sig: Signature, atom_list: Sequence[Formula | str]) -> list[Formula]:
    leaves = [Atom(a) if isinstance(a, str) else a for a in atom_list]
    leaves += [Const(c) for c in CONSTANTS if c in sig.constants]
    return leaves


def formulas_by_size(sig: Signature, atom_list: Sequence[Formula | str], max_nodes: int) -> list[list[Formula]]:
    """``buckets[n]`` holds every formula with exactly ``n`` nodes, sorted."""
    return [list(b) for b in _buckets(sig, tuple(atom_list), max_nodes)]


@functools.lru_cache(maxsize=64)
def _buckets(sig: Signature, atom_list: tuple, max_nodes: int) -> tuple[tuple[Formula, ...], ...]:
    buckets: list[list[Formula]] = [[] for _ in range(max_nodes + 1)]
    if max_nodes >= 1:
        buckets[1] = sorted(set(_leaves(sig, atom_list)), key=render)
    for n in range(2, max_nodes + 1):
        out: list[Formula] = []
        for op, arity in sig.connectives:
            for sizes in _compositions(n - 1, arity):
                pools = [buckets[s] for s in sizes]
                for combo in _product(pools):
                    out.append(Apply(op, combo))
        buckets[n] = sorted(out, key=render)
    return tuple(tuple(b) for b in buckets)


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    if parts == 1:
        if total >= 1:
            yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            yield (first, *rest)


def _product(pools: list[list[Formula]]) -> Iterator[tuple[Formula, ...]]:
    if not pools:
        yield ()
        return
    for head in pools[0]:
        for tail in _product(pools[1:]):
            yield (head, *tail)


def enumerate_formulas(sig: Signature, atom_list: Sequence[Formula | str], max_nodes: int) -> Iterator[Formula]:
    """Every formula over ``atom_list`` with at most ``max_nodes`` nodes,
    exactly once, ordered by node count then canonical text."""
    if max_nodes < 1:
        raise ValueError("max_nodes must be >= 1")
    for bucket in _buckets(sig, tuple(atom_list), max_nodes)[1:]:
        yield from bucket


def count_formulas(sig: Signature, n_leaves: int, max_nodes: int) -> int:
    """Independent recursive count of formulas with at most ``max_nodes`` nodes."""

    @functools.lru_cache(maxsize=None)
    def exact(n: int) -> int:
        if n == 1:
            return n_leaves
        total = 0
        for _, arity in sig.connectives:
            total += ways(n - 1, arity)
        return total

    @functools.lru_cache(maxsize=None)
    def ways(total: int, parts: int) -> int:
        if parts == 0:
            return 1 if total == 0 else 0
        return sum(exact(k) * ways(total - k, parts - 1) for k in range(1, total - parts + 2))

    return sum(exact(n) for n in range(1, max_nodes + 1))
