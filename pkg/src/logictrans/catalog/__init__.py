"""Builtin logics, translations, model maps and counterexamples.

The shipped entries live in ``data/*.txt`` in the logic-descriptor and
clause-system text formats. User files merge in by name; shipped names
cannot be redefined.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Any, Mapping, Sequence

from ..formula import parse
from ..semantics import LogicSpec, ModelMap, builtin_model_maps, mossakowski_delta
from ..translation import ClauseSystem, FormatError, parse_clause_systems
from .descriptors import DescriptorError, build_logics, parse_descriptors


class CatalogError(ValueError):
    pass


ALIASES = {
    "T": "TMoss", "Tmoss": "TMoss", "Tplusminus": "DemriGore", "T±": "DemriGore", "Tpm": "DemriGore",
    "T'": "Tprime", "T′": "Tprime", "Ts": "Tg", "Tm": "Tm1", "Tstd": "Tx", "Tstandard": "Tx",
}


@dataclass(frozen=True)
class CatalogEntry:
    kind: str
    name: str
    payload: Any
    expect: Mapping[str, Any] = field(default_factory=dict)
    notes: tuple[str, ...] = ()

    def to_json(self) -> dict:
        return {"kind": self.kind, "name": self.name, "expect": dict(self.expect), "notes": list(self.notes)}


def _data(name: str) -> str:
    return resources.files(__package__).joinpath("data", name).read_text(encoding="utf-8")


def _split_user_text(text: str) -> tuple[str, str]:
    """Separate ``logic`` blocks from ``translation`` blocks, keeping line numbers."""
    logic_lines, tr_lines = [], []
    mode = None
    for line in text.splitlines():
        word = line.split(";;", 1)[0].strip().split(" ", 1)[0]
        if word == "logic":
            mode = "logic"
        elif word == "translation":
            mode = "translation"
        logic_lines.append(line if mode == "logic" else "")
        tr_lines.append(line if mode == "translation" else "")
        if mode is None and word:
            raise CatalogError(f"catalog text must start with a 'logic' or 'translation' block, got {word!r}")
    return "\n".join(logic_lines), "\n".join(tr_lines)


class Catalog:
    """Named logics, translations and model maps."""

    def __init__(self, logics: Mapping[str, LogicSpec], translations: Mapping[str, ClauseSystem],
                 model_maps: Mapping[str, ModelMap], shipped: frozenset[str] = frozenset(),
                 descriptors: Mapping[str, dict] | None = None):
        self.logics = dict(logics)
        self.descriptors = dict(descriptors or {})
        self.translations = dict(translations)
        self.model_maps = dict(model_maps)
        self.shipped = shipped

    @classmethod
    def builtin(cls) -> "Catalog":
        return _builtin()

    def logic(self, name: str) -> LogicSpec:
        try:
            return self.logics[name]
        except KeyError:
            raise CatalogError(f"unknown logic {name!r}") from None

    def translation(self, name: str) -> ClauseSystem:
        key = name if name in self.translations else ALIASES.get(name, name)
        if key not in self.translations:
            lowered = {k.lower(): k for k in self.translations}
            key = lowered.get(name.lower(), key)
        try:
            return self.translations[key]
        except KeyError:
            raise CatalogError(f"unknown translation {name!r}") from None

    def model_map(self, name: str) -> ModelMap:
        try:
            return self.model_maps[name]
        except KeyError:
            raise CatalogError(f"unknown model map {name!r}") from None

    def endpoints(self, t: ClauseSystem) -> tuple[LogicSpec, LogicSpec]:
        return self.logic(t.source), self.logic(t.target)

    def merged(self, text: str, source: str = "<user>") -> "Catalog":
        """A new catalog with the entries of ``text`` added."""
        logic_text, tr_text = _split_user_text(text)
        try:
            raw, order = parse_descriptors(logic_text, source, known=self.descriptors)
            new_logics = build_logics(raw, order)
            new_trs = parse_clause_systems(tr_text, source)
        except (DescriptorError, FormatError) as e:
            raise CatalogError(str(e)) from None
        logics, trs = dict(self.logics), dict(self.translations)
        for lg in new_logics:
            if lg.name in self.shipped:
                raise CatalogError(f"{source}: logic {lg.name} is a shipped entry and cannot be redefined")
            logics[lg.name] = lg
        for t in new_trs:
            if t.name in self.shipped:
                raise CatalogError(f"{source}: translation {t.name} is a shipped entry and cannot be redefined")
            for end in (t.source, t.target):
                if end not in logics:
                    raise CatalogError(f"{source}: translation {t.name} refers to unknown logic {end!r}")
            trs[t.name] = t
        return Catalog(logics, trs, self.model_maps, self.shipped, raw)

    def with_files(self, paths: Sequence[str | Path]) -> "Catalog":
        cat = self
        for p in paths:
            try:
                text = Path(p).read_text(encoding="utf-8")
            except OSError as e:
                raise CatalogError(f"cannot read catalog {p}: {e.strerror}") from None
            cat = cat.merged(text, str(p))
        return cat

    def entries(self) -> list[CatalogEntry]:
        out = [CatalogEntry("logic", n, lg, {}, tuple(f"{k}: {v}" for k, v in sorted(lg.metadata.items())))
               for n, lg in sorted(self.logics.items())]
        for n, t in sorted(self.translations.items()):
            out.append(CatalogEntry("translation", n, t, dict(t.metadata.get("expect", {})),
                                    tuple(t.metadata.get("notes", ()))))
        out += [CatalogEntry("model-map", n, m) for n, m in sorted(self.model_maps.items())]
        return out


@functools.lru_cache(maxsize=1)
def _builtin() -> Catalog:
    raw, order = parse_descriptors(_data("logics.txt"), "logics.txt")
    logics = {lg.name: lg for lg in build_logics(raw, order)}
    trs = {t.name: t for t in parse_clause_systems(_data("translations.txt"), "translations.txt")}
    for t in trs.values():
        for end in (t.source, t.target):
            if end not in logics:
                raise CatalogError(f"shipped translation {t.name} refers to unknown logic {end!r}")
    return Catalog(logics, trs, builtin_model_maps(), frozenset(logics) | frozenset(trs), raw)


def load_catalog(paths: Sequence[str | Path] = ()) -> Catalog:
    return _builtin().with_files(paths) if paths else _builtin()


def builtin_logics() -> list[LogicSpec]:
    return list(_builtin().logics.values())


def builtin_translations() -> list[ClauseSystem]:
    return list(_builtin().translations.values())


def builtin_model_maps_list() -> list[ModelMap]:
    return list(_builtin().model_maps.values())


# --------------------------------------------------------------------------
# Counterexamples
# --------------------------------------------------------------------------

VALIDITY = parse("(or p (not p))")


def build_counterexamples(catalog: Catalog | None = None) -> list[CatalogEntry]:
    """The over-generation witnesses with their expected outcomes."""
    from ..verify.checks import GvWitness

    cat = catalog or _builtin()
    to_triv = cat.model_map("to_trivial")
    return [
        CatalogEntry("counterexample", "trivial-sublogic",
                     {"witness": GvWitness(cat.translation("Ttriv"), to_triv, (VALIDITY,))},
                     {"gv": "pass", "gate_gg": "fail"},
                     ("every formula goes to one classical validity; θ is that validity",)),
        CatalogEntry("counterexample", "trivial-sublogic-injective",
                     {"witness": GvWitness(cat.translation("Tinj"), to_triv, (VALIDITY,))},
                     {"gv": "pass", "injective": "yes", "gate_gg": "fail"},
                     ("the i-th formula goes to the i-th classical validity",)),
        CatalogEntry("counterexample", "delta-sublogic",
                     {"witness": GvWitness(cat.translation("Tprime"), cat.model_map("f_prime"), mossakowski_delta,
                                           contextual=True)},
                     {"gv": "pass", "gate_gg": "fail"},
                     ("θ is Δ over the subformula closure of the formulas checked",)),
        CatalogEntry("counterexample", "kuijer-trivial",
                     {"translation": cat.translation("Tt"), "model_map": cat.model_map("f_t")},
                     {"truth_preservation": "pass", "gate_g": "fail", "gate_gg": "fail"},
                     ("truth preservation holds by construction; the translation is not finitely generated",)),
        CatalogEntry("counterexample", "relatedness-into-classical",
                     {"translation": cat.translation("TE"), "model_map": cat.model_map("f_E")},
                     {"truth_preservation": "pass", "gate_g": "pass", "gate_gg": "fail"},
                     ("passes the model-based gate through d-atoms that only the model map interprets",)),
    ]


# --------------------------------------------------------------------------
# Kripke corpus
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class CorpusItem:
    formula: Any
    expected: Mapping[str, str]
    label: str = ""


def parse_corpus(text: str, source: str = "<corpus>") -> list[CorpusItem]:
    """Lines ``formula | LOGIC status ... [| label]``; status is valid or refuted."""
    out = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split(";;", 1)[0].strip()
        if not line:
            continue
        parts = [p.strip() for p in line.split("|")]
        if len(parts) < 2:
            raise CatalogError(f"{source}:{lineno}: expected 'formula | statuses'")
        toks = parts[1].split()
        if len(toks) % 2:
            raise CatalogError(f"{source}:{lineno}: statuses come in 'LOGIC status' pairs")
        expected = {}
        for name, status in zip(toks[::2], toks[1::2]):
            if status not in ("valid", "refuted"):
                raise CatalogError(f"{source}:{lineno}: unknown status {status!r}")
            expected[name] = status
        out.append(CorpusItem(parse(parts[0]), expected, parts[2] if len(parts) > 2 else ""))
    return out


def kripke_corpus() -> list[CorpusItem]:
    return parse_corpus(_data("kripke_corpus.txt"), "kripke_corpus.txt")


__all__ = ["ALIASES", "Catalog", "CatalogEntry", "CatalogError", "CorpusItem", "build_counterexamples",
           "builtin_logics", "builtin_model_maps_list", "builtin_translations", "kripke_corpus", "load_catalog",
           "mossakowski_delta", "parse_corpus"]
