"""The injective enumeration map: the i-th source formula goes to the i-th
classical validity, both in canonical enumeration order."""

from __future__ import annotations

import functools
import itertools

from ..formula import Atom, Formula, Signature, atoms, canonical_key, formulas_by_size, render
from ..semantics.matrix import classical_matrix, matrix_value
from ..signatures import CPL, PROP

_CPL = classical_matrix()


def canonical_rank(sig: Signature, atom_names: tuple[str, ...], f: Formula) -> int:
    """Position of ``f`` in the canonical enumeration over ``atom_names``."""
    if not atoms(f) <= {Atom(a) for a in atom_names}:
        raise ValueError(f"{render(f)} uses atoms outside {atom_names}")
    buckets = formulas_by_size(sig, atom_names, f.size)
    before = sum(len(b) for b in buckets[: f.size])
    bucket = buckets[f.size]
    key = canonical_key(f)
    lo, hi = 0, len(bucket)
    while lo < hi:
        mid = (lo + hi) // 2
        if canonical_key(bucket[mid]) < key:
            lo = mid + 1
        else:
            hi = mid
    if lo >= len(bucket) or bucket[lo] != f:
        raise ValueError(f"{render(f)} is not over the enumeration signature")
    return before + lo


@functools.lru_cache(maxsize=8)
def _validities(atom_names: tuple[str, ...], count: int) -> tuple[Formula, ...]:
    out: list[Formula] = []
    n = 1
    rows = _rows(atom_names)
    while len(out) < count:
        n += 1
        out = []
        for bucket in formulas_by_size(CPL, atom_names, n)[1:]:
            for g in bucket:
                if all(matrix_value(_CPL, row, g) == 1 for row in rows):
                    out.append(g)
                    if len(out) == count:
                        return tuple(out)
    return tuple(out)


def _rows(atom_names):
    leaves = [Atom(a) for a in atom_names]
    return [dict(zip(leaves, bits)) for bits in itertools.product((0, 1), repeat=len(leaves))]


def nth_validity(atom_names: tuple[str, ...], i: int) -> Formula:
    """The ``i``-th (0-based) classical validity over ``atom_names``."""
    return _validities(tuple(atom_names), _round_up(i + 1))[i]


def _round_up(n: int) -> int:
    size = 16
    while size < n:
        size *= 2
    return size


def validity_enumeration_image(params: dict, f: Formula) -> Formula:
    src_atoms = tuple(params.get("atoms", "p,q").split(","))
    tgt_atoms = tuple(params.get("target-atoms", "p").split(","))
    sig = Signature("enumeration", PROP)
    return nth_validity(tgt_atoms, canonical_rank(sig, src_atoms, f))
