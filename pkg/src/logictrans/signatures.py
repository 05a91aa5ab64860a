"""Signatures shared by the builtin logics."""

from __future__ import annotations

from .formula import FOPart, Signature

PROP = (("not", 1), ("and", 2), ("or", 2), ("->", 2), ("<->", 2))
MODAL = PROP + (("box", 1), ("dia", 1))

CPL = Signature("CPL", PROP)
CPL_NOT_AND = CPL.restrict(["not", "and"], "CPL{not,and}")
CPL_NOT_OR = CPL.restrict(["not", "or"], "CPL{not,or}")
CPL_NOT_AND_OR = CPL.restrict(["not", "and", "or"], "CPL{not,and,or}")
CPL_IMP = CPL.restrict(["->"], "CPL{->}")
CPL_NOT_IMP = CPL.restrict(["not", "->"], "CPL{not,->}")
L3 = Signature("L3", (("not", 1), ("and", 2), ("or", 2), ("->", 2)))
IPL = Signature("IPL", PROP)
MIN = Signature("MIN", PROP, frozenset({"bot"}))
WPL = Signature("WPL", (("not", 1), ("and", 2), ("or", 2), ("->", 2)))
R = Signature("R", (("not", 1), ("and", 2), ("->", 2)))
K = Signature("K", MODAL)
K4 = Signature("K4", MODAL)
S4 = Signature("S4", MODAL)
GRZ = Signature("Grz", (("not", 1), ("and", 2), ("or", 2), ("->", 2), ("box", 1)))
G = Signature("G", (("not", 1), ("and", 2), ("or", 2), ("->", 2), ("box", 1)))
ATOM_ONLY = Signature("atom-only", ())
TRIVIAL = Signature("Trivial", PROP)
TOY = Signature("toy", (), frozenset({"top"}))
FOL = Signature("FOL", PROP, fo=FOPart())
FOL_INT = Signature("FOL-int", PROP, fo=FOPart())

ALL = {s.name: s for s in (CPL, CPL_NOT_AND, CPL_NOT_OR, CPL_NOT_AND_OR, CPL_IMP, CPL_NOT_IMP, L3, IPL, MIN, WPL, R,
                           K, K4, S4, GRZ, G, ATOM_ONLY, TRIVIAL, TOY, FOL, FOL_INT)}
