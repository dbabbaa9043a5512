"""Relator catalogs, word evaluation and abelianization."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence, Union

from . import thompson
from .errors import UnknownGenerator
from .plmap import PLMap, compose, identity, invert, is_identity
from .snf import SmithForm, smith_normal_form
from .words import Word, exponent_sums, format_word, parse_word


@dataclass(frozen=True)
class RelatorCatalog:
    generators: tuple
    relators: tuple
    name: str = ""

    def __post_init__(self):
        known = set(self.generators)
        for r in self.relators:
            for g, _ in r:
                if g not in known:
                    raise UnknownGenerator(g)


_T_RELATORS = (
    "[x0 x1^-1, x0^-1 x1 x0]",
    "[x0 x1^-1, x0^-2 x1 x0^2]",
    "x1 x0^-1 c x1 c^-1",
    "(x0^-1 c x1)^2 x0^-1 c^-1",
    "x1 x0^-2 c x1^2 x0^-1 x1^-1 x0 x1^-1 c^-1 x0",
)

T = RelatorCatalog(
    ("x0", "x1", "c"), tuple(map(parse_word, _T_RELATORS + ("c^3",))), "T"
)
H1 = RelatorCatalog(
    ("x0", "x1", "c"),
    tuple(map(parse_word, _T_RELATORS + ("[c^3, x0]", "[c^3, x1]"))),
    "H1",
)
BUILTIN = {"T": T, "H1": H1}


def parse_catalog(text: str, name: str = "") -> RelatorCatalog:
    """Read a catalog: one relator per line, ``#`` comments, and an optional
    ``generators: a b c`` line (otherwise generators appear in first-use order)."""
    gens, relators = None, []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.lower().startswith("generators:"):
            gens = tuple(line.split(":", 1)[1].replace(",", " ").split())
            continue
        relators.append(parse_word(line))
    if gens is None:
        seen = {}
        for r in relators:
            for g, _ in r:
                seen.setdefault(g, None)
        gens = tuple(seen)
    return RelatorCatalog(gens, tuple(relators), name)


def standard_assignment() -> Mapping[str, PLMap]:
    """The lifts x0, x1, c (plus every other catalog name) used by default."""
    return thompson.catalog


def eval_word(w: Word, assignment: Mapping[str, PLMap] = None) -> PLMap:
    """Map of a word, rightmost letter applied first."""
    assignment = thompson.catalog if assignment is None else assignment
    maps = []
    for name, exp in w:
        try:
            g = assignment[name]
        except KeyError:
            raise UnknownGenerator(name) from None
        if exp < 0:
            g, exp = invert(g), -exp
        maps.extend([g] * exp)
    if not maps:
        return identity()
    return compose(*maps)


@dataclass(frozen=True)
class RelatorCheck:
    relator: Word
    holds: bool
    value: PLMap = None  # the evaluated map, kept for failures

    @property
    def text(self) -> str:
        return format_word(self.relator)


def verify_relators(catalog: RelatorCatalog, assignment: Mapping[str, PLMap] = None) -> list:
    out = []
    for r in catalog.relators:
        value = eval_word(r, assignment)
        ok = is_identity(value)
        out.append(RelatorCheck(r, ok, None if ok else value))
    return out


def exponent_matrix(catalog: RelatorCatalog) -> tuple:
    return tuple(tuple(exponent_sums(r, catalog.generators)) for r in catalog.relators)


@dataclass(frozen=True)
class AbelianGroup:
    rank: int
    torsion: tuple = ()

    @property
    def is_trivial(self) -> bool:
        return self.rank == 0 and not self.torsion

    def __str__(self):
        if self.is_trivial:
            return "trivial"
        parts = []
        if self.rank:
            parts.append("Z" if self.rank == 1 else "Z^%d" % self.rank)
        parts.extend("Z/%d" % d for d in self.torsion)
        return " x ".join(parts)


def abelianization(catalog: RelatorCatalog) -> AbelianGroup:
    return abelian_group(smith_normal_form(exponent_matrix(catalog), cols=len(catalog.generators)))


def abelian_group(snf: SmithForm) -> AbelianGroup:
    nonzero = [d for d in snf.diagonal if d]
    return AbelianGroup(snf.cols - len(nonzero), tuple(d for d in nonzero if d > 1))
