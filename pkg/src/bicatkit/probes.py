"""Probe-quantified verification of absolute right lifting diagrams.

An absolute right lifting is a universal property quantified over every
bicategory ``X``.  Here the quantifier ranges over a finite battery of
probes, so a true verdict only means no probe refutes it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable

from .bicat import (FinBicat, NormalPseudofunctor, compose_pseudofunctors, enumerate_2nats,
                    enumerate_icons, enumerate_modifications, enumerate_pseudofunctors,
                    icon_vcompose, icon_whisker_left, icon_whisker_right, identity_2nat,
                    identity_icon, identity_modification,
                    mod_hcompose, mod_whisker_left, nat_vcompose, nat_whisker_left,
                    nat_whisker_right)
from .constructions import free_cell, suspension, terminal_bicat
from .fincat import FinCat, walking_arrow, walking_iso
from .report import CheckReport, ShapeError, fail


@dataclass(frozen=True)
class Cosmos:
    """The operations the engine needs from an ambient 2-category."""

    name: str
    functors: Callable[[FinBicat, FinBicat], list]
    cells: Callable[[NormalPseudofunctor, NormalPseudofunctor], list]
    vcomp: Callable[[Any, Any], Any]
    whisker_left: Callable[[NormalPseudofunctor, Any], Any]
    whisker_right: Callable[[Any, NormalPseudofunctor], Any]
    identity: Callable[[NormalPseudofunctor], Any]


TWO_CAT = Cosmos("2-Cat", lambda x, b: enumerate_pseudofunctors(x, b, strict=True),
                 enumerate_2nats, nat_vcompose, nat_whisker_left, nat_whisker_right, identity_2nat)
ICON = Cosmos("Icon", lambda x, b: enumerate_pseudofunctors(x, b),
              enumerate_icons, icon_vcompose, icon_whisker_left, icon_whisker_right, identity_icon)


def hom_category(cosmos: Cosmos, x: FinBicat, a: FinBicat):
    """The category of functors ``x → a`` and cells between them.

    Returns ``(category, functors by name, cells by name)``.  A cell
    ``t: F ⇒ G`` is named ``F=>G`` followed by its component name.
    """
    functors = {F.name(): F for F in cosmos.functors(x, a)}
    cells, by_key, arrows = {}, {}, {}
    for fn, F in functors.items():
        for gn, G in functors.items():
            for t in cosmos.cells(F, G):
                name = f"{fn}=>{gn}{t.name()}"
                cells[name] = t
                by_key[(fn, gn, _cell_key(t))] = name
                arrows[name] = (fn, gn)
    out: dict[str, list[str]] = {}
    for n, (s, _) in arrows.items():
        out.setdefault(s, []).append(n)
    comp = {}
    for p, (x_, y) in arrows.items():
        for q in out.get(y, []):
            comp[(q, p)] = by_key[(x_, arrows[q][1], _cell_key(cosmos.vcomp(cells[q], cells[p])))]
    ids = {fn: by_key[(fn, fn, _cell_key(cosmos.identity(F)))] for fn, F in functors.items()}
    return FinCat(list(functors), arrows, ids, comp), functors, cells


@dataclass(frozen=True)
class LiftingProblem:
    """``rho: f∘r ⇒ g`` with ``f: B → A``, ``g: C → A``, ``r: C → B``.

    ``rho`` is a 2-natural transformation in 2-Cat and an icon in Icon.
    """

    f: NormalPseudofunctor
    g: NormalPseudofunctor
    r: NormalPseudofunctor
    rho: Any

    def __post_init__(self):
        if self.f.target != self.g.target:
            raise ShapeError("f and g must share a codomain")
        if self.r.source != self.g.source or self.r.target != self.f.source:
            raise ShapeError("r must go from the domain of g to the domain of f")
        if self.rho.source.source != self.r.source or self.rho.source.target != self.f.target:
            raise ShapeError("rho must be a 2-cell f∘r ⇒ g")


def probe(name: str) -> FinBicat:
    table = {
        "1": terminal_bicat,
        "C1": lambda: free_cell("one"),
        "C2": lambda: free_cell("two"),
        "I": lambda: FinBicat.locally_discrete(walking_iso()),
        "Sigma2": lambda: suspension(walking_arrow()),
        "SigmaI": lambda: suspension(walking_iso()),
    }
    if name not in table:
        raise KeyError(f"unknown probe {name!r}; known: {sorted(table)}")
    return table[name]()


DEFAULT_PROBES = ("1", "C1", "C2", "I", "Sigma2")
PROBE_NAMES = ("1", "C1", "C2", "I", "Sigma2", "SigmaI")


def resolve_probes(probes) -> dict[str, FinBicat]:
    if probes is None:
        probes = DEFAULT_PROBES
    if isinstance(probes, dict):
        return dict(probes)
    return {n: probe(n) for n in probes}


def _cell_key(c) -> tuple:
    return tuple(sorted(c.components.items()))


def _non_identity(target: FinBicat, comps: dict):
    for k in sorted(comps):
        v = comps[k]
        if not (target.is_cell2(v) and target.hom_of2(v).is_identity(v)):
            return v
    return comps[sorted(comps)[0]] if comps else None


def probe_lifting(cosmos: Cosmos, p: LiftingProblem, probes=None, *, enriched: bool = False) -> CheckReport:
    """Check unique factorization of every ``χ: f∘b ⇒ g∘c`` through ``rho``.

    With ``enriched`` set (2-Cat only), additionally require that pasting
    with ``rho`` is bijective on modifications, so that it is an
    isomorphism of hom-categories.
    """
    battery = resolve_probes(probes)
    A, B, C = p.f.target, p.f.source, p.g.source
    seen: dict = {}
    names = []
    for pname, X in battery.items():
        names.append(pname)
        k = X.key()
        if k in seen:
            continue
        seen[k] = pname
        bs = cosmos.functors(X, B)
        cs = cosmos.functors(X, C)
        for c in cs:
            rc = compose_pseudofunctors(p.r, c)
            gc = compose_pseudofunctors(p.g, c)
            rho_c = cosmos.whisker_right(p.rho, c)
            for b in bs:
                fb = compose_pseudofunctors(p.f, b)
                zetas = cosmos.cells(b, rc)
                chis = cosmos.cells(fb, gc)
                image: dict = {}
                for z in zetas:
                    chi = cosmos.vcomp(rho_c, cosmos.whisker_left(p.f, z))
                    image.setdefault(_cell_key(chi), []).append(z)
                for chi in chis:
                    lifts = image.get(_cell_key(chi), [])
                    if len(lifts) != 1:
                        reason = "2-cell has no factorization" if not lifts else "factorization not unique"
                        return CheckReport(False, witness={
                            "probe": pname, "b": b.name(), "c": c.name(), "chi": chi.name(),
                            "factorizations": len(lifts)}, reason=reason, probes=tuple(names))
                if enriched:
                    r = _check_modifications(p, b, c, rho_c, zetas, A)
                    if r is not None:
                        r["probe"] = pname
                        return CheckReport(False, witness=r, probes=tuple(names),
                                           reason="pasting is not bijective on modifications")
    return CheckReport(True, probes=tuple(names),
                       details={"semi_decision": True, "cosmos": cosmos.name, "enriched": enriched})


def _check_modifications(p, b, c, rho_c, zetas, A):
    f = p.f
    images = {}
    for z in zetas:
        images[id(z)] = nat_vcompose(rho_c, nat_whisker_left(f, z))
    idm = identity_modification(rho_c)
    for z in zetas:
        for z2 in zetas:
            mods = enumerate_modifications(z, z2)
            hit: dict = {}
            for m in mods:
                im = mod_hcompose(idm, mod_whisker_left(f, m))
                hit.setdefault(tuple(sorted(im.components.items())), []).append(m)
            targets = enumerate_modifications(images[id(z)], images[id(z2)])
            for psi in targets:
                found = hit.get(tuple(sorted(psi.components.items())), [])
                if len(found) != 1:
                    return {"b": b.name(), "c": c.name(), "zeta": z.name(), "zeta'": z2.name(),
                            "modification": dict(psi.components),
                            "2-cell": _non_identity(A, dict(psi.components)),
                            "preimages": len(found)}
    return None
