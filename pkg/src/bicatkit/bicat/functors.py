"""Normal pseudofunctors between finite bicategories."""

from __future__ import annotations

from typing import Iterator, Mapping

from ..fincat import CatFunctor, enumerate_functors, validate_functor
from ..report import Budget, CheckReport, ShapeError, encode, fail, ok
from .core import FinBicat


class NormalPseudofunctor:
    """A normal pseudofunctor ``source → target``.

    ``cells1`` and ``cells2`` are total maps on 1-cells and 2-cells.
    ``comparisons[(g, f)]`` is ``φ_{g,f}: Fg∘Ff ⇒ F(g∘f)``; absent entries
    mean the identity, so a strict 2-functor has an empty table.
    """

    __slots__ = ("source", "target", "objects", "cells1", "cells2", "comparisons", "_key")

    def __init__(self, source: FinBicat, target: FinBicat, objects: Mapping[str, str],
                 cells1: Mapping[str, str], cells2: Mapping[str, str],
                 comparisons: Mapping[tuple[str, str], str] | None = None):
        self.source = source
        self.target = target
        self.objects = dict(objects)
        self.cells1 = dict(cells1)
        self.cells2 = dict(cells2)
        comps = {}
        for (g, f), c in (comparisons or {}).items():
            try:
                d = target.comp1(self.cells1[g], self.cells1[f])
                if d == self.cells1[source.comp1(g, f)] and c == target.id2(d):
                    continue
            except KeyError:
                pass
            comps[(g, f)] = c
        self.comparisons = comps
        self._key = None

    def key(self):
        if self._key is None:
            self._key = (tuple(sorted(self.objects.items())), tuple(sorted(self.cells1.items())),
                         tuple(sorted(self.cells2.items())), tuple(sorted(self.comparisons.items())))
        return self._key

    def __eq__(self, other):
        return (isinstance(other, NormalPseudofunctor) and self.source == other.source
                and self.target == other.target and self.key() == other.key())

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"NormalPseudofunctor({self.name()})"

    def name(self) -> str:
        """Deterministic label: object map, then non-identity-1-cell images."""
        src = self.source
        ids = set(src.identity1.values())
        c1 = {f: v for f, v in self.cells1.items() if f not in ids}
        idc = {src.id2(f) for f in src.cells1}
        c2 = {a: v for a, v in self.cells2.items() if a not in idc}
        return encode(self.objects, c1, c2, {f"{g}*{f}": c for (g, f), c in self.comparisons.items()})

    def ob(self, x: str) -> str:
        return self.objects[x]

    def on1(self, f: str) -> str:
        return self.cells1[f]

    def on2(self, a: str) -> str:
        return self.cells2[a]

    def phi(self, g: str, f: str) -> str:
        if (g, f) in self.comparisons:
            return self.comparisons[(g, f)]
        t = self.target
        d = t.comp1(self.cells1[g], self.cells1[f])
        if d != self.cells1[self.source.comp1(g, f)]:
            raise KeyError(f"no comparison cell for {(g, f)}")
        return t.id2(d)

    def is_strict(self) -> bool:
        return not self.comparisons

    def hom_functor(self, x: str, y: str) -> CatFunctor:
        h = self.source.hom(x, y)
        return CatFunctor(h, self.target.hom(self.objects[x], self.objects[y]),
                          {f: self.cells1[f] for f in h.objects},
                          {a: self.cells2[a] for a in h.morphisms})


def identity_pseudofunctor(b: FinBicat) -> NormalPseudofunctor:
    return NormalPseudofunctor(b, b, {x: x for x in b.objects}, {f: f for f in b.cells1},
                               {a: a for a in b.cells2})


def constant_pseudofunctor(source: FinBicat, target: FinBicat, x: str) -> NormalPseudofunctor:
    """Everything to ``x``, its identity 1-cell and identity 2-cell.

    Every comparison cell is the unitor ``λ_{id_x}``.
    """
    i = target.id1(x)
    lam = target.lunit(i)
    return NormalPseudofunctor(source, target, {o: x for o in source.objects},
                               {f: i for f in source.cells1}, {a: target.id2(i) for a in source.cells2},
                               {gf: lam for gf in source.composable_pairs()})


def compose_pseudofunctors(g: NormalPseudofunctor, f: NormalPseudofunctor) -> NormalPseudofunctor:
    """``g∘f`` with ``φ^{gf}_{v,u} = g(φ^f_{v,u}) · φ^g_{fv,fu}``."""
    if f.target != g.source:
        raise ShapeError("pseudofunctors are not composable")
    t = g.target
    comps = {}
    for v, u in f.source.composable_pairs():
        try:
            comps[(v, u)] = t.vcomp(g.on2(f.phi(v, u)), g.phi(f.on1(v), f.on1(u)))
        except KeyError:
            continue
    return NormalPseudofunctor(f.source, g.target,
                               {x: g.ob(y) for x, y in f.objects.items()},
                               {a: g.on1(b) for a, b in f.cells1.items()},
                               {a: g.on2(b) for a, b in f.cells2.items()}, comps)


def validate_normal_pseudofunctor(F: NormalPseudofunctor) -> CheckReport:
    """Check totality, hom-functoriality, normality, and φ coherence.

    Pastings are evaluated in a fixed order: unit coherence, naturality of
    φ in each variable, then the hexagon
    ``F(a)·φ_{hg,f}·(φ_{h,g}∗Ff) = φ_{h,gf}·(Fh∗φ_{g,f})·a``.
    """
    A, B = F.source, F.target
    for x in A.objects:
        if F.objects.get(x) not in B.objects:
            return fail("object map not total", {"object": x})
    for f in A.cells1:
        if f not in F.cells1:
            return fail("1-cell map not total", {"1-cell": f})
    for a in A.cells2:
        if a not in F.cells2:
            return fail("2-cell map not total", {"2-cell": a})
    for x in A.objects:
        for y in A.objects:
            h = A.hom(x, y)
            if not h.objects:
                continue
            fx, fy = F.ob(x), F.ob(y)
            for f in h.objects:
                if not B.is_cell1(F.on1(f)) or B.ends1(F.on1(f)) != (fx, fy):
                    return fail("1-cell sent outside the image hom", {"1-cell": f})
            for a in h.morphisms:
                if not B.is_cell2(F.on2(a)) or B.ends1(B.dom2(F.on2(a))) != (fx, fy):
                    return fail("2-cell sent outside the image hom", {"2-cell": a})
            r = validate_functor(F.hom_functor(x, y))
            if not r:
                return fail(f"hom-functor invalid: {r.reason}", {"hom": [x, y], "detail": r.witness})
    for x in A.objects:
        if F.on1(A.id1(x)) != B.id1(F.ob(x)):
            return fail("identity 1-cell not preserved strictly", {"object": x})
    for k in sorted(F.comparisons):
        g, f = k
        if not (A.is_cell1(g) and A.is_cell1(f) and A.tgt1(f) == A.src1(g)):
            return fail("comparison entry for a non-composable pair", {"pair": [g, f]})
    for g, f in A.composable_pairs():
        try:
            p = F.phi(g, f)
        except KeyError:
            return fail("comparison cell missing", {"pair": [g, f]})
        dom = B.comp1(F.on1(g), F.on1(f))
        cod = F.on1(A.comp1(g, f))
        if not B.is_cell2(p) or B.dom2(p) != dom or B.cod2(p) != cod or not B.is_invertible2(p):
            return fail("comparison cell ill-typed or not invertible", {"pair": [g, f]})
    for f in A.cells1:
        x, y = A.ends1(f)
        want = B.vcomp(B.inv2(F.on2(A.lunit(f))), B.lunit(F.on1(f)))
        if F.phi(A.id1(y), f) != want:
            return fail("left unit coherence fails", {"pair": [A.id1(y), f]})
        want = B.vcomp(B.inv2(F.on2(A.runit(f))), B.runit(F.on1(f)))
        if F.phi(f, A.id1(x)) != want:
            return fail("right unit coherence fails", {"pair": [f, A.id1(x)]})
    for g, f in A.composable_pairs():
        p = F.phi(g, f)
        hg = A.hom(*A.ends1(g))
        for t in hg.morphisms:
            if hg.src(t) != g:
                continue
            g2 = hg.tgt(t)
            lhs = B.vcomp(F.on2(A.rwhisker(t, f)), p)
            rhs = B.vcomp(F.phi(g2, f), B.rwhisker(F.on2(t), F.on1(f)))
            if lhs != rhs:
                return fail("comparison not natural", {"pair": [g, f], "2-cell": t})
        hf = A.hom(*A.ends1(f))
        for t in hf.morphisms:
            if hf.src(t) != f:
                continue
            f2 = hf.tgt(t)
            lhs = B.vcomp(F.on2(A.lwhisker(g, t)), p)
            rhs = B.vcomp(F.phi(g, f2), B.lwhisker(F.on1(g), F.on2(t)))
            if lhs != rhs:
                return fail("comparison not natural", {"pair": [g, f], "2-cell": t})
    for h, g, f in A.composable_triples():
        Fh, Fg, Ff = F.on1(h), F.on1(g), F.on1(f)
        lhs = B.vcomp_all(F.on2(A.assoc(h, g, f)), F.phi(A.comp1(h, g), f),
                          B.rwhisker(F.phi(h, g), Ff))
        rhs = B.vcomp_all(F.phi(h, A.comp1(g, f)), B.lwhisker(Fh, F.phi(g, f)),
                          B.assoc(Fh, Fg, Ff))
        if lhs != rhs:
            return fail("composition coherence hexagon fails", {"triple": [h, g, f]})
    return ok()


def enumerate_pseudofunctors(source: FinBicat, target: FinBicat, *, strict: bool = False,
                             fixed_objects: Mapping[str, str] | None = None,
                             limit: int | None = None) -> list[NormalPseudofunctor]:
    """All normal pseudofunctors (or strict 2-functors), in canonical order.

    Object maps are enumerated lexicographically, then hom-functors hom by
    hom, then comparison cells for pairs of non-identity 1-cells (the rest
    are forced by normality).  Every candidate is run through the validator.
    """
    budget = Budget("pseudofunctor enumeration", limit)
    out: list[NormalPseudofunctor] = []
    objs = list(source.objects)
    fixed = dict(fixed_objects or {})
    homs = [(x, y) for x in objs for y in objs if source.hom(x, y).objects]
    ids = set(source.identity1.values())

    def obmaps(i, acc):
        if i == len(objs):
            yield dict(acc)
            return
        x = objs[i]
        for v in ([fixed[x]] if x in fixed else target.objects):
            budget.tick()
            acc[x] = v
            yield from obmaps(i + 1, acc)
        acc.pop(x, None)

    for om in obmaps(0, {}):
        cands = []
        for x, y in homs:
            tx, ty = om[x], om[y]
            fo = {source.id1(x): target.id1(tx)} if x == y else None
            fs = enumerate_functors(source.hom(x, y), target.hom(tx, ty), fixed_objects=fo, limit=limit)
            budget.tick(len(fs) + 1)
            if not fs:
                break
            cands.append(fs)
        else:
            yield_from = _assign_homs(source, target, om, homs, cands, strict, ids, budget)
            for c1, c2 in yield_from:
                if strict:
                    F = NormalPseudofunctor(source, target, om, c1, c2)
                    if validate_normal_pseudofunctor(F):
                        out.append(F)
                    continue
                for F in _comparisons(source, target, om, c1, c2, ids, budget):
                    out.append(F)
    return out


def _assign_homs(source, target, om, homs, cands, strict, ids, budget) -> Iterator[tuple[dict, dict]]:
    c1: dict[str, str] = {}
    c2: dict[str, str] = {}
    assigned: set[tuple[str, str]] = set()
    pos = {xy: i for i, xy in enumerate(homs)}

    def consistent(xy) -> bool:
        # check compositions whose three homs are assigned, with xy among them
        x0, y0 = xy
        for g, f in source.composable_pairs():
            hf, hg = source.ends1(f), source.ends1(g)
            hgf = (hf[0], hg[1])
            if xy not in (hf, hg, hgf):
                continue
            if not (hf in assigned and hg in assigned and hgf in assigned):
                continue
            budget.tick()
            Fgf = c1[source.comp1(g, f)]
            comp = target.comp1(c1[g], c1[f])
            if strict:
                if comp != Fgf:
                    return False
            elif not target.hom(*target.ends1(comp)).isomorphic(comp, Fgf):
                return False
        if strict:
            for (b, a), ba in source.hcomp2.items():
                hb, ha = source.ends1(source.dom2(b)), source.ends1(source.dom2(a))
                hba = (ha[0], hb[1])
                if xy not in (ha, hb, hba) or not (ha in assigned and hb in assigned and hba in assigned):
                    continue
                budget.tick()
                if target.comp2(c2[b], c2[a]) != c2[ba]:
                    return False
        return True

    def rec(i):
        if i == len(homs):
            yield dict(c1), dict(c2)
            return
        for fun in cands[i]:
            budget.tick()
            c1.update(fun.objects)
            c2.update(fun.morphisms)
            assigned.add(homs[i])
            if consistent(homs[i]):
                yield from rec(i + 1)
            assigned.discard(homs[i])

    yield from rec(0)


def _comparisons(source, target, om, c1, c2, ids, budget) -> Iterator[NormalPseudofunctor]:
    free = []
    for g, f in source.composable_pairs():
        if g in ids or f in ids:
            continue
        d = target.comp1(c1[g], c1[f])
        c = c1[source.comp1(g, f)]
        h = target.hom(*target.ends1(d))
        opts = [a for a in h.hom(d, c) if h.is_iso(a)]
        if not opts:
            return
        free.append(((g, f), opts))
    forced = {}
    try:
        for f in source.cells1:
            x, y = source.ends1(f)
            forced[(source.id1(y), f)] = target.vcomp(target.inv2(c2[source.lunit(f)]),
                                                      target.lunit(c1[f]))
            forced[(f, source.id1(x))] = target.vcomp(target.inv2(c2[source.runit(f)]),
                                                      target.runit(c1[f]))
    except KeyError:
        return
    choice = dict(forced)

    def rec(i):
        if i == len(free):
            F = NormalPseudofunctor(source, target, om, c1, c2, choice)
            budget.tick()
            if validate_normal_pseudofunctor(F):
                yield F
            return
        k, opts = free[i]
        for a in opts:
            budget.tick()
            choice[k] = a
            yield from rec(i + 1)
        choice.pop(k, None)

    yield from rec(0)
