"""Shape and limit constructions on finite bicategories."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .bicat import (FinBicat, NormalPseudofunctor, enumerate_2nats, enumerate_modifications,
                    enumerate_pseudofunctors, is_strict_2category)
from .fincat import (CatFunctor, FinCat, enumerate_functors, enumerate_nat_trans,
                     full_subcategory, path_components, product_category, terminal_category,
                     walking_arrow)
from .report import Budget, ShapeError, encode


def terminal_bicat() -> FinBicat:
    return FinBicat.strict(["*"])


def product_bicat(a: FinBicat, b: FinBicat):
    """``a × b`` with its two strict projections.

    Cells are named ``(u,v)``; coherence cells are paired componentwise.
    """
    pair = lambda u, v: f"({u},{v})"
    objects = [pair(x, y) for x in a.objects for y in b.objects]
    homs, h1, h2 = {}, {}, {}
    for x, y in itertools.product(a.objects, b.objects):
        for x2, y2 in itertools.product(a.objects, b.objects):
            ha, hb = a.hom(x, x2), b.hom(y, y2)
            if ha.objects and hb.objects:
                homs[(pair(x, y), pair(x2, y2))] = product_category(ha, hb)
    for (g, f), gf in a.hcomp1.items():
        for (g2, f2), gf2 in b.hcomp1.items():
            h1[(pair(g, g2), pair(f, f2))] = pair(gf, gf2)
    for (q, p), qp in a.hcomp2.items():
        for (q2, p2), qp2 in b.hcomp2.items():
            h2[(pair(q, q2), pair(p, p2))] = pair(qp, qp2)
    assoc = {}
    for h, g, f in a.composable_triples():
        for h2_, g2, f2 in b.composable_triples():
            assoc[(pair(h, h2_), pair(g, g2), pair(f, f2))] = pair(a.assoc(h, g, f), b.assoc(h2_, g2, f2))
    lu = {pair(f, f2): pair(a.lunit(f), b.lunit(f2)) for f in a.cells1 for f2 in b.cells1}
    ru = {pair(f, f2): pair(a.runit(f), b.runit(f2)) for f in a.cells1 for f2 in b.cells1}
    ids = {pair(x, y): pair(a.id1(x), b.id1(y)) for x in a.objects for y in b.objects}
    labels = {"kind": "product",
              "objects": {pair(x, y): (x, y) for x in a.objects for y in b.objects},
              "cells1": {pair(f, g): (f, g) for f in a.cells1 for g in b.cells1},
              "cells2": {pair(p, q): (p, q) for p in a.cells2 for q in b.cells2}}
    P = FinBicat(objects, homs, ids, h1, h2, assoc, lu, ru, labels=labels)
    projections = []
    for i, src in ((0, a), (1, b)):
        projections.append(NormalPseudofunctor(
            P, src, {n: v[i] for n, v in labels["objects"].items()},
            {n: v[i] for n, v in labels["cells1"].items()},
            {n: v[i] for n, v in labels["cells2"].items()}))
    return P, projections[0], projections[1]


def pair_pseudofunctors(P: FinBicat, F: NormalPseudofunctor, G: NormalPseudofunctor) -> NormalPseudofunctor:
    """The pairing ``⟨F, G⟩: X → a × b`` into a product built by ``product_bicat``."""
    pair = lambda u, v: f"({u},{v})"
    X = F.source
    comps = {}
    for g, f in X.composable_pairs():
        comps[(g, f)] = pair(F.phi(g, f), G.phi(g, f))
    return NormalPseudofunctor(X, P, {x: pair(F.ob(x), G.ob(x)) for x in X.objects},
                               {f: pair(F.on1(f), G.on1(f)) for f in X.cells1},
                               {t: pair(F.on2(t), G.on2(t)) for t in X.cells2}, comps)


# -- suspension --------------------------------------------------------------

def _fresh(base: str, taken: set[str]) -> str:
    while base in taken:
        base += "'"
    return base


def suspension(j: FinCat) -> FinBicat:
    """Two objects ``0, 1`` with ``hom(0,1) = j`` and nothing from 1 to 0."""
    i0 = _fresh("id_0", set(j.objects))
    i1 = _fresh("id_1", set(j.objects) | {i0})
    e0 = FinCat.make([i0])
    e1 = FinCat.make([i1])
    homs = {("0", "0"): e0, ("1", "1"): e1, ("0", "1"): j}
    ii0, ii1 = e0.identity(i0), e1.identity(i1)
    h1 = {(i0, i0): i0, (i1, i1): i1}
    h2 = {(ii0, ii0): ii0, (ii1, ii1): ii1}
    for f in j.objects:
        h1[(i1, f)] = f
        h1[(f, i0)] = f
    for m in j.morphisms:
        h2[(ii1, m)] = m
        h2[(m, ii0)] = m
    return FinBicat(["0", "1"], homs, {"0": i0, "1": i1}, h1, h2, labels={"kind": "suspension"})


def suspension_functor(f: CatFunctor) -> NormalPseudofunctor:
    """``Σf: Σj → Σk``, the identity on objects and ``f`` on ``hom(0,1)``."""
    s, t = suspension(f.source), suspension(f.target)
    c1 = {s.id1("0"): t.id1("0"), s.id1("1"): t.id1("1")}
    c2 = {s.id2(s.id1(x)): t.id2(t.id1(x)) for x in ("0", "1")}
    c1.update(f.objects)
    c2.update(f.morphisms)
    return NormalPseudofunctor(s, t, {"0": "0", "1": "1"}, c1, c2)


@dataclass(frozen=True)
class BipointedBicat:
    bicat: FinBicat
    basepoints: tuple[str, str]

    def __post_init__(self):
        for x in self.basepoints:
            if x not in self.bicat.objects:
                raise ShapeError(f"basepoint {x!r} is not an object")

    def hom(self) -> FinCat:
        return self.bicat.hom(*self.basepoints)


def suspension_counit(c: BipointedBicat) -> NormalPseudofunctor:
    """The canonical ``Σ C(x,y) → C``; its comparison cells are unitors."""
    C = c.bicat
    x, y = c.basepoints
    S = suspension(c.hom())
    c1 = {S.id1("0"): C.id1(x), S.id1("1"): C.id1(y)}
    c2 = {S.id2(S.id1("0")): C.id2(C.id1(x)), S.id2(S.id1("1")): C.id2(C.id1(y))}
    h = c.hom()
    c1.update({f: f for f in h.objects})
    c2.update({a: a for a in h.morphisms})
    comps = {}
    for f in h.objects:
        comps[(S.id1("1"), f)] = C.lunit(f)
        comps[(f, S.id1("0"))] = C.runit(f)
    comps[(S.id1("0"), S.id1("0"))] = C.lunit(C.id1(x))
    comps[(S.id1("1"), S.id1("1"))] = C.lunit(C.id1(y))
    return NormalPseudofunctor(S, C, {"0": x, "1": y}, c1, c2, comps)


def free_cell(kind: str) -> FinBicat:
    """The free 0-cell ``1``, free 1-cell ``C1`` or free 2-cell ``C2``."""
    if kind == "zero":
        return terminal_bicat()
    if kind == "one":
        return suspension(terminal_category())
    if kind == "two":
        return suspension(walking_arrow())
    raise ValueError(f"unknown cell kind {kind!r}")


# -- cotensors -----------------------------------------------------------------

def _cell1_name(j: FinCat, obmap, mormap) -> str:
    return encode(obmap, {m: v for m, v in mormap.items() if not j.is_identity(m)})


def _cell2_name(dom: str, cod: str, comps) -> str:
    return f"{dom}=>{cod}{encode(comps)}"


def cotensor_icon(a: FinBicat, j: FinCat, *, limit: int | None = None) -> FinBicat:
    """The cotensor ``a^j`` in Icon.

    Objects are functions from the path components of ``j`` to objects of
    ``a``; a 1-cell ``S → T`` is a functor from the component ``j_c`` into
    ``a(Sc, Tc)`` for each component; 2-cells are natural families.  All
    structure is computed pointwise.
    """
    budget = Budget("cotensor construction", limit)
    comps = path_components(j)
    reps = [c[0] for c in comps]
    subs = [full_subcategory(j, c) for c in comps]
    comp_of = {x: n for n, c in enumerate(comps) for x in c}
    obj_assign = {}
    for vals in itertools.product(a.objects, repeat=len(comps)):
        budget.tick()
        obj_assign[encode(dict(zip(reps, vals)))] = vals
    homs = {}
    cells1: dict[str, tuple[dict, dict]] = {}
    cells2: dict[str, dict] = {}
    for S, sv in obj_assign.items():
        for T, tv in obj_assign.items():
            per = []
            for n, sub in enumerate(subs):
                fs = enumerate_functors(sub, a.hom(sv[n], tv[n]), limit=limit)
                budget.tick(len(fs) + 1)
                per.append(fs)
            objs, arrows, idents, comp = [], {}, {}, {}
            fam = {}
            for choice in itertools.product(*per):
                budget.tick()
                ob, mo = {}, {}
                for fn in choice:
                    ob.update(fn.objects)
                    mo.update(fn.morphisms)
                name = _cell1_name(j, ob, mo)
                objs.append(name)
                cells1[name] = (ob, mo)
                fam[name] = choice
            for s in objs:
                for t in objs:
                    per_nat = [enumerate_nat_trans(p, q, limit=limit) for p, q in zip(fam[s], fam[t])]
                    for nats in itertools.product(*per_nat):
                        budget.tick()
                        cm = {}
                        for nt in nats:
                            cm.update(nt.components)
                        n2 = _cell2_name(s, t, cm)
                        arrows[n2] = (s, t)
                        cells2[n2] = cm
            for s in objs:
                ob = cells1[s][0]
                idents[s] = _cell2_name(s, s, {x: a.id2(ob[x]) for x in j.objects})
            for b2, (m, t) in arrows.items():
                for a2, (s, m2) in arrows.items():
                    if m2 != m:
                        continue
                    cm = {x: a.vcomp(cells2[b2][x], cells2[a2][x]) for x in j.objects}
                    comp[(b2, a2)] = _cell2_name(s, t, cm)
            if objs:
                homs[(S, T)] = FinCat(objs, arrows, idents, comp)
    ids = {}
    for S, sv in obj_assign.items():
        ob = {x: a.id1(sv[comp_of[x]]) for x in j.objects}
        mo = {m: a.id2(ob[j.src(m)]) for m in j.morphisms}
        ids[S] = _cell1_name(j, ob, mo)
    h1, h2, assoc, lu, ru = {}, {}, {}, {}, {}
    by_hom = {xy: h for xy, h in homs.items()}
    for (S, T), hst in by_hom.items():
        for U in obj_assign:
            htu = by_hom.get((T, U))
            if htu is None:
                continue
            for g in htu.objects:
                for f in hst.objects:
                    gob, gmo = cells1[g]
                    fob, fmo = cells1[f]
                    ob = {x: a.comp1(gob[x], fob[x]) for x in j.objects}
                    mo = {m: a.comp2(gmo[m], fmo[m]) for m in j.morphisms}
                    h1[(g, f)] = _cell1_name(j, ob, mo)
            for q in htu.morphisms:
                for p in hst.morphisms:
                    dom = h1[(htu.src(q), hst.src(p))]
                    cod = h1[(htu.tgt(q), hst.tgt(p))]
                    h2[(q, p)] = _cell2_name(dom, cod, {x: a.comp2(cells2[q][x], cells2[p][x])
                                                        for x in j.objects})
    labels = {"kind": "cotensor_icon", "components": comps,
              "objects": {S: {x: sv[comp_of[x]] for x in j.objects} for S, sv in obj_assign.items()},
              "cells1": cells1, "cells2": cells2}
    pre = FinBicat(list(obj_assign), homs, ids, h1, h2)
    for h, g, f in pre.composable_triples():
        dom, cod = pre.comp1(pre.comp1(h, g), f), pre.comp1(h, pre.comp1(g, f))
        hob, gob, fob = cells1[h][0], cells1[g][0], cells1[f][0]
        assoc[(h, g, f)] = _cell2_name(dom, cod, {x: a.assoc(hob[x], gob[x], fob[x]) for x in j.objects})
    for f in pre.cells1:
        S, T = pre.ends1(f)
        fob = cells1[f][0]
        lu[f] = _cell2_name(pre.comp1(ids[T], f), f, {x: a.lunit(fob[x]) for x in j.objects})
        ru[f] = _cell2_name(pre.comp1(f, ids[S]), f, {x: a.runit(fob[x]) for x in j.objects})
    return FinBicat(list(obj_assign), homs, ids, h1, h2, assoc, lu, ru, labels=labels)


def exponential_2cat(a: FinBicat, b: FinBicat, *, limit: int | None = None) -> FinBicat:
    """``b^a``: strict 2-functors, 2-natural transformations, modifications."""
    for name, x in (("source", a), ("target", b)):
        if not is_strict_2category(x):
            raise ShapeError(f"{name} is not a strict 2-category")
    budget = Budget("exponential construction", limit)
    functors = enumerate_pseudofunctors(a, b, strict=True, limit=limit)
    fname = {F.key(): F.name() for F in functors}
    budget.tick(len(functors))
    homs, cells1, cells2, funcs = {}, {}, {}, {}
    for F in functors:
        funcs[fname[F.key()]] = F
    for F in functors:
        for G in functors:
            Fn, Gn = fname[F.key()], fname[G.key()]
            nats = enumerate_2nats(F, G, limit=limit)
            budget.tick(len(nats) + 1)
            if not nats:
                continue
            objs = []
            arrows, idents, comp = {}, {}, {}
            mods_by = {}
            for t in nats:
                n = _cell2_name(Fn, Gn, t.components)
                objs.append(n)
                cells1[n] = t
            for s in nats:
                for t in nats:
                    sn, tn = _cell2_name(Fn, Gn, s.components), _cell2_name(Fn, Gn, t.components)
                    for m in enumerate_modifications(s, t, limit=limit):
                        budget.tick()
                        mn = _cell2_name(sn, tn, m.components)
                        arrows[mn] = (sn, tn)
                        cells2[mn] = m
                        mods_by[mn] = m
            for n in objs:
                t = cells1[n]
                idents[n] = _cell2_name(n, n, {x: b.id2(e) for x, e in t.components.items()})
            for qn, (m, t) in arrows.items():
                for pn, (s, m2) in arrows.items():
                    if m2 == m:
                        comp[(qn, pn)] = _cell2_name(s, t, {x: b.vcomp(mods_by[qn][x], mods_by[pn][x])
                                                           for x in a.objects})
            homs[(Fn, Gn)] = FinCat(objs, arrows, idents, comp)
    ids = {Fn: _cell2_name(Fn, Fn, {x: b.id1(F.ob(x)) for x in a.objects}) for Fn, F in funcs.items()}
    h1, h2 = {}, {}
    for (Fn, Gn), hfg in homs.items():
        for Hn in funcs:
            hgh = homs.get((Gn, Hn))
            if hgh is None:
                continue
            for tn in hgh.objects:
                for sn in hfg.objects:
                    h1[(tn, sn)] = _cell2_name(Fn, Hn, {x: b.comp1(cells1[tn][x], cells1[sn][x])
                                                        for x in a.objects})
            for qn in hgh.morphisms:
                for pn in hfg.morphisms:
                    dom = h1[(hgh.src(qn), hfg.src(pn))]
                    cod = h1[(hgh.tgt(qn), hfg.tgt(pn))]
                    h2[(qn, pn)] = _cell2_name(dom, cod, {x: b.comp2(cells2[qn][x], cells2[pn][x])
                                                          for x in a.objects})
    labels = {"kind": "exponential", "objects": funcs, "cells1": cells1, "cells2": cells2}
    return FinBicat(list(funcs), homs, ids, h1, h2, labels=labels)


def diagonal_names(a: FinBicat, j: FinCat):
    """Names in ``a^j`` (2-Cat cotensor) of constant objects, 1-cells and 2-cells."""
    ld = FinBicat.locally_discrete(j)
    obj = {}
    for x in a.objects:
        ob = {y: x for y in ld.objects}
        c1 = {f: a.id1(x) for f in ld.cells1 if f not in set(ld.identity1.values())}
        c2 = {t: a.id2(a.id1(x)) for t in ld.cells2 if t not in {ld.id2(f) for f in ld.cells1}}
        obj[x] = encode(ob, c1, c2)
    cell1 = {f: _cell2_name(obj[a.src1(f)], obj[a.tgt1(f)], {y: f for y in ld.objects}) for f in a.cells1}
    cell2 = {}
    for t in a.cells2:
        f, g = a.dom2(t), a.cod2(t)
        cell2[t] = _cell2_name(cell1[f], cell1[g], {y: t for y in ld.objects})
    return obj, cell1, cell2


def cotensor_2cat(a: FinBicat, j: FinCat, *, limit: int | None = None):
    """The cotensor ``a^j`` in 2-Cat and the constant-diagram 2-functor ``Δ: a → a^j``."""
    E = exponential_2cat(FinBicat.locally_discrete(j), a, limit=limit)
    obj, cell1, cell2 = diagonal_names(a, j)
    delta = NormalPseudofunctor(a, E, obj, cell1, cell2)
    return E, delta


def strict_slice(a: FinBicat, j: FinCat, d: str, *, limit: int | None = None):
    """The 2-category of cones over ``d`` and its projection to ``a``.

    Objects are pairs ``(x, λ: Δx ⇒ d)``.  A 1-cell is ``u: x → y`` with
    ``μ·Δu = λ`` on the nose, and a 2-cell ``θ: u ⇒ u'`` must satisfy
    ``μ∗Δθ = id_λ``.
    """
    E, delta = cotensor_2cat(a, j, limit=limit)
    if d not in E.objects:
        raise ShapeError(f"{d!r} is not an object of the cotensor")
    objects = {}
    for x in a.objects:
        for lam in E.hom(delta.ob(x), d).objects:
            objects[f"{x}/{lam}"] = (x, lam)
    homs, c1, c2 = {}, {}, {}
    for X, (x, lam) in objects.items():
        for Y, (y, mu) in objects.items():
            keep = [u for u in a.hom(x, y).objects if E.comp1(mu, delta.on1(u)) == lam]
            if not keep:
                continue
            name1 = {u: f"{u}:{X}->{Y}" for u in keep}
            h = a.hom(x, y)
            arrows, comp = {}, {}
            name2 = {}
            for t in h.morphisms:
                if h.src(t) in name1 and h.tgt(t) in name1 and E.lwhisker(mu, delta.on2(t)) == E.id2(lam):
                    name2[t] = f"{t}:{X}->{Y}"
                    arrows[name2[t]] = (name1[h.src(t)], name1[h.tgt(t)])
            for (q, p), qp in h.composition.items():
                if q in name2 and p in name2:
                    comp[(name2[q], name2[p])] = name2[qp]
            idents = {name1[u]: name2[h.identity(u)] for u in keep}
            homs[(X, Y)] = FinCat(list(name1.values()), arrows, idents, comp)
            c1.update({v: (u, X, Y) for u, v in name1.items()})
            c2.update({v: (t, X, Y) for t, v in name2.items()})
    ids = {X: f"{a.id1(x)}:{X}->{X}" for X, (x, _) in objects.items()}
    h1, h2 = {}, {}
    for g, (gu, Y, Z) in c1.items():
        for f, (fu, X, Y2) in c1.items():
            if Y2 == Y:
                h1[(g, f)] = f"{a.comp1(gu, fu)}:{X}->{Z}"
    for q, (qt, Y, Z) in c2.items():
        for p, (pt, X, Y2) in c2.items():
            if Y2 == Y:
                h2[(q, p)] = f"{a.comp2(qt, pt)}:{X}->{Z}"
    labels = {"kind": "strict_slice", "objects": objects, "cells1": c1, "cells2": c2}
    S = FinBicat(list(objects), homs, ids, h1, h2, labels=labels)
    proj = NormalPseudofunctor(S, a, {X: v[0] for X, v in objects.items()},
                               {f: v[0] for f, v in c1.items()}, {t: v[0] for t, v in c2.items()})
    return S, proj


def diagonal_icon(a: FinBicat, j: FinCat, cot: FinBicat | None = None) -> NormalPseudofunctor:
    """The constant-diagram pseudofunctor ``Δ: a → a^j`` into the Icon cotensor."""
    cot = cot if cot is not None else cotensor_icon(a, j)
    comps = cot.labels["components"]
    reps = [c[0] for c in comps]
    obj = {x: encode({r: x for r in reps}) for x in a.objects}
    c1 = {}
    for f in a.cells1:
        c1[f] = _cell1_name(j, {y: f for y in j.objects}, {m: a.id2(f) for m in j.morphisms})
    c2 = {}
    for t in a.cells2:
        c2[t] = _cell2_name(c1[a.dom2(t)], c1[a.cod2(t)], {y: t for y in j.objects})
    return NormalPseudofunctor(a, cot, obj, c1, c2)
