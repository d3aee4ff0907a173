"""Icons, 2-natural transformations and modifications."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from ..fincat import CatNatTrans
from ..report import Budget, CheckReport, ShapeError, encode, fail, ok
from .functors import NormalPseudofunctor, compose_pseudofunctors


def _parallel(F: NormalPseudofunctor, G: NormalPseudofunctor) -> bool:
    return F.source == G.source and F.target == G.target


# -- icons ----------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Icon:
    """An icon ``F ⇒ G``: one 2-cell ``α_f: Ff ⇒ Gf`` per 1-cell ``f``."""

    source: NormalPseudofunctor
    target: NormalPseudofunctor
    components: Mapping[str, str]

    def __getitem__(self, f: str) -> str:
        return self.components[f]

    def key(self):
        return tuple(sorted(self.components.items()))

    def __eq__(self, other):
        return (isinstance(other, Icon) and self.key() == other.key()
                and self.source == other.source and self.target == other.target)

    def __hash__(self):
        return hash(self.key())

    def name(self) -> str:
        ids = set(self.source.source.identity1.values())
        return encode({f: a for f, a in self.components.items() if f not in ids})

    def hom_component(self, x: str, y: str) -> CatNatTrans:
        """The natural transformation ``F_{x,y} ⇒ G_{x,y}``."""
        F, G = self.source, self.target
        return CatNatTrans(F.hom_functor(x, y), G.hom_functor(x, y),
                           {f: self.components[f] for f in F.source.hom(x, y).objects})


def identity_icon(F: NormalPseudofunctor) -> Icon:
    t = F.target
    return Icon(F, F, {f: t.id2(F.on1(f)) for f in F.source.cells1})


def validate_icon(i: Icon) -> CheckReport:
    """Object agreement, typing, naturality, unit and composition axioms."""
    F, G = i.source, i.target
    if not _parallel(F, G):
        return fail("icon endpoints are not parallel", {"reason": "source/target bicategories differ"})
    A, B = F.source, F.target
    for x in A.objects:
        if F.ob(x) != G.ob(x):
            return fail("endpoints disagree on objects", {"object": x})
    for f in A.cells1:
        a = i.components.get(f)
        if a is None or not B.is_cell2(a) or B.dom2(a) != F.on1(f) or B.cod2(a) != G.on1(f):
            return fail("component missing or ill-typed", {"1-cell": f})
    for t in A.cells2:
        h = A.hom_of2(t)
        f, f2 = h.src(t), h.tgt(t)
        if B.vcomp(G.on2(t), i[f]) != B.vcomp(i[f2], F.on2(t)):
            return fail("components not natural", {"2-cell": t})
    for x in A.objects:
        if i[A.id1(x)] != B.id2(B.id1(F.ob(x))):
            return fail("unit axiom fails", {"object": x})
    for g, f in A.composable_pairs():
        lhs = B.vcomp(G.phi(g, f), B.comp2(i[g], i[f]))
        rhs = B.vcomp(i[A.comp1(g, f)], F.phi(g, f))
        if lhs != rhs:
            return fail("composition axiom fails", {"pair": [g, f]})
    return ok()


def icon_vcompose(j: Icon, i: Icon) -> Icon:
    """``j·i``, first ``i``."""
    if i.target != j.source:
        raise ShapeError("icons are not vertically composable")
    t = i.source.target
    return Icon(i.source, j.target, {f: t.vcomp(j[f], i[f]) for f in i.components})


def icon_whisker_left(k: NormalPseudofunctor, i: Icon) -> Icon:
    """``k∗i: kF ⇒ kG``."""
    if k.source != i.source.target:
        raise ShapeError("pseudofunctor does not compose with the icon")
    return Icon(compose_pseudofunctors(k, i.source), compose_pseudofunctors(k, i.target),
                {f: k.on2(a) for f, a in i.components.items()})


def icon_whisker_right(i: Icon, h: NormalPseudofunctor) -> Icon:
    """``i∗h: Fh ⇒ Gh``."""
    if h.target != i.source.source:
        raise ShapeError("pseudofunctor does not compose with the icon")
    return Icon(compose_pseudofunctors(i.source, h), compose_pseudofunctors(i.target, h),
                {f: i[h.on1(f)] for f in h.source.cells1})


def icon_hcompose(beta: Icon, alpha: Icon) -> Icon:
    """``β∗α: HF ⇒ KG`` computed as ``(Kα)·(βF)``."""
    return icon_vcompose(icon_whisker_left(beta.target, alpha), icon_whisker_right(beta, alpha.source))


def enumerate_icons(F: NormalPseudofunctor, G: NormalPseudofunctor, *,
                    limit: int | None = None) -> list[Icon]:
    """All icons ``F ⇒ G`` in canonical order (empty unless objects agree)."""
    if not _parallel(F, G):
        raise ShapeError("icon endpoints are not parallel")
    A, B = F.source, F.target
    if any(F.ob(x) != G.ob(x) for x in A.objects):
        return []
    budget = Budget("icon enumeration", limit)
    cells = list(A.cells1)
    pos = {f: n for n, f in enumerate(cells)}
    ids = {A.id1(x): x for x in A.objects}
    opts = []
    for f in cells:
        if f in ids:
            opts.append([B.id2(F.on1(f))] if F.on1(f) == G.on1(f) else [])
        else:
            opts.append(list(B.hom(*B.ends1(F.on1(f))).hom(F.on1(f), G.on1(f))))
        if not opts[-1]:
            return []
    # checks keyed by the last-assigned participant
    checks: dict[int, list] = {}
    for t in A.cells2:
        h = A.hom_of2(t)
        f, f2 = h.src(t), h.tgt(t)
        checks.setdefault(max(pos[f], pos[f2]), []).append(("nat", t, f, f2))
    for g, f in A.composable_pairs():
        gf = A.comp1(g, f)
        checks.setdefault(max(pos[g], pos[f], pos[gf]), []).append(("comp", g, f, gf))
    comp: dict[str, str] = {}
    out = []

    def good(n):
        for c in checks.get(n, ()):
            if c[0] == "nat":
                _, t, f, f2 = c
                if B.vcomp(G.on2(t), comp[f]) != B.vcomp(comp[f2], F.on2(t)):
                    return False
            else:
                _, g, f, gf = c
                if B.vcomp(G.phi(g, f), B.comp2(comp[g], comp[f])) != B.vcomp(comp[gf], F.phi(g, f)):
                    return False
        return True

    def rec(n):
        if n == len(cells):
            out.append(Icon(F, G, dict(comp)))
            return
        for a in opts[n]:
            budget.tick()
            comp[cells[n]] = a
            if good(n):
                rec(n + 1)
        comp.pop(cells[n], None)

    rec(0)
    return out


# -- 2-natural transformations ---------------------------------------------

@dataclass(frozen=True, eq=False)
class TwoNatTrans:
    """A 2-natural transformation between strict 2-functors."""

    source: NormalPseudofunctor
    target: NormalPseudofunctor
    components: Mapping[str, str]

    def __getitem__(self, x: str) -> str:
        return self.components[x]

    def key(self):
        return tuple(sorted(self.components.items()))

    def __eq__(self, other):
        return (isinstance(other, TwoNatTrans) and self.key() == other.key()
                and self.source == other.source and self.target == other.target)

    def __hash__(self):
        return hash(self.key())

    def name(self) -> str:
        return encode(self.components)


def identity_2nat(F: NormalPseudofunctor) -> TwoNatTrans:
    return TwoNatTrans(F, F, {x: F.target.id1(F.ob(x)) for x in F.source.objects})


def validate_2nat(t: TwoNatTrans) -> CheckReport:
    F, G = t.source, t.target
    if not _parallel(F, G):
        return fail("endpoints are not parallel", {"reason": "source/target bicategories differ"})
    if not (F.is_strict() and G.is_strict()):
        return fail("endpoints are not strict 2-functors", {"reason": "non-identity comparison cell"})
    A, B = F.source, F.target
    for x in A.objects:
        e = t.components.get(x)
        if e is None or not B.is_cell1(e) or B.ends1(e) != (F.ob(x), G.ob(x)):
            return fail("component missing or ill-typed", {"object": x})
    for u in A.cells1:
        x, y = A.ends1(u)
        if B.comp1(t[y], F.on1(u)) != B.comp1(G.on1(u), t[x]):
            return fail("not 1-natural", {"1-cell": u})
    for th in A.cells2:
        x, y = A.ends1(A.dom2(th))
        if B.lwhisker(t[y], F.on2(th)) != B.rwhisker(G.on2(th), t[x]):
            return fail("not 2-natural", {"2-cell": th})
    return ok()


def nat_vcompose(s: TwoNatTrans, t: TwoNatTrans) -> TwoNatTrans:
    """``s·t``, first ``t``."""
    if t.target != s.source:
        raise ShapeError("2-natural transformations are not composable")
    B = t.source.target
    return TwoNatTrans(t.source, s.target, {x: B.comp1(s[x], t[x]) for x in t.components})


def nat_whisker_left(k: NormalPseudofunctor, t: TwoNatTrans) -> TwoNatTrans:
    """``k∗t: kF ⇒ kG``."""
    return TwoNatTrans(compose_pseudofunctors(k, t.source), compose_pseudofunctors(k, t.target),
                       {x: k.on1(e) for x, e in t.components.items()})


def nat_whisker_right(t: TwoNatTrans, h: NormalPseudofunctor) -> TwoNatTrans:
    """``t∗h: Fh ⇒ Gh``."""
    return TwoNatTrans(compose_pseudofunctors(t.source, h), compose_pseudofunctors(t.target, h),
                       {x: t[h.ob(x)] for x in h.source.objects})


def enumerate_2nats(F: NormalPseudofunctor, G: NormalPseudofunctor, *,
                    limit: int | None = None) -> list[TwoNatTrans]:
    if not _parallel(F, G):
        raise ShapeError("endpoints are not parallel")
    A, B = F.source, F.target
    budget = Budget("2-natural transformation enumeration", limit)
    objs = list(A.objects)
    pos = {x: n for n, x in enumerate(objs)}
    checks: dict[int, list[str]] = {}
    for u in A.cells1:
        x, y = A.ends1(u)
        checks.setdefault(max(pos[x], pos[y]), []).append(u)
    comp: dict[str, str] = {}
    out = []

    def good(n):
        for u in checks.get(n, ()):
            x, y = A.ends1(u)
            if B.comp1(comp[y], F.on1(u)) != B.comp1(G.on1(u), comp[x]):
                return False
            h = A.hom(x, y)
            for th in h.morphisms:
                if h.src(th) == u and B.lwhisker(comp[y], F.on2(th)) != B.rwhisker(G.on2(th), comp[x]):
                    return False
        return True

    def rec(n):
        if n == len(objs):
            out.append(TwoNatTrans(F, G, dict(comp)))
            return
        x = objs[n]
        for e in B.hom(F.ob(x), G.ob(x)).objects:
            budget.tick()
            comp[x] = e
            if good(n):
                rec(n + 1)
        comp.pop(x, None)

    rec(0)
    return out


# -- modifications ---------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Modification:
    """A modification ``η ⇛ η'``: one 2-cell ``η_x ⇒ η'_x`` per object."""

    source: TwoNatTrans
    target: TwoNatTrans
    components: Mapping[str, str]

    def __getitem__(self, x: str) -> str:
        return self.components[x]

    def key(self):
        return tuple(sorted(self.components.items()))

    def __eq__(self, other):
        return (isinstance(other, Modification) and self.key() == other.key()
                and self.source == other.source and self.target == other.target)

    def __hash__(self):
        return hash(self.key())

    def name(self) -> str:
        return encode(self.components)


def identity_modification(t: TwoNatTrans) -> Modification:
    B = t.source.target
    return Modification(t, t, {x: B.id2(e) for x, e in t.components.items()})


def validate_modification(m: Modification) -> CheckReport:
    s, t = m.source, m.target
    if s.source != t.source or s.target != t.target:
        return fail("endpoints are not parallel", {"reason": "2-natural transformations differ in type"})
    F, G = s.source, s.target
    A, B = F.source, F.target
    for x in A.objects:
        a = m.components.get(x)
        if a is None or not B.is_cell2(a) or B.dom2(a) != s[x] or B.cod2(a) != t[x]:
            return fail("component missing or ill-typed", {"object": x})
    for u in A.cells1:
        x, y = A.ends1(u)
        if B.rwhisker(m[y], F.on1(u)) != B.lwhisker(G.on1(u), m[x]):
            return fail("modification axiom fails", {"1-cell": u})
    return ok()


def mod_vcompose(n: Modification, m: Modification) -> Modification:
    if m.target != n.source:
        raise ShapeError("modifications are not composable")
    B = m.source.source.target
    return Modification(m.source, n.target, {x: B.vcomp(n[x], m[x]) for x in m.components})


def mod_hcompose(n: Modification, m: Modification) -> Modification:
    """Composite along objects: ``m: s ⇛ s'`` between ``F ⇒ G``, ``n: t ⇛ t'`` between ``G ⇒ H``."""
    if m.source.target != n.source.source:
        raise ShapeError("modifications are not composable along 2-natural transformations")
    B = m.source.source.target
    return Modification(nat_vcompose(n.source, m.source), nat_vcompose(n.target, m.target),
                        {x: B.comp2(n[x], m[x]) for x in m.components})


def mod_whisker_left(k: NormalPseudofunctor, m: Modification) -> Modification:
    return Modification(nat_whisker_left(k, m.source), nat_whisker_left(k, m.target),
                        {x: k.on2(a) for x, a in m.components.items()})


def mod_whisker_right(m: Modification, h: NormalPseudofunctor) -> Modification:
    return Modification(nat_whisker_right(m.source, h), nat_whisker_right(m.target, h),
                        {x: m[h.ob(x)] for x in h.source.objects})


def enumerate_modifications(s: TwoNatTrans, t: TwoNatTrans, *,
                            limit: int | None = None) -> list[Modification]:
    F, G = s.source, s.target
    A, B = F.source, F.target
    budget = Budget("modification enumeration", limit)
    objs = list(A.objects)
    pos = {x: n for n, x in enumerate(objs)}
    checks: dict[int, list[str]] = {}
    for u in A.cells1:
        x, y = A.ends1(u)
        checks.setdefault(max(pos[x], pos[y]), []).append(u)
    comp: dict[str, str] = {}
    out = []

    def rec(n):
        if n == len(objs):
            out.append(Modification(s, t, dict(comp)))
            return
        x = objs[n]
        for a in B.hom(F.ob(x), G.ob(x)).hom(s[x], t[x]):
            budget.tick()
            comp[x] = a
            if all(B.rwhisker(comp[A.tgt1(u)], F.on1(u)) == B.lwhisker(G.on1(u), comp[A.src1(u)])
                   for u in checks.get(n, ())):
                rec(n + 1)
        comp.pop(x, None)

    rec(0)
    return out
