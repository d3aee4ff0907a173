"""Finite bicategories with explicit coherence cells."""

from __future__ import annotations

from typing import Iterable, Iterator, Mapping

from ..fincat import FinCat, empty_category, validate_fincat
from ..report import CheckReport, fail, ok

Pair = tuple[str, str]


class FinBicat:
    """A finite bicategory.

    ``homs[(x, y)]`` is the hom-category whose objects are the 1-cells
    ``x → y`` and whose morphisms are the 2-cells between them.  1-cell and
    2-cell names are global: a name determines its hom.  ``hcomp1[(g, f)]``
    is ``g∘f`` and ``hcomp2[(β, α)]`` the horizontal composite ``β∗α``.

    Associator and unitor tables are sparse: an absent entry stands for the
    identity 2-cell, which only makes sense where the two composites agree.
    ``labels`` carries decoding data from constructions and is ignored by
    equality.
    """

    def __init__(self, objects: Iterable[str], homs: Mapping[Pair, FinCat],
                 identity1: Mapping[str, str], hcomp1: Mapping[Pair, str],
                 hcomp2: Mapping[Pair, str], associators: Mapping[tuple[str, str, str], str] | None = None,
                 left_unitors: Mapping[str, str] | None = None,
                 right_unitors: Mapping[str, str] | None = None, labels: dict | None = None):
        self.objects = tuple(sorted(objects))
        empty = empty_category()
        self.homs = {(x, y): homs.get((x, y), empty) for x in self.objects for y in self.objects}
        self.identity1 = dict(identity1)
        self.hcomp1 = dict(hcomp1)
        self.hcomp2 = dict(hcomp2)
        self.labels = labels or {}
        self._cell1: dict[str, Pair] = {}
        self._cell2: dict[str, Pair] = {}
        self.duplicates: list[tuple[str, str]] = []
        for xy, h in sorted(self.homs.items()):
            for f in h.objects:
                if f in self._cell1:
                    self.duplicates.append(("1-cell", f))
                self._cell1[f] = xy
            for a in h.morphisms:
                if a in self._cell2:
                    self.duplicates.append(("2-cell", a))
                self._cell2[a] = xy
        self.cells1 = tuple(sorted(self._cell1))
        self.cells2 = tuple(sorted(self._cell2))
        self._out1: dict[str, list[str]] = {x: [] for x in self.objects}
        for f in self.cells1:
            self._out1[self._cell1[f][0]].append(f)
        self.associators = {k: v for k, v in (associators or {}).items()
                            if not self._is_default(v, *self._assoc_ends(*k))}
        self.left_unitors = {f: v for f, v in (left_unitors or {}).items()
                             if not self._is_default(v, *self._lunit_ends(f))}
        self.right_unitors = {f: v for f, v in (right_unitors or {}).items()
                              if not self._is_default(v, *self._runit_ends(f))}
        self._key = None

    # -- normalization helpers -------------------------------------------

    def _assoc_ends(self, h, g, f):
        try:
            return (self.hcomp1[(self.hcomp1[(h, g)], f)], self.hcomp1[(h, self.hcomp1[(g, f)])])
        except KeyError:
            return (None, None)

    def _lunit_ends(self, f):
        try:
            return (self.hcomp1[(self.identity1[self._cell1[f][1]], f)], f)
        except KeyError:
            return (None, None)

    def _runit_ends(self, f):
        try:
            return (self.hcomp1[(f, self.identity1[self._cell1[f][0]])], f)
        except KeyError:
            return (None, None)

    def _is_default(self, cell, dom, cod):
        return dom is not None and dom == cod and dom in self._cell1 and cell == self.id2(dom)

    # -- identity and lookup ---------------------------------------------

    def key(self):
        if self._key is None:
            self._key = (self.objects,
                         tuple((xy, h.key()) for xy, h in sorted(self.homs.items())),
                         tuple(sorted(self.identity1.items())),
                         tuple(sorted(self.hcomp1.items())), tuple(sorted(self.hcomp2.items())),
                         tuple(sorted(self.associators.items())),
                         tuple(sorted(self.left_unitors.items())),
                         tuple(sorted(self.right_unitors.items())))
        return self._key

    def __eq__(self, other):
        return self is other or (isinstance(other, FinBicat) and self.key() == other.key())

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return (f"FinBicat(objects={list(self.objects)}, 1-cells={len(self.cells1)}, "
                f"2-cells={len(self.cells2)})")

    def hom(self, x: str, y: str) -> FinCat:
        return self.homs[(x, y)]

    def ends1(self, f: str) -> Pair:
        return self._cell1[f]

    def src1(self, f: str) -> str:
        return self._cell1[f][0]

    def tgt1(self, f: str) -> str:
        return self._cell1[f][1]

    def hom_of2(self, a: str) -> FinCat:
        return self.homs[self._cell2[a]]

    def dom2(self, a: str) -> str:
        return self.hom_of2(a).src(a)

    def cod2(self, a: str) -> str:
        return self.hom_of2(a).tgt(a)

    def is_cell1(self, f) -> bool:
        return f in self._cell1

    def is_cell2(self, a) -> bool:
        return a in self._cell2

    def out1(self, x: str) -> list[str]:
        return self._out1[x]

    def id1(self, x: str) -> str:
        return self.identity1[x]

    def id2(self, f: str) -> str:
        return self.homs[self._cell1[f]].identity(f)

    def comp1(self, g: str, f: str) -> str:
        return self.hcomp1[(g, f)]

    def comp2(self, b: str, a: str) -> str:
        return self.hcomp2[(b, a)]

    def vcomp(self, b: str, a: str) -> str:
        """Vertical composite ``b·a`` (first ``a``)."""
        return self.hom_of2(a).compose(b, a)

    def vcomp_all(self, *cells: str) -> str:
        """Vertical composite of ``cells`` listed last-applied first."""
        out = cells[-1]
        for c in reversed(cells[:-1]):
            out = self.vcomp(c, out)
        return out

    def lwhisker(self, g: str, a: str) -> str:
        """``g∗a``: the 1-cell ``g`` after the 2-cell ``a``."""
        return self.hcomp2[(self.id2(g), a)]

    def rwhisker(self, b: str, f: str) -> str:
        """``b∗f``: the 2-cell ``b`` after the 1-cell ``f``."""
        return self.hcomp2[(b, self.id2(f))]

    def is_invertible2(self, a: str) -> bool:
        return self.hom_of2(a).is_iso(a)

    def inv2(self, a: str) -> str:
        inv = self.hom_of2(a).inverse(a)
        if inv is None:
            raise KeyError(f"2-cell {a} is not invertible")
        return inv

    def assoc(self, h: str, g: str, f: str) -> str:
        """``a_{h,g,f}: (h∘g)∘f ⇒ h∘(g∘f)``."""
        k = (h, g, f)
        if k in self.associators:
            return self.associators[k]
        dom, cod = self._assoc_ends(h, g, f)
        if dom is None or dom != cod:
            raise KeyError(f"no associator for {k}")
        return self.id2(dom)

    def lunit(self, f: str) -> str:
        """``λ_f: id∘f ⇒ f``."""
        if f in self.left_unitors:
            return self.left_unitors[f]
        dom, cod = self._lunit_ends(f)
        if dom != cod:
            raise KeyError(f"no left unitor for {f}")
        return self.id2(f)

    def runit(self, f: str) -> str:
        """``ρ_f: f∘id ⇒ f``."""
        if f in self.right_unitors:
            return self.right_unitors[f]
        dom, cod = self._runit_ends(f)
        if dom != cod:
            raise KeyError(f"no right unitor for {f}")
        return self.id2(f)

    # -- iteration helpers -----------------------------------------------

    def composable_pairs(self) -> Iterator[Pair]:
        for f in self.cells1:
            for g in self._out1[self.tgt1(f)]:
                yield g, f

    def composable_triples(self) -> Iterator[tuple[str, str, str]]:
        for g, f in self.composable_pairs():
            for h in self._out1[self.tgt1(g)]:
                yield h, g, f

    def composable_quadruples(self) -> Iterator[tuple[str, str, str, str]]:
        for h, g, f in self.composable_triples():
            for k in self._out1[self.tgt1(h)]:
                yield k, h, g, f

    # -- constructors ----------------------------------------------------

    @classmethod
    def strict(cls, objects: Iterable[str], cells1: Mapping[str, Pair] | None = None,
               cells2: Mapping[str, Pair] | None = None, comp1: Mapping[Pair, str] | None = None,
               comp2: Mapping[Pair, str] | None = None, vcomp: Mapping[Pair, str] | None = None,
               labels: dict | None = None) -> "FinBicat":
        """Build a strict 2-category from generating data.

        Identity 1-cells ``id_x`` and identity 2-cells ``id_f`` are added
        together with every composite involving an identity; callers list
        only the remaining composites.
        """
        objects = list(objects)
        ids = {x: f"id_{x}" for x in objects}
        c1 = {ids[x]: (x, x) for x in objects}
        c1.update(cells1 or {})
        cells2 = dict(cells2 or {})
        vcomp = dict(vcomp or {})
        by_hom: dict[Pair, list[str]] = {}
        for f, xy in c1.items():
            by_hom.setdefault(xy, []).append(f)
        homs = {}
        for xy, fs in by_hom.items():
            arrows = {a: dc for a, dc in cells2.items() if c1.get(dc[0]) == xy}
            comp = {k: v for k, v in vcomp.items() if k[1] in arrows}
            homs[xy] = FinCat.make(fs, arrows, comp)
        h1 = dict(comp1 or {})
        for f, (s, t) in c1.items():
            h1.setdefault((ids[t], f), f)
            h1.setdefault((f, ids[s]), f)
        h2 = dict(comp2 or {})
        for (s, t), h in homs.items():
            for a in h.morphisms:
                h2.setdefault((homs[(t, t)].identity(ids[t]), a), a)
                h2.setdefault((a, homs[(s, s)].identity(ids[s])), a)
        for (g, f), gf in h1.items():
            if g in c1 and f in c1 and gf in c1:
                h2.setdefault((homs[c1[g]].identity(g), homs[c1[f]].identity(f)),
                              homs[c1[gf]].identity(gf))
        return cls(objects, homs, ids, h1, h2, labels=labels)

    @classmethod
    def locally_discrete(cls, c: FinCat) -> "FinBicat":
        """A category viewed as a 2-category with only identity 2-cells."""
        homs = {}
        for x in c.objects:
            for y in c.objects:
                if c.hom(x, y):
                    homs[(x, y)] = FinCat.make(c.hom(x, y))
        h2 = {(f"id_{g}", f"id_{f}"): f"id_{gf}" for (g, f), gf in c.composition.items()}
        return cls(c.objects, homs, dict(c.identities), dict(c.composition), h2)

    def underlying_category(self) -> FinCat:
        """Objects and 1-cells with horizontal composition (strict case)."""
        return FinCat(self.objects, dict(self._cell1), dict(self.identity1),
                      {k: v for k, v in self.hcomp1.items()})


def validate_bicat(b: FinBicat) -> CheckReport:
    """Exhaustively check every bicategory axiom.

    Order: hom-categories, naming, identities, horizontal composition and
    its functoriality, coherence cells and their naturality, pentagon,
    triangle.  The first violation is reported with its witness.
    """
    for xy, h in sorted(b.homs.items()):
        r = validate_fincat(h)
        if not r:
            return fail(f"hom-category invalid: {r.reason}", {"hom": list(xy), "detail": r.witness})
    if b.duplicates:
        kind, name = b.duplicates[0]
        return fail(f"{kind} name used in two hom-categories", {kind: name})
    for x in b.objects:
        i = b.identity1.get(x)
        if i is None or b._cell1.get(i) != (x, x):
            return fail("identity 1-cell missing or misplaced", {"object": x})

    try:
        for g, f in b.composable_pairs():
            gf = b.hcomp1.get((g, f))
            if gf is None or b._cell1.get(gf) != (b.src1(f), b.tgt1(g)):
                return fail("horizontal composite of 1-cells missing or misplaced", {"pair": [g, f]})
        for (g, f) in sorted(b.hcomp1):
            if g not in b._cell1 or f not in b._cell1 or b.tgt1(f) != b.src1(g):
                return fail("horizontal composition entry for a non-composable pair", {"pair": [g, f]})
        for beta, alpha in _composable2(b):
            c = b.hcomp2.get((beta, alpha))
            if (c is None or not b.is_cell2(c)
                    or b.dom2(c) != b.comp1(b.dom2(beta), b.dom2(alpha))
                    or b.cod2(c) != b.comp1(b.cod2(beta), b.cod2(alpha))):
                return fail("horizontal composite of 2-cells missing or ill-typed", {"pair": [beta, alpha]})
        for g, f in b.composable_pairs():
            if b.comp2(b.id2(g), b.id2(f)) != b.id2(b.comp1(g, f)):
                return fail("horizontal composition does not preserve identities", {"pair": [g, f]})
        for beta, alpha in _composable2(b):
            hb, ha = b.hom_of2(beta), b.hom_of2(alpha)
            for beta2 in hb.morphisms:
                if hb.src(beta2) != hb.tgt(beta):
                    continue
                for alpha2 in ha.morphisms:
                    if ha.src(alpha2) != ha.tgt(alpha):
                        continue
                    lhs = b.comp2(b.vcomp(beta2, beta), b.vcomp(alpha2, alpha))
                    rhs = b.vcomp(b.comp2(beta2, alpha2), b.comp2(beta, alpha))
                    if lhs != rhs:
                        return fail("interchange law fails",
                                    {"quadruple": [beta2, beta, alpha2, alpha]})
    except KeyError as e:
        return fail("horizontal composition table incomplete", {"missing": str(e)})

    for k in sorted(b.associators):
        if len(k) != 3 or not all(b.is_cell1(u) for u in k):
            return fail("associator entry for unknown 1-cells", {"triple": list(k)})
    for h, g, f in b.composable_triples():
        try:
            a = b.assoc(h, g, f)
        except KeyError:
            return fail("associator missing", {"triple": [h, g, f]})
        dom, cod = b._assoc_ends(h, g, f)
        if not b.is_cell2(a) or b.dom2(a) != dom or b.cod2(a) != cod or not b.is_invertible2(a):
            return fail("associator ill-typed or not invertible", {"triple": [h, g, f]})
    for f in b.cells1:
        for name, getter, ends in (("left unitor", b.lunit, b._lunit_ends),
                                   ("right unitor", b.runit, b._runit_ends)):
            try:
                u = getter(f)
            except KeyError:
                return fail(f"{name} missing", {"1-cell": f})
            dom, cod = ends(f)
            if not b.is_cell2(u) or b.dom2(u) != dom or b.cod2(u) != cod or not b.is_invertible2(u):
                return fail(f"{name} ill-typed or not invertible", {"1-cell": f})
    for k in list(b.left_unitors) + list(b.right_unitors):
        if not b.is_cell1(k):
            return fail("unitor entry for unknown 1-cell", {"1-cell": k})

    r = _check_coherence_naturality(b)
    if not r:
        return r
    for k, h, g, f in b.composable_quadruples():
        lhs = b.vcomp(b.assoc(k, h, b.comp1(g, f)), b.assoc(b.comp1(k, h), g, f))
        rhs = b.vcomp_all(b.lwhisker(k, b.assoc(h, g, f)), b.assoc(k, b.comp1(h, g), f),
                          b.rwhisker(b.assoc(k, h, g), f))
        if lhs != rhs:
            return fail("pentagon fails", {"quadruple": [k, h, g, f]})
    for g, f in b.composable_pairs():
        y = b.tgt1(f)
        lhs = b.rwhisker(b.runit(g), f)
        rhs = b.vcomp(b.lwhisker(g, b.lunit(f)), b.assoc(g, b.id1(y), f))
        if lhs != rhs:
            return fail("triangle identity fails", {"pair": [g, f]})
    return ok()


def _composable2(b: FinBicat) -> Iterator[Pair]:
    for x in b.objects:
        for y in b.objects:
            hxy = b.homs[(x, y)]
            if not hxy.morphisms:
                continue
            for z in b.objects:
                for beta in b.homs[(y, z)].morphisms:
                    for alpha in hxy.morphisms:
                        yield beta, alpha


def _check_coherence_naturality(b: FinBicat) -> CheckReport:
    def theta_out(f):
        h = b.homs[b.ends1(f)]
        return [t for t in h.morphisms if h.src(t) == f]

    for h, g, f in b.composable_triples():
        a = b.assoc(h, g, f)
        gf = b.comp1(g, f)
        for t in theta_out(h):
            h2 = b.hom_of2(t).tgt(t)
            lhs = b.vcomp(b.assoc(h2, g, f), b.rwhisker(b.rwhisker(t, g), f))
            rhs = b.vcomp(b.rwhisker(t, gf), a)
            if lhs != rhs:
                return fail("associator not natural", {"triple": [h, g, f], "2-cell": t})
        for t in theta_out(g):
            g2 = b.hom_of2(t).tgt(t)
            lhs = b.vcomp(b.assoc(h, g2, f), b.rwhisker(b.lwhisker(h, t), f))
            rhs = b.vcomp(b.lwhisker(h, b.rwhisker(t, f)), a)
            if lhs != rhs:
                return fail("associator not natural", {"triple": [h, g, f], "2-cell": t})
        hg = b.comp1(h, g)
        for t in theta_out(f):
            f2 = b.hom_of2(t).tgt(t)
            lhs = b.vcomp(b.assoc(h, g, f2), b.lwhisker(hg, t))
            rhs = b.vcomp(b.lwhisker(h, b.lwhisker(g, t)), a)
            if lhs != rhs:
                return fail("associator not natural", {"triple": [h, g, f], "2-cell": t})
    for f in b.cells1:
        x, y = b.ends1(f)
        for t in theta_out(f):
            f2 = b.hom_of2(t).tgt(t)
            if b.vcomp(b.lunit(f2), b.lwhisker(b.id1(y), t)) != b.vcomp(t, b.lunit(f)):
                return fail("left unitor not natural", {"2-cell": t})
            if b.vcomp(b.runit(f2), b.rwhisker(t, b.id1(x))) != b.vcomp(t, b.runit(f)):
                return fail("right unitor not natural", {"2-cell": t})
    return ok()


def is_strict_2category(b: FinBicat) -> CheckReport:
    """True iff coherence cells are identities and composition is strict."""
    if b.associators:
        k = sorted(b.associators)[0]
        return fail("non-identity associator", {"triple": list(k)})
    if b.left_unitors or b.right_unitors:
        f = sorted(list(b.left_unitors) + list(b.right_unitors))[0]
        return fail("non-identity unitor", {"1-cell": f})
    for h, g, f in b.composable_triples():
        d, c = b._assoc_ends(h, g, f)
        if d is None or d != c:
            return fail("composition not strictly associative", {"triple": [h, g, f]})
    for f in b.cells1:
        x, y = b.ends1(f)
        if b.hcomp1.get((b.id1(y), f)) != f or b.hcomp1.get((f, b.id1(x))) != f:
            return fail("composition not strictly unital", {"1-cell": f})
    return ok()


def is_equivalence_1cell(b: FinBicat, f: str) -> str | None:
    """A pseudo-inverse of ``f`` if one exists (first in name order)."""
    x, y = b.ends1(f)
    for g in b.hom(y, x).objects:
        if (b.hom(x, x).isomorphic(b.comp1(g, f), b.id1(x))
                and b.hom(y, y).isomorphic(b.comp1(f, g), b.id1(y))):
            return g
    return None


def are_objects_equivalent(b: FinBicat, x: str, y: str) -> CheckReport:
    """Search for ``f: x → y`` and ``g: y → x`` with ``gf ≅ id`` and ``fg ≅ id``."""
    for f in b.hom(x, y).objects:
        g = is_equivalence_1cell(b, f)
        if g is not None:
            return CheckReport(True, details={"f": f, "g": g})
    return fail("no equivalence between the objects", {"objects": [x, y]})


def are_objects_isomorphic(b: FinBicat, x: str, y: str) -> CheckReport:
    """Search for strictly inverse 1-cells ``x ⇄ y``."""
    for f in b.hom(x, y).objects:
        for g in b.hom(y, x).objects:
            if b.comp1(g, f) == b.id1(x) and b.comp1(f, g) == b.id1(y):
                return CheckReport(True, details={"f": f, "g": g})
    return fail("no isomorphism between the objects", {"objects": [x, y]})
