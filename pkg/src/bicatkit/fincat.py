"""Finite categories given by explicit composition tables.

Everything here is exhaustive: functors and natural transformations are
enumerated by backtracking, and universal properties are decided by
counting.  Identifiers are strings; every enumeration and every witness
follows their lexicographic order.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Mapping, Sequence

from .report import Budget, CheckReport, ShapeError, encode, fail, ok


class FinCat:
    """A finite category.

    ``arrows`` maps every morphism (identities included) to its
    ``(source, target)`` pair, ``identities`` maps objects to their
    identity morphism and ``composition`` maps ``(g, f)`` to ``g∘f``.
    The constructor does not check the axioms; use :func:`validate_fincat`.
    """

    __slots__ = ("objects", "arrows", "identities", "composition",
                 "morphisms", "_hom", "_key", "_inverse", "_ids")

    def __init__(self, objects: Iterable[str], arrows: Mapping[str, tuple[str, str]],
                 identities: Mapping[str, str], composition: Mapping[tuple[str, str], str]):
        self.objects = tuple(sorted(objects))
        self.arrows = {m: (s, t) for m, (s, t) in arrows.items()}
        self.identities = dict(identities)
        self.composition = {(g, f): h for (g, f), h in composition.items()}
        self.morphisms = tuple(sorted(self.arrows))
        hom: dict[tuple[str, str], list[str]] = {}
        for m in self.morphisms:
            hom.setdefault(self.arrows[m], []).append(m)
        self._hom = {k: tuple(v) for k, v in hom.items()}
        self._key = None
        self._inverse: dict[str, str | None] = {}
        self._ids = frozenset(self.identities.values())

    @classmethod
    def make(cls, objects: Iterable[str], arrows: Mapping[str, tuple[str, str]] | None = None,
             composition: Mapping[tuple[str, str], str] | None = None,
             identity_prefix: str = "id_") -> "FinCat":
        """Build a category, adding identities ``id_x`` and their unit laws.

        Only composites of two non-identity morphisms need to be listed.
        """
        objects = list(objects)
        ids = {x: identity_prefix + x for x in objects}
        all_arrows = {ids[x]: (x, x) for x in objects}
        all_arrows.update(arrows or {})
        comp = dict(composition or {})
        for m, (s, t) in all_arrows.items():
            comp.setdefault((ids[t], m), m)
            comp.setdefault((m, ids[s]), m)
        return cls(objects, all_arrows, ids, comp)

    def key(self):
        if self._key is None:
            self._key = (self.objects, tuple(sorted(self.arrows.items())),
                         tuple(sorted(self.identities.items())),
                         tuple(sorted(self.composition.items())))
        return self._key

    def __eq__(self, other):
        if self is other:
            return True
        return isinstance(other, FinCat) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"FinCat(objects={list(self.objects)}, morphisms={list(self.morphisms)})"

    def src(self, m: str) -> str:
        return self.arrows[m][0]

    def tgt(self, m: str) -> str:
        return self.arrows[m][1]

    def identity(self, x: str) -> str:
        return self.identities[x]

    def is_identity(self, m: str) -> bool:
        return m in self._ids

    def hom(self, x: str, y: str) -> tuple[str, ...]:
        return self._hom.get((x, y), ())

    def compose(self, g: str, f: str) -> str:
        """``g∘f``; raises ``KeyError`` when the table has no entry."""
        return self.composition[(g, f)]

    def inverse(self, m: str) -> str | None:
        if m not in self._inverse:
            s, t = self.arrows[m]
            found = None
            for n in self.hom(t, s):
                if (self.composition.get((n, m)) == self.identities.get(s)
                        and self.composition.get((m, n)) == self.identities.get(t)):
                    found = n
                    break
            self._inverse[m] = found
        return self._inverse[m]

    def is_iso(self, m: str) -> bool:
        return self.inverse(m) is not None

    def isomorphic(self, x: str, y: str) -> bool:
        return any(self.is_iso(m) for m in self.hom(x, y))


def validate_fincat(c: FinCat) -> CheckReport:
    """Check every category axiom, reporting the first violation."""
    obs = set(c.objects)
    for m in c.morphisms:
        s, t = c.arrows[m]
        if s not in obs or t not in obs:
            return fail("morphism endpoint is not an object", {"morphism": m})
    for x in c.objects:
        i = c.identities.get(x)
        if i is None or i not in c.arrows:
            return fail("missing identity", {"object": x})
        if c.arrows[i] != (x, x):
            return fail("identity has wrong endpoints", {"object": x, "identity": i})
    for (g, f), h in sorted(c.composition.items()):
        if f not in c.arrows or g not in c.arrows or c.tgt(f) != c.src(g):
            return fail("composition entry for a non-composable pair", {"pair": [g, f]})
        if h not in c.arrows or c.arrows[h] != (c.src(f), c.tgt(g)):
            return fail("composite has wrong endpoints", {"pair": [g, f], "composite": h})
    for f in c.morphisms:
        for g in c.morphisms:
            if c.tgt(f) == c.src(g) and (g, f) not in c.composition:
                return fail("composition undefined on a composable pair", {"pair": [g, f]})
    for f in c.morphisms:
        s, t = c.arrows[f]
        if c.compose(c.identity(t), f) != f or c.compose(f, c.identity(s)) != f:
            return fail("unit law fails", {"morphism": f})
    out: dict[str, list[str]] = {}
    for m in c.morphisms:
        out.setdefault(c.src(m), []).append(m)
    for f in c.morphisms:
        for g in out.get(c.tgt(f), ()):
            gf = c.compose(g, f)
            for h in out.get(c.tgt(g), ()):
                if c.compose(c.compose(h, g), f) != c.compose(h, gf):
                    return fail("associativity fails", {"triple": [h, g, f]})
    return ok()


# -- small standard categories -------------------------------------------

def terminal_category() -> FinCat:
    return FinCat.make(["*"])


def empty_category() -> FinCat:
    return FinCat([], {}, {}, {})


def discrete_category(objects: Iterable[str]) -> FinCat:
    return FinCat.make(objects)


def walking_arrow() -> FinCat:
    """The category 0 → 1."""
    return FinCat.make(["0", "1"], {"f": ("0", "1")})


def walking_iso() -> FinCat:
    """Two objects and a pair of inverse isomorphisms i: 0 → 1, j: 1 → 0."""
    return FinCat.make(["0", "1"], {"i": ("0", "1"), "j": ("1", "0")},
                       {("j", "i"): "id_0", ("i", "j"): "id_1"})


def poset_category(elements: Sequence[str], leq: Iterable[tuple[str, str]]) -> FinCat:
    """Category of a finite poset; ``leq`` may be any relation whose
    reflexive-transitive closure is the order."""
    elements = list(elements)
    order = {(a, a) for a in elements} | set(leq)
    changed = True
    while changed:
        changed = False
        for (a, b) in list(order):
            for (c, d) in list(order):
                if b == c and (a, d) not in order:
                    order.add((a, d))
                    changed = True
    arrows = {f"{a}<={b}": (a, b) for (a, b) in order if a != b}
    name = {(a, b): f"{a}<={b}" if a != b else f"id_{a}" for (a, b) in order}
    comp = {}
    for (a, b) in order:
        for (b2, c) in order:
            if b == b2:
                comp[(name[(b, c)], name[(a, b)])] = name[(a, c)]
    return FinCat.make(elements, arrows, comp)


def monoid_category(elements: Sequence[str], unit: str, table: Mapping[tuple[str, str], str]) -> FinCat:
    """One-object category of a monoid; ``table[(a, b)]`` is ``a·b``."""
    arrows = {m: ("*", "*") for m in elements}
    comp = {(a, b): table[(a, b)] if (a, b) in table else _unit_product(a, b, unit)
            for a in elements for b in elements}
    return FinCat(["*"], arrows, {"*": unit}, comp)


def _unit_product(a, b, unit):
    if a == unit:
        return b
    if b == unit:
        return a
    raise KeyError((a, b))


def product_category(c: FinCat, d: FinCat) -> FinCat:
    pair = lambda u, v: f"({u},{v})"
    objects = [pair(x, y) for x in c.objects for y in d.objects]
    arrows = {pair(f, g): (pair(c.src(f), d.src(g)), pair(c.tgt(f), d.tgt(g)))
              for f in c.morphisms for g in d.morphisms}
    ids = {pair(x, y): pair(c.identity(x), d.identity(y)) for x in c.objects for y in d.objects}
    comp = {}
    for (f2, f1), f in c.composition.items():
        for (g2, g1), g in d.composition.items():
            comp[(pair(f2, g2), pair(f1, g1))] = pair(f, g)
    return FinCat(objects, arrows, ids, comp)


def disjoint_union(c: FinCat, d: FinCat, tags: tuple[str, str] = ("L", "R")) -> FinCat:
    tag = lambda t, u: f"{t}.{u}"
    a, b = tags
    objects = [tag(a, x) for x in c.objects] + [tag(b, x) for x in d.objects]
    arrows = {tag(a, m): (tag(a, s), tag(a, t)) for m, (s, t) in c.arrows.items()}
    arrows.update({tag(b, m): (tag(b, s), tag(b, t)) for m, (s, t) in d.arrows.items()})
    ids = {tag(a, x): tag(a, i) for x, i in c.identities.items()}
    ids.update({tag(b, x): tag(b, i) for x, i in d.identities.items()})
    comp = {(tag(a, g), tag(a, f)): tag(a, h) for (g, f), h in c.composition.items()}
    comp.update({(tag(b, g), tag(b, f)): tag(b, h) for (g, f), h in d.composition.items()})
    return FinCat(objects, arrows, ids, comp)


def path_components(c: FinCat) -> list[tuple[str, ...]]:
    """Connected components of the underlying graph, by union-find.

    Components are sorted tuples, ordered by their least object.
    """
    parent = {x: x for x in c.objects}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for m in c.morphisms:
        a, b = find(c.src(m)), find(c.tgt(m))
        if a != b:
            parent[max(a, b)] = min(a, b)
    groups: dict[str, list[str]] = {}
    for x in c.objects:
        groups.setdefault(find(x), []).append(x)
    return sorted(tuple(sorted(g)) for g in groups.values())


def full_subcategory(c: FinCat, objects: Iterable[str]) -> FinCat:
    keep = set(objects)
    arrows = {m: st for m, st in c.arrows.items() if st[0] in keep and st[1] in keep}
    ids = {x: c.identities[x] for x in keep}
    comp = {k: h for k, h in c.composition.items() if k[0] in arrows and k[1] in arrows}
    return FinCat(keep, arrows, ids, comp)


# -- functors and natural transformations --------------------------------

@dataclass(frozen=True, eq=False)
class CatFunctor:
    source: FinCat
    target: FinCat
    objects: Mapping[str, str]
    morphisms: Mapping[str, str]

    def ob(self, x: str) -> str:
        return self.objects[x]

    def mor(self, m: str) -> str:
        return self.morphisms[m]

    def key(self):
        return (tuple(sorted(self.objects.items())), tuple(sorted(self.morphisms.items())))

    def __eq__(self, other):
        return (isinstance(other, CatFunctor) and self.key() == other.key()
                and self.source == other.source and self.target == other.target)

    def __hash__(self):
        return hash(self.key())

    def name(self) -> str:
        return encode(self.objects, {m: v for m, v in self.morphisms.items()
                                     if not self.source.is_identity(m)})

    def __repr__(self):
        return f"CatFunctor{self.name()}"


def identity_functor(c: FinCat) -> CatFunctor:
    return CatFunctor(c, c, {x: x for x in c.objects}, {m: m for m in c.morphisms})


def constant_functor(c: FinCat, d: FinCat, x: str) -> CatFunctor:
    return CatFunctor(c, d, {j: x for j in c.objects},
                      {m: d.identity(x) for m in c.morphisms})


def compose_functors(g: CatFunctor, f: CatFunctor) -> CatFunctor:
    """``g∘f``."""
    if f.target != g.source:
        raise ShapeError("functors are not composable")
    return CatFunctor(f.source, g.target, {x: g.objects[y] for x, y in f.objects.items()},
                      {m: g.morphisms[n] for m, n in f.morphisms.items()})


def validate_functor(f: CatFunctor) -> CheckReport:
    c, d = f.source, f.target
    for x in c.objects:
        if f.objects.get(x) not in d.identities:
            return fail("object map undefined or off-target", {"object": x})
    for m in c.morphisms:
        n = f.morphisms.get(m)
        if n not in d.arrows:
            return fail("morphism map undefined or off-target", {"morphism": m})
        if d.arrows[n] != (f.objects[c.src(m)], f.objects[c.tgt(m)]):
            return fail("endpoints not preserved", {"morphism": m})
    for x in c.objects:
        if f.morphisms[c.identity(x)] != d.identity(f.objects[x]):
            return fail("identity not preserved", {"object": x})
    for (g, h), gh in sorted(c.composition.items()):
        if d.compose(f.morphisms[g], f.morphisms[h]) != f.morphisms[gh]:
            return fail("composition not preserved", {"pair": [g, h]})
    return ok()


def is_isomorphism_cat(f: CatFunctor) -> CheckReport:
    c, d = f.source, f.target
    seen: dict[str, str] = {}
    for x in c.objects:
        y = f.objects[x]
        if y in seen:
            return fail("not injective on objects", {"objects": [seen[y], x]})
        seen[y] = x
    for y in d.objects:
        if y not in seen:
            return fail("not surjective on objects", {"object": y})
    seen = {}
    for m in c.morphisms:
        n = f.morphisms[m]
        if n in seen:
            return fail("not injective on morphisms", {"morphisms": [seen[n], m]})
        seen[n] = m
    for n in d.morphisms:
        if n not in seen:
            return fail("not surjective on morphisms", {"morphism": n})
    return ok()


@dataclass(frozen=True, eq=False)
class CatNatTrans:
    source: CatFunctor
    target: CatFunctor
    components: Mapping[str, str]

    def __getitem__(self, x: str) -> str:
        return self.components[x]

    def key(self):
        return tuple(sorted(self.components.items()))

    def __eq__(self, other):
        return (isinstance(other, CatNatTrans) and self.key() == other.key()
                and self.source == other.source and self.target == other.target)

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"CatNatTrans{encode(self.components)}"


def identity_nat(f: CatFunctor) -> CatNatTrans:
    return CatNatTrans(f, f, {x: f.target.identity(f.objects[x]) for x in f.source.objects})


def vcompose_nat(beta: CatNatTrans, alpha: CatNatTrans) -> CatNatTrans:
    """``beta·alpha`` for ``alpha: F ⇒ G`` and ``beta: G ⇒ H``."""
    d = alpha.source.target
    return CatNatTrans(alpha.source, beta.target,
                       {x: d.compose(beta[x], alpha[x]) for x in alpha.source.source.objects})


def whisker_nat_left(h: CatFunctor, alpha: CatNatTrans) -> CatNatTrans:
    """``h·alpha : h∘F ⇒ h∘G``."""
    return CatNatTrans(compose_functors(h, alpha.source), compose_functors(h, alpha.target),
                       {x: h.morphisms[m] for x, m in alpha.components.items()})


def whisker_nat_right(alpha: CatNatTrans, k: CatFunctor) -> CatNatTrans:
    """``alpha·k : F∘k ⇒ G∘k``."""
    return CatNatTrans(compose_functors(alpha.source, k), compose_functors(alpha.target, k),
                       {x: alpha[k.objects[x]] for x in k.source.objects})


def validate_nat_trans(a: CatNatTrans) -> CheckReport:
    f, g = a.source, a.target
    c, d = f.source, f.target
    if g.source != c or g.target != d:
        return fail("functors are not parallel", {"source": f.name(), "target": g.name()})
    for x in c.objects:
        m = a.components.get(x)
        if m not in d.arrows or d.arrows[m] != (f.objects[x], g.objects[x]):
            return fail("component missing or ill-typed", {"object": x})
    for m in c.morphisms:
        s, t = c.arrows[m]
        if d.compose(a[t], f.morphisms[m]) != d.compose(g.morphisms[m], a[s]):
            return fail("naturality square fails", {"morphism": m})
    return ok()


def same_functor(f: CatFunctor, g: CatFunctor) -> bool:
    return f.key() == g.key()


# -- enumeration ---------------------------------------------------------

def enumerate_functors(c: FinCat, d: FinCat, *, fixed_objects: Mapping[str, str] | None = None,
                       fixed_morphisms: Mapping[str, str] | None = None,
                       limit: int | None = None) -> list[CatFunctor]:
    """All functors ``c → d`` in lexicographic order of their assignments.

    ``fixed_objects``/``fixed_morphisms`` pin parts of the assignment.
    Raises :class:`SearchLimitExceeded` past the search budget.
    """
    budget = Budget("functor enumeration", limit)
    fixed_objects = dict(fixed_objects or {})
    fixed_morphisms = dict(fixed_morphisms or {})
    nonid = [m for m in c.morphisms if not c.is_identity(m)]
    index = {m: i for i, m in enumerate(nonid)}
    checks: list[list[tuple[str, str, str]]] = [[] for _ in nonid]
    for (g, f), h in c.composition.items():
        if g in index and f in index:
            last = max(index[g], index[f], index.get(h, -1))
            checks[last].append((g, f, h))

    obj_choices = [[fixed_objects[x]] if x in fixed_objects else list(d.objects) for x in c.objects]
    out: list[CatFunctor] = []
    for choice in product(*obj_choices):
        budget.tick()
        obmap = dict(zip(c.objects, choice))
        mor = {c.identity(x): d.identity(obmap[x]) for x in c.objects}
        if any(fixed_morphisms.get(i, v) != v for i, v in mor.items()):
            continue
        cands = []
        for m in nonid:
            s, t = c.arrows[m]
            hom = d.hom(obmap[s], obmap[t])
            if m in fixed_morphisms:
                hom = tuple(n for n in hom if n == fixed_morphisms[m])
            cands.append(hom)
        if any(not h for h in cands):
            continue

        def dfs(i):
            if i == len(nonid):
                out.append(CatFunctor(c, d, dict(obmap), dict(mor)))
                return
            m = nonid[i]
            for n in cands[i]:
                budget.tick()
                mor[m] = n
                if all(d.composition.get((mor[g], mor[f])) == mor[h] for g, f, h in checks[i]):
                    dfs(i + 1)
            del mor[m]

        dfs(0)
    return out


def enumerate_nat_trans(f: CatFunctor, g: CatFunctor, *, limit: int | None = None) -> list[CatNatTrans]:
    """All natural transformations ``f ⇒ g`` in lexicographic order."""
    c, d = f.source, f.target
    if (g.source is not c and g.source != c) or (g.target is not d and g.target != d):
        raise ShapeError("functors are not parallel")
    obs = c.objects
    cands = [d.hom(f.objects[x], g.objects[x]) for x in obs]
    if not all(cands):
        return []
    budget = Budget("natural transformation enumeration", limit)
    index = {x: i for i, x in enumerate(obs)}
    checks: list[list[str]] = [[] for _ in obs]
    for m in c.morphisms:
        s, t = c.arrows[m]
        checks[max(index[s], index[t])].append(m)
    comp: dict[str, str] = {}
    out: list[CatNatTrans] = []

    def natural(m):
        s, t = c.arrows[m]
        return d.compose(comp[t], f.morphisms[m]) == d.compose(g.morphisms[m], comp[s])

    def dfs(i):
        if i == len(obs):
            out.append(CatNatTrans(f, g, dict(comp)))
            return
        for n in cands[i]:
            budget.tick()
            comp[obs[i]] = n
            if all(natural(m) for m in checks[i]):
                dfs(i + 1)
        comp.pop(obs[i], None)

    dfs(0)
    return out


def functor_category(c: FinCat, d: FinCat, *, limit: int | None = None):
    """The category ``[c, d]``.

    Returns ``(category, functors, transformations)`` where the two dicts
    decode object and morphism names.
    """
    functors = enumerate_functors(c, d, limit=limit)
    fname = {}
    objects = []
    by_name = {}
    for fn in functors:
        n = fn.name()
        fname[fn.key()] = n
        objects.append(n)
        by_name[n] = fn
    arrows, ids, nats = {}, {}, {}
    homs = {}
    for s in functors:
        for t in functors:
            ts = enumerate_nat_trans(s, t, limit=limit)
            homs[(fname[s.key()], fname[t.key()])] = ts
            for a in ts:
                n = f"{fname[s.key()]}=>{fname[t.key()]}{encode(a.components)}"
                arrows[n] = (fname[s.key()], fname[t.key()])
                nats[n] = a
    lookup = {(arrows[n], nats[n].key()): n for n in nats}
    for s in functors:
        sn = fname[s.key()]
        ids[sn] = lookup[((sn, sn), identity_nat(s).key())]
    out: dict[str, list[str]] = {}
    for n, (s, _) in arrows.items():
        out.setdefault(s, []).append(n)
    comp = {}
    for an, a in nats.items():
        for bn in out.get(arrows[an][1], []):
            ba = vcompose_nat(nats[bn], a)
            comp[(bn, an)] = lookup[((arrows[an][0], arrows[bn][1]), ba.key())]
    return FinCat(objects, arrows, ids, comp), by_name, nats


# -- Cat-level predicates ------------------------------------------------

def is_isofibration_cat(f: CatFunctor) -> CheckReport:
    """Every isomorphism out of ``f(a)`` lifts to one out of ``a``."""
    c, d = f.source, f.target
    for a in c.objects:
        fa = f.objects[a]
        lifts = {f.morphisms[m] for m in c.morphisms if c.src(m) == a and c.is_iso(m)}
        for beta in d.morphisms:
            if d.src(beta) == fa and d.is_iso(beta) and beta not in lifts:
                return fail("isomorphism does not lift", {"object": a, "iso": beta})
    return ok()


def is_equivalence_cat(f: CatFunctor) -> CheckReport:
    """Full, faithful and essentially surjective, each by enumeration."""
    c, d = f.source, f.target
    for x in c.objects:
        for y in c.objects:
            images = [f.morphisms[m] for m in c.hom(x, y)]
            if len(set(images)) != len(images):
                return fail("not faithful", {"objects": [x, y]})
            missing = sorted(set(d.hom(f.objects[x], f.objects[y])) - set(images))
            if missing:
                return fail("not full", {"objects": [x, y], "morphism": missing[0]})
    image = {f.objects[x] for x in c.objects}
    for y in d.objects:
        if not any(d.isomorphic(z, y) for z in sorted(image)):
            return fail("not essentially surjective", {"object": y})
    return ok()


@dataclass(frozen=True)
class CatAdjunction:
    """``left ⊣ right`` with ``unit: id ⇒ right∘left`` and ``counit: left∘right ⇒ id``."""

    left: CatFunctor
    right: CatFunctor
    unit: CatNatTrans
    counit: CatNatTrans


def check_adjunction_cat(a: CatAdjunction) -> CheckReport:
    """Both triangle identities, componentwise.

    Raises :class:`ShapeError` when the unit or counit has the wrong
    endpoints.
    """
    F, U = a.left, a.right
    b, c = F.source, F.target
    if U.source != c or U.target != b:
        raise ShapeError("left and right adjoints are not opposed")
    uf, fu = compose_functors(U, F), compose_functors(F, U)
    if not (same_functor(a.unit.source, identity_functor(b)) and same_functor(a.unit.target, uf)):
        raise ShapeError("unit must be id ⇒ right∘left")
    if not (same_functor(a.counit.source, fu) and same_functor(a.counit.target, identity_functor(c))):
        raise ShapeError("counit must be left∘right ⇒ id")
    for name, t in (("unit", a.unit), ("counit", a.counit)):
        r = validate_nat_trans(t)
        if not r:
            return fail(f"{name} is not natural: {r.reason}", {name: r.witness})
    for x in b.objects:
        fx = F.objects[x]
        if c.compose(a.counit[fx], F.morphisms[a.unit[x]]) != c.identity(fx):
            return fail("triangle identity fails at left adjoint", {"object": x})
    for y in c.objects:
        uy = U.objects[y]
        if b.compose(U.morphisms[a.counit[y]], a.unit[uy]) != b.identity(uy):
            return fail("triangle identity fails at right adjoint", {"object": y})
    return ok()


def verify_limit_cone_cat(diagram: CatFunctor, apex: str, cone: CatNatTrans) -> CheckReport:
    """Decide whether ``cone: Δapex ⇒ diagram`` is a limit cone.

    Every cone over the diagram must factor through ``cone`` by exactly one
    morphism into the apex.
    """
    j, c = diagram.source, diagram.target
    if not same_functor(cone.source, constant_functor(j, c, apex)) or not same_functor(cone.target, diagram):
        raise ShapeError("cone must be a transformation Δapex ⇒ diagram")
    r = validate_nat_trans(cone)
    if not r:
        return fail(f"cone is not natural: {r.reason}", r.witness)
    for x in c.objects:
        for kappa in enumerate_nat_trans(constant_functor(j, c, x), diagram):
            n = sum(1 for u in c.hom(x, apex)
                    if all(c.compose(cone[i], u) == kappa[i] for i in j.objects))
            if n != 1:
                return fail("cone does not factor uniquely",
                            {"object": x, "cone": dict(kappa.components), "factorizations": n})
    return ok()


def check_absolute_lifting_cat(f: CatFunctor, g: CatFunctor, r: CatFunctor, rho: CatNatTrans) -> CheckReport:
    """Decide whether ``(r, rho: f∘r ⇒ g)`` is an absolute right lifting of
    ``g`` through ``f``.

    Uses the pointwise criterion: for all ``c`` and ``b`` the map
    ``ζ ↦ rho_c ∘ f(ζ)`` from ``B(b, rc)`` to ``A(fb, gc)`` is a bijection.
    """
    a, b, c = f.target, f.source, g.source
    if g.target != a or r.source != c or r.target != b:
        raise ShapeError("lifting problem is ill-shaped")
    if not same_functor(rho.source, compose_functors(f, r)) or not same_functor(rho.target, g):
        raise ShapeError("rho must be a transformation f∘r ⇒ g")
    for x in c.objects:
        rx, gx = r.objects[x], g.objects[x]
        for y in b.objects:
            images = [a.compose(rho[x], f.morphisms[z]) for z in b.hom(y, rx)]
            target = a.hom(f.objects[y], gx)
            if len(set(images)) != len(images):
                return fail("factorization not unique", {"c": x, "b": y})
            missing = sorted(set(target) - set(images))
            if missing:
                return fail("morphism does not factor", {"c": x, "b": y, "morphism": missing[0]})
    return ok()


def probe_absolute_lifting_cat(f: CatFunctor, g: CatFunctor, r: CatFunctor, rho: CatNatTrans,
                               probes: Mapping[str, FinCat]) -> CheckReport:
    """Check the unique-factorization property directly against probe
    categories ``X``: every ``χ: f∘B ⇒ g∘C`` must equal ``rho·C ∘ f·ζ`` for
    exactly one ``ζ: B ⇒ r∘C``."""
    a, b, c = f.target, f.source, g.source
    for pname, x in probes.items():
        for bx in enumerate_functors(x, b):
            fb = compose_functors(f, bx)
            for cx in enumerate_functors(x, c):
                gc, rc = compose_functors(g, cx), compose_functors(r, cx)
                counts: dict = {chi.key(): 0 for chi in enumerate_nat_trans(fb, gc)}
                for zeta in enumerate_nat_trans(bx, rc):
                    pasted = tuple(sorted((i, a.compose(rho[cx.objects[i]], f.morphisms[zeta[i]]))
                                          for i in x.objects))
                    counts[pasted] = counts.get(pasted, 0) + 1
                for chi, n in sorted(counts.items()):
                    if n != 1:
                        return CheckReport(False, witness={"probe": pname, "B": bx.name(), "C": cx.name(),
                                                           "chi": dict(chi), "factorizations": n},
                                           reason="2-cell does not factor uniquely", probes=tuple(probes))
    return CheckReport(True, probes=tuple(probes))
