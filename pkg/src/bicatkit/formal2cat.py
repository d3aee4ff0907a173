"""Formal category theory in 2-Cat: equivalences, adjunctions, terminal objects, liftings, limits."""

from __future__ import annotations

from dataclasses import dataclass

from .bicat import (FinBicat, NormalPseudofunctor, TwoNatTrans, are_objects_equivalent,
                    are_objects_isomorphic, compose_pseudofunctors, constant_pseudofunctor,
                    enumerate_2nats, enumerate_pseudofunctors, identity_2nat,
                    identity_pseudofunctor, nat_vcompose, nat_whisker_left, nat_whisker_right,
                    validate_2nat, validate_normal_pseudofunctor)
from .constructions import cotensor_2cat, terminal_bicat
from .fincat import CatFunctor, discrete_category, is_isomorphism_cat
from .probes import TWO_CAT, LiftingProblem, probe_lifting
from .report import CheckReport, ShapeError, fail, ok


def _strict(F: NormalPseudofunctor, what: str):
    if not F.is_strict():
        raise ShapeError(f"{what} is not a strict 2-functor")


def is_invertible_2nat(t: TwoNatTrans) -> bool:
    B = t.source.target
    u = B.underlying_category()
    return all(u.is_iso(e) for e in t.components.values())


def _same_nat(s: TwoNatTrans, t: TwoNatTrans) -> bool:
    return s.key() == t.key()


# -- equivalences ------------------------------------------------------------

def check_2equivalence(F: NormalPseudofunctor, *, synthesize: bool = True) -> CheckReport:
    """Decide whether a strict 2-functor is a 2-equivalence.

    The verdict needs every hom-functor to be an isomorphism of categories
    and every object of the target to be isomorphic (by strictly inverse
    1-cells) to an object in the image.  Surjectivity merely up to
    equivalence is also reported but does not suffice: see
    ``fixture_codiscrete_equivalence``.  When the verdict is true the
    inverse 2-functor and invertible 2-natural transformations are
    synthesized by enumeration.
    """
    _strict(F, "F")
    A, B = F.source, F.target
    for x in A.objects:
        for y in A.objects:
            r = is_isomorphism_cat(F.hom_functor(x, y))
            if not r:
                return fail("hom-functor is not an isomorphism of categories",
                            {"hom": [x, y], "detail": r.witness})
    image = sorted({F.ob(x) for x in A.objects})
    up_to_equiv = all(any(are_objects_equivalent(B, i, b) for i in image) for b in B.objects)
    for b in B.objects:
        if not any(are_objects_isomorphic(B, i, b) for i in image):
            return CheckReport(False, witness={"object": b}, reason="object not isomorphic to any object in the image",
                               details={"surjective_up_to_equivalence": up_to_equiv})
    details = {"surjective_up_to_equivalence": up_to_equiv}
    if synthesize:
        data = synthesize_2equivalence(F)
        if data is None:
            return fail("internal inconsistency: characterization holds but no equivalence data exists",
                        {"functor": F.name()})
        G, eta, eps = data
        details.update(inverse=G.name(), unit=eta.name(), counit=eps.name())
    return CheckReport(True, details=details)


def synthesize_2equivalence(F: NormalPseudofunctor):
    """First ``(G, η: id ≅ GF, ε: FG ≅ id)`` in canonical order, or None."""
    A, B = F.source, F.target
    idA, idB = identity_pseudofunctor(A), identity_pseudofunctor(B)
    for G in enumerate_pseudofunctors(B, A, strict=True):
        GF, FG = compose_pseudofunctors(G, F), compose_pseudofunctors(F, G)
        etas = [t for t in enumerate_2nats(idA, GF) if is_invertible_2nat(t)]
        if not etas:
            continue
        epss = [t for t in enumerate_2nats(FG, idB) if is_invertible_2nat(t)]
        if epss:
            return G, etas[0], epss[0]
    return None


# -- adjunctions -------------------------------------------------------------

@dataclass(frozen=True)
class AdjunctionData:
    """``F ⊣ U`` with ``F: A → B``, ``η: id_A ⇒ UF`` and ``ε: FU ⇒ id_B``.

    In 2-Cat the cells are 2-natural transformations, in Icon icons.
    """

    F: NormalPseudofunctor
    U: NormalPseudofunctor
    eta: object
    eps: object

    def __post_init__(self):
        F, U = self.F, self.U
        if F.source != U.target or F.target != U.source:
            raise ShapeError("F and U are not opposed")
        for name, cell, src, tgt in (("unit", self.eta, identity_pseudofunctor(F.source),
                                      compose_pseudofunctors(U, F)),
                                     ("counit", self.eps, compose_pseudofunctors(F, U),
                                      identity_pseudofunctor(F.target))):
            if cell.source != src or cell.target != tgt:
                raise ShapeError(f"{name} has the wrong endpoints")


def _hom_transpose(a: AdjunctionData, x: str, b: str):
    """The functors ``B(Fx, b) → A(x, Ub)`` and back, as dicts on cells."""
    F, U, eta, eps = a.F, a.U, a.eta, a.eps
    A, B = F.source, F.target
    hB, hA = B.hom(F.ob(x), b), A.hom(x, U.ob(b))
    to_a1 = {k: A.comp1(U.on1(k), eta[x]) for k in hB.objects}
    to_a2 = {t: A.rwhisker(U.on2(t), eta[x]) for t in hB.morphisms}
    to_b1 = {h: B.comp1(eps[b], F.on1(h)) for h in hA.objects}
    to_b2 = {t: B.lwhisker(eps[b], F.on2(t)) for t in hA.morphisms}
    return hB, hA, (to_a1, to_a2), (to_b1, to_b2)


def check_2adjunction(a: AdjunctionData) -> CheckReport:
    """Evaluate both characterizations of a 2-adjunction and demand agreement.

    (1) the triangle identities, computed with whiskering of 2-natural
    transformations; (2) transposition ``k ↦ Uk·η`` and ``h ↦ ε·Fh`` are
    inverse isomorphisms ``B(Fx, b) ≅ A(x, Ub)`` for every ``x`` and ``b``.
    """
    for name, G in (("F", a.F), ("U", a.U)):
        _strict(G, name)
    for name, t in (("unit", a.eta), ("counit", a.eps)):
        r = validate_2nat(t)
        if not r:
            raise ShapeError(f"{name} is not a 2-natural transformation: {r.reason}")
    F, U = a.F, a.U
    tri, tri_w = True, None
    left = nat_vcompose(nat_whisker_right(a.eps, F), nat_whisker_left(F, a.eta))
    if not _same_nat(left, identity_2nat(F)):
        x = next(x for x in F.source.objects if left[x] != identity_2nat(F)[x])
        tri, tri_w = False, {"triangle": "εF·Fη", "object": x, "got": left[x],
                             "expected": identity_2nat(F)[x]}
    else:
        right = nat_vcompose(nat_whisker_left(U, a.eps), nat_whisker_right(a.eta, U))
        if not _same_nat(right, identity_2nat(U)):
            y = next(y for y in U.source.objects if right[y] != identity_2nat(U)[y])
            tri, tri_w = False, {"triangle": "Uε·ηU", "object": y, "got": right[y],
                                 "expected": identity_2nat(U)[y]}
    homs, homs_w = True, None
    for x in F.source.objects:
        for b in F.target.objects:
            hB, hA, (ta1, ta2), (tb1, tb2) = _hom_transpose(a, x, b)
            bad = ([k for k in hB.objects if tb1.get(ta1[k]) != k]
                   + [t for t in hB.morphisms if tb2.get(ta2[t]) != t]
                   + [h for h in hA.objects if ta1.get(tb1[h]) != h]
                   + [t for t in hA.morphisms if ta2.get(tb2[t]) != t])
            if bad:
                homs, homs_w = False, {"objects": [x, b], "cell": bad[0]}
                break
        if not homs:
            break
    details = {"triangles": tri, "hom_isomorphisms": homs}
    if tri != homs:
        return CheckReport(False, witness={"triangles": tri_w, "hom_isomorphisms": homs_w},
                           reason="internal inconsistency: characterizations disagree", details=details)
    if not tri:
        return CheckReport(False, witness=tri_w, reason="triangle identity fails", details=details)
    return CheckReport(True, details=details)


# -- terminal and initial objects -------------------------------------------

def _terminal_adjunction(A: FinBicat, t: str, initial: bool = False):
    one = terminal_bicat()
    bang = constant_pseudofunctor(A, one, "*")
    tt = constant_pseudofunctor(one, A, t)
    idA = identity_pseudofunctor(A)
    if not initial:
        eta = TwoNatTrans(idA, compose_pseudofunctors(tt, bang),
                          {x: A.hom(x, t).objects[0] for x in A.objects})
        eps = identity_2nat(compose_pseudofunctors(bang, tt))
        eps = TwoNatTrans(eps.source, identity_pseudofunctor(one), eps.components)
        return AdjunctionData(bang, tt, eta, eps)
    eta = identity_2nat(compose_pseudofunctors(bang, tt))
    eta = TwoNatTrans(identity_pseudofunctor(one), eta.target, eta.components)
    eps = TwoNatTrans(compose_pseudofunctors(tt, bang), idA,
                      {x: A.hom(t, x).objects[0] for x in A.objects})
    return AdjunctionData(tt, bang, eta, eps)


def _check_terminal(A: FinBicat, t: str, initial: bool) -> CheckReport:
    if t not in A.objects:
        raise ShapeError(f"{t!r} is not an object")
    word = "initial" if initial else "terminal"
    for x in A.objects:
        h = A.hom(t, x) if initial else A.hom(x, t)
        if len(h.objects) != 1:
            return fail("hom-category does not have exactly one 1-cell",
                        {"object": x, "1-cells": len(h.objects)})
        if len(h.morphisms) != 1:
            return fail("the unique 1-cell has a non-identity endomorphism",
                        {"object": x, "2-cell": sorted(m for m in h.morphisms if not h.is_identity(m))[0]})
    adj = _terminal_adjunction(A, t, initial)
    r = check_2adjunction(adj)
    if not r:
        return fail(f"internal inconsistency: {word} adjunction fails", r.witness)
    return CheckReport(True, details={"adjunction": "! ⊣ t" if not initial else "t ⊣ !"})


def check_2terminal(A: FinBicat, t: str) -> CheckReport:
    """Every hom ``A(a, t)`` is the terminal category; then ``! ⊣ t`` is built and checked."""
    return _check_terminal(A, t, False)


def check_2initial(A: FinBicat, t: str) -> CheckReport:
    return _check_terminal(A, t, True)


# -- absolute lifting ----------------------------------------------------------

def probe_absolute_lifting_2cat(p: LiftingProblem, probes=None) -> CheckReport:
    """Semi-decision: no probe ``X`` in the battery refutes the lifting property."""
    r = validate_2nat(p.rho)
    if not r:
        raise ShapeError(f"rho is not a 2-natural transformation: {r.reason}")
    return probe_lifting(TWO_CAT, p, probes)


def check_enriched_lifting(p: LiftingProblem, probes=None) -> CheckReport:
    """Semi-decision for the enriched property: pasting with ``rho`` is an
    isomorphism of hom-categories of 2-functors, 2-natural transformations
    and modifications, for every probe in the battery."""
    r = validate_2nat(p.rho)
    if not r:
        raise ShapeError(f"rho is not a 2-natural transformation: {r.reason}")
    return probe_lifting(TWO_CAT, p, probes, enriched=True)


# -- limits ------------------------------------------------------------------

def cone_problem(a: FinBicat, j, d: str, ell: str, lam: str, cot=None) -> LiftingProblem:
    """The lifting problem ``λ: Δ∘ℓ ⇒ D`` over ``1``."""
    E, delta = cot if cot is not None else cotensor_2cat(a, j)
    one = terminal_bicat()
    D = constant_pseudofunctor(one, E, d)
    L = constant_pseudofunctor(one, a, ell)
    dl = compose_pseudofunctors(delta, L)
    rho = TwoNatTrans(dl, D, {"*": lam})
    return LiftingProblem(delta, D, L, rho)


def check_2limit(a: FinBicat, j, d: str, ell: str, lam: str, cot=None) -> CheckReport:
    """``λ·Δ(−): A(x, ℓ) → A^J(Δx, D)`` is an isomorphism of categories for all ``x``."""
    E, delta = cot if cot is not None else cotensor_2cat(a, j)
    if d not in E.objects or ell not in a.objects:
        raise ShapeError("diagram or apex is not an object")
    if not E.is_cell1(lam) or E.ends1(lam) != (delta.ob(ell), d):
        raise ShapeError("cone is not a 1-cell Δℓ → D of the cotensor")
    for x in a.objects:
        h = a.hom(x, ell)
        tgt = E.hom(delta.ob(x), d)
        fn = CatFunctor(h, tgt, {u: E.comp1(lam, delta.on1(u)) for u in h.objects},
                        {t: E.lwhisker(lam, delta.on2(t)) for t in h.morphisms})
        r = is_isomorphism_cat(fn)
        if not r:
            return fail("cone does not induce an isomorphism of hom-categories",
                        {"object": x, "detail": r.witness})
    return ok()


def find_2limit(a: FinBicat, j, d: str, cot=None):
    """First ``(ℓ, λ)`` in canonical order that is a 2-limit of ``d``, or None."""
    E, delta = cot if cot is not None else cotensor_2cat(a, j)
    for ell in a.objects:
        for lam in E.hom(delta.ob(ell), d).objects:
            if check_2limit(a, j, d, ell, lam, cot=(E, delta)):
                return ell, lam
    return None


def check_all_limits_2cat(a: FinBicat, j) -> CheckReport:
    """Build a right 2-adjoint ``lim`` to ``Δ: A → A^J`` from chosen 2-limits.

    Fails with the first diagram that has no 2-limit.  Otherwise ``lim`` is
    assembled from the hom-isomorphisms and the resulting adjunction is
    checked with ``check_2adjunction``.
    """
    E, delta = cot = cotensor_2cat(a, j)
    chosen = {}
    for d in E.objects:
        found = find_2limit(a, j, d, cot=cot)
        if found is None:
            return fail("diagram has no 2-limit", {"diagram": d})
        chosen[d] = found
    # transpose cells of E into cells of a through the chosen limits
    c1, c2 = {}, {}
    for d, (ell, lam) in chosen.items():
        for d2, (ell2, lam2) in chosen.items():
            h, hE = a.hom(ell, ell2), E.hom(d, d2)
            inv1 = {E.comp1(lam2, delta.on1(u)): u for u in h.objects}
            inv2 = {E.lwhisker(lam2, delta.on2(t)): t for t in h.morphisms}
            for s in hE.objects:
                c1[s] = inv1[E.comp1(s, lam)]
            for t in hE.morphisms:
                c2[t] = inv2[E.rwhisker(t, lam)]
    lim = NormalPseudofunctor(E, a, {d: v[0] for d, v in chosen.items()}, c1, c2)
    r = validate_normal_pseudofunctor(lim)
    if not r or not lim.is_strict():
        return fail("internal inconsistency: chosen limits do not assemble into a 2-functor",
                    r.witness if not r else {"reason": "non-identity comparison"})
    limd = compose_pseudofunctors(lim, delta)
    eta = TwoNatTrans(identity_pseudofunctor(a), limd,
                      {x: _unit_component(a, E, delta, chosen, x) for x in a.objects})
    eps = TwoNatTrans(compose_pseudofunctors(delta, lim), identity_pseudofunctor(E),
                      {d: v[1] for d, v in chosen.items()})
    r = check_2adjunction(AdjunctionData(delta, lim, eta, eps))
    if not r:
        return fail("internal inconsistency: Δ ⊣ lim fails", r.witness)
    return CheckReport(True, details={"limits": {d: list(v) for d, v in chosen.items()}})


def _unit_component(a, E, delta, chosen, x):
    ell, lam = chosen[delta.ob(x)]
    target = E.id1(delta.ob(x))
    for u in a.hom(x, ell).objects:
        if E.comp1(lam, delta.on1(u)) == target:
            return u
    raise ShapeError("no unit component")


# -- fixtures ------------------------------------------------------------------

def fixture_subcategory_lifting(invertible: bool = False):
    """An absolute right lifting in 2-Cat that is not enriched.

    ``A`` has objects ``x, a``, 1-cells ``f, g: x → a`` and a non-identity
    2-cell ``alpha: f ⇒ g``; ``A01`` keeps every object and 1-cell but only
    identity 2-cells.  The problem is the identity 2-cell exhibiting
    ``a: 1 → A01`` as a lifting of ``a: 1 → A`` through the inclusion.
    With ``invertible`` set, ``alpha`` gets an inverse ``alpha_inv``.
    """
    cells2 = {"alpha": ("f", "g")}
    vcomp = {}
    if invertible:
        cells2["alpha_inv"] = ("g", "f")
        vcomp = {("alpha_inv", "alpha"): "id_f", ("alpha", "alpha_inv"): "id_g"}
    A = FinBicat.strict(["x", "a"], {"f": ("x", "a"), "g": ("x", "a")}, cells2, vcomp=vcomp)
    A01 = FinBicat.strict(["x", "a"], {"f": ("x", "a"), "g": ("x", "a")})
    inc = NormalPseudofunctor(A01, A, {o: o for o in A01.objects}, {f: f for f in A01.cells1},
                              {t: t for t in A01.cells2})
    one = terminal_bicat()
    g = constant_pseudofunctor(one, A, "a")
    r = constant_pseudofunctor(one, A01, "a")
    rho = identity_2nat(compose_pseudofunctors(inc, r))
    rho = TwoNatTrans(rho.source, g, rho.components)
    return A, A01, LiftingProblem(inc, g, r, rho)


def fixture_product_not_2product():
    """A product that is not a 2-product.

    Objects ``a, p, b`` with 1-cells ``l: p → a`` and ``r: p → b``, each
    carrying one idempotent non-identity endomorphism ``alpha``/``beta``.
    Returns ``(A, J, cotensor, D, cone)`` where ``J`` is the discrete
    category on ``0, 1``, ``D = (a, b)`` and the cone is ``(l, r)``.
    """
    A = FinBicat.strict(["a", "p", "b"], {"l": ("p", "a"), "r": ("p", "b")},
                        {"alpha": ("l", "l"), "beta": ("r", "r")},
                        vcomp={("alpha", "alpha"): "alpha", ("beta", "beta"): "beta"})
    J = discrete_category(["0", "1"])
    E, delta = cot = cotensor_2cat(A, J)
    D = next(d for d in E.objects if E.labels["objects"][d].objects == {"0": "a", "1": "b"})
    lam = next(s for s in E.hom(delta.ob("p"), D).objects
               if dict(E.labels["cells1"][s].components) == {"0": "l", "1": "r"})
    return A, J, cot, D, lam


def fixture_codiscrete_equivalence():
    """Objects equivalent but not isomorphic, in a locally codiscrete 2-category.

    ``f: x → y`` and ``g: y → x`` with ``g∘f = id_x`` and ``f∘g = e``, where
    ``e`` is an idempotent isomorphic to ``id_y`` via ``s``.  The 2-functor
    ``1 → A`` at ``x`` is a hom-isomorphism and surjective up to
    equivalence, yet has no inverse up to 2-natural isomorphism.
    """
    cells1 = {"f": ("x", "y"), "g": ("y", "x"), "e": ("y", "y")}
    cells2 = {"s": ("id_y", "e"), "s_inv": ("e", "id_y")}
    vcomp = {("s_inv", "s"): "id_id_y", ("s", "s_inv"): "id_e"}
    comp1 = {("g", "f"): "id_x", ("f", "g"): "e", ("e", "e"): "e", ("e", "f"): "f", ("g", "e"): "g"}
    # horizontal composites of 2-cells are forced by codiscreteness
    pre = FinBicat.strict(["x", "y"], cells1, cells2, comp1, vcomp=vcomp)
    comp2 = {}
    for (q, p) in _composable_2cells(pre):
        dom = pre.comp1(pre.dom2(q), pre.dom2(p))
        cod = pre.comp1(pre.cod2(q), pre.cod2(p))
        (cell,) = pre.hom(*pre.ends1(dom)).hom(dom, cod)
        comp2[(q, p)] = cell
    A = FinBicat.strict(["x", "y"], cells1, cells2, comp1, comp2, vcomp)
    F = constant_pseudofunctor(terminal_bicat(), A, "x")
    return A, F


def _composable_2cells(b: FinBicat):
    for q in b.cells2:
        for p in b.cells2:
            if b.src1(b.dom2(q)) == b.tgt1(b.dom2(p)):
                yield q, p
