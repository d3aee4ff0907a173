"""Formal category theory in Icon, where every notion is finitely decidable."""

from __future__ import annotations

from .bicat import (FinBicat, Icon, NormalPseudofunctor, compose_pseudofunctors,
                    constant_pseudofunctor, enumerate_icons, enumerate_pseudofunctors,
                    icon_vcompose, icon_whisker_left, icon_whisker_right, identity_icon,
                    identity_pseudofunctor, validate_icon)
from .constructions import cotensor_icon, diagonal_icon, terminal_bicat
from .fincat import (CatAdjunction, CatFunctor, CatNatTrans, FinCat, check_absolute_lifting_cat,
                     check_adjunction_cat, compose_functors, constant_functor, empty_category,
                     identity_functor, is_equivalence_cat, poset_category, verify_limit_cone_cat)
from .formal2cat import AdjunctionData
from .probes import ICON, LiftingProblem, probe_lifting
from .report import CheckReport, ShapeError, fail, ok


def is_invertible_icon(i: Icon) -> bool:
    B = i.source.target
    return all(B.is_invertible2(a) for a in i.components.values())


def _object_bijection(F: NormalPseudofunctor):
    A, B = F.source, F.target
    inv = {}
    for x in A.objects:
        y = F.ob(x)
        if y in inv:
            return None, {"objects": [inv[y], x], "image": y}
        inv[y] = x
    for y in B.objects:
        if y not in inv:
            return None, {"object": y}
    return inv, None


def check_icon_equivalence(F: NormalPseudofunctor, *, synthesize: bool = True) -> CheckReport:
    """Bijective on objects and an equivalence on every hom-category.

    When true, an inverse pseudofunctor and invertible icons are found by
    enumeration.
    """
    inv, w = _object_bijection(F)
    if inv is None:
        return fail("object map is not a bijection", w)
    A = F.source
    for x in A.objects:
        for y in A.objects:
            r = is_equivalence_cat(F.hom_functor(x, y))
            if not r:
                return fail(f"hom-functor is not an equivalence: {r.reason}",
                            {"hom": [x, y], "detail": r.witness})
    details = {}
    if synthesize:
        data = synthesize_icon_equivalence(F, inv)
        if data is None:
            return fail("internal inconsistency: characterization holds but no equivalence data exists",
                        {"functor": F.name()})
        G, eta, eps = data
        details.update(inverse=G.name(), unit=eta.name(), counit=eps.name())
    return CheckReport(True, details=details)


def synthesize_icon_equivalence(F: NormalPseudofunctor, inverse_objects=None):
    """First ``(G, η: id ≅ GF, ε: FG ≅ id)`` with invertible icons, or None."""
    A, B = F.source, F.target
    if inverse_objects is None:
        inverse_objects, _ = _object_bijection(F)
        if inverse_objects is None:
            return None
    idA, idB = identity_pseudofunctor(A), identity_pseudofunctor(B)
    for G in enumerate_pseudofunctors(B, A, fixed_objects=inverse_objects):
        etas = [i for i in enumerate_icons(idA, compose_pseudofunctors(G, F)) if is_invertible_icon(i)]
        if not etas:
            continue
        epss = [i for i in enumerate_icons(compose_pseudofunctors(F, G), idB) if is_invertible_icon(i)]
        if epss:
            return G, etas[0], epss[0]
    return None


def _local_adjunction(a: AdjunctionData, x: str, y: str) -> CatAdjunction:
    """``F_{x,y} ⊣ U_{Fx,Fy}`` with unit and counit read off the icons."""
    F, U = a.F, a.U
    Fh = F.hom_functor(x, y)
    Uh = U.hom_functor(F.ob(x), F.ob(y))
    UF, FU = compose_functors(Uh, Fh), compose_functors(Fh, Uh)
    unit = CatNatTrans(identity_functor(Fh.source), UF, {h: a.eta[h] for h in Fh.source.objects})
    counit = CatNatTrans(FU, identity_functor(Fh.target), {k: a.eps[k] for k in Fh.target.objects})
    return CatAdjunction(Fh, Uh, unit, counit)


def check_icon_adjunction(a: AdjunctionData) -> CheckReport:
    """Evaluate both characterizations of an adjunction in Icon.

    (1) triangle identities of icons; (2) ``F`` and ``U`` are inverse on
    objects and every hom carries the local adjunction ``F_{x,y} ⊣ U``.
    """
    for name, i in (("unit", a.eta), ("counit", a.eps)):
        r = validate_icon(i)
        if not r:
            raise ShapeError(f"{name} is not an icon: {r.reason}")
    F, U = a.F, a.U
    A, B = F.source, F.target
    tri_w = None
    left = icon_vcompose(icon_whisker_right(a.eps, F), icon_whisker_left(F, a.eta))
    idF = identity_icon(F)
    for h in A.cells1:
        if left[h] != idF[h]:
            tri_w = {"triangle": "εF·Fη", "1-cell": h, "got": left[h], "expected": idF[h]}
            break
    if tri_w is None:
        right = icon_vcompose(icon_whisker_left(U, a.eps), icon_whisker_right(a.eta, U))
        idU = identity_icon(U)
        for k in B.cells1:
            if right[k] != idU[k]:
                tri_w = {"triangle": "Uε·ηU", "1-cell": k, "got": right[k], "expected": idU[k]}
                break
    tri = tri_w is None
    local_w = None
    inv, w = _object_bijection(F)
    if inv is None or any(U.ob(y) != inv[y] for y in B.objects):
        local_w = {"objects": w or {"reason": "U is not inverse to F on objects"}}
    else:
        for x in A.objects:
            for y in A.objects:
                r = check_adjunction_cat(_local_adjunction(a, x, y))
                if not r:
                    local_w = {"hom": [x, y], "detail": r.witness}
                    break
            if local_w:
                break
    local = local_w is None
    details = {"triangles": tri, "local_adjunctions": local}
    if tri != local:
        return CheckReport(False, witness={"triangles": tri_w, "local_adjunctions": local_w},
                           reason="internal inconsistency: characterizations disagree", details=details)
    if not tri:
        return CheckReport(False, witness=tri_w, reason="triangle identity fails", details=details)
    return CheckReport(True, details=details)


def synthesize_icon_adjunction(F: NormalPseudofunctor, U: NormalPseudofunctor):
    """First ``(η, ε)`` making ``F ⊣ U`` an adjunction in Icon, or None."""
    idA, idB = identity_pseudofunctor(F.source), identity_pseudofunctor(F.target)
    UF, FU = compose_pseudofunctors(U, F), compose_pseudofunctors(F, U)
    for eta in enumerate_icons(idA, UF):
        for eps in enumerate_icons(FU, idB):
            if check_icon_adjunction(AdjunctionData(F, U, eta, eps)):
                return eta, eps
    return None


def _is_terminal_identity(h: FinCat, t: str) -> CheckReport:
    e = empty_category()
    diagram = CatFunctor(e, h, {}, {})
    cone = CatNatTrans(constant_functor(e, h, t), diagram, {})
    return verify_limit_cone_cat(diagram, t, cone)


def check_icon_terminal(A: FinBicat, t: str) -> CheckReport:
    """A single object ``t`` whose identity 1-cell is terminal in ``A(t,t)``."""
    if t not in A.objects:
        raise ShapeError(f"{t!r} is not an object")
    if len(A.objects) != 1:
        return fail("bicategory has more than one object",
                    {"object": next(x for x in A.objects if x != t)})
    r = _is_terminal_identity(A.hom(t, t), A.id1(t))
    if not r:
        return fail("identity 1-cell is not terminal in the endomorphism category", r.witness)
    return ok()


def terminal_adjunction_icon(A: FinBicat, t: str):
    """``! ⊣ t`` in Icon, synthesized by enumeration; None if it does not exist."""
    one = terminal_bicat()
    bang = constant_pseudofunctor(A, one, "*")
    for tt in enumerate_pseudofunctors(one, A, fixed_objects={"*": t}):
        found = synthesize_icon_adjunction(bang, tt)
        if found is not None:
            return AdjunctionData(bang, tt, *found)
    return None


def is_semicartesian(m: FinBicat) -> CheckReport:
    """A one-object bicategory whose monoidal unit is terminal."""
    if len(m.objects) != 1:
        raise ShapeError("expected a one-object bicategory")
    (t,) = m.objects
    r = _is_terminal_identity(m.hom(t, t), m.id1(t))
    if not r:
        return fail("unit is not terminal", r.witness)
    return ok()


def check_icon_absolute_lifting(p: LiftingProblem) -> CheckReport:
    """Complete decision procedure for absolute right liftings in Icon.

    (i) the square of object functions is a pullback: for each ``c``,
    ``Rc`` is the only ``b`` with ``Fb = Gc``; (ii) for all ``x, y`` the
    induced diagram of hom-categories is an absolute right lifting in Cat.
    """
    r = validate_icon(p.rho)
    if not r:
        raise ShapeError(f"rho is not an icon: {r.reason}")
    f, g, rr = p.f, p.g, p.r
    B, C = f.source, g.source
    for c in C.objects:
        over = [b for b in B.objects if f.ob(b) == g.ob(c)]
        if over != [rr.ob(c)]:
            return fail("object square is not a pullback", {"object": c, "fibre": over})
    for x in C.objects:
        for y in C.objects:
            if not C.hom(x, y).objects:
                continue
            F = f.hom_functor(rr.ob(x), rr.ob(y))
            G = g.hom_functor(x, y)
            R = rr.hom_functor(x, y)
            rho = CatNatTrans(compose_functors(F, R), G, {h: p.rho[h] for h in C.hom(x, y).objects})
            res = check_absolute_lifting_cat(F, G, R, rho)
            if not res:
                return fail("induced diagram of hom-categories is not an absolute right lifting",
                            {"hom": [x, y], "detail": res.witness})
    return ok()


def probe_absolute_lifting_icon(p: LiftingProblem, probes=None) -> CheckReport:
    """Icon analogue of the probe-quantified check (same engine and battery)."""
    return probe_lifting(ICON, p, probes)


def check_icon_limit(A: FinBicat, J: FinCat, d: str, ell: str, lam: Icon | None = None,
                     cot: FinBicat | None = None) -> CheckReport:
    """Limits of diagrams ``1 → A^J`` in Icon.

    True iff ``d`` is constant at ``ell``, the cone is the identity icon,
    and ``id_ℓ`` with the identity cone is a limit of the constant
    ``J``-diagram in ``A(ℓ,ℓ)``.  The verdict is cross-checked against the
    lifting criterion.
    """
    cot = cot if cot is not None else cotensor_icon(A, J)
    if d not in cot.objects or ell not in A.objects:
        raise ShapeError("diagram or apex is not an object")
    delta = diagonal_icon(A, J, cot)
    one = terminal_bicat()
    D = constant_pseudofunctor(one, cot, d)
    L = constant_pseudofunctor(one, A, ell)
    if delta.ob(ell) != d:
        return fail("diagram is not constant at the apex; icon cones exist only when Δℓ = D",
                    {"diagram": d, "apex": ell})
    dl = compose_pseudofunctors(delta, L)
    ident = Icon(dl, D, identity_icon(D).components)
    if lam is not None and lam.key() != ident.key():
        raise ShapeError("icon cones over 1 are forced to be identities; such icons exist "
                         "if and only if Δℓ = D")
    h = A.hom(ell, ell)
    i = A.id1(ell)
    diagram = constant_functor(J, h, i)
    cone = CatNatTrans(constant_functor(J, h, i), diagram, {j: h.identity(i) for j in J.objects})
    r = verify_limit_cone_cat(diagram, i, cone)
    lifted = check_icon_absolute_lifting(LiftingProblem(delta, D, L, ident))
    if bool(r) != bool(lifted):
        return fail("internal inconsistency: limit condition and lifting criterion disagree",
                    {"limit": bool(r), "lifting": bool(lifted)})
    if not r:
        return fail("identity is not a limit of the constant diagram in the endomorphism category",
                    r.witness)
    return ok()


def fixture_semicartesian_poset(unit: str = "1") -> FinBicat:
    """One object; hom is the poset ``0 ≤ 1``.

    With unit ``1`` the tensor is ``min``; with unit ``0`` it is ``max``.
    """
    if unit not in ("0", "1"):
        raise ValueError("unit must be '0' or '1'")
    op = min if unit == "1" else max
    h = poset_category(["0", "1"], [("0", "1")])
    arrow = lambda u, v: f"{u}<={v}" if u != v else h.identity(u)
    h1 = {(x, y): op(x, y) for x in h.objects for y in h.objects}
    h2 = {}
    for q in h.morphisms:
        for p in h.morphisms:
            h2[(q, p)] = arrow(op(h.src(q), h.src(p)), op(h.tgt(q), h.tgt(p)))
    return FinBicat(["*"], {("*", "*"): h}, {"*": unit}, h1, h2, labels={"kind": "semicartesian_poset"})
