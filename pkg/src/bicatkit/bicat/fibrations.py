"""Fibration-type predicates on normal pseudofunctors."""

from __future__ import annotations

from ..fincat import CatFunctor, is_isofibration_cat
from ..report import CheckReport, ShapeError, fail, ok
from .core import is_equivalence_1cell
from .functors import NormalPseudofunctor


def underlying_functor(F: NormalPseudofunctor) -> CatFunctor:
    """Action on objects and 1-cells of a strict 2-functor."""
    if not F.is_strict():
        raise ShapeError("underlying functor needs a strict 2-functor")
    return CatFunctor(F.source.underlying_category(), F.target.underlying_category(),
                      dict(F.objects), dict(F.cells1))


def is_isofibration_2cat(F: NormalPseudofunctor) -> CheckReport:
    """Isofibration in 2-Cat: detected on the underlying functor."""
    r = is_isofibration_cat(underlying_functor(F))
    if not r:
        return fail("underlying functor is not an isofibration", r.witness)
    return ok()


def is_isofibration_icon(F: NormalPseudofunctor) -> CheckReport:
    """Isofibration in Icon: every hom-functor is an isofibration."""
    A = F.source
    for x in A.objects:
        for y in A.objects:
            if not A.hom(x, y).objects:
                continue
            r = is_isofibration_cat(F.hom_functor(x, y))
            if not r:
                return fail("hom-functor is not an isofibration", {"hom": [x, y], "detail": r.witness})
    return ok()


def is_discrete_isofibration(F: NormalPseudofunctor) -> CheckReport:
    """Isofibration whose liftable invertible 2-cells lift uniquely."""
    r = is_isofibration_2cat(F)
    if not r:
        return r
    A, B = F.source, F.target
    for u in A.cells1:
        h = A.hom(*A.ends1(u))
        seen: dict[str, str] = {}
        for a in h.morphisms:
            if h.src(a) != u or not h.is_iso(a):
                continue
            b = F.on2(a)
            if b in seen:
                return fail("invertible 2-cell has two lifts",
                            {"1-cell": u, "2-cell": b, "lifts": [seen[b], a]})
            seen[b] = a
    return ok()


def is_equifibration(F: NormalPseudofunctor) -> CheckReport:
    """Equivalences out of ``Fa`` lift to equivalences out of ``a``, and homs are isofibrations."""
    A, B = F.source, F.target
    for a in A.objects:
        fa = F.ob(a)
        images = {F.on1(u) for y in A.objects for u in A.hom(a, y).objects
                  if is_equivalence_1cell(A, u) is not None}
        for b in B.objects:
            for e in B.hom(fa, b).objects:
                if e in images or is_equivalence_1cell(B, e) is None:
                    continue
                return fail("equivalence does not lift", {"object": a, "equivalence": e})
    r = is_isofibration_icon(F)
    if not r:
        return r
    return ok()
