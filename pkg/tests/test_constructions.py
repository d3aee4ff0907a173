import itertools

import pytest

from bicatkit.bicat import (FinBicat, compose_pseudofunctors, enumerate_pseudofunctors,
                            identity_pseudofunctor, is_strict_2category, validate_bicat,
                            validate_normal_pseudofunctor)
from bicatkit.constructions import (BipointedBicat, cotensor_2cat, cotensor_icon, diagonal_icon,
                                    exponential_2cat, free_cell, pair_pseudofunctors, product_bicat,
                                    strict_slice, suspension, suspension_counit, suspension_functor,
                                    terminal_bicat)
from bicatkit.fincat import (discrete_category, empty_category, enumerate_functors, is_isomorphism_cat,
                             path_components, terminal_category, walking_arrow)
from bicatkit.formal2cat import fixture_product_not_2product
from bicatkit.report import SearchLimitExceeded, ShapeError

from corpus import bicat_fixtures, small_categories
from suites import cotensor_comparison, currying_counts, suite_cotensor_iso, suite_suspension

FIX = bicat_fixtures()
ONE, C1, C2 = free_cell("zero"), free_cell("one"), free_cell("two")


def bijective(F) -> bool:
    """Bijective on objects, 1-cells and 2-cells, hence an isomorphism of bicategories."""
    A, B = F.source, F.target
    return (sorted(F.objects.values()) == sorted(B.objects)
            and sorted(F.cells1.values()) == sorted(B.cells1)
            and sorted(F.cells2.values()) == sorted(B.cells2))


# -- terminal, free cells, products -------------------------------------------------

def test_terminal_and_free_cells():
    t = terminal_bicat()
    assert (len(t.objects), len(t.cells1), len(t.cells2)) == (1, 1, 1)
    assert ONE == t
    assert len(C1.objects) == 2 and len(C1.cells1) == 3
    nontrivial = [C2.hom(x, y) for x in C2.objects for y in C2.objects
                  if len(C2.hom(x, y).morphisms) > 1]
    assert len(nontrivial) == 1 and len(nontrivial[0].objects) == 2 and len(nontrivial[0].morphisms) == 3
    for b in (ONE, C1, C2):
        assert validate_bicat(b) and is_strict_2category(b)
    with pytest.raises(ValueError):
        free_cell("three")


def test_suspension_examples():
    assert suspension(terminal_category()) == C1
    assert suspension(walking_arrow()) == C2
    s = suspension(empty_category())
    assert s.objects == ("0", "1") and len(s.cells1) == 2
    assert not s.hom("0", "1").objects and not s.hom("1", "0").objects


def test_products_are_valid_with_strict_projections():
    for (_, a), (_, b) in itertools.product([("1", ONE), ("C1", C1), ("C2", C2), ("tw", FIX["twisted"])],
                                            repeat=2):
        P, p, q = product_bicat(a, b)
        assert validate_bicat(P)
        assert validate_normal_pseudofunctor(p) and validate_normal_pseudofunctor(q)
        assert p.is_strict() and q.is_strict()


def test_one_times_a_is_a():
    for _, a in [("C1", C1), ("C2", C2), ("tw", FIX["twisted"])]:
        P, _, q = product_bicat(ONE, a)
        assert bijective(q)


@pytest.mark.parametrize("strict", [True, False])
def test_product_universal_property(strict):
    A = C2
    P, p, q = product_bicat(A, A)
    for X in (ONE, C1, C2):
        into = enumerate_pseudofunctors(X, P, strict=strict)
        legs = enumerate_pseudofunctors(X, A, strict=strict)
        assert len(into) == len(legs) ** 2
        for F in into:
            G = pair_pseudofunctors(P, compose_pseudofunctors(p, F), compose_pseudofunctors(q, F))
            assert G == F
        for F, G in itertools.product(legs, repeat=2):
            H = pair_pseudofunctors(P, F, G)
            assert compose_pseudofunctors(p, H) == F and compose_pseudofunctors(q, H) == G


# -- suspension and its counit --------------------------------------------------------

def test_suspension_counit_examples():
    for j in small_categories(3):
        S = suspension(j)
        assert suspension_counit(BipointedBicat(S, ("0", "1"))) == identity_pseudofunctor(S)
    eps = suspension_counit(BipointedBicat(C2, ("0", "1")))
    assert validate_normal_pseudofunctor(eps)
    tw = FIX["twisted"]
    eps = suspension_counit(BipointedBicat(tw, ("*", "*")))
    assert validate_normal_pseudofunctor(eps)
    with pytest.raises(ShapeError):
        BipointedBicat(C2, ("0", "2"))


def test_suspension_functor_is_strict():
    for f in enumerate_functors(walking_arrow(), walking_arrow()):
        F = suspension_functor(f)
        assert validate_normal_pseudofunctor(F) and F.is_strict()


def test_suspension_adjunction_on_small_corpus():
    t = suite_suspension(max_morphisms=3, max_cells1=4)
    assert t.total > 500 and t.passed, t.disagreements[:3]


# -- cotensors ---------------------------------------------------------------------

def test_icon_cotensor_examples():
    for a in (C1, C2, FIX["twisted"], FIX["semicart_min"]):
        A1 = cotensor_icon(a, terminal_category())
        assert validate_bicat(A1)
        assert bijective(diagonal_icon(a, terminal_category(), A1))
        A0 = cotensor_icon(a, empty_category())
        assert (len(A0.objects), len(A0.cells1), len(A0.cells2)) == (1, 1, 1)
    # a connected shape gives one object per object of the target
    assert len(cotensor_icon(C2, walking_arrow()).objects) == 2
    assert len(cotensor_icon(C2, discrete_category("ab")).objects) == 4


def test_icon_cotensor_object_count_matches_diagrams():
    """Objects of the cotensor are diagrams J → Icon(1, A) up to their object part."""
    for a in (C1, C2):
        for j in small_categories(3):
            cot = cotensor_icon(a, j)
            assert validate_bicat(cot)
            assert len(cot.objects) == len(a.objects) ** len(path_components(j))


def test_icon_cotensor_comparison_is_isomorphism_on_small_shapes():
    t = suite_cotensor_iso(probes=("1", "C1"), max_morphisms=3)
    assert t.total > 50 and t.passed, t.disagreements[:3]


def test_cotensor_comparison_with_two_cell_probe():
    for j in small_categories(2):
        phi, L, R = cotensor_comparison(C2, FIX["semicart_min"], j)
        assert is_isomorphism_cat(phi)


def test_2cat_cotensor_examples():
    for a in (C1, C2, FIX["subcat"]):
        E, delta = cotensor_2cat(a, terminal_category())
        assert validate_bicat(E) and is_strict_2category(E)
        assert bijective(delta)
    ld2 = FinBicat.locally_discrete(walking_arrow())
    E, delta = cotensor_2cat(ld2, walking_arrow())
    assert len(E.objects) == 3
    for a in (C1, C2, ld2):
        for j in small_categories(2):
            if j.objects:
                E, delta = cotensor_2cat(a, j)
                assert validate_normal_pseudofunctor(delta)
                assert len(set(delta.objects.values())) == len(a.objects)


def test_cotensor_rejects_non_strict_input():
    with pytest.raises(ShapeError):
        cotensor_2cat(FIX["twisted"], terminal_category())


def test_size_guard():
    with pytest.raises(SearchLimitExceeded):
        cotensor_2cat(C2, discrete_category("abc"), limit=3)


def test_exponential_examples():
    for b in (C1, C2, FIX["subcat"]):
        E = exponential_2cat(ONE, b)
        assert (len(E.objects), len(E.cells1), len(E.cells2)) == (len(b.objects), len(b.cells1), len(b.cells2))
        T = exponential_2cat(b, ONE)
        assert (len(T.objects), len(T.cells1), len(T.cells2)) == (1, 1, 1)


# hand-derived: C1 × C1 is the square poset, so strict 2-functors into C1 are
# monotone maps from the square to 0 < 1 (6 of them); into C2 each monotone map
# with a crossing allows f or g uniformly (2 each, 4 such maps, plus 2 constants)
CURRYING_HAND = {("C1", "C1", "C1"): 6, ("C1", "C2", "C1"): 6, ("C2", "C1", "C1"): 6,
                 ("C2", "C2", "C1"): 6, ("C1", "C1", "C2"): 10}
CURRYING_FROZEN = {("C1", "C1", "C1"): 6, ("C1", "C1", "C2"): 10, ("C1", "C2", "C1"): 6,
                   ("C1", "C2", "C2"): 11, ("C2", "C1", "C1"): 6, ("C2", "C1", "C2"): 11,
                   ("C2", "C2", "C1"): 6, ("C2", "C2", "C2"): 12}


def test_currying_bijection_counts():
    counts = currying_counts()
    for k, (lhs, rhs) in counts.items():
        assert lhs == rhs, k
        assert lhs == CURRYING_FROZEN[k]
    for k, v in CURRYING_HAND.items():
        assert counts[k][0] == v


# -- strict slice -------------------------------------------------------------------

def test_strict_slice_over_empty_shape_is_the_base():
    for a in (C1, C2, FIX["subcat"]):
        E, delta = cotensor_2cat(a, empty_category())
        (d,) = E.objects
        S, proj = strict_slice(a, empty_category(), d)
        assert validate_bicat(S) and bijective(proj)


def test_strict_slice_of_product_fixture():
    A, J, (E, delta), D, lam = fixture_product_not_2product()
    S, proj = strict_slice(A, J, D)
    assert validate_bicat(S) and validate_normal_pseudofunctor(proj)
    # the only cone over (a, b) is (l, r) from p
    assert list(proj.objects.values()) == ["p"]
    (x,) = S.objects
    assert S.labels["objects"][x] == ("p", lam)
    # alpha and beta do not fix the cone, so only the identity 2-cell survives
    assert len(S.cells1) == 1 and len(S.cells2) == 1


def test_strict_slice_of_point():
    for j in small_categories(2):
        E, delta = cotensor_2cat(ONE, j)
        for d in E.objects:
            S, _ = strict_slice(ONE, j, d)
            assert len(S.objects) == 1 and len(S.cells1) == 1 and len(S.cells2) == 1
    with pytest.raises(ShapeError):
        strict_slice(ONE, terminal_category(), "nope")


def test_strict_slice_pullback_property():
    """Strict 2-functors X → slice are exactly apexes with a cone, and the projection forgets the cone."""
    A, J, (E, delta), D, lam = fixture_product_not_2product()
    S, proj = strict_slice(A, J, D)
    for X in (ONE, C1):
        into = enumerate_pseudofunctors(X, S, strict=True)
        images = {compose_pseudofunctors(proj, F).key() for F in into}
        assert len(images) == len(into)
