"""Generated corpora shared by the test suites."""

from __future__ import annotations

import itertools
from functools import lru_cache

from bicatkit.bicat import FinBicat
from bicatkit.constructions import free_cell, terminal_bicat
from bicatkit.fincat import FinCat, validate_fincat
from bicatkit.fixtures import twisted_2group
from bicatkit.formal2cat import fixture_codiscrete_equivalence, fixture_product_not_2product
from bicatkit.formal2cat import fixture_subcategory_lifting
from bicatkit.formalicon import fixture_semicartesian_poset


def _categories_with(n: int, k: int):
    """All composition tables on ``n`` objects and ``k`` non-identity arrows."""
    objs = [f"o{i}" for i in range(n)]
    names = [f"m{i}" for i in range(k)]
    for ends in itertools.product(itertools.product(objs, repeat=2), repeat=k):
        if list(ends) != sorted(ends):
            continue  # arrows are interchangeable; fix an order
        arrows = dict(zip(names, ends))
        arrows.update({f"id_{x}": (x, x) for x in objs})
        pairs = [(g, f) for g in names for f in names if arrows[f][1] == arrows[g][0]]
        options = [[h for h, (s, t) in arrows.items() if s == arrows[f][0] and t == arrows[g][1]]
                   for g, f in pairs]
        yield from _tables(objs, arrows, names, pairs, options, {}, 0)


def _tables(objs, arrows, names, pairs, options, comp, i):
    if i == len(pairs):
        full = dict(comp)
        for m, (s, t) in arrows.items():
            full[(f"id_{t}", m)] = m
            full[(m, f"id_{s}")] = m
        c = FinCat(objs, arrows, {x: f"id_{x}" for x in objs}, full)
        if validate_fincat(c):
            yield c
        return
    g, f = pairs[i]
    for h in options[i]:
        comp[(g, f)] = h
        if _assoc_ok(comp, arrows, g, f):
            yield from _tables(objs, arrows, names, pairs, options, comp, i + 1)
        del comp[(g, f)]


def _assoc_ok(comp, arrows, g, f) -> bool:
    def c(x, y):
        if x.startswith("id_"):
            return y
        if y.startswith("id_"):
            return x
        return comp.get((x, y))
    for x, y, z in itertools.product(arrows, repeat=3):
        if arrows[z][1] != arrows[y][0] or arrows[y][1] != arrows[x][0]:
            continue
        if g not in (x, y, z) and f not in (x, y, z):
            continue
        yz, xy = c(y, z), c(x, y)
        if yz is None or xy is None:
            continue
        l, r = c(x, yz), c(xy, z)
        if l is not None and r is not None and l != r:
            return False
    return True


def canonical_form(c: FinCat) -> tuple:
    """Isomorphism invariant: least relabelled table over all relabellings."""
    non_id = sorted(m for m in c.morphisms if not c.is_identity(m))
    best = None
    for po in itertools.permutations(c.objects):
        oi = {x: i for i, x in enumerate(po)}
        for pm in itertools.permutations(non_id):
            mi = {m: i for i, m in enumerate(pm)}
            mi.update({c.identity(x): f"i{oi[x]}" for x in c.objects})
            lab = lambda m: str(mi[m])
            ends = tuple(sorted((lab(m), oi[s], oi[t]) for m, (s, t) in c.arrows.items()))
            comp = tuple(sorted((lab(g), lab(f), lab(h)) for (g, f), h in c.composition.items()))
            form = (len(c.objects), ends, comp)
            if best is None or form < best:
                best = form
    return best


@lru_cache(maxsize=None)
def small_categories(max_morphisms: int = 4) -> tuple[FinCat, ...]:
    """Every category with 1..max_morphisms morphisms, one per isomorphism class."""
    out, seen = [], set()
    for total in range(1, max_morphisms + 1):
        for n in range(1, total + 1):
            for c in _categories_with(n, total - n):
                key = canonical_form(c)
                if key not in seen:
                    seen.add(key)
                    out.append(c)
    return tuple(out)


def count_by_size(cats) -> dict[int, int]:
    out: dict[int, int] = {}
    for c in cats:
        out[len(c.morphisms)] = out.get(len(c.morphisms), 0) + 1
    return out


@lru_cache(maxsize=None)
def bicat_fixtures() -> dict[str, FinBicat]:
    """Small valid bicategories used across suites."""
    A46, A46sub, _ = fixture_subcategory_lifting()
    return {
        "terminal": terminal_bicat(),
        "C1": free_cell("one"),
        "C2": free_cell("two"),
        "ld2": _ld_arrow(),
        "subcat": A46,
        "subcat01": A46sub,
        "product": fixture_product_not_2product()[0],
        "codiscrete": fixture_codiscrete_equivalence()[0],
        "twisted": twisted_2group(),
        "semicart_min": fixture_semicartesian_poset("1"),
        "semicart_max": fixture_semicartesian_poset("0"),
    }


def _ld_arrow() -> FinBicat:
    from bicatkit.fincat import walking_arrow
    return FinBicat.locally_discrete(walking_arrow())
