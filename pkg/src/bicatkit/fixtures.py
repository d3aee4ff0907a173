"""Named fixtures, shipped as documents by ``bicatkit fixtures``."""

from __future__ import annotations

from .bicat import FinBicat
from .constructions import free_cell, terminal_bicat
from .fincat import FinCat, discrete_category
from .formal2cat import (fixture_codiscrete_equivalence, fixture_product_not_2product,
                         fixture_subcategory_lifting)
from .formalicon import fixture_semicartesian_poset
from .serialize import CheckRequest, Document, Lifting, document, fincat_to_json


def twisted_2group() -> FinBicat:
    """A non-strict one-object bicategory: Z/2 acting on itself with twisted associator.

    1-cells ``e, s`` compose as Z/2; each has automorphism group Z/2
    (``e0, e1`` and ``s0, s1``).  The associator at ``(s, s, s)`` is the
    non-identity automorphism ``s1``; all others and both unitors are
    identities.  The cocycle makes the pentagon hold.
    """
    bit = {"e": 0, "s": 1}
    cell = lambda x, a: f"{'es'[x]}{a}"
    arrows, comp = {}, {}
    objs = ["e", "s"]
    for x in objs:
        for a in (0, 1):
            arrows[cell(bit[x], a)] = (x, x)
            for b in (0, 1):
                comp[(cell(bit[x], a), cell(bit[x], b))] = cell(bit[x], (a + b) % 2)
    hom = FinCat(objs, arrows, {"e": "e0", "s": "s0"}, comp)
    h1 = {(g, f): "es"[(bit[g] + bit[f]) % 2] for g in objs for f in objs}
    h2 = {}
    for q in arrows:
        for p in arrows:
            x = (bit[q[0]] + bit[p[0]]) % 2
            h2[(q, p)] = cell(x, (int(q[1]) + int(p[1])) % 2)
    return FinBicat(["*"], {("*", "*"): hom}, {"*": "e"}, h1, h2, {("s", "s", "s"): "s1"},
                    labels={"kind": "twisted_2group"})


def _limit_params(J: FinCat, diagram: dict, apex: str, cone: dict | None = None) -> dict:
    out = {"shape": fincat_to_json(J), "diagram": diagram, "apex": apex}
    if cone is not None:
        out["cone"] = cone
    return out


def _request(check: str, kind: str, value, **params) -> Document:
    inner = document(kind, value)
    return document("check_request", CheckRequest(check, inner, params))


def _subcategory_lifting(invertible=False):
    return document("lifting_problem", Lifting("2-Cat", fixture_subcategory_lifting(invertible)[2]))


def _product_limit():
    A, J, _, _, _ = fixture_product_not_2product()
    return _request("2-limit", "bicat", A,
                    **_limit_params(J, {"objects": {"0": "a", "1": "b"}}, "p", {"0": "l", "1": "r"}))


def _product_terminal():
    A = fixture_product_not_2product()[0]
    return _request("2-terminal", "bicat", A, object="p")


def _semicartesian(unit):
    return _request("icon-terminal", "bicat", fixture_semicartesian_poset(unit), object="*")


def _identity_limit():
    A = fixture_semicartesian_poset("1")
    return _request("icon-limit", "bicat", A,
                    **_limit_params(discrete_category(["0", "1"]), {"objects": {"0": "*", "1": "*"}}, "*"))


# name -> (builder, expected verdict of the check it carries, or None for plain data)
FIXTURES = {
    "terminal-bicat": (lambda: document("bicat", terminal_bicat()), None),
    "free-cell-0": (lambda: document("bicat", free_cell("zero")), None),
    "free-cell-1": (lambda: document("bicat", free_cell("one")), None),
    "free-cell-2": (lambda: document("bicat", free_cell("two")), None),
    "twisted-2group": (lambda: document("bicat", twisted_2group()), None),
    "semicartesian-min": (lambda: document("bicat", fixture_semicartesian_poset("1")), None),
    "semicartesian-max": (lambda: document("bicat", fixture_semicartesian_poset("0")), None),
    "codiscrete-equivalence": (lambda: document("pseudofunctor", fixture_codiscrete_equivalence()[1]), None),
    "subcategory-lifting": (_subcategory_lifting, None),
    "subcategory-lifting-invertible": (lambda: _subcategory_lifting(True), None),
    "product-not-2product": (_product_limit, False),
    "product-apex-not-2terminal": (_product_terminal, False),
    "semicartesian-min-terminal": (lambda: _semicartesian("1"), True),
    "semicartesian-max-terminal": (lambda: _semicartesian("0"), False),
    "identity-icon-limit": (_identity_limit, True),
}


def fixture_document(name: str) -> Document:
    if name not in FIXTURES:
        raise KeyError(f"unknown fixture {name!r}")
    return FIXTURES[name][0]()
