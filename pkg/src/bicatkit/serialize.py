"""JSON documents for categories, bicategories and the data between them.

Printing is canonical: sorted keys, sorted identifier lists, two-space
indentation and a trailing newline.  Parsing is strict: unknown fields,
missing fields and dangling identifiers are errors.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any

from .bicat import FinBicat, Icon, Modification, NormalPseudofunctor, TwoNatTrans
from .fincat import FinCat

FORMAT_VERSION = 1
KINDS = ("fincat", "bicat", "pseudofunctor", "icon", "two_nat", "modification",
         "lifting_problem", "adjunction", "check_request")
COSMOI = ("2-Cat", "Icon")


class DocumentError(ValueError):
    """A syntax, schema or reference error, with its location."""

    def __init__(self, message: str, path: str = "$"):
        super().__init__(f"{path}: {message}")
        self.path = path


@dataclass(frozen=True)
class Document:
    kind: str
    payload: dict
    format_version: int = FORMAT_VERSION

    def to_json(self) -> dict:
        return {"format_version": self.format_version, "kind": self.kind, "payload": self.payload}


def dumps(doc: Document) -> str:
    return json.dumps(doc.to_json(), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def loads(text: str) -> Document:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise DocumentError(f"syntax error: {e.msg}", f"line {e.lineno}, column {e.colno}") from None
    obj = _fields(raw, "$", {"format_version", "kind", "payload"})
    if obj["format_version"] != FORMAT_VERSION:
        raise DocumentError(f"unsupported format_version {obj['format_version']!r}", "$.format_version")
    kind = obj["kind"]
    if kind not in KINDS:
        raise DocumentError(f"unknown kind {kind!r}", "$.kind")
    doc = Document(kind, obj["payload"])
    decode(doc)  # schema and reference checks
    return Document(kind, canonical_payload(doc))


def canonical_payload(doc: Document) -> dict:
    return encode_value(doc.kind, decode(doc))


# -- schema helpers ------------------------------------------------------------

def _fields(obj, path: str, required: set[str], optional: set[str] = frozenset()) -> dict:
    if not isinstance(obj, dict):
        raise DocumentError("expected an object", path)
    extra = set(obj) - required - set(optional)
    if extra:
        raise DocumentError(f"unknown field {sorted(extra)[0]!r}", path)
    missing = required - set(obj)
    if missing:
        raise DocumentError(f"missing field {sorted(missing)[0]!r}", path)
    return obj


def _strs(obj, path: str) -> list[str]:
    if not isinstance(obj, list) or not all(isinstance(s, str) for s in obj):
        raise DocumentError("expected a list of strings", path)
    return obj


def _map(obj, path: str) -> dict[str, str]:
    if not isinstance(obj, dict) or not all(isinstance(v, str) for v in obj.values()):
        raise DocumentError("expected an object of strings", path)
    return obj


def _tuples(obj, n: int, path: str) -> list[list[str]]:
    if not isinstance(obj, list):
        raise DocumentError("expected a list", path)
    for i, t in enumerate(obj):
        if not isinstance(t, list) or len(t) != n or not all(isinstance(s, str) for s in t):
            raise DocumentError(f"expected a list of {n} strings", f"{path}[{i}]")
    return obj


def _need(name: str, pool, what: str, path: str):
    if name not in pool:
        raise DocumentError(f"undeclared {what} {name!r}", path)


# -- fincat ------------------------------------------------------------------------

def fincat_to_json(c: FinCat) -> dict:
    return {"objects": list(c.objects),
            "morphisms": sorted([m, s, t] for m, (s, t) in c.arrows.items()),
            "identities": dict(sorted(c.identities.items())),
            "composition": sorted([g, f, h] for (g, f), h in c.composition.items())}


def fincat_from_json(obj, path: str = "$") -> FinCat:
    o = _fields(obj, path, {"objects", "morphisms", "identities", "composition"})
    objects = _strs(o["objects"], path + ".objects")
    morphisms = _tuples(o["morphisms"], 3, path + ".morphisms")
    arrows = {}
    for i, (m, s, t) in enumerate(morphisms):
        for x in (s, t):
            _need(x, objects, "object", f"{path}.morphisms[{i}]")
        arrows[m] = (s, t)
    ids = _map(o["identities"], path + ".identities")
    for x, m in ids.items():
        _need(x, objects, "object", path + ".identities")
        _need(m, arrows, "morphism", path + ".identities")
    comp = {}
    for i, (g, f, h) in enumerate(_tuples(o["composition"], 3, path + ".composition")):
        for m in (g, f, h):
            _need(m, arrows, "morphism", f"{path}.composition[{i}]")
        comp[(g, f)] = h
    return FinCat(objects, arrows, ids, comp)


# -- bicat -------------------------------------------------------------------------

def bicat_to_json(b: FinBicat) -> dict:
    return {"objects": list(b.objects),
            "homs": [{"source": x, "target": y, "category": fincat_to_json(h)}
                     for (x, y), h in sorted(b.homs.items()) if h.objects],
            "identity1": dict(sorted(b.identity1.items())),
            "hcomp1": sorted([g, f, h] for (g, f), h in b.hcomp1.items()),
            "hcomp2": sorted([q, p, h] for (q, p), h in b.hcomp2.items()),
            "associators": sorted([h, g, f, a] for (h, g, f), a in b.associators.items()),
            "left_unitors": dict(sorted(b.left_unitors.items())),
            "right_unitors": dict(sorted(b.right_unitors.items()))}


def bicat_from_json(obj, path: str = "$") -> FinBicat:
    o = _fields(obj, path, {"objects", "homs", "identity1", "hcomp1", "hcomp2"},
                {"associators", "left_unitors", "right_unitors"})
    objects = _strs(o["objects"], path + ".objects")
    if not isinstance(o["homs"], list):
        raise DocumentError("expected a list", path + ".homs")
    homs = {}
    for i, h in enumerate(o["homs"]):
        p = f"{path}.homs[{i}]"
        hh = _fields(h, p, {"source", "target", "category"})
        _need(hh["source"], objects, "object", p)
        _need(hh["target"], objects, "object", p)
        if (hh["source"], hh["target"]) in homs:
            raise DocumentError("hom listed twice", p)
        homs[(hh["source"], hh["target"])] = fincat_from_json(hh["category"], p + ".category")
    cells1 = {f for h in homs.values() for f in h.objects}
    cells2 = {a for h in homs.values() for a in h.morphisms}
    ident = _map(o["identity1"], path + ".identity1")
    for x, f in ident.items():
        _need(x, objects, "object", path + ".identity1")
        _need(f, cells1, "1-cell", path + ".identity1")
    h1 = {}
    for i, (g, f, gf) in enumerate(_tuples(o["hcomp1"], 3, path + ".hcomp1")):
        for u in (g, f, gf):
            _need(u, cells1, "1-cell", f"{path}.hcomp1[{i}]")
        h1[(g, f)] = gf
    h2 = {}
    for i, (q, p_, qp) in enumerate(_tuples(o["hcomp2"], 3, path + ".hcomp2")):
        for u in (q, p_, qp):
            _need(u, cells2, "2-cell", f"{path}.hcomp2[{i}]")
        h2[(q, p_)] = qp
    assoc = {}
    for i, (h, g, f, a) in enumerate(_tuples(o.get("associators", []), 4, path + ".associators")):
        for u in (h, g, f):
            _need(u, cells1, "1-cell", f"{path}.associators[{i}]")
        _need(a, cells2, "2-cell", f"{path}.associators[{i}]")
        assoc[(h, g, f)] = a
    units = []
    for key in ("left_unitors", "right_unitors"):
        m = _map(o.get(key, {}), f"{path}.{key}")
        for f, a in m.items():
            _need(f, cells1, "1-cell", f"{path}.{key}")
            _need(a, cells2, "2-cell", f"{path}.{key}")
        units.append(m)
    return FinBicat(objects, homs, ident, h1, h2, assoc, units[0], units[1])


# -- pseudofunctors and cells ----------------------------------------------------------

def _bicat_table(obj, path: str) -> dict[str, FinBicat]:
    if not isinstance(obj, dict):
        raise DocumentError("expected an object", path)
    return {k: bicat_from_json(v, f"{path}.{k}") for k, v in obj.items()}


def _bicat_names(objs) -> dict[FinBicat, str]:
    names: dict = {}
    for b in objs:
        if b not in names:
            names[b] = f"B{len(names)}"
    return names


def functor_to_json(F: NormalPseudofunctor, names) -> dict:
    return {"source": names[F.source], "target": names[F.target],
            "objects": dict(sorted(F.objects.items())),
            "cells1": dict(sorted(F.cells1.items())),
            "cells2": dict(sorted(F.cells2.items())),
            "comparisons": sorted([g, f, c] for (g, f), c in F.comparisons.items())}


def functor_from_json(obj, bicats, path: str) -> NormalPseudofunctor:
    o = _fields(obj, path, {"source", "target", "objects", "cells1", "cells2"}, {"comparisons"})
    for k in ("source", "target"):
        _need(o[k], bicats, "bicategory", f"{path}.{k}")
    A, B = bicats[o["source"]], bicats[o["target"]]
    for key, dom, cod, what in (("objects", A.objects, B.objects, "object"),
                                ("cells1", A.cells1, B.cells1, "1-cell"),
                                ("cells2", A.cells2, B.cells2, "2-cell")):
        m = _map(o[key], f"{path}.{key}")
        for k, v in m.items():
            _need(k, dom, what, f"{path}.{key}")
            _need(v, cod, what, f"{path}.{key}")
    comps = {}
    for i, (g, f, c) in enumerate(_tuples(o.get("comparisons", []), 3, path + ".comparisons")):
        _need(g, A.cells1, "1-cell", f"{path}.comparisons[{i}]")
        _need(f, A.cells1, "1-cell", f"{path}.comparisons[{i}]")
        _need(c, B.cells2, "2-cell", f"{path}.comparisons[{i}]")
        comps[(g, f)] = c
    return NormalPseudofunctor(A, B, o["objects"], o["cells1"], o["cells2"], comps)


def _components(obj, dom, cod, what_k, what_v, path):
    m = _map(obj, path)
    for k, v in m.items():
        _need(k, dom, what_k, path)
        _need(v, cod, what_v, path)
    return m


# -- whole documents -------------------------------------------------------------------------

@dataclass(frozen=True)
class Lifting:
    cosmos: str
    problem: Any


@dataclass(frozen=True)
class Adjunction:
    cosmos: str
    data: Any


@dataclass(frozen=True)
class CheckRequest:
    check: str
    input: Document
    params: dict


def decode(doc: Document):
    """Turn a document into library values (or raise ``DocumentError``)."""
    from .formal2cat import AdjunctionData
    from .probes import LiftingProblem
    from .bicat import compose_pseudofunctors, identity_pseudofunctor

    k, p = doc.kind, doc.payload
    if k == "fincat":
        return fincat_from_json(p, "$.payload")
    if k == "bicat":
        return bicat_from_json(p, "$.payload")
    if k == "check_request":
        o = _fields(p, "$.payload", {"check", "input"}, {"params"})
        if not isinstance(o["check"], str):
            raise DocumentError("expected a string", "$.payload.check")
        inner = _fields(o["input"], "$.payload.input", {"kind", "payload"})
        if inner["kind"] not in KINDS or inner["kind"] == "check_request":
            raise DocumentError(f"bad input kind {inner['kind']!r}", "$.payload.input.kind")
        sub = Document(inner["kind"], inner["payload"])
        decode(sub)
        params = o.get("params", {})
        if not isinstance(params, dict):
            raise DocumentError("expected an object", "$.payload.params")
        return CheckRequest(o["check"], Document(sub.kind, canonical_payload(sub)), params)
    base = "$.payload"
    fields = {"pseudofunctor": {"bicats", "functor"},
              "icon": {"bicats", "source", "target", "components"},
              "two_nat": {"bicats", "source", "target", "components"},
              "modification": {"bicats", "source", "target", "components"},
              "lifting_problem": {"bicats", "cosmos", "f", "g", "r", "rho"},
              "adjunction": {"bicats", "cosmos", "F", "U", "eta", "eps"}}[k]
    o = _fields(p, base, fields)
    bicats = _bicat_table(o["bicats"], base + ".bicats")
    fn = lambda key: functor_from_json(o[key], bicats, f"{base}.{key}")
    if k == "pseudofunctor":
        return fn("functor")
    if k in ("icon", "two_nat"):
        F, G = fn("source"), fn("target")
        if k == "icon":
            comps = _components(o["components"], F.source.cells1, F.target.cells2, "1-cell", "2-cell",
                                base + ".components")
            return Icon(F, G, comps)
        comps = _components(o["components"], F.source.objects, F.target.cells1, "object", "1-cell",
                            base + ".components")
        return TwoNatTrans(F, G, comps)
    if k == "modification":
        ts = []
        for key in ("source", "target"):
            t = _fields(o[key], f"{base}.{key}", {"source", "target", "components"})
            F = functor_from_json(t["source"], bicats, f"{base}.{key}.source")
            G = functor_from_json(t["target"], bicats, f"{base}.{key}.target")
            comps = _components(t["components"], F.source.objects, F.target.cells1, "object", "1-cell",
                                f"{base}.{key}.components")
            ts.append(TwoNatTrans(F, G, comps))
        comps = _components(o["components"], ts[0].source.source.objects, ts[0].source.target.cells2,
                            "object", "2-cell", base + ".components")
        return Modification(ts[0], ts[1], comps)
    cosmos = o["cosmos"]
    if cosmos not in COSMOI:
        raise DocumentError(f"unknown cosmos {cosmos!r}", base + ".cosmos")
    try:
        if k == "lifting_problem":
            f, g, r = fn("f"), fn("g"), fn("r")
            src, tgt = compose_pseudofunctors(f, r), g
            rho = _cell(cosmos, src, tgt, o["rho"], base + ".rho")
            return Lifting(cosmos, LiftingProblem(f, g, r, rho))
        F, U = fn("F"), fn("U")
        eta = _cell(cosmos, identity_pseudofunctor(F.source), compose_pseudofunctors(U, F), o["eta"],
                    base + ".eta")
        eps = _cell(cosmos, compose_pseudofunctors(F, U), identity_pseudofunctor(F.target), o["eps"],
                    base + ".eps")
        return Adjunction(cosmos, AdjunctionData(F, U, eta, eps))
    except (ValueError, KeyError) as e:
        if isinstance(e, DocumentError):
            raise
        raise DocumentError(f"shape error: {e}", base) from None


def _cell(cosmos, F, G, obj, path):
    if cosmos == "Icon":
        return Icon(F, G, _components(obj, F.source.cells1, F.target.cells2, "1-cell", "2-cell", path))
    return TwoNatTrans(F, G, _components(obj, F.source.objects, F.target.cells1, "object", "1-cell", path))


def encode_value(kind: str, v) -> dict:
    """Inverse of ``decode``: library values to a canonical payload."""
    if kind == "fincat":
        return fincat_to_json(v)
    if kind == "bicat":
        return bicat_to_json(v)
    if kind == "check_request":
        out = {"check": v.check, "input": {"kind": v.input.kind, "payload": v.input.payload}}
        if v.params:
            out["params"] = v.params
        return out
    if kind == "pseudofunctor":
        names = _bicat_names([v.source, v.target])
        return {"bicats": _table(names), "functor": functor_to_json(v, names)}
    if kind in ("icon", "two_nat"):
        names = _bicat_names([v.source.source, v.source.target])
        return {"bicats": _table(names), "source": functor_to_json(v.source, names),
                "target": functor_to_json(v.target, names),
                "components": dict(sorted(v.components.items()))}
    if kind == "modification":
        names = _bicat_names([v.source.source.source, v.source.source.target])
        nat = lambda t: {"source": functor_to_json(t.source, names), "target": functor_to_json(t.target, names),
                         "components": dict(sorted(t.components.items()))}
        return {"bicats": _table(names), "source": nat(v.source), "target": nat(v.target),
                "components": dict(sorted(v.components.items()))}
    if kind == "lifting_problem":
        p = v.problem
        names = _bicat_names([p.f.target, p.f.source, p.g.source])
        return {"bicats": _table(names), "cosmos": v.cosmos, "f": functor_to_json(p.f, names),
                "g": functor_to_json(p.g, names), "r": functor_to_json(p.r, names),
                "rho": dict(sorted(p.rho.components.items()))}
    if kind == "adjunction":
        a = v.data
        names = _bicat_names([a.F.source, a.F.target])
        return {"bicats": _table(names), "cosmos": v.cosmos, "F": functor_to_json(a.F, names),
                "U": functor_to_json(a.U, names), "eta": dict(sorted(a.eta.components.items())),
                "eps": dict(sorted(a.eps.components.items()))}
    raise ValueError(f"unknown kind {kind!r}")


def _table(names) -> dict:
    return {n: bicat_to_json(b) for b, n in names.items()}


def document(kind: str, value) -> Document:
    return Document(kind, encode_value(kind, value))
