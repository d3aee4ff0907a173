"""Command-line check runner: ``bicatkit validate|check|list-checks|fixtures``."""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Callable

from . import formal2cat as f2, formalicon as fi
from .bicat import (FinBicat, NormalPseudofunctor, is_discrete_isofibration, is_equifibration,
                    is_isofibration_2cat, is_isofibration_icon, is_strict_2category, validate_2nat,
                    validate_bicat, validate_icon, validate_modification,
                    validate_normal_pseudofunctor)
from .constructions import cotensor_2cat, cotensor_icon
from .fincat import validate_fincat
from .probes import PROBE_NAMES
from .report import (DEFAULT_MAX_SEARCH, CheckReport, SearchLimitExceeded, ShapeError, max_search,
                     ok)
from .serialize import (Adjunction, CheckRequest, Document, DocumentError, Lifting, decode, dumps,
                        fincat_from_json, loads)
from .fixtures import FIXTURES, fixture_document

EXIT_TRUE, EXIT_FALSE, EXIT_ERROR, EXIT_LIMIT = 0, 1, 2, 3


class RequestError(ValueError):
    """The input does not fit the requested check."""


@dataclass(frozen=True)
class Check:
    name: str
    citation: str
    kind: str
    run: Callable[..., CheckReport]
    uses_probes: bool = False


# -- argument plumbing ----------------------------------------------------------

def _param(params: dict, key: str, default=None):
    if key in params:
        return params[key]
    if default is not None:
        return default
    raise RequestError(f"missing parameter {key!r}")


def _object(A: FinBicat, params: dict) -> str:
    default = A.objects[0] if len(A.objects) == 1 else None
    x = _param(params, "object", default)
    if x not in A.objects:
        raise RequestError(f"unknown object {x!r}")
    return x


def _lifting(value, cosmos: str):
    if value.cosmos != cosmos:
        raise RequestError(f"lifting problem lives in {value.cosmos}, check needs {cosmos}")
    return value.problem


def _adjunction(value, cosmos: str):
    if value.cosmos != cosmos:
        raise RequestError(f"adjunction lives in {value.cosmos}, check needs {cosmos}")
    return value.data


def _shape(params):
    try:
        return fincat_from_json(_param(params, "shape"), "$.params.shape")
    except DocumentError as e:
        raise RequestError(str(e)) from None


def _diagram(params) -> tuple[dict, dict]:
    d = _param(params, "diagram")
    if not isinstance(d, dict) or set(d) - {"objects", "cells1"} or "objects" not in d:
        raise RequestError("diagram must have 'objects' and optionally 'cells1'")
    return d["objects"], d.get("cells1", {})


def _limit_2cat(A, params):
    J = _shape(params)
    obs, c1 = _diagram(params)
    E, delta = cot = cotensor_2cat(A, J)
    D = None
    for name, F in E.labels["objects"].items():
        if dict(F.objects) == obs and all(F.on1(m) == f for m, f in c1.items()):
            D = name
            break
    if D is None:
        raise RequestError("diagram is not a 2-functor J → A")
    ell = _param(params, "apex")
    if ell not in A.objects:
        raise RequestError(f"unknown object {ell!r}")
    cone = _param(params, "cone")
    lam = next((s for s in E.hom(delta.ob(ell), D).objects
                if dict(E.labels["cells1"][s].components) == cone), None)
    if lam is None:
        raise RequestError("cone is not a 2-natural transformation Δ(apex) ⇒ diagram")
    return A, J, D, ell, lam, cot


def _limit_icon(A, params):
    J = _shape(params)
    obs, c1 = _diagram(params)
    if c1:
        raise RequestError("icon diagrams are object functions; 'cells1' is not allowed")
    cot = cotensor_icon(A, J)
    D = next((n for n, m in cot.labels["objects"].items()
              if all(obs.get(j) == x for j, x in m.items()) and set(obs) == set(J.objects)), None)
    if D is None:
        raise RequestError("diagram must assign one object to each path component of J")
    ell = _param(params, "apex")
    if ell not in A.objects:
        raise RequestError(f"unknown object {ell!r}")
    return fi.check_icon_limit(A, J, D, ell, cot=cot)


CHECKS = {c.name: c for c in [
    Check("2-equivalence", "2-Cat: equivalence = hom-isomorphism + surjective up to isomorphism",
          "pseudofunctor", lambda F, p, pr: f2.check_2equivalence(F)),
    Check("2-adjunction", "2-Cat: adjunction via triangle identities and hom-isomorphisms",
          "adjunction", lambda a, p, pr: f2.check_2adjunction(_adjunction(a, "2-Cat"))),
    Check("2-terminal", "2-Cat: 2-terminal object as adjunction to the terminal 2-category",
          "bicat", lambda A, p, pr: f2.check_2terminal(A, _object(A, p))),
    Check("2-initial", "2-Cat: 2-initial object as left adjoint to the terminal 2-category",
          "bicat", lambda A, p, pr: f2.check_2initial(A, _object(A, p))),
    Check("absolute-lifting-2cat", "2-Cat: absolute right lifting, probe-quantified",
          "lifting_problem", lambda L, p, pr: f2.probe_absolute_lifting_2cat(_lifting(L, "2-Cat"), pr),
          True),
    Check("enriched-lifting", "2-Cat: enriched absolute right lifting, probe-quantified",
          "lifting_problem", lambda L, p, pr: f2.check_enriched_lifting(_lifting(L, "2-Cat"), pr), True),
    Check("2-limit", "2-Cat: 2-limit as hom-isomorphism of cones",
          "bicat", lambda A, p, pr: f2.check_2limit(*_limit_2cat(A, p))),
    Check("all-limits-2cat", "2-Cat: limits of shape J as a right adjoint to the diagonal",
          "bicat", lambda A, p, pr: f2.check_all_limits_2cat(A, _shape(p))),
    Check("icon-equivalence", "Icon: equivalence = object bijection + local equivalences",
          "pseudofunctor", lambda F, p, pr: fi.check_icon_equivalence(F)),
    Check("icon-adjunction", "Icon: adjunction = object bijection + local adjunctions",
          "adjunction", lambda a, p, pr: fi.check_icon_adjunction(_adjunction(a, "Icon"))),
    Check("icon-terminal", "Icon: terminal object = one object with terminal identity",
          "bicat", lambda A, p, pr: fi.check_icon_terminal(A, _object(A, p))),
    Check("semicartesian", "Icon: monoidal unit is terminal (semi-cartesian)",
          "bicat", lambda A, p, pr: fi.is_semicartesian(A)),
    Check("icon-absolute-lifting", "Icon: absolute lifting = object pullback + hom-wise liftings",
          "lifting_problem", lambda L, p, pr: fi.check_icon_absolute_lifting(_lifting(L, "Icon"))),
    Check("icon-lifting-probes", "Icon: absolute right lifting, probe-quantified",
          "lifting_problem", lambda L, p, pr: fi.probe_absolute_lifting_icon(_lifting(L, "Icon"), pr),
          True),
    Check("icon-limit", "Icon: limits are constant diagrams whose identity is a local limit",
          "bicat", lambda A, p, pr: _limit_icon(A, p)),
    Check("isofibration-2cat", "2-Cat: isofibration of underlying categories",
          "pseudofunctor", lambda F, p, pr: is_isofibration_2cat(F)),
    Check("isofibration-icon", "Icon: hom-wise isofibration",
          "pseudofunctor", lambda F, p, pr: is_isofibration_icon(F)),
    Check("discrete-isofibration", "2-Cat: isofibration with unique invertible lifts",
          "pseudofunctor", lambda F, p, pr: is_discrete_isofibration(F)),
    Check("equifibration", "Bicat: equivalences lift and homs are isofibrations",
          "pseudofunctor", lambda F, p, pr: is_equifibration(F)),
    Check("strict-2category", "associator and unitors are identities",
          "bicat", lambda A, p, pr: is_strict_2category(A)),
]}


def _validate_lifting(L) -> CheckReport:
    p = L.problem
    for name, F in (("f", p.f), ("g", p.g), ("r", p.r)):
        r = validate_normal_pseudofunctor(F)
        if not r:
            return CheckReport(False, {"functor": name, "detail": r.witness}, r.reason)
    return (validate_icon if L.cosmos == "Icon" else validate_2nat)(p.rho)


def _validate_adjunction(a) -> CheckReport:
    d = a.data
    for name, F in (("F", d.F), ("U", d.U)):
        r = validate_normal_pseudofunctor(F)
        if not r:
            return CheckReport(False, {"functor": name, "detail": r.witness}, r.reason)
    check = validate_icon if a.cosmos == "Icon" else validate_2nat
    for name, t in (("eta", d.eta), ("eps", d.eps)):
        r = check(t)
        if not r:
            return CheckReport(False, {"cell": name, "detail": r.witness}, r.reason)
    return ok()


VALIDATORS = {
    "fincat": validate_fincat,
    "bicat": validate_bicat,
    "pseudofunctor": validate_normal_pseudofunctor,
    "icon": validate_icon,
    "two_nat": validate_2nat,
    "modification": validate_modification,
    "lifting_problem": _validate_lifting,
    "adjunction": _validate_adjunction,
}


def validate_document(doc: Document) -> CheckReport:
    value = decode(doc)
    if doc.kind == "check_request":
        return validate_document(value.input)
    return VALIDATORS[doc.kind](value)


def run_check(name: str, doc: Document, *, probes=None, params=None) -> CheckReport:
    """Run a registered check on a document (a plain payload or a check request)."""
    params = dict(params or {})
    if doc.kind == "check_request":
        req: CheckRequest = decode(doc)
        if name is None:
            name = req.check
        elif req.check != name:
            raise RequestError(f"request is for {req.check!r}, not {name!r}")
        params = {**req.params, **params}
        doc = req.input
    if name not in CHECKS:
        raise RequestError(f"unknown check {name!r}")
    check = CHECKS[name]
    if doc.kind != check.kind:
        raise RequestError(f"check {name!r} needs a {check.kind} document, got {doc.kind}")
    return check.run(decode(doc), params, probes)


# -- reports ---------------------------------------------------------------------

def make_report(name: str, r: CheckReport, elapsed_ms) -> dict:
    out = {"check": name, "verdict": r.verdict, "citations": [CHECKS[name].citation] if name in CHECKS else [],
           "elapsed_ms": elapsed_ms}
    if r.reason:
        out["reason"] = r.reason
    if r.witness is not None:
        out["witness"] = r.witness
    if r.probes:
        out["probes"] = list(r.probes)
    return out


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False, default=str) + "\n"
    lines = [f"{report['check']}: {'true' if report['verdict'] else 'false'}"]
    for key in ("reason", "witness", "probes", "citations", "elapsed_ms"):
        if key in report and report[key] is not None:
            v = report[key]
            lines.append(f"  {key}: {v if isinstance(v, (str, int, float)) else json.dumps(v, sort_keys=True, default=str)}")
    return "\n".join(lines) + "\n"


# -- entry point ---------------------------------------------------------------------

def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="bicatkit", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--input", action="append", default=[], metavar="PATH",
                        help="input document (repeatable; '-' reads stdin)")
        sp.add_argument("--max-search", type=int, default=DEFAULT_MAX_SEARCH, metavar="N",
                        help="abort enumerations past N visited candidates")
        sp.add_argument("--report", choices=("json", "text"), default="json")
        sp.add_argument("--no-timing", action="store_true",
                        help="report elapsed_ms as null, for byte-identical output")

    v = sub.add_parser("validate", help="check a document against its axioms")
    common(v)
    c = sub.add_parser("check", help="run a registered decision procedure")
    c.add_argument("name", help="check name, or 'request' to use the name in a check_request document")
    common(c)
    c.add_argument("--probes", metavar="NAMES",
                   help=f"comma-separated probe battery from {', '.join(PROBE_NAMES)}")
    c.add_argument("--param", action="append", default=[], metavar="KEY=VALUE",
                   help="check parameter; VALUE is decoded as JSON when it starts with {, [ or a quote")
    sub.add_parser("list-checks", help="list registered checks")
    f = sub.add_parser("fixtures", help="write all shipped fixtures as documents")
    f.add_argument("directory")
    return p


def _read(path: str) -> Document:
    text = sys.stdin.read() if path == "-" else Path(path).read_text(encoding="utf-8")
    try:
        return loads(text)
    except DocumentError as e:
        raise DocumentError(str(e).split(": ", 1)[1], f"{path}: {e.path}") from None


def _params(items) -> dict:
    out = {}
    for item in items:
        key, sep, val = item.partition("=")
        if not sep:
            raise RequestError(f"--param expects KEY=VALUE, got {item!r}")
        # object names like 0 and 1 stay strings; only structured values are decoded
        if val[:1] in ("{", "[", '"'):
            try:
                val = json.loads(val)
            except json.JSONDecodeError as e:
                raise RequestError(f"--param {key}: {e.msg}") from None
        out[key] = val
    return out


def _probes(text):
    if text is None:
        return None
    names = [s.strip() for s in text.split(",") if s.strip()]
    bad = [n for n in names if n not in PROBE_NAMES]
    if bad or not names:
        raise RequestError(f"unknown probe {bad[0]!r}" if bad else "empty probe list")
    return names


def main(argv=None, out=None) -> int:
    out = out if out is not None else sys.stdout
    args = _parser().parse_args(argv)
    if args.command == "list-checks":
        for c in CHECKS.values():
            out.write(f"{c.name}\t{c.citation}\n")
        return EXIT_TRUE
    if args.command == "fixtures":
        target = Path(args.directory)
        target.mkdir(parents=True, exist_ok=True)
        for name in FIXTURES:
            (target / f"{name}.json").write_text(dumps(fixture_document(name)), encoding="utf-8")
            out.write(f"{name}.json\n")
        return EXIT_TRUE
    start = time.perf_counter()
    name = args.command if args.command == "validate" else args.name
    try:
        if not args.input:
            raise RequestError("no --input given")
        docs = [_read(p) for p in args.input]
        probes = _probes(getattr(args, "probes", None))
        params = _params(getattr(args, "param", []))
        results = []
        with max_search(args.max_search):
            for doc in docs:
                if args.command == "validate":
                    results.append(("validate", validate_document(doc)))
                else:
                    n = None if name == "request" else name
                    if n is None and doc.kind != "check_request":
                        raise RequestError("'request' needs a check_request document")
                    label = n or decode(doc).check
                    results.append((label, run_check(n, doc, probes=probes, params=params)))
    except SearchLimitExceeded as e:
        return _error(out, args, name, "size guard", str(e), EXIT_LIMIT)
    except (DocumentError, RequestError, ShapeError, OSError) as e:
        return _error(out, args, name, type(e).__name__, str(e), EXIT_ERROR)
    elapsed = None if args.no_timing else round((time.perf_counter() - start) * 1000, 3)
    for label, r in results:
        out.write(render(make_report(label, r, elapsed), args.report))
    return EXIT_TRUE if all(r.verdict for _, r in results) else EXIT_FALSE


def _error(out, args, name, kind, message, code) -> int:
    report = {"check": name, "error": kind, "message": message, "exit_status": code}
    if args.report == "json":
        out.write(json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n")
    else:
        out.write(f"{name}: error ({kind}): {message}\n")
    return code


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
