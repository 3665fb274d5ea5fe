"""Batch front-end: validate instance files and run the library's checks.

Every invocation reads one JSON instance file, dispatches on a verb, and
emits a deterministic report (text or JSON).  Exit codes: 0 when the
verdict is true/valid, 1 when it is false, 2 on input errors (unparsable
files, schema violations, or instances that fail their preconditions).

Instance files carry a ``kind`` field matched against a shipped JSON
schema; run ``morpheq --help`` for the verb list and see the schemas
directory for the exact file formats.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from importlib import resources

import jsonschema
import numpy as np

from .catkernel import (
    Finite2Category,
    FiniteCategory,
    FunctorData,
    MorphismFunction,
    Violation,
)
from .equivalence import EquivData, are_equivalent, equivalence_classes, verify_witness
from .errors import MorpheqError, ParseError, SchemaError
from .frames import (
    BesselFamily,
    TOL_PSD,
    TOL_RANK,
    def_equivalent_with_witness,
    frame_operator,
    is_frame,
    onb_witness,
    transport_form,
)
from .group_action import (
    GroupAction,
    delooped_equivalent,
    orbit_equivalent,
    orbit_partition,
)
from .preord_mset import (
    CentralCell,
    MonotoneMap,
    PreordObject,
    check_interchange,
    compose_cells_horizontal,
    compose_cells_vertical,
    is_two_cell,
)
from .seminorm_bridge import (
    SeminormRep,
    ambient_norm,
    bridge_composite,
    bridge_composite_staged,
    bridge_equivalent,
    probe_vectors,
)
from .errors import InvalidCell, NotParallel

SCHEMA_VERSION = 1

_VERBS = ("validate", "equiv", "classes", "orbit-check", "preord-check", "frame", "bridge")

_VERB_KINDS = {
    "validate": ("category", "two_category", "equiv_instance"),
    "equiv": ("equiv_instance",),
    "classes": ("equiv_instance",),
    "orbit-check": ("group_action",),
    "preord-check": ("preord_suite",),
    "frame": ("family",),
    "bridge": ("bridge",),
}


@dataclass(frozen=True)
class RunConfig:
    verb: str
    input: str
    tol_rank: float = TOL_RANK
    tol_psd: float = TOL_PSD
    seed: int = 0
    format: str = "text"
    out: str | None = None

    def __post_init__(self):
        if self.tol_rank <= 0 or self.tol_psd <= 0:
            raise ValueError("tolerances must be positive")


# ---------------------------------------------------------------- loading


def _load(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path} is not valid JSON: {exc}") from exc


def _check_schema(doc):
    if not isinstance(doc, dict) or "kind" not in doc:
        raise SchemaError("instance files must be objects with a 'kind' field")
    kind = doc["kind"]
    try:
        text = resources.files("morpheq").joinpath("schemas", f"{kind}.schema.json").read_text()
    except (FileNotFoundError, OSError):
        raise SchemaError(f"unknown instance kind {kind!r}") from None
    try:
        jsonschema.validate(doc, json.loads(text))
    except jsonschema.ValidationError as exc:
        path = "/".join(str(p) for p in exc.absolute_path) or "(top level)"
        raise SchemaError(f"at {path}: {exc.message}") from None
    return kind


def _entry(v):
    if isinstance(v, list):
        return complex(v[0], v[1])
    return complex(v)


def _matrix(rows, field="complex"):
    a = np.array([[_entry(v) for v in row] for row in rows], dtype=complex)
    if field == "real":
        if np.any(a.imag != 0):
            raise ParseError("real instance contains non-real entries")
        return a.real
    return a


def _family(doc):
    field = doc["field"]
    vectors = _matrix(doc["vectors"], field)
    if vectors.ndim != 2:
        raise ParseError("vectors must form a rectangular array")
    return BesselFamily(field, doc["dim"], doc["weights"], vectors.T)


def _build_equiv(doc, *, validate=True):
    # the checking verbs demand lawful carriers (broken tables are an input
    # error); the validate verb passes False and reports violations itself
    c = FiniteCategory.from_dict(doc["c"], validate=validate)
    d = Finite2Category.from_dict(doc["d"], validate=validate)
    sigma = MorphismFunction(c, d, doc["sigma"]["objects"], doc["sigma"]["morphisms"], validate=False)
    tau1 = FunctorData(c, d, doc["tau1"]["objects"], doc["tau1"]["morphisms"], validate=False)
    tau2 = FunctorData(c, d, doc["tau2"]["objects"], doc["tau2"]["morphisms"], validate=False)
    return EquivData(c, d, sigma, tau1, tau2, validate=validate)


# ---------------------------------------------------------------- reports


def _py(v):
    """Coerce report leaves to plain JSON-serializable Python values."""
    if isinstance(v, dict):
        return {k: _py(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_py(x) for x in v]
    if isinstance(v, (np.floating, np.integer)):
        return v.item()
    if isinstance(v, np.bool_):
        return bool(v)
    return v


def _text_items(value, key):
    if isinstance(value, dict):
        if not value:
            yield key, "{}"
        for k in sorted(value):
            yield from _text_items(value[k], f"{key}.{k}" if key else k)
    elif isinstance(value, list):
        if not value:
            yield key, "[]"
        for i, v in enumerate(value):
            yield from _text_items(v, f"{key}[{i}]")
    else:
        yield key, json.dumps(value)


def _render(report, fmt):
    report = _py(report)
    if fmt == "json":
        return json.dumps(report, indent=2, sort_keys=True, allow_nan=False) + "\n"
    return "".join(f"{k} = {v}\n" for k, v in _text_items(report, ""))


def _violations(report):
    return [{"code": v.code, "detail": v.detail} for v in report]


# ---------------------------------------------------------------- verbs


def _run_validate(doc, kind, cfg):
    if kind == "category":
        found = FiniteCategory.from_dict(doc, validate=False).validate()
    elif kind == "two_category":
        found = Finite2Category.from_dict(doc, validate=False).validate()
    else:
        e = _build_equiv(doc, validate=False)
        found = [Violation("c:" + v.code, v.detail) for v in e.c.validate()]
        found += [Violation("d:" + v.code, v.detail) for v in e.d.validate()]
        if not found:
            if e.tau1.object_map != e.sigma.object_map or e.tau2.object_map != e.sigma.object_map:
                found.append(Violation("object-map-disagree", "sigma/tau1/tau2"))
            for part, name in ((e.sigma, "sigma"), (e.tau1, "tau1"), (e.tau2, "tau2")):
                found += [Violation(f"{name}:{v.code}", v.detail) for v in part.validate()]
    ok = not found
    return (0 if ok else 1), {"valid": ok, "violations": _violations(found)}


def _run_equiv(doc, cfg):
    if "pair" not in doc:
        raise SchemaError("equiv needs a 'pair' of morphism ids")
    e = _build_equiv(doc)
    m, m_tilde = doc["pair"]
    ok, witness = are_equivalent(e, m, m_tilde)
    wdump = None
    if ok:
        check = verify_witness(e, m, m_tilde, witness)
        wdump = {
            "u1": witness.u1, "u2": witness.u2, "v1": witness.v1, "v2": witness.v2,
            "phi": witness.phi, "phi_tilde": witness.phi_tilde,
            "psi": witness.psi, "psi_tilde": witness.psi_tilde,
            "verified": bool(check),
        }
    return (0 if ok else 1), {"pair": [m, m_tilde], "equivalent": ok, "witness": wdump}


def _run_classes(doc, cfg):
    e = _build_equiv(doc)
    blocks = equivalence_classes(e)
    return 0, {"count": len(blocks), "classes": [list(b) for b in blocks]}


def _run_orbit_check(doc, cfg):
    action = GroupAction.from_dict(doc)
    bound = doc.get("max_chain_length", 1)
    pairs = []
    all_agree = True
    for x in action.carrier:
        for y in action.carrier:
            orb, _ = orbit_equivalent(action, x, y)
            slow, _ = delooped_equivalent(action, x, y, bound)
            agree = orb == slow
            all_agree = all_agree and agree
            pairs.append({"x": x, "y": y, "orbit": orb, "delooped": slow, "agree": agree})
    report = {
        "carrier_size": len(action.carrier),
        "max_chain_length": bound,
        "orbit_partition": [list(b) for b in orbit_partition(action)],
        "pairs": pairs,
        "all_agree": all_agree,
    }
    return (0 if all_agree else 1), report


def _run_preord_check(doc, cfg):
    objects = {}
    object_reports = {}
    for od in doc["objects"]:
        act = None
        if "act" in od:
            act = {(g, x): y for g, x, y in od["act"]}
        obj = PreordObject(
            od["name"], od["carrier"], od.get("leq"), od.get("generators", ()), act,
            validate=False,
        )
        objects[od["name"]] = obj
        object_reports[od["name"]] = _violations(obj.validate())
    report = {"objects": object_reports}
    if any(object_reports.values()):
        return 1, {**report, "all_ok": False}

    maps = {}
    map_reports = {}
    for md in doc["maps"]:
        if md["dom"] not in objects or md["cod"] not in objects:
            raise SchemaError(f"map {md['name']!r} references an unknown object")
        mp = MonotoneMap(md["name"], objects[md["dom"]], objects[md["cod"]], md["table"], validate=False)
        maps[md["name"]] = mp
        map_reports[md["name"]] = _violations(mp.validate())
    report["maps"] = map_reports
    if any(map_reports.values()):
        return 1, {**report, "all_ok": False}

    cells = {}
    cell_reports = {}
    for cd in doc["cells"]:
        if cd["src"] not in maps or cd["tgt"] not in maps:
            raise SchemaError(f"cell {cd['name']!r} references an unknown map")
        try:
            valid = is_two_cell(cd["scalar"], maps[cd["src"]], maps[cd["tgt"]])
        except NotParallel:
            valid = False
        cell_reports[cd["name"]] = valid
        if valid:
            cells[cd["name"]] = CentralCell(cd["scalar"], maps[cd["src"]], maps[cd["tgt"]])
    report["cells"] = cell_reports
    all_ok = all(cell_reports.values())

    # composites of declared valid cells stay valid, and the two evaluation
    # orders of every square of composable cells agree
    names = sorted(cells)
    composite_failures = []
    vpairs = []
    for a in names:
        for b in names:
            ca, cb = cells[a], cells[b]
            if ca.tgt.equals(cb.src):
                try:
                    compose_cells_vertical(cb, ca)
                    vpairs.append((a, b))
                except InvalidCell:
                    composite_failures.append({"kind": "vertical", "cells": [a, b]})
            if ca.src.cod is cb.src.dom:
                try:
                    compose_cells_horizontal(cb, ca)
                except InvalidCell:
                    composite_failures.append({"kind": "horizontal", "cells": [a, b]})
    interchange_checked = 0
    interchange_failures = []
    for a, b in vpairs:
        for c, d in vpairs:
            if cells[a].src.cod is cells[c].src.dom:
                interchange_checked += 1
                if not check_interchange(cells[a], cells[b], cells[c], cells[d]):
                    interchange_failures.append([a, b, c, d])
    report["composite_failures"] = composite_failures
    report["interchange_checked"] = interchange_checked
    report["interchange_failures"] = interchange_failures
    all_ok = all_ok and not composite_failures and not interchange_failures
    report["all_ok"] = all_ok
    return (0 if all_ok else 1), report


def _run_frame(doc, cfg):
    fam = _family(doc)
    verdict = is_frame(fam, tol_rank=cfg.tol_rank)
    p = frame_operator(fam)
    tight = verdict.upper > 0 and (verdict.upper - verdict.lower) <= cfg.tol_psd * verdict.upper
    report = {
        "dim": fam.dim,
        "count": fam.count,
        "is_frame": verdict.is_frame,
        "lower_bound": verdict.lower,
        "upper_bound": verdict.upper,
        "tight": bool(tight),
    }
    ok = verdict.is_frame
    if verdict.is_frame:
        u, u_tilde = onb_witness(fam)
        white = transport_form(u, p)
        dev = float(np.linalg.norm(white.matrix - np.eye(fam.dim), 2))
        report["onb_witness_valid"] = dev <= cfg.tol_psd
        ok = ok and report["onb_witness_valid"]
    if "compare" in doc:
        other = _family(doc["compare"]["family"])
        u = _matrix(doc["compare"]["u"])
        u_tilde = _matrix(doc["compare"]["u_tilde"])
        dv = def_equivalent_with_witness(fam, other, u, u_tilde, tol_rank=cfg.tol_rank)
        report["compare"] = {
            "equivalent": dv.equivalent,
            "forward": _compare_dump(dv.forward),
            "backward": _compare_dump(dv.backward),
        }
        ok = ok and dv.equivalent
    return (0 if ok else 1), report


def _compare_dump(v):
    out = {"equivalent": v.equivalent}
    if v.equivalent:
        out["k1"] = v.k1
        out["k2"] = v.k2
    else:
        out["reason"] = v.reason
    return out


def _run_bridge(doc, cfg):
    f = _family(doc["f"])
    f_tilde = _family(doc["f_tilde"])
    ops = {k: _matrix(doc[k]) for k in ("u1", "u2", "v1", "v2")}
    verdict = bridge_equivalent(
        f, f_tilde, ops["u1"], ops["u2"], ops["v1"], ops["v2"], tol_rank=cfg.tol_rank
    )
    if "seminorm" in doc:
        s = SeminormRep(doc["seminorm"]["scale"], _matrix(doc["seminorm"]["op"]))
    else:
        s = ambient_norm(f_tilde.count)
    closed = bridge_composite(f, ops["u1"], ops["u2"], s)
    staged = bridge_composite_staged(f, ops["u1"], ops["u2"], s)
    dev = 0.0
    for x in probe_vectors(f_tilde.dim, doc.get("probes", 16), seed=cfg.seed):
        a, b = closed(x), staged(x)
        dev = max(dev, abs(a - b) / max(a, b, 1.0))
    direct = def_equivalent_with_witness(
        f, f_tilde, ops["u1"].conj().T, ops["v1"].conj().T, tol_rank=cfg.tol_rank
    )
    report = {
        "equivalent": verdict.equivalent,
        "forward": _compare_dump(verdict.forward),
        "backward": _compare_dump(verdict.backward),
        "cells": list(verdict.cells) if verdict.cells else None,
        "seminorm_dominated": s.dominated,
        "staged_closed_dev": dev,
        "matches_direct_test": direct.equivalent == verdict.equivalent,
    }
    return (0 if verdict.equivalent else 1), report


# ---------------------------------------------------------------- driver


def _dispatch(cfg: RunConfig):
    doc = _load(cfg.input)
    kind = _check_schema(doc)
    if kind not in _VERB_KINDS[cfg.verb]:
        raise SchemaError(
            f"verb {cfg.verb!r} expects kind in {list(_VERB_KINDS[cfg.verb])}, got {kind!r}"
        )
    if cfg.verb == "validate":
        return _run_validate(doc, kind, cfg)
    if cfg.verb == "equiv":
        return _run_equiv(doc, cfg)
    if cfg.verb == "classes":
        return _run_classes(doc, cfg)
    if cfg.verb == "orbit-check":
        return _run_orbit_check(doc, cfg)
    if cfg.verb == "preord-check":
        return _run_preord_check(doc, cfg)
    if cfg.verb == "frame":
        return _run_frame(doc, cfg)
    return _run_bridge(doc, cfg)


def _emit(text, cfg):
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="morpheq",
        description="Validate and analyze finite equivalence instances.",
    )
    parser.add_argument("--input", required=True, help="path to a JSON instance file")
    parser.add_argument("--verb", required=True, choices=_VERBS, help="what to run")
    parser.add_argument("--tol-rank", type=float, default=TOL_RANK,
                        help="relative kernel threshold for spectral tests")
    parser.add_argument("--tol-psd", type=float, default=TOL_PSD,
                        help="relative slack for semidefinite and tightness tests")
    parser.add_argument("--seed", type=int, default=0, help="seed for probe vectors")
    parser.add_argument("--format", choices=("text", "json"), default="text")
    parser.add_argument("--out", default=None, help="write the report here instead of stdout")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = RunConfig(args.verb, args.input, args.tol_rank, args.tol_psd,
                        args.seed, args.format, args.out)
    except ValueError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    base = {"schema_version": SCHEMA_VERSION, "verb": cfg.verb}
    try:
        code, body = _dispatch(cfg)
    except (ParseError, SchemaError) as exc:
        _emit(_render({**base, "error": {"type": type(exc).__name__, "message": str(exc)}},
                      cfg.format), cfg)
        return 2
    except MorpheqError as exc:
        _emit(_render({**base, "error": {"type": type(exc).__name__, "message": str(exc)}},
                      cfg.format), cfg)
        return 2
    _emit(_render({**base, **body}, cfg.format), cfg)
    return code


if __name__ == "__main__":
    sys.exit(main())
