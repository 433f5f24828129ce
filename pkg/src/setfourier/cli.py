"""Command-line front end.

Single run from flags::

    setfourier --group 2,2,2,2,2,2,2,2,2,2 --set subgroup:dim=8 --cmd theorem --laws main,cor

or from a JSON experiment document (an object, or a list of objects run as
a batch)::

    setfourier --spec experiment.json --format csv

Exit codes: 0 ok, 1 some law failed, 2 usage error, 3 budget exceeded.
"""
from __future__ import annotations

import argparse
import concurrent.futures
import csv
import io
import json
import math
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Optional

import jsonschema
import numpy as np

from . import laws
from .config import use_limits
from .constructions import KINDS, SetSpec, build, hill_climb_tightness
from .errors import ExactnessError, ResourceError, SizeError, ValidationError
from .group import make_group
from .quantities import quantity_report

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3

COMMANDS = ("compute", "verify", "theorem", "construct", "search")
THEOREM_LAWS = ("main", "cor", "l", "k", "energy", "remark1", "remark2")

_SETSPEC_SCHEMA = {
    "type": "object",
    "required": ["kind"],
    "additionalProperties": False,
    "properties": {
        "kind": {"enum": list(KINDS)},
        "params": {"type": "object"},
        "seed": {"type": "integer", "minimum": 0, "maximum": 2**64 - 1},
    },
}

SCHEMA = {
    "type": "object",
    "required": ["group", "command"],
    "additionalProperties": False,
    "properties": {
        "group": {"type": "array", "items": {"type": "integer", "minimum": 1}},
        "set_a": _SETSPEC_SCHEMA,
        "set_b": {"oneOf": [_SETSPEC_SCHEMA, {"type": "null"}]},
        "command": {"enum": list(COMMANDS)},
        "params": {"type": "object"},
        "format": {"enum": ["json", "csv"]},
        "limits": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "max_n": {"type": "integer", "minimum": 1},
                "max_tuples": {"type": "integer", "minimum": 1},
                "max_combinations": {"type": "integer", "minimum": 1},
            },
        },
    },
}


@dataclass
class ExperimentSpec:
    group: list[int]
    command: str
    set_a: Optional[SetSpec] = None
    set_b: Optional[SetSpec] = None
    params: dict[str, Any] = field(default_factory=dict)
    format: str = "json"
    limits: dict[str, int] = field(default_factory=dict)

    def to_dict(self) -> dict:
        d: dict[str, Any] = {"group": list(self.group), "command": self.command}
        if self.set_a is not None:
            d["set_a"] = self.set_a.to_dict()
        if self.set_b is not None:
            d["set_b"] = self.set_b.to_dict()
        d["params"] = dict(self.params)
        d["format"] = self.format
        if self.limits:
            d["limits"] = dict(self.limits)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "ExperimentSpec":
        try:
            jsonschema.validate(d, SCHEMA)
        except jsonschema.ValidationError as exc:
            raise ValidationError(f"experiment spec: {exc.message}") from None
        return cls(
            group=list(d["group"]),
            command=d["command"],
            set_a=SetSpec.from_dict(d["set_a"]) if d.get("set_a") else None,
            set_b=SetSpec.from_dict(d["set_b"]) if d.get("set_b") else None,
            params=dict(d.get("params", {})),
            format=d.get("format", "json"),
            limits=dict(d.get("limits", {})),
        )


# -- parsing helpers ----------------------------------------------------------------


def _scalar(text: str):
    for conv in (int, float):
        try:
            return conv(text)
        except ValueError:
            pass
    return text


def parse_set(text: str, seed: int = 0) -> SetSpec:
    """``kind:tok,tok,key=value`` to a :class:`SetSpec`.

    Bare tokens are elements (``explicit``) or generators (subgroup kinds);
    an element is an index, ``eI`` or dotted coordinates such as ``1.0.1``.
    """
    kind, _, rest = text.partition(":")
    kind = kind.strip()
    if kind not in KINDS:
        raise ValidationError(f"unknown set kind {kind!r}")
    params: dict[str, Any] = {}
    bare: list = []
    for tok in filter(None, (t.strip() for t in rest.split(","))):
        if "=" in tok:
            key, _, value = tok.partition("=")
            params[key.strip()] = _scalar(value.strip())
        else:
            bare.append(int(tok) if tok.lstrip("-").isdigit() else tok)
    if bare:
        params["elements" if kind == "explicit" else "generators"] = bare
    seed = int(params.pop("seed", seed))
    return SetSpec(kind, params, seed)


def _int_list(text: Optional[str]) -> Optional[list[int]]:
    if text is None:
        return None
    return [int(t) for t in text.split(",") if t.strip()]


# -- output ---------------------------------------------------------------------------


def _clean(value):
    """JSON-ready value; floats rounded to 12 significant digits."""
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, Fraction):
        return int(value) if value.denominator == 1 else _clean(float(value))
    if isinstance(value, (float, np.floating)):
        v = float(value)
        if math.isnan(v) or math.isinf(v):
            return str(v)
        return float(f"{v:.12g}")
    if isinstance(value, dict):
        return {str(k): _clean(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, np.ndarray)):
        return [_clean(v) for v in value]
    return value


def _flatten(d: dict, prefix: str = "") -> dict:
    flat: dict = {}
    for k, v in d.items():
        key = f"{prefix}{k}"
        if isinstance(v, dict):
            flat.update(_flatten(v, key + "."))
        else:
            flat[key] = v
    return flat


def _csv_cell(v) -> str:
    if isinstance(v, str):
        return v
    return json.dumps(v)


def render(document: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(document, indent=2) + "\n"
    rows = [_flatten(r) for r in document["results"]]
    columns: list[str] = []
    for r in rows:
        columns.extend(c for c in r if c not in columns)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for r in rows:
        writer.writerow([_csv_cell(r[c]) if c in r else "" for c in columns])
    return buf.getvalue()


# -- execution ------------------------------------------------------------------------


def _law_dict(rep: laws.LawReport, timing: bool) -> dict:
    return rep.to_dict(timing=timing)


def _run_theorems(spec: ExperimentSpec, A, B) -> list[laws.LawReport]:
    p = spec.params
    names = p.get("laws", ["main", "cor"])
    if isinstance(names, str):
        names = [n for n in names.split(",") if n]
    out: list[laws.LawReport] = []
    for name in names:
        if name not in THEOREM_LAWS:
            raise ValidationError(f"unknown law {name!r}; choose from {THEOREM_LAWS}")
        if name == "remark1":
            out.append(laws.eval_remark_counterexample(
                int(p.get("p", make_group(spec.group).N)),
                p.get("variant", "quadratic_residues"),
                int(p.get("seed", spec.set_a.seed if spec.set_a else 0)),
            ))
            continue
        if A is None:
            raise ValidationError(f"law {name!r} needs set_a")
        if name == "main":
            out.extend(laws.eval_theorem_main(A, B))
        elif name == "cor":
            out.append(laws.eval_theorem_cor(A))
        elif name == "l":
            out.append(laws.eval_theorem_l(A, int(p.get("l", 2))))
        elif name == "k":
            out.extend(laws.eval_theorem_k(A, int(p.get("s", 1))))
        elif name == "energy":
            out.append(laws.eval_theorem_energy(A))
        elif name == "remark2":
            out.append(laws.eval_remark_energy(A, int(p.get("k", 2))))
    return out


def execute(spec: ExperimentSpec, timing: bool = False) -> tuple[dict, int]:
    """Run one experiment; returns the report document and its exit code."""
    limits = {k: v for k, v in spec.limits.items() if v is not None}
    with use_limits(**limits):
        G = make_group(spec.group)
        A = build(spec.set_a, G) if spec.set_a else None
        B = build(spec.set_b, G) if spec.set_b else None
        p = spec.params
        results: list[dict] = []
        law_reports: list[laws.LawReport] = []
        cmd = spec.command
        if cmd in ("compute", "construct"):
            if A is None:
                raise ValidationError(f"{cmd} needs set_a")
            q = quantity_report(A, B, t_orders=p.get("t_orders", [2, 3]), eps_orders=p.get("eps_orders", [2]))
            row = {"kind": "quantities", **q.to_dict()}
            if cmd == "construct":
                row["elements"] = A.indices.tolist()
            results.append(row)
        elif cmd == "verify":
            law_reports = laws.identity_suite(G, int(p.get("seed", 0)), int(p.get("trials", 5)))
        elif cmd == "theorem":
            law_reports = _run_theorems(spec, A, B)
        elif cmd == "search":
            best, trace = hill_climb_tightness(
                G,
                int(p.get("target_size", max(1, G.N // 16))),
                p.get("objective", "theorem_cor"),
                int(p.get("seed", 0)),
                int(p.get("iterations", 500)),
            )
            results.append({
                "kind": "search",
                "objective": p.get("objective", "theorem_cor"),
                "seed": int(p.get("seed", 0)),
                "initial": trace[0],
                "final": trace[-1],
                "trace": trace,
                "elements": best.indices.tolist(),
            })
        else:
            raise ValidationError(f"unknown command {cmd!r}")
        results.extend(_law_dict(r, timing) for r in law_reports)
    code = EXIT_FAILED if any(r.verdict == laws.FAILS for r in law_reports) else EXIT_OK
    doc = {"command": cmd, "spec": spec.to_dict(), "results": results}
    return _clean(doc), code


def run(spec: ExperimentSpec, timing: bool = False) -> tuple[str, int]:
    """Serialised report and exit code."""
    doc, code = execute(spec, timing)
    return render(doc, spec.format), code


def _execute_safe(args: tuple[dict, bool]) -> tuple[Optional[dict], int, str]:
    spec_dict, timing = args
    try:
        doc, code = execute(ExperimentSpec.from_dict(spec_dict), timing)
        return doc, code, ""
    except (SizeError, ResourceError, ExactnessError) as exc:
        return None, EXIT_RESOURCE, f"resource error: {exc}"
    except ValidationError as exc:
        return None, EXIT_USAGE, f"usage error: {exc}"


def _spec_from_flags(ns: argparse.Namespace) -> dict:
    if ns.group is None or ns.cmd is None:
        raise ValidationError("--group and --cmd are required without --spec")
    d: dict[str, Any] = {"group": _int_list(ns.group), "command": ns.cmd, "format": ns.format}
    if ns.set:
        d["set_a"] = parse_set(ns.set, ns.seed).to_dict()
    if ns.set_b:
        d["set_b"] = parse_set(ns.set_b, ns.seed).to_dict()
    params: dict[str, Any] = {"seed": ns.seed}
    for name in ("k", "l", "s", "p", "variant", "iterations", "target_size", "objective", "trials"):
        value = getattr(ns, name)
        if value is not None:
            params[name] = value
    if ns.laws:
        params["laws"] = [t for t in ns.laws.split(",") if t]
    if ns.t_orders:
        params["t_orders"] = _int_list(ns.t_orders)
    if ns.eps_orders:
        params["eps_orders"] = _int_list(ns.eps_orders)
    d["params"] = params
    limits = {"max_n": ns.max_n, "max_tuples": ns.max_tuples, "max_combinations": ns.max_combinations}
    d["limits"] = {k: v for k, v in limits.items() if v is not None}
    return d


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="setfourier", description=__doc__.split("\n\n")[0])
    ap.add_argument("--spec", help="JSON experiment document (object or list)")
    ap.add_argument("--group", help="cyclic orders, e.g. 2,2,2,2")
    ap.add_argument("--set", help="set A, e.g. subgroup:e1,e2 or random:q=0.5")
    ap.add_argument("--set-b", dest="set_b", help="optional set B")
    ap.add_argument("--cmd", choices=COMMANDS)
    ap.add_argument("--laws", help=f"comma list from {','.join(THEOREM_LAWS)}")
    ap.add_argument("--k", type=int)
    ap.add_argument("--l", type=int)
    ap.add_argument("--s", type=int)
    ap.add_argument("--p", type=int)
    ap.add_argument("--variant", choices=("quadratic_residues", "random"))
    ap.add_argument("--iterations", type=int)
    ap.add_argument("--target-size", dest="target_size", type=int)
    ap.add_argument("--objective")
    ap.add_argument("--trials", type=int)
    ap.add_argument("--t-orders", dest="t_orders")
    ap.add_argument("--eps-orders", dest="eps_orders")
    ap.add_argument("--format", choices=("json", "csv"))
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--max-n", dest="max_n", type=int)
    ap.add_argument("--max-tuples", dest="max_tuples", type=int)
    ap.add_argument("--max-combinations", dest="max_combinations", type=int)
    ap.add_argument("--timing", action="store_true", help="include wall times (breaks byte-identity)")
    ap.add_argument("--jobs", type=int, default=1, help="parallel workers for batch files")
    return ap


def main(argv: Optional[list[str]] = None) -> int:
    ns = build_parser().parse_args(argv)
    if not 0 <= ns.seed < 2**64:
        print("usage error: --seed must be a 64-bit unsigned integer", file=sys.stderr)
        return EXIT_USAGE
    batch = False
    try:
        if ns.spec:
            with open(ns.spec) as fh:
                loaded = json.load(fh)
            batch = isinstance(loaded, list)
            docs = loaded if batch else [loaded]
            if not all(isinstance(d, dict) for d in docs):
                raise ValidationError("experiment documents must be JSON objects")
            fmt = ns.format or (docs[0].get("format", "json") if docs else "json")
        else:
            ns.format = ns.format or "json"
            docs = [_spec_from_flags(ns)]
            fmt = ns.format
    except (OSError, json.JSONDecodeError, ValidationError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    jobs = [(d, ns.timing) for d in docs]
    if ns.jobs > 1 and len(jobs) > 1:
        with concurrent.futures.ProcessPoolExecutor(ns.jobs) as pool:
            outcomes = list(pool.map(_execute_safe, jobs))
    else:
        outcomes = [_execute_safe(j) for j in jobs]

    code = EXIT_OK
    finished: list[dict] = []
    for doc, c, msg in outcomes:
        if msg:
            print(msg, file=sys.stderr)
        code = max(code, c)
        if doc is not None:
            finished.append(doc)
    if not finished:
        return code
    if batch:
        document = {
            "command": "batch",
            "results": [{"experiment": i, **r} for i, d in enumerate(finished) for r in d["results"]],
        }
    else:
        document = finished[0]
    sys.stdout.write(render(document, fmt))
    return code
