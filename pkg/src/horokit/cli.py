"""Command-line front end.

Every command assembles a config dict from its flags, lets ``--config FILE``
override it, validates it against a JSON schema and dispatches.  Exit codes:
0 success, 1 failed invariant, 2 bad config or arguments, 3 resource limit.
"""

import argparse
import csv
import hashlib
import io
import json
import math
import os
import platform
import re
import sys
import tempfile
import time
from fractions import Fraction

import jsonschema

from . import __version__
from .errors import (ArgumentError, ConfigurationError, DomainError, FitRejected, InvariantError,
                     ResolutionError, ResourceError)

EXIT_OK, EXIT_INVARIANT, EXIT_CONFIG, EXIT_RESOURCE = 0, 1, 2, 3

# schemas ------------------------------------------------------------------------

_COMMON = {
    "command": {"type": "string"},
    "out": {"type": ["string", "null"]},
    "manifest": {"type": ["string", "null"]},
    "seed": {"type": "integer"},
}
_GRID = {"type": "array", "items": {"type": "number", "maximum": 0}, "minItems": 1}
_NUM_LIST = {"type": "array", "items": {"type": "number"}, "minItems": 1}

SCHEMAS = {
    "lie-ident": {
        "algebra": {"type": "string", "pattern": "^sl[2-6]$"},
        "H": {"type": "string", "minLength": 1},
        "max_degree": {"type": "integer", "minimum": 1},
    },
    "kernels": {
        "lambdas": {"type": "array", "items": {"type": "string"}, "minItems": 1},
        "beta": {"type": "number", "exclusiveMinimum": 0},
        "alpha": {"type": "number", "exclusiveMinimum": 0},
        "eta": {"type": "number", "exclusiveMinimum": 0},
        "weights": {"type": "array", "items": {"type": "number", "exclusiveMinimum": 0}, "minItems": 1},
        "grid": {"type": "array", "items": {"type": "number"}, "minItems": 3, "maxItems": 3},
        "max_grid": {"type": "integer", "minimum": 2},
        "kernels_out": {"type": ["string", "null"]},
    },
    "horocycle": {
        "closed": {"type": "boolean"},
        "x0": {"type": "array", "items": {"type": "number"}, "minItems": 2, "maxItems": 2},
        "t": _GRID,
        "psi": {"type": "array", "items": {"type": "number"}, "minItems": 2, "maxItems": 2},
        "n_factor": {"type": "number", "minimum": 20},
        "max_n": {"type": "integer", "minimum": 1},
    },
    "height": {
        "x0": {"type": "array", "items": _NUM_LIST, "minItems": 1},
        "t": _GRID,
        "factor": {"type": "number", "minimum": 20},
        "max_n": {"type": "integer", "minimum": 1},
    },
    "count": {
        "n": {"type": "integer", "enum": [2, 3]},
        "H": _NUM_LIST,
    },
    "fit": {
        "input": {"type": "string"},
    },
    "verify": {
        "certificate": {"type": "string"},
    },
}
REQUIRED = {
    "lie-ident": ["algebra", "H"], "kernels": ["lambdas", "beta"], "horocycle": ["t", "psi"],
    "height": ["x0", "t"], "count": ["n", "H"], "fit": ["input"], "verify": ["certificate"],
}


def schema_for(command):
    return {
        "type": "object",
        "properties": {**_COMMON, **SCHEMAS[command]},
        "required": REQUIRED[command],
        "additionalProperties": False,
    }


# parsing helpers ---------------------------------------------------------------

def parse_grid(text):
    """'a:b:step' (inclusive, direction from a to b) or a comma list."""
    text = text.strip()
    if not text:
        return []
    if ":" in text:
        a, b, step = (float(p) for p in text.split(":"))
        step = abs(step)
        if step == 0:
            raise ArgumentError("grid step must be nonzero")
        n = int(math.floor(abs(b - a) / step + 1e-9)) + 1
        sign = 1 if b >= a else -1
        return [a + sign * k * step for k in range(n)]
    return [float(p) for p in text.split(",") if p.strip()]


def parse_floats(text):
    return [float(p) for p in text.split(",") if p.strip()]


def parse_complex(text):
    return complex(text.replace(" ", "").replace("i", "j"))


_TERM = re.compile(r"([+-]?)\s*([^+-]+)")


def parse_cartan(alg, text):
    """Traceless diagonal from 'h/2', '2*H1 + H2', or a comma list of diagonal entries."""
    text = text.strip()
    if "," in text:
        return [Fraction(p.strip()) for p in text.split(",")]
    coords = [Fraction(0)] * (alg.n - 1)
    labels = {alg.basis[k]: pos for pos, k in enumerate(alg.cartan_indices())}
    compact = text.replace(" ", "")
    if not compact:
        raise ArgumentError("empty H")
    for sign, body in _TERM.findall(compact):
        coef, label = Fraction(1), None
        for factor in re.split(r"\*", body):
            num, _, den = factor.partition("/")
            if num in labels:
                if label is not None:
                    raise ArgumentError(f"product of Cartan labels in {body!r}")
                label = num
                coef /= Fraction(den) if den else 1
            else:
                coef *= Fraction(num) / (Fraction(den) if den else 1)
        if label is None:
            raise ArgumentError(f"term {body!r} names no Cartan element; use {sorted(labels)}")
        coords[labels[label]] += -coef if sign == "-" else coef
    return alg.diag_from_cartan(coords)


NEGATIVE_VALUE_OPTS = {"--t", "--H", "--x0", "--grid", "--lambda", "--weights", "--psi"}


def _fix_negative_values(argv, value_opts):
    """Let '--t -4:-12:1' reach argparse as a value rather than an option."""
    out, i = [], 0
    while i < len(argv):
        tok = argv[i]
        if tok in value_opts and i + 1 < len(argv) and argv[i + 1].startswith("-") \
                and argv[i + 1] not in value_opts and not argv[i + 1].startswith("--"):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


# output --------------------------------------------------------------------------

def atomic_write(path, text):
    d = os.path.dirname(os.path.abspath(path))
    os.makedirs(d, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def dumps(obj):
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _csv(header, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([repr(x) if isinstance(x, float) else x for x in r])
    return buf.getvalue()


class Outcome:
    def __init__(self, artifact, summary=None, extra=None, code=EXIT_OK):
        self.artifact = artifact
        self.summary = summary or {}
        self.extra = extra or {}
        self.code = code


# commands --------------------------------------------------------------------------

def cmd_lie_ident(cfg):
    from .enveloping import certificate_to_json, lie_identity_certificate
    from .enveloping.harish_chandra import hpoly_coefficients
    from .lie import build_split_sl

    alg = build_split_sl(int(cfg["algebra"][2:]))
    diag = parse_cartan(alg, cfg["H"])
    W, _ = hpoly_coefficients(alg, diag)
    if W > cfg.get("max_degree", 6):
        raise ResourceError(f"W_H = {W} exceeds max_degree = {cfg.get('max_degree', 6)}")
    cert = lie_identity_certificate(alg, diag)
    obj = certificate_to_json(cert)
    failed = [k for k, v in cert.checks.items() if not v]
    if failed:
        raise InvariantError(failed[0], f"certificate check failed ({len(failed)} total)")
    return Outcome(dumps(obj), {"W_H": cert.W_H, "verified": cert.verified})


def cmd_kernels(cfg):
    from .kernels import (BurgerSchedule, GridSpec, burger2_coefficients, kernel_F, kernel_Fi,
                          kernel_to_json, order_lambda, verify_burger2_bounds, verify_kernel_bounds)

    lams = [parse_complex(s) for s in cfg["lambdas"]]
    g = cfg.get("grid", [-20.0, 0.0, 50])
    n = int(g[2])
    if n > cfg.get("max_grid", 400):
        raise ResourceError(f"grid size {n} exceeds max_grid")
    grid = GridSpec(float(g[0]), float(g[1]), n)
    spec = order_lambda(lams, cfg["beta"])
    F, Fi = kernel_F(spec), kernel_Fi(spec)
    report = verify_kernel_bounds(spec, F, Fi, grid, with_rows=True)
    summary = {"m1": spec.m1, "m2": spec.m2, "W": spec.W,
               "burger1": report.to_json(), "flagged": report.flagged}
    csv_text = report.to_csv()
    extra = {}
    if cfg.get("kernels_out"):
        extra[cfg["kernels_out"]] = dumps(kernel_to_json(spec, F, Fi))
    if "alpha" in cfg or "eta" in cfg:
        if not ("alpha" in cfg and "eta" in cfg):
            raise ArgumentError("alpha and eta must be given together")
        sched = BurgerSchedule.build(cfg["alpha"], cfg["eta"])
        weights = cfg.get("weights", [cfg["alpha"]])
        k2 = burger2_coefficients(lams, weights, sched)
        r2 = verify_burger2_bounds(k2, spec.lam_inf, grid, with_rows=True)
        summary["schedule"] = sched.to_json()
        summary["burger2_flagged"] = r2.flagged
        summary["burger2_max_C"] = max(e.constant for e in r2.entries if e.name.startswith("C"))
        csv_text += "".join(r2.to_csv().splitlines(keepends=True)[1:])
    return Outcome(csv_text, summary, extra)


def cmd_horocycle(cfg):
    from .modular import HoroExperiment, TestFunction, fit_all, horocycle_average, n_points

    a, b = cfg["psi"]
    f = TestFunction(a, b).centered()
    x0 = complex(*cfg.get("x0", [0.0, 1.0]))
    exp = HoroExperiment(x0=x0, closed=cfg.get("closed", False), t_grid=tuple(cfg["t"]),
                         n_factor=cfg.get("n_factor", 160.0))
    cap = cfg.get("max_n", 10 ** 9)
    for t in exp.t_grid:
        if n_points(t, exp.n_factor) > cap:
            raise ResourceError(f"N at t = {t} exceeds max_n = {cap}")
    rows = horocycle_average(exp, f)
    text = _csv(["t", "average", "mean_target", "error", "quad_err", "N"],
                [(r.t, r.average, r.target, r.error, r.quad_err, r.N) for r in rows])
    summary = {"quad_below_10pct": all(r.quad_err < 0.1 * r.error for r in rows)}
    try:
        fits = fit_all([r.t for r in rows], [r.error for r in rows], [r.quad_err for r in rows])
        summary["fits"] = {k: v.to_json() for k, v in fits.items()}
        summary["slope"] = fits["q0"].slope
    except FitRejected as exc:
        summary["fit_rejected"] = str(exc)
    return Outcome(text, summary)


def cmd_height(cfg):
    from .modular import height_average, n_points

    cap = cfg.get("max_n", 10 ** 9)
    factor = cfg.get("factor", 400.0)
    rows = []
    for pt in cfg["x0"]:
        if len(pt) != 2:
            raise ArgumentError("each x0 needs [re, im]")
        for t in cfg["t"]:
            if n_points(t, factor) > cap:
                raise ResourceError(f"N at t = {t} exceeds max_n = {cap}")
        for r in height_average(complex(*pt), cfg["t"], factor):
            rows.append((float(pt[0]), float(pt[1]), r.t, r.value, r.ratio, r.N))
    text = _csv(["x0_re", "x0_im", "t", "value", "ratio", "N"], rows)
    return Outcome(text, {"max_ratio": max(r[4] for r in rows)})


def cmd_count(cfg):
    from .modular import unipotent_lattice_count

    res = unipotent_lattice_count(cfg["n"], cfg["H"])
    return Outcome(dumps(res.to_json()), {"ratio": res.ratio})


def cmd_fit(cfg):
    from .modular import fit_all

    with open(cfg["input"], newline="") as fh:
        rows = list(csv.DictReader(fh))
    if not rows or "t" not in rows[0] or "error" not in rows[0]:
        raise ArgumentError("fit input needs columns t and error")
    ts = [float(r["t"]) for r in rows]
    es = [float(r["error"]) for r in rows]
    qs = [float(r["quad_err"]) for r in rows] if "quad_err" in rows[0] else None
    fits = fit_all(ts, es, qs)
    return Outcome(dumps({k: v.to_json() for k, v in fits.items()}), {"slope": fits["q0"].slope})


def cmd_verify(cfg):
    from .enveloping import verify_certificate_json

    try:
        with open(cfg["certificate"]) as fh:
            obj = json.load(fh)
    except json.JSONDecodeError as exc:
        return Outcome(dumps({"ok": False, "failed": [f"invalid JSON: {exc}"]}),
                       code=EXIT_INVARIANT)
    ok, failed = verify_certificate_json(obj)
    return Outcome(dumps({"ok": ok, "failed": failed}), {"ok": ok},
                   code=EXIT_OK if ok else EXIT_INVARIANT)


COMMANDS = {
    "lie-ident": cmd_lie_ident, "kernels": cmd_kernels, "horocycle": cmd_horocycle,
    "height": cmd_height, "count": cmd_count, "fit": cmd_fit, "verify": cmd_verify,
}


# argument parser -----------------------------------------------------------------------

def build_parser():
    p = argparse.ArgumentParser(prog="horokit", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"horokit {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--config", help="JSON file whose keys override the flags")
        sp.add_argument("--out", help="artifact path (stdout if omitted)")
        sp.add_argument("--manifest", help="run manifest path (default: OUT.manifest.json)")
        sp.add_argument("--seed", type=int)
        return sp

    s = common(sub.add_parser("lie-ident", help="exact Lie-identity certificate"))
    s.add_argument("--algebra", help="sl2 ... sl6")
    s.add_argument("--H", dest="H", help="e.g. 'h/2', '2*H1+H2' or '2,-1,-1'")
    s.add_argument("--max-degree", dest="max_degree", type=int)

    s = common(sub.add_parser("kernels", help="first and second order kernel bound checks"))
    s.add_argument("--lambda", dest="lambdas", help="comma list of complex numbers")
    s.add_argument("--beta", type=float)
    s.add_argument("--alpha", type=float)
    s.add_argument("--eta", type=float)
    s.add_argument("--weights", help="comma list of generator weights")
    s.add_argument("--grid", help="t_min:t_max:n")
    s.add_argument("--max-grid", dest="max_grid", type=int)
    s.add_argument("--kernels-out", dest="kernels_out")

    s = common(sub.add_parser("horocycle", help="horocycle translate averages"))
    s.add_argument("--closed", action="store_const", const=True)
    s.add_argument("--x0", help="re,im")
    s.add_argument("--t", help="start:stop:step or comma list")
    s.add_argument("--psi", help="a,b support of the bump")
    s.add_argument("--n-factor", dest="n_factor", type=float)
    s.add_argument("--max-n", dest="max_n", type=int)

    s = common(sub.add_parser("height", help="averages of the invariant height"))
    s.add_argument("--x0", action="append", help="re,im (repeatable)")
    s.add_argument("--t", help="start:stop:step or comma list")
    s.add_argument("--factor", type=float)
    s.add_argument("--max-n", dest="max_n", type=int)

    s = common(sub.add_parser("count", help="unipotent lattice counts"))
    s.add_argument("--n", type=int)
    s.add_argument("--H", dest="H", help="comma list of diagonal entries")

    s = common(sub.add_parser("fit", help="decay-rate fit of a CSV with t,error[,quad_err]"))
    s.add_argument("--input")

    s = common(sub.add_parser("verify", help="re-check an exported certificate"))
    s.add_argument("--certificate")
    return p


_CONVERT = {
    "lambdas": lambda v: [x.strip() for x in v.split(",") if x.strip()],
    "weights": parse_floats,
    "grid": lambda v: [float(x) for x in v.split(":")],
    "x0": lambda v: [parse_floats(x) for x in v] if isinstance(v, list) else parse_floats(v),
    "t": parse_grid,
    "psi": parse_floats,
    "H": lambda v: v,
}


def config_from_args(ns):
    cfg = {"command": ns.command}
    for k, v in vars(ns).items():
        if k in ("command", "config") or v is None:
            continue
        if k in _CONVERT and isinstance(v, (str, list)):
            if k == "H" and ns.command == "count":
                v = parse_floats(v)
            else:
                v = _CONVERT[k](v)
        cfg[k] = v
    if ns.config:
        with open(ns.config) as fh:
            file_cfg = json.load(fh)
        if not isinstance(file_cfg, dict):
            raise ArgumentError("config file must hold a JSON object")
        if file_cfg.get("command", ns.command) != ns.command:
            raise ArgumentError("config file is for a different command")
        cfg.update(file_cfg)
    return cfg


def _manifest(cfg, outcome, wall, artifacts, code):
    import numpy
    import scipy
    blob = json.dumps(cfg, sort_keys=True).encode()
    return {
        "horokit_version": __version__,
        "python": platform.python_version(),
        "numpy": numpy.__version__,
        "scipy": scipy.__version__,
        "command": cfg.get("command"),
        "config": cfg,
        "config_sha256": hashlib.sha256(blob).hexdigest(),
        "seed": cfg.get("seed", 0),
        "wall_time_s": wall,
        "artifacts": artifacts,
        "exit_code": code,
        "summary": outcome.summary if outcome else {},
    }


def _err(msg):
    print(f"horokit: {msg}", file=sys.stderr)


def main(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        ns = parser.parse_args(_fix_negative_values(argv, NEGATIVE_VALUE_OPTS))
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else EXIT_OK
    start = time.perf_counter()
    try:
        cfg = config_from_args(ns)
        jsonschema.validate(cfg, schema_for(ns.command))
    except (jsonschema.ValidationError, ArgumentError, ValueError, OSError) as exc:
        msg = exc.message if isinstance(exc, jsonschema.ValidationError) else str(exc)
        _err(f"invalid configuration: {msg}")
        return EXIT_CONFIG
    outcome, code = None, EXIT_OK
    try:
        outcome = COMMANDS[ns.command](cfg)
        code = outcome.code
    except ResourceError as exc:
        _err(f"resource limit: {exc}")
        code = EXIT_RESOURCE
    except InvariantError as exc:
        _err(f"invariant failed: {exc.name}: {exc}")
        code = EXIT_INVARIANT
    except (ResolutionError, DomainError) as exc:
        _err(f"invariant failed: {type(exc).__name__}: {exc}")
        code = EXIT_INVARIANT
    except FitRejected as exc:
        _err(f"fit rejected: {exc}")
        code = EXIT_INVARIANT
    except (ArgumentError, ConfigurationError, OSError) as exc:
        _err(f"invalid configuration: {exc}")
        code = EXIT_CONFIG
    wall = time.perf_counter() - start
    artifacts = []
    if outcome is not None:
        out = cfg.get("out")
        if out:
            atomic_write(out, outcome.artifact)
            artifacts.append(out)
        else:
            try:
                sys.stdout.write(outcome.artifact)
                sys.stdout.flush()
            except BrokenPipeError:
                # reader closed early (e.g. piped into head)
                sys.stdout = open(os.devnull, "w")
        for path, text in outcome.extra.items():
            atomic_write(path, text)
            artifacts.append(path)
    mpath = cfg.get("manifest") or (cfg["out"] + ".manifest.json" if cfg.get("out") else None)
    if mpath:
        atomic_write(mpath, dumps(_manifest(cfg, outcome, wall, artifacts, code)))
    return code


if __name__ == "__main__":
    sys.exit(main())
