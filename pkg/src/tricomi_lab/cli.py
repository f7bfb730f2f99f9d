"""Command-line entry point: ``tricomi-lab <subcommand> [options]``.

Exit status is 0 on success, 1 when a numerical check fails (details on
standard error) and 2 on usage errors.  Every JSON payload carries a
``schema_version`` and the manifest's ``config_hash``; every CSV carries the
hash in a trailing ``config_hash`` column.
"""

import argparse
import csv
import datetime
import hashlib
import io
import json
import math
import os
import sys
from dataclasses import asdict, dataclass, field

import numpy as np

from tricomi_lab import __version__
from tricomi_lab import blowup
from tricomi_lab import lambda_ode
from tricomi_lab import lifespan
from tricomi_lab import multiplier
from tricomi_lab import specfun
from tricomi_lab import spectral

SCHEMA_VERSION = 1
# wall-clock fields; everything else in a payload is reproducible
TIMING_KEYS = ("created", "wall_time")


class UsageError(ValueError):
    pass


class CheckFailed(RuntimeError):
    pass


def _canonical(obj):
    return json.dumps(lifespan._json_safe(obj), sort_keys=True, separators=(",", ":"))


def config_hash(config):
    """sha256 of the canonical JSON of ``config``; independent of key order."""
    return hashlib.sha256(_canonical(config).encode()).hexdigest()


@dataclass
class RunManifest:
    subcommand: str
    config: dict
    schema_version: int = SCHEMA_VERSION
    tool_version: str = __version__
    created: str = field(default_factory=lambda: datetime.datetime.now(
        datetime.timezone.utc).isoformat(timespec="seconds"))

    @property
    def config_hash(self):
        return config_hash({"subcommand": self.subcommand, "config": self.config})

    def as_dict(self):
        d = asdict(self)
        d["config_hash"] = self.config_hash
        return d


# ---------------------------------------------------------------------------
# output helpers
# ---------------------------------------------------------------------------

def _num(x):
    if isinstance(x, (bool, np.bool_)):
        return str(bool(x))
    if isinstance(x, (float, np.floating)):
        return repr(float(x))
    if isinstance(x, (complex, np.complexfloating)):
        return repr(complex(x))
    return str(x)


def _csv_text(header, rows, digest):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(list(header) + ["config_hash"])
    for row in rows:
        w.writerow([_num(v) for v in row] + [digest])
    return buf.getvalue()


def _json_text(payload, manifest):
    body = {"schema_version": SCHEMA_VERSION, "config_hash": manifest.config_hash,
            "manifest": manifest.as_dict(), **payload}
    return json.dumps(lifespan._json_safe(body), indent=2, sort_keys=True) + "\n"


def _emit(text, path=None, stream=None):
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        (stream or sys.stdout).write(text)


def _load_config(path):
    """Flat JSON object or ``key = value`` lines."""
    if not path:
        return {}
    with open(path) as fh:
        text = fh.read()
    try:
        d = json.loads(text)
    except json.JSONDecodeError:
        d = {}
        for line in text.splitlines():
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"config {path}: expected 'key = value', got {line!r}")
            key, _, val = line.partition("=")
            try:
                d[key.strip()] = json.loads(val.strip())
            except json.JSONDecodeError:
                d[key.strip()] = val.strip()
    if not isinstance(d, dict):
        raise UsageError(f"config {path}: expected an object")
    return {k.replace("-", "_"): v for k, v in d.items()}


def _resolve(args, defaults, names):
    """defaults < config file < explicit flags."""
    cfg = dict(defaults)
    file_cfg = _load_config(getattr(args, "config", None))
    unknown = set(file_cfg) - set(names)
    if unknown:
        raise UsageError(f"config: unknown keys {sorted(unknown)}")
    cfg.update(file_cfg)
    for name in names:
        val = getattr(args, name, None)
        if val is not None:
            cfg[name] = val
    return cfg


def parse_m_grid(spec):
    """``"1.2,1.5,2"`` or ``"geom:a:b:k"`` / ``"lin:a:b:k"``."""
    try:
        if spec.startswith(("geom:", "lin:")):
            kind, a, b, k = spec.split(":")
            fn = np.geomspace if kind == "geom" else np.linspace
            return [float(x) for x in fn(float(a), float(b), int(k))]
        return [float(x) for x in spec.split(",") if x.strip()]
    except ValueError as exc:
        raise UsageError(f"--M-grid: cannot parse {spec!r} ({exc})") from None


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_exponents(args):
    params = lifespan.exponents(args.n, args.m, args.p)
    man = RunManifest("exponents", {"n": args.n, "m": args.m, "p": args.p})
    rows = [(k, v) for k, v in params.as_dict().items()]
    if args.format == "json":
        _emit(_json_text({"params": params.as_dict()}, man), args.out)
    else:
        _emit(_csv_text(("quantity", "value"), rows, man.config_hash), args.out)
    return 0


def cmd_specfun_selftest(args):
    rows = specfun.selftest()
    man = RunManifest("specfun-selftest", {})
    cols = ("identity", "nu_or_a", "z", "lhs", "rhs", "rel_err", "pass")
    _emit(_csv_text(cols, [[r[c] for c in cols] for r in rows], man.config_hash), args.out)
    bad = [r for r in rows if not r["pass"]]
    for r in bad:
        print(f"specfun: identity {r['identity']} failed at nu_or_a={r['nu_or_a']}, "
              f"z={r['z']}: rel_err={r['rel_err']:.3e}", file=sys.stderr)
    return 1 if bad else 0


# "limits" is scored as a ratio to its own tolerances (1e-4 for lambda, 1e-3 for lambda')
_LAMBDA_TOL = {"ode": 1e-8, "wronskian": 1e-9, "limits": 1.0, "asymptotics": 5e-2, "series": 1e-8}


def cmd_lambda(args):
    if not 0 <= args.t_min < args.t_max:
        raise UsageError("lambda: need 0 <= --t-min < --t-max")
    idx = lambda_ode.TricomiIndex(args.m)
    t = np.linspace(max(args.t_min, 1e-12 if args.t_min == 0 else args.t_min), args.t_max, args.points)
    lam = np.asarray(lambda_ode.lambda_fn(idx, t))
    lamp = np.asarray(lambda_ode.lambda_fn_deriv(idx, t))
    resid = np.asarray(lambda_ode.ode_residual(idx, t))
    target = (args.m + 1) * t ** (2 * args.m)
    wr = np.abs(np.asarray(lambda_ode.wronskian_check(idx, t)) / target - 1)
    score = {"ode": resid, "wronskian": wr}
    if args.check == "limits":
        small = np.array([1e-6])
        e1 = abs(lambda_ode.lambda_fn(idx, small)[0] / lambda_ode.c0(idx, 1) - 1)
        e2 = abs(lambda_ode.lambda_deriv_scaled(idx, small)[0] / lambda_ode.c0(idx, -1) + 1)
        score["limits"] = np.array([e1 / 1e-4, e2 / 1e-3])
    elif args.check == "asymptotics":
        r1, r2 = lambda_ode.asymptotic_ratios(idx, np.array([max(args.t_max, 10.0)]))
        score["asymptotics"] = np.abs(np.concatenate([r1, r2]) - 1)
    elif args.check == "series":
        if args.m != int(args.m) or args.m > 2:
            raise UsageError("lambda --check series needs integer m <= 2")
        ts = np.clip(t, 0, 1)
        ser = lambda_ode.series_lambda(lambda_ode.series_for(int(args.m), "minus"), ts, 40)
        score["series"] = np.abs(ser - np.asarray(lambda_ode.lambda_fn(idx, ts)))
    man = RunManifest("lambda", {k: getattr(args, k) for k in ("m", "t_min", "t_max", "points", "check")})
    cols = ("t", "lambda", "lambda_prime", "residual", "wronskian_err")
    _emit(_csv_text(cols, zip(t, lam, lamp, resid, wr), man.config_hash), args.out)
    worst = float(np.max(score[args.check]))
    if not worst <= _LAMBDA_TOL[args.check]:
        print(f"lambda_ode: check {args.check} failed: worst {worst:.3e} > {_LAMBDA_TOL[args.check]:g}",
              file=sys.stderr)
        return 1
    return 0


def cmd_symbols(args):
    m, t = args.m, args.t
    if t <= 0 or args.r_max <= 0 or args.points < 2:
        raise UsageError("symbols: need --t > 0, --r-max > 0, --points >= 2")
    r = np.linspace(args.r_max / args.points, args.r_max, args.points)
    man = RunManifest("symbols", {k: getattr(args, k) for k in ("m", "t", "s", "r_max", "points", "check")})
    names = ("V1", "V2", "dtV1", "dtV2")
    rows = []
    if args.check == "bounds":
        if not 0 < args.s < t:
            raise UsageError("symbols --check bounds: need 0 < --s < --t")
        tg = np.geomspace(args.s, t, 12)
        rg = np.geomspace(min(0.1, r[0]), args.r_max, args.points)
        rep = multiplier.bound_report(m, tg, rg)
        _emit(_csv_text(("kind", "sigma", "constant"), rep, man.config_hash), args.out)
        bad = [(k, s) for k, s, c in rep if not np.isfinite(c)]
        for k, s in bad:
            print(f"multiplier: bound {k} at sigma={s} is not finite", file=sys.stderr)
        return 1 if bad else 0
    syms = multiplier.symbols(m, t, r)
    if args.check == "ode":
        ref = multiplier.mode_oracle(m, r, [t], tol=1e-12)
        tol = 1e-6
        for name, sym, oracle in zip(names, syms, ref):
            res = np.abs(np.real(sym) - oracle[0]) / np.maximum(np.abs(oracle[0]), 1e-300)
            rows += [(name, ri, complex(si).real, complex(si).imag, e) for ri, si, e in zip(r, sym, res)]
    elif args.check == "wronskian":
        w = np.asarray(multiplier.mode_wronskian(m, t, r))
        tol = 1e-9
        rows = [("wronskian", ri, complex(wi).real, complex(wi).imag, abs(wi - 1)) for ri, wi in zip(r, w)]
    else:
        wave = multiplier.symbols(0.0, t, r)
        tol = 1e-12 if m == 0 else 1e-4
        for name, sym, ref in zip(names, syms, wave):
            scale = r if name == "dtV1" else 1.0
            res = np.abs(sym - ref) / scale
            rows += [(name, ri, complex(si).real, complex(si).imag, e) for ri, si, e in zip(r, sym, res)]
    _emit(_csv_text(("symbol", "r", "re", "im", "residual"), rows, man.config_hash), args.out)
    worst = max(row[-1] for row in rows)
    if not worst <= tol:
        print(f"multiplier: check {args.check} failed: worst residual {worst:.3e} > {tol:g}",
              file=sys.stderr)
        return 1
    return 0


_SIM_DEFAULTS = {"dim": 1, "m": 1.0, "p": 2.0, "epsilon": 0.4, "n": 1024, "L": 24.0, "cfl": 0.5,
                 "threshold": 1e6, "t_max": 10.0, "trace_stride": 1, "amp_f": 0.0,
                 "amp_g": math.e / 2, "field_stride": 1}


def cmd_simulate(args):
    cfg = _resolve(args, _SIM_DEFAULTS, list(_SIM_DEFAULTS))
    grid = spectral.make_grid(cfg["dim"], cfg["n"], cfg["L"])
    data = spectral.sample_data(grid, cfg["epsilon"], cfg["m"], amp_f=cfg["amp_f"], amp_g=cfg["amp_g"])
    store = bool(args.fields)
    rec = spectral.run_until_blowup(grid, cfg["m"], cfg["p"], data, cfl=cfg["cfl"],
                                    v_threshold=cfg["threshold"], t_max=cfg["t_max"],
                                    trace_stride=cfg["trace_stride"], store_fields=store,
                                    field_stride=cfg["field_stride"])
    man = RunManifest("simulate", cfg)
    record = rec.summary()
    payload = {"record": record, "status": rec.status, "T_eps": rec.T_eps,
               "grid": rec.grid, "scheme": rec.scheme}
    text = _json_text(payload, man)
    if args.out:
        tr = rec.trace
        rows = zip(tr.t, tr.max_v, tr.max_u, tr.support_radius, tr.dt)
        _emit(_csv_text(("t", "max_v", "max_u", "support_radius", "dt"), rows, man.config_hash),
              args.out)
        _emit(text, os.path.splitext(args.out)[0] + ".json")
    if store:
        save_fields(args.fields, rec, data, grid, cfg, man.config_hash)
    sys.stdout.write(text)
    return 0


def save_fields(path, rec, data, grid, cfg, digest):
    """Stored solution samples for ``verify-weakform`` and ``check-inequality``."""
    meta = {"dim": grid.dim, "n": grid.n, "L": grid.L, "m": cfg["m"], "p": cfg["p"],
            "config_hash": digest, "status": rec.status}
    with open(path, "wb") as fh:
        np.savez(fh, times=np.asarray(rec.trace.field_t),
                 u=np.stack(rec.trace.u), v=np.stack(rec.trace.v), f=data.f, g=data.g,
                 meta=json.dumps(meta, sort_keys=True))


def load_fields(path, m=None, p=None, n=None):
    try:
        with np.load(path, allow_pickle=False) as z:
            meta = json.loads(str(z["meta"]))
            times, u, v, f, g = (z[k] for k in ("times", "u", "v", "f", "g"))
    except (OSError, KeyError, ValueError) as exc:
        raise UsageError(f"cannot read trace {path}: {exc}") from None
    if n is not None and n != meta["dim"]:
        raise UsageError(f"--n {n} does not match the trace dimension {meta['dim']}")
    grid = spectral.make_grid(meta["dim"], meta["n"], meta["L"])
    m = meta["m"] if m is None else m
    p = meta["p"] if p is None else p
    if len(times) != len(u) or u.shape[1:] != grid.shape:
        raise UsageError(f"trace {path}: field arrays do not match the grid")
    tr = blowup.Trace(np.asarray(times, dtype=float), list(u), list(v), grid, m, p, f, g)
    return tr, meta


def cmd_sweep(args):
    names = list(lifespan.SweepConfig.__dataclass_fields__)
    file_cfg = _load_config(args.config)
    if args.parallelism is not None:
        file_cfg["parallelism"] = args.parallelism
    if args.out_dir is not None:
        file_cfg["output_dir"] = args.out_dir
    unknown = set(file_cfg) - set(names)
    if unknown:
        raise UsageError(f"sweep config: unknown keys {sorted(unknown)}")
    cfg = lifespan.SweepConfig.from_dict(file_cfg)
    out_dir = cfg.output_dir or "."
    man = RunManifest("sweep", {k: v for k, v in cfg.as_dict().items()
                                if k not in ("parallelism", "output_dir")})
    recs = lifespan.sweep(cfg)
    params = lifespan.exponents(cfg.dim, cfg.m, cfg.p)
    summary = lifespan.summarize(recs, params, cfg.as_dict(), cfg.thresholds)
    os.makedirs(out_dir, exist_ok=True)
    csv_path = os.path.join(out_dir, "lifespan.csv")
    lifespan.write_records_csv(recs, csv_path, cfg.thresholds)
    _append_hash_column(csv_path, man.config_hash)
    text = _json_text({"summary": summary, "records": [r.summary() for r in recs]}, man)
    _emit(text, os.path.join(out_dir, "lifespan.json"))
    sys.stdout.write(text)
    errors = [r for r in recs if r.status == lifespan.ERROR]
    for r in errors:
        print(f"lifespan: run eps={r.eps} failed: {r.scheme.get('error')}", file=sys.stderr)
    return 1 if errors else 0


def _append_hash_column(path, digest):
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(rows[0] + ["config_hash"])
        for row in rows[1:]:
            w.writerow(row + [digest])


def cmd_fit(args):
    recs = lifespan.read_records_csv(args.records)
    if not recs:
        raise UsageError(f"{args.records}: no records")
    first = recs[0]
    n = args.n if args.n is not None else first.grid.get("dim")
    m = args.m if args.m is not None else first.scheme.get("m")
    p = args.p if args.p is not None else first.scheme.get("p")
    if None in (n, m, p):
        raise UsageError("fit: --n, --m and --p are required when the records do not carry them")
    params = lifespan.exponents(n, m, p)
    keys = sorted({k for r in recs for k in r.crossings}, key=float)
    man = RunManifest("fit", {"records": [r.fingerprint for r in recs], "n": n, "m": m, "p": p})
    summary = lifespan.summarize(recs, params, None, [float(k) for k in keys])
    _emit(_json_text({"summary": summary}, man), args.out)
    if summary["fit"] is None:
        print(f"lifespan: fit not produced: {summary['reason']}", file=sys.stderr)
        return 1
    return 0


def cmd_verify_weakform(args):
    tr, meta = load_fields(args.trace, args.m, args.p, args.n)
    Ms = parse_m_grid(args.M_grid)
    man = RunManifest("verify-weakform", {"trace": meta["config_hash"], "m": tr.m, "p": tr.p,
                                          "M_grid": Ms, "tol": args.tol})
    half = list(range(0, len(tr.times) - 1, 2)) + [len(tr.times) - 1]
    rows = []
    for M in Ms:
        if not 0 < M <= tr.horizon:
            raise UsageError(f"--M-grid value {M} outside (0, {tr.horizon}] of the trace")
        tf = blowup.TestFunction(tr.m, tr.p, M, tr.grid.dim)
        tf.check_grid(tr.grid)
        full = spectral.weak_residual(tr.times, tr.u, tr.v, tr.grid, tr.m, tr.p, tr.g, tf)
        coarse = spectral.weak_residual(tr.times[half], [tr.u[i] for i in half],
                                        [tr.v[i] for i in half], tr.grid, tr.m, tr.p, tr.g, tf)
        quad_err = abs(coarse.residual - full.residual) / 3.0
        rows.append({"M": M, "lhs": full.lhs, "rhs": full.rhs, "residual": full.residual,
                     "relative": full.relative, "margin": args.tol - full.relative,
                     "quad_err": quad_err, "ok": full.relative <= args.tol})
    return _finish_rows("verify-weakform", "spectral", rows, man, args)


def cmd_check_inequality(args):
    tr, meta = load_fields(args.trace, args.m, args.p, args.n)
    Ms = parse_m_grid(args.M_grid)
    constant = "hoelder" if args.constant == "hoelder" else float(args.constant)
    man = RunManifest("check-inequality", {"trace": meta["config_hash"], "m": tr.m, "p": tr.p,
                                           "n": args.n or tr.grid.dim, "M_grid": Ms,
                                           "constant": args.constant})
    try:
        rep = blowup.check_key_inequality(tr, Ms, constant=constant, n=args.n)
    except blowup.TraceTooCoarse as exc:
        print(f"blowup: trace too coarse for the functional quadrature: {exc}", file=sys.stderr)
        return 1
    rows = []
    for r in rep.rows:
        d = r.as_dict()
        d["ok"] = d["holds"]
        rows.append(d)
    extra = {"C1": rep.C1, "kappa": rep.kappa, "implied_constant": rep.implied_constant,
             "fraction_holding": rep.fraction_holding}
    return _finish_rows("check-inequality", "blowup", rows, man, args, extra)


def _finish_rows(name, module, rows, man, args, extra=None):
    payload = {"rows": rows, **(extra or {})}
    text = _json_text(payload, man)
    if args.out:
        cols = list(rows[0]) if rows else ["M"]
        _emit(_csv_text(cols, [[r[c] for c in cols] for r in rows], man.config_hash), args.out)
        _emit(text, os.path.splitext(args.out)[0] + ".json")
    sys.stdout.write(text)
    bad = [r for r in rows if not r["ok"]]
    for r in bad:
        print(f"{module}: {name} failed at M={r['M']}", file=sys.stderr)
    return 1 if bad else 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser():
    ap = argparse.ArgumentParser(prog="tricomi-lab", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", metavar="SUBCOMMAND")
    sub.required = True

    s = sub.add_parser("exponents", help="exponent table for (n, m, p)")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--m", type=float, required=True)
    s.add_argument("--p", type=float, required=True)
    s.add_argument("--format", choices=("csv", "json"), default="csv")
    s.add_argument("--out")
    s.set_defaults(func=cmd_exponents)

    s = sub.add_parser("specfun-selftest", help="special-function identity table")
    s.add_argument("--out")
    s.set_defaults(func=cmd_specfun_selftest)

    s = sub.add_parser("lambda", help="decaying weight-ODE solution on a t grid")
    s.add_argument("--m", type=float, required=True)
    s.add_argument("--t-min", type=float, default=0.01)
    s.add_argument("--t-max", type=float, default=10.0)
    s.add_argument("--points", type=int, default=101)
    s.add_argument("--check", choices=tuple(_LAMBDA_TOL), default="ode")
    s.add_argument("--out")
    s.set_defaults(func=cmd_lambda)

    s = sub.add_parser("symbols", help="propagator symbols and their checks")
    s.add_argument("--m", type=float, required=True)
    s.add_argument("--t", type=float, default=1.0)
    s.add_argument("--s", type=float, default=0.1, help="smallest time of the bounds grid")
    s.add_argument("--r-max", type=float, default=20.0)
    s.add_argument("--points", type=int, default=40)
    s.add_argument("--check", choices=("ode", "wronskian", "bounds", "wave-limit"), default="ode")
    s.add_argument("--out")
    s.set_defaults(func=cmd_symbols)

    s = sub.add_parser("simulate", help="one spectral run until blow-up or horizon")
    s.add_argument("--config")
    s.add_argument("--dim", type=int)
    s.add_argument("--m", type=float)
    s.add_argument("--p", type=float)
    s.add_argument("--epsilon", type=float)
    s.add_argument("--n", type=int)
    s.add_argument("--L", type=float)
    s.add_argument("--cfl", type=float)
    s.add_argument("--threshold", type=float)
    s.add_argument("--t-max", type=float)
    s.add_argument("--trace-stride", type=int)
    s.add_argument("--amp-f", type=float)
    s.add_argument("--amp-g", type=float)
    s.add_argument("--fields", help="also store solution samples (.npz)")
    s.add_argument("--field-stride", type=int)
    s.add_argument("--out", help="trace CSV; the JSON record goes next to it")
    s.set_defaults(func=cmd_simulate)

    s = sub.add_parser("sweep", help="lifespan sweep over eps")
    s.add_argument("--config", required=True)
    s.add_argument("--parallelism", type=int)
    s.add_argument("--out-dir")
    s.set_defaults(func=cmd_sweep)

    s = sub.add_parser("fit", help="slope fit of stored lifespan records")
    s.add_argument("--records", required=True)
    s.add_argument("--n", type=int)
    s.add_argument("--m", type=float)
    s.add_argument("--p", type=float)
    s.add_argument("--out")
    s.set_defaults(func=cmd_fit)

    for name, func in (("verify-weakform", cmd_verify_weakform),
                       ("check-inequality", cmd_check_inequality)):
        s = sub.add_parser(name)
        s.add_argument("--trace", required=True, help="fields file written by simulate --fields")
        s.add_argument("--m", type=float)
        s.add_argument("--p", type=float)
        s.add_argument("--n", type=int)
        s.add_argument("--M-grid", dest="M_grid", required=True,
                       help="comma list, or geom:a:b:k / lin:a:b:k")
        s.add_argument("--out")
        if name == "verify-weakform":
            s.add_argument("--tol", type=float, default=1e-3)
        else:
            s.add_argument("--constant", default="hoelder")
        s.set_defaults(func=func)
    return ap


_MODULE_OF = {"exponents": "exponents", "specfun-selftest": "specfun", "lambda": "lambda_ode",
              "symbols": "multiplier", "simulate": "spectral", "sweep": "lifespan",
              "fit": "lifespan", "verify-weakform": "spectral", "check-inequality": "blowup"}


def dispatch(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2
    try:
        return args.func(args)
    except (UsageError, ValueError, FileNotFoundError, TypeError) as exc:
        print(f"{_MODULE_OF[args.command]}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except (specfun.ConvergenceError, CheckFailed) as exc:
        print(f"{_MODULE_OF[args.command]}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


def main():
    sys.exit(dispatch())
