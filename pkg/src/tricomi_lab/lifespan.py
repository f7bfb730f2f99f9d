"""Lifespan sweeps over eps and log-log regression against the predicted exponents."""

import csv
import json
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from tricomi_lab import spectral
from tricomi_lab.exponents import (  # noqa: F401  re-exported
    CRITICAL_BAND,
    ExponentParams,
    a_coeff,
    exponents,
    gamma_T,
    p_G,
    p_T,
)

SCHEMA_VERSION = 1
ERROR = "error"

# two-sided 95% Student t quantiles for df = 1..30
_T975 = (12.706, 4.303, 3.182, 2.776, 2.571, 2.447, 2.365, 2.306, 2.262, 2.228,
         2.201, 2.179, 2.160, 2.145, 2.131, 2.120, 2.110, 2.101, 2.093, 2.086,
         2.080, 2.074, 2.069, 2.064, 2.060, 2.056, 2.052, 2.048, 2.045, 2.042)


def t_quantile(df):
    if df < 1:
        return math.nan
    return _T975[df - 1] if df <= len(_T975) else 1.96


@dataclass
class SweepConfig:
    """Everything needed to reproduce a sweep.

    ``eps`` must be strictly decreasing with at least three values.
    """

    eps: list
    dim: int = 1
    m: float = 1.0
    p: float = 2.0
    n: int = 4096
    L: float = 72.0
    cfl: float = 0.5
    v_threshold: float = 1e6
    thresholds: list = field(default_factory=lambda: [1e5, 1e6, 1e7])
    t_max: float = 40.0
    amp_f: float = 0.0
    amp_g: float = math.e / 2
    parallelism: int = 1
    output_dir: str = ""

    def __post_init__(self):
        self.eps = [float(e) for e in self.eps]
        self.thresholds = [float(x) for x in self.thresholds]
        if len(self.eps) < 3:
            raise ValueError("sweep needs at least 3 eps values")
        if any(b >= a for a, b in zip(self.eps, self.eps[1:])):
            raise ValueError("eps values must be strictly decreasing")
        if any(e < 0 for e in self.eps):
            raise ValueError("eps must be non-negative")
        if self.parallelism < 1:
            raise ValueError("parallelism must be >= 1")
        spectral.make_grid(self.dim, self.n, self.L)

    @classmethod
    def geometric(cls, eps_max, count, ratio=math.sqrt(2.0), **kw):
        return cls(eps=[eps_max / ratio ** k for k in range(count)], **kw)

    def as_dict(self):
        return asdict(self)

    @classmethod
    def from_dict(cls, d):
        known = set(cls.__dataclass_fields__)
        extra = set(d) - known
        if extra:
            raise ValueError(f"unknown sweep config keys: {sorted(extra)}")
        return cls(**d)

    @classmethod
    def from_file(cls, path):
        """JSON object, or ``key = value`` lines (values parsed as JSON where possible)."""
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
                key, _, val = line.partition("=")
                val = val.strip()
                try:
                    d[key.strip()] = json.loads(val)
                except json.JSONDecodeError:
                    d[key.strip()] = val
        return cls.from_dict(d)


def run_one(cfg, eps):
    """One simulation; failures become an ``error`` record instead of raising."""
    try:
        grid = spectral.make_grid(cfg.dim, cfg.n, cfg.L)
        data = spectral.sample_data(grid, eps, cfg.m, amp_f=cfg.amp_f, amp_g=cfg.amp_g)
        rec = spectral.run_until_blowup(grid, cfg.m, cfg.p, data, cfl=cfg.cfl,
                                        v_threshold=cfg.v_threshold, t_max=cfg.t_max,
                                        thresholds=cfg.thresholds, trace_stride=10)
        rec.trace = None
        return rec
    except Exception as exc:  # recorded per run, the sweep continues
        return spectral.LifespanRecord(eps=float(eps), T_eps=math.nan, status=ERROR,
                                       max_ut=math.nan, fingerprint="",
                                       scheme={"error": f"{type(exc).__name__}: {exc}"})


def sweep(cfg):
    """Run every eps of ``cfg``; records are returned ordered by decreasing eps."""
    if cfg.parallelism == 1:
        recs = [run_one(cfg, e) for e in cfg.eps]
    else:
        with ProcessPoolExecutor(max_workers=cfg.parallelism) as pool:
            recs = list(pool.map(run_one, [cfg] * len(cfg.eps), cfg.eps))
    return sorted(recs, key=lambda r: -r.eps)


def is_monotone(records):
    """T_eps nonincreasing as eps grows, over blown_up records."""
    pts = sorted((r.eps, r.T_eps) for r in records if r.status == spectral.BLOWN_UP)
    return all(b <= a for (_, a), (_, b) in zip(pts, pts[1:]))


class InsufficientPoints(ValueError):
    pass


@dataclass
class FitResult:
    kind: str
    slope: float
    intercept: float
    stderr: float
    r2: float
    n_points: int
    ci_low: float
    ci_high: float
    predicted: float = math.nan
    ratio: float = math.nan

    def as_dict(self):
        return asdict(self)


def ols(x, y):
    """Ordinary least squares ``y = a + b x``; returns ``(b, a, stderr_b, R^2)``."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    n = len(x)
    if n < 3:
        raise InsufficientPoints("need at least 3 points for a fit")
    xm, ym = x.mean(), y.mean()
    sxx = np.sum((x - xm) ** 2)
    if sxx == 0:
        raise InsufficientPoints("abscissae are all equal")
    b = float(np.sum((x - xm) * (y - ym)) / sxx)
    a = float(ym - b * xm)
    resid = y - (a + b * x)
    sse = float(np.sum(resid ** 2))
    sst = float(np.sum((y - ym) ** 2))
    stderr = math.sqrt(sse / (n - 2) / sxx)
    r2 = 1.0 - sse / sst if sst > 0 else 1.0
    return b, a, stderr, r2


def _pairs(records, threshold=None):
    out = []
    for r in records:
        if r.status != spectral.BLOWN_UP:
            continue
        T = r.T_eps if threshold is None else r.crossings.get(f"{float(threshold):g}")
        if T is not None and T > 0 and r.eps > 0:
            out.append((r.eps, T))
    return out


def fit_slope(records, params=None, threshold=None):
    """Power-law fit of ``ln T`` against ``ln eps`` over ``blown_up`` records.

    With ``params`` the predicted slope ``-upper_exponent`` and the ratio
    fitted/predicted are filled in.  ``threshold`` selects a recorded
    crossing level instead of ``T_eps``.

    Raises
    ------
    InsufficientPoints
        Fewer than three usable records.
    """
    pts = _pairs(records, threshold)
    if len(pts) < 3:
        raise InsufficientPoints(f"{len(pts)} blown_up records, need at least 3")
    eps, T = np.array(pts).T
    b, a, se, r2 = ols(np.log(eps), np.log(T))
    q = t_quantile(len(pts) - 2)
    res = FitResult("power", b, a, se, r2, len(pts), b - q * se, b + q * se)
    if params is not None and np.isfinite(params.upper_exponent):
        res.predicted = params.predicted_slope()
        res.ratio = b / res.predicted
    return res


def fit_exponential(records, p, threshold=None):
    """Fit ``ln T = a + b eps^{-(p-1)}`` (critical regime)."""
    pts = _pairs(records, threshold)
    if len(pts) < 3:
        raise InsufficientPoints(f"{len(pts)} blown_up records, need at least 3")
    eps, T = np.array(pts).T
    b, a, se, r2 = ols(eps ** (-(p - 1.0)), np.log(T))
    q = t_quantile(len(pts) - 2)
    return FitResult("exponential", b, a, se, r2, len(pts), b - q * se, b + q * se)


def fit_all(records, params, thresholds=()):
    """Headline fit plus per-threshold slopes; critical powers use the exponential law."""
    kind = "exponential" if params.critical else "power"

    def one(th):
        if kind == "power":
            return fit_slope(records, params, th)
        return fit_exponential(records, params.p, th)

    out = {"kind": kind}
    try:
        out["fit"] = one(None).as_dict()
        out["reason"] = None
    except InsufficientPoints as exc:
        out["fit"] = None
        out["reason"] = str(exc)
    sens = {}
    for th in thresholds:
        try:
            sens[f"{float(th):g}"] = one(th).slope
        except InsufficientPoints:
            sens[f"{float(th):g}"] = None
    out["threshold_slopes"] = sens
    return out


_CSV_FIELDS = ("eps", "T_eps", "status", "max_ut", "fingerprint", "wall_time", "steps",
               "cone_violations")


def _fmt(x):
    return repr(float(x)) if isinstance(x, (float, np.floating)) else str(x)


def _crossing_keys(records, thresholds):
    if thresholds:
        return [f"{float(t):g}" for t in thresholds]
    keys = {k for r in records for k in r.crossings}
    return sorted(keys, key=float)


def write_records_csv(records, path, thresholds=()):
    """One row per record; ``T_<level>`` columns hold the threshold crossings."""
    keys = _crossing_keys(records, thresholds)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(list(_CSV_FIELDS) + [f"T_{k}" for k in keys] + ["grid", "scheme"])
        for r in records:
            row = [_fmt(getattr(r, f)) for f in _CSV_FIELDS]
            row += [_fmt(r.crossings[k]) if k in r.crossings else "" for k in keys]
            row += [json.dumps(r.grid, sort_keys=True), json.dumps(r.scheme, sort_keys=True)]
            w.writerow(row)


def read_records_csv(path):
    """Inverse of :func:`write_records_csv`."""
    recs = []
    with open(path, newline="") as fh:
        for row in csv.DictReader(fh):
            crossings = {k[2:]: float(v) for k, v in row.items()
                         if k.startswith("T_") and k != "T_eps" and v}
            recs.append(spectral.LifespanRecord(
                eps=float(row["eps"]), T_eps=float(row["T_eps"]), status=row["status"],
                max_ut=float(row["max_ut"]), fingerprint=row["fingerprint"],
                wall_time=float(row["wall_time"]), crossings=crossings,
                grid=json.loads(row["grid"]), scheme=json.loads(row["scheme"]),
                steps=int(row["steps"]), cone_violations=int(row["cone_violations"])))
    return recs


def summarize(records, params, config=None, thresholds=()):
    fits = fit_all(records, params, thresholds)
    horizon = [r.eps for r in records if r.status == spectral.HORIZON]
    failed = [r.eps for r in records if r.status not in (spectral.BLOWN_UP, spectral.HORIZON)]
    return {
        "schema_version": SCHEMA_VERSION,
        "params": params.as_dict(),
        "fit_kind": fits["kind"],
        "fit": fits["fit"],
        "reason": fits["reason"],
        "predicted_slope": params.predicted_slope() if np.isfinite(params.upper_exponent) else None,
        "ratio": fits["fit"]["ratio"] if fits["fit"] else None,
        "threshold_slopes": fits["threshold_slopes"],
        "monotone": is_monotone(records),
        "horizon_reached": horizon,
        "failed": failed,
        "config": config,
    }


def _json_safe(obj):
    if isinstance(obj, dict):
        return {k: _json_safe(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_json_safe(v) for v in obj]
    if isinstance(obj, (float, np.floating)):
        return float(obj) if math.isfinite(obj) else None
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    return obj


def report(records, params, out_dir, config=None, thresholds=(), stem="lifespan"):
    """Write ``<stem>.csv`` and ``<stem>.json`` into ``out_dir``; returns the summary dict."""
    if not records:
        raise ValueError("no records to report")
    os.makedirs(out_dir, exist_ok=True)
    write_records_csv(records, os.path.join(out_dir, f"{stem}.csv"), thresholds)
    summary = _json_safe(summarize(records, params, config, thresholds))
    with open(os.path.join(out_dir, f"{stem}.json"), "w") as fh:
        json.dump(summary, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return summary
