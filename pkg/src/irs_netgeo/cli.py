"""Command-line experiment runner.

``irs-netgeo <scenario> [options]`` computes one table of results and
writes it as CSV, with a JSON sidecar holding the configuration echo and
provenance.  ``irs-netgeo reproduce <preset>`` runs a named bundle of
scenarios, ``fig2`` to ``fig13``.
"""

import argparse
import dataclasses
import datetime
import hashlib
import json
import math
import os
import subprocess
import sys
import tempfile
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import __version__
from .channel import FadingSpec, approx_cdf, approx_spec, classify_regime, sample_g
from .errors import ConfigError, DomainError, IrsNetGeoError
from .geometry import (FixedDelta, IrsConfig, ModelI, ModelII, NoIrs, model1_cdf_delta,
                       model1_pdf_delta, model1_R1)
from .montecarlo import SimMode, estimate_diversity, g_variance, simulate_sir
from .params import NetworkParams
from .sampling import RngStreamSpec, sample_R0
from .sir import (SirQuery, ccdf_erlang_toeplitz, ccdf_exp_route, ccdf_no_irs, db_to_linear,
                  diversity_bound, mu_tilde_g_bar, query_approx_spec, representative_delta,
                  throughput, toeplitz_ccdf)

__all__ = ["ExperimentConfig", "ResultTable", "run", "main", "EXIT_CODES", "PRESETS"]

SCENARIOS = ("g-cdf", "g-variance", "sir-ccdf", "throughput", "delta-stats", "diversity",
             "reproduce")
ROUTE_NAMES = ("mc", "exp", "erlang-m", "erlang-l", "erlang-refined", "erlang", "noirs")

EXIT_CODES = {
    "config": 2,
    "non-convergence": 3,
    "insufficient-tail-mass": 4,
    "geometry-infeasible": 5,
    "domain": 6,
    "window-too-small": 7,
    "rejection-budget": 8,
    "singular-matrix": 9,
    "error": 1,
}


@dataclass
class ExperimentConfig:
    """One CLI run.

    ``n_elements`` and ``deltas`` are lists so that one table can hold a
    sweep.  ``model`` is one of ``"1"``, ``"2"``, ``"fixed"`` or ``"none"``.
    """

    scenario: str = "sir-ccdf"
    preset: Optional[str] = None
    lam: float = 1e-5
    eta: float = 4.0
    l0: float = 1.0
    q: float = 9.0 / 7.0
    mu: float = 1.0
    n_elements: list = field(default_factory=lambda: [10])
    model: str = "1"
    r2: Optional[float] = None
    deltas: list = field(default_factory=lambda: [1.3e-3])
    theta_db: list = field(default_factory=lambda: list(np.arange(-10.0, 20.0 + 1e-9, 2.5)))
    n_samples: int = 100_000
    seed: int = 1
    routes: list = field(default_factory=lambda: ["mc", "exp", "erlang-m", "erlang-l"])
    mode: str = "voronoi"
    workers: int = 1
    output_path: Optional[str] = None

    def __post_init__(self):
        if self.scenario not in SCENARIOS:
            raise ConfigError(f"unknown scenario {self.scenario!r}")
        if self.model not in ("1", "2", "fixed", "none"):
            raise ConfigError("model must be one of 1, 2, fixed, none")
        if len(self.theta_db) == 0:
            raise ConfigError("empty theta grid")
        bad = [r for r in self.routes if r not in ROUTE_NAMES]
        if bad:
            raise ConfigError(f"unknown routes {bad}")
        if self.n_samples < 1:
            raise ConfigError("samples must be positive")
        if self.mode not in ("voronoi", "distance"):
            raise ConfigError("mode must be voronoi or distance")
        if any(int(n) != n or n < 0 for n in self.n_elements):
            raise ConfigError("n-elements must be nonnegative integers")
        try:
            self.network()
            FadingSpec(self.mu)
        except DomainError as exc:
            raise ConfigError(str(exc)) from exc

    def network(self):
        return NetworkParams(self.lam, self.eta, self.l0, self.q)

    def fading(self):
        return FadingSpec(self.mu)

    def placement(self, delta=None):
        if self.model == "1":
            r2 = self.r2 if self.r2 is not None else self.network().default_r2
            return ModelI(r2)
        if self.model == "2":
            return ModelII()
        if self.model == "fixed":
            return FixedDelta(self.deltas[0] if delta is None else delta)
        return NoIrs()

    def irs(self, n, delta=None):
        return IrsConfig(int(n), self.placement(delta) if n else NoIrs())

    def to_json(self):
        d = dataclasses.asdict(self)
        d["theta_db"] = [float(t) for t in self.theta_db]
        return d


@dataclass
class ResultTable:
    """Equal-length named columns plus metadata."""

    columns: dict
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        lengths = {len(v) for v in self.columns.values()}
        if len(lengths) > 1:
            raise ValueError(f"columns have unequal lengths {lengths}")

    def merge(self, other, key):
        """Append the columns of ``other``, which must share the key column."""
        if not np.array_equal(self.columns[key], other.columns[key]):
            raise ValueError("key columns differ")
        for k, v in other.columns.items():
            if k != key:
                self.columns[k] = v
        self.meta.update(other.meta)
        return self

    def to_csv(self):
        names = list(self.columns)
        rows = [",".join(names)]
        for i in range(len(self.columns[names[0]]) if names else 0):
            rows.append(",".join(_fmt(self.columns[n][i]) for n in names))
        return "\n".join(rows) + "\n"


def _fmt(v):
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return repr(float(v))


# ---------------------------------------------------------------------------
# scenarios


def _theta(cfg):
    return db_to_linear(cfg.theta_db)


def _gcdf(cfg):
    """Empirical CDF of G next to its approximations, per N and delta."""
    y = np.round(np.linspace(0.0, 3.0, 61), 10)
    cols = {"y": y}
    fading = cfg.fading()
    for i, n in enumerate(cfg.n_elements):
        for j, d in enumerate(cfg.deltas):
            tag = f"N{n}_d{d:g}"
            rng = RngStreamSpec(cfg.seed, (i, j)).generator()
            g = np.sort(sample_g(n, d, fading, rng, size=cfg.n_samples))
            cols[f"cdf_mc_{tag}"] = np.searchsorted(g, y, side="right") / g.size
            chi = classify_regime(max(n, 1), d)
            spec = approx_spec(chi, max(n, 1), fading)
            cols[f"cdf_{spec.kind}{spec.M or ''}_{tag}"] = approx_cdf(spec, y)
            if chi == "m" and n * d > 0:
                gspec = approx_spec(chi, n, fading, refined=True, n_delta=n * d, kind="gamma")
                cols[f"cdf_gamma_refined_{tag}"] = approx_cdf(gspec, y)
    return ResultTable(cols)


def _gvariance(cfg):
    fading = cfg.fading()
    ns = np.asarray(cfg.n_elements, dtype=int)
    cols = {"N": ns}
    for d in cfg.deltas:
        cols[f"var_mc_d{d:g}"] = np.array([g_variance(n, d, fading, cfg.n_samples, cfg.seed + i)
                                           for i, n in enumerate(ns)])
    cols["var_ref_l"] = 1.0 / (fading.mu * np.maximum(ns, 1) ** 0.75)
    cols["var_ref_m"] = 1.0 / (fading.mu * np.maximum(ns, 1) ** 0.25)
    return ResultTable(cols)


def _curves(cfg, n):
    """All requested coverage routes for one element count."""
    params, fading, th = cfg.network(), cfg.fading(), _theta(cfg)
    irs = cfg.irs(n)
    out, meta = {}, {}
    if "mc" in cfg.routes:
        res = simulate_sir(params, irs, fading, cfg.n_samples, SimMode(cfg.mode), cfg.seed,
                           cfg.workers)
        out["ccdf_mc"] = res.ccdf(th).ccdf
        meta["mc"] = res.meta
    if "exp" in cfg.routes:
        out["ccdf_exp"] = ccdf_exp_route(SirQuery(th, params, irs, fading, "exp"), seed=cfg.seed)
    mug = mu_tilde_g_bar(params, irs, fading)
    meta["mu_tilde_g_bar"] = mug
    if irs.active:
        dr = representative_delta(params, irs)
        meta["representative_delta"] = dr
        for route, chi in (("erlang-m", "m"), ("erlang-l", "l")):
            if route in cfg.routes:
                spec = approx_spec(chi, n, fading)
                out[f"ccdf_erl_{chi}"] = toeplitz_ccdf(th, spec.M, mug, params.delta_pl)
        if "erlang" in cfg.routes:
            out["ccdf_erl"] = ccdf_erlang_toeplitz(SirQuery(th, params, irs, fading))
        if "erlang-refined" in cfg.routes and classify_regime(n, dr) == "m":
            spec = approx_spec("m", n, fading, refined=True, n_delta=n * dr)
            out["ccdf_erl_refined"] = toeplitz_ccdf(th, spec.M, mug, params.delta_pl)
    else:
        for route in ("erlang-m", "erlang-l", "erlang", "noirs"):
            if route in cfg.routes:
                out["ccdf_noirs"] = ccdf_no_irs(th, params, fading)
                break
    return out, meta


def _sirccdf(cfg, with_throughput=False):
    th = _theta(cfg)
    cols = {"theta_db": np.asarray(cfg.theta_db, dtype=float)}
    meta = {}
    for n in cfg.n_elements:
        curves, m = _curves(cfg, n)
        meta[f"N{n}"] = m
        for k, v in curves.items():
            cols[f"{k}_N{n}"] = v
            if with_throughput:
                cols[f"tput_{k[5:]}_N{n}"] = throughput(th, v)
    if with_throughput:
        meta["optimum"] = _optimum_gains(cols)
    return ResultTable(cols, meta)


def _optimum_gains(cols):
    # relative gain of max-over-theta throughput against the no-IRS column of the same route
    best = {k: float(np.max(v)) for k, v in cols.items() if k.startswith("tput_")}
    gains = {}
    for k, v in best.items():
        route, n = k[5:].rsplit("_N", 1)
        base = best.get(f"tput_{route}_N0") or best.get("tput_noirs_N0")
        if base and n != "0":
            gains[k] = v / base - 1.0
    return {"max_throughput": best, "gain_vs_no_irs": gains}


def _deltastats(cfg):
    params = cfg.network()
    r2 = cfg.r2 if cfg.r2 is not None else params.default_r2
    x = np.logspace(-5, -1, 81)
    kw = dict(lam=params.lam, q=params.q, r2=r2, l0=params.l0, eta=params.eta)
    rng = RngStreamSpec(cfg.seed, (0,)).generator()
    R0 = sample_R0(params.lam, params.q, cfg.n_samples, rng)
    phi = 2.0 * math.pi * rng.random(cfg.n_samples)
    d = np.sort((R0 * params.l0 / (model1_R1(R0, r2, phi) * r2)) ** params.eta)
    return ResultTable({
        "delta": x,
        "cdf_analytic": model1_cdf_delta(x, **kw),
        "pdf_analytic": model1_pdf_delta(x, **kw),
        "cdf_mc": np.searchsorted(d, x, side="right") / d.size,
    })


def _diversity(cfg):
    params, fading = cfg.network(), cfg.fading()
    rows = {"N": [], "slope_mc": [], "n_used": [], "bound_m": [], "bound_l": []}
    meta = {}
    for n in cfg.n_elements:
        irs = cfg.irs(n)
        est = estimate_diversity(params, irs, fading, cfg.seed, workers=cfg.workers)
        rows["N"].append(int(n))
        rows["slope_mc"].append(est.slope)
        rows["n_used"].append(est.n)
        if irs.active:
            bm = diversity_bound(approx_spec("m", n, fading), fading)
            bl = diversity_bound(approx_spec("l", n, fading), fading)
        else:
            bm = bl = diversity_bound(query_approx_spec(SirQuery(1.0, params, irs, fading)), fading)
        rows["bound_m"].append(bm.value)
        rows["bound_l"].append(bl.value)
        meta[f"N{n}"] = {"orientation_m": bm.orientation, "orientation_l": bl.orientation}
    return ResultTable({k: np.asarray(v) for k, v in rows.items()}, meta)


def _vs_n(cfg, theta_db):
    """Coverage against N at fixed thresholds (MC and Erlang-m)."""
    params, fading = cfg.network(), cfg.fading()
    th = db_to_linear(theta_db)
    ns = np.asarray(cfg.n_elements, dtype=int)
    cols = {"N": ns}
    for t_db, t in zip(theta_db, th):
        mc, erl = [], []
        for n in ns:
            irs = cfg.irs(n)
            res = simulate_sir(params, irs, fading, cfg.n_samples, SimMode(cfg.mode), cfg.seed,
                               cfg.workers)
            mc.append(res.ccdf([t]).ccdf[0])
            erl.append(ccdf_erlang_toeplitz(SirQuery(t, params, irs, fading, chi="m"))
                       if irs.active else ccdf_no_irs(t, params, fading))
        cols[f"ccdf_mc_{t_db:g}dB"] = np.asarray(mc)
        cols[f"ccdf_erl_m_{t_db:g}dB"] = np.asarray(erl)
    return ResultTable(cols)


def _vs_delta(cfg, theta_db=10.0):
    """Throughput against a fixed triangle parameter at one threshold."""
    params, fading = cfg.network(), cfg.fading()
    t = float(db_to_linear(theta_db))
    deltas = np.asarray(cfg.deltas, dtype=float)
    cols = {"delta": deltas}
    for n in cfg.n_elements:
        vals = []
        for d in deltas:
            irs = IrsConfig(int(n), FixedDelta(float(d)))
            c = ccdf_erlang_toeplitz(SirQuery(t, params, irs, fading))
            vals.append(throughput(t, c))
        cols[f"tput_erl_N{n}"] = np.asarray(vals)
    return ResultTable(cols)


_RUNNERS = {
    "g-cdf": _gcdf,
    "g-variance": _gvariance,
    "sir-ccdf": _sirccdf,
    "throughput": lambda c: _sirccdf(c, with_throughput=True),
    "delta-stats": _deltastats,
    "diversity": _diversity,
}


# ---------------------------------------------------------------------------
# presets

_DB = list(np.arange(-10.0, 25.0 + 1e-9, 2.5))
_NGRID = [1, 2, 5, 10, 20, 50, 100]

PRESETS = {
    "fig2": [dict(scenario="g-cdf", model="fixed", n_elements=[10], deltas=[1e-7, 1e-3, 1.0]),
             dict(scenario="g-cdf", model="fixed", n_elements=[100], deltas=[1e-8, 1e-4, 0.1])],
    "fig3": [dict(scenario="g-variance", model="fixed", n_elements=_NGRID,
                  deltas=[0.0, 1e-6, 1e-4, 1e-3, 1e-2, 1e-1])],
    "fig4": [dict(scenario="g-cdf", model="fixed", n_elements=[10, 100], deltas=[1.3e-3])],
    "fig5": [dict(scenario="delta-stats", model="1", n_samples=1_000_000)],
    "fig6": [dict(scenario="sir-ccdf", model="1", n_elements=[10, 20, 100], theta_db=_DB,
                  routes=["mc", "exp", "erlang-m", "erlang-l", "erlang-refined"])],
    "fig6b": [dict(scenario="sir-ccdf", model="1", mu=2.0, n_elements=[10, 20, 100], theta_db=_DB,
                   routes=["mc", "exp", "erlang-m", "erlang-l"])],
    "fig7": [dict(scenario="throughput", model="1", n_elements=[0, 10, 20, 100],
                  theta_db=list(np.arange(-10.0, 25.0 + 1e-9, 0.5)), routes=["mc", "erlang-m"])],
    "fig8": [dict(scenario="sir-ccdf", tag="l0_1", model="2", l0=1.0, n_elements=[0, 10, 100], theta_db=_DB,
                  routes=["mc", "erlang-m", "erlang-l", "noirs"]),
             dict(scenario="sir-ccdf", tag="l0_20", model="2", l0=20.0, n_elements=[0, 10, 100], theta_db=_DB,
                  routes=["mc", "erlang-m", "erlang-l", "noirs"])],
    "fig9": [dict(scenario="vs-n", tag="l0_1", model="2", l0=1.0, n_elements=[0, 10, 20, 50, 100]),
             dict(scenario="vs-n", tag="l0_20", model="2", l0=20.0,
                  n_elements=[0, 10, 20, 50, 100])],
    "fig10": [dict(scenario="vs-delta", model="fixed", n_elements=[10, 20, 100],
                   deltas=list(np.logspace(-8, 0, 33)))],
    "fig11": [dict(scenario="diversity", model="1", r2=5.0, mu=1.0,
                   n_elements=[0, 10, 20, 50, 100])],
    "fig12": [dict(scenario="diversity", model="1", r2=5.0, mu=5.0,
                   n_elements=[0, 10, 20, 50, 100])],
    "fig13": [dict(scenario="diversity", model="2", l0=20.0, mu=1.0,
                   n_elements=[0, 10, 20, 50, 100])],
}


def _run_preset(cfg):
    parts = []
    for over in PRESETS[cfg.preset]:
        over = dict(over)
        scen = over.pop("scenario")
        tag = over.pop("tag", "")
        sub_scen = scen if scen in _RUNNERS else "sir-ccdf"
        sub = dataclasses.replace(cfg, scenario=sub_scen, preset=None, **over)
        if scen == "vs-n":
            table = _vs_n(sub, [5.0, 15.0])
        elif scen == "vs-delta":
            table = _vs_delta(sub)
        else:
            table = _RUNNERS[scen](sub)
        parts.append((table, f"_{tag}" if tag else ""))
    key = next(iter(parts[0][0].columns))
    cols = {key: parts[0][0].columns[key]}
    meta = {}
    for table, suffix in parts:
        if not np.array_equal(table.columns[key], cols[key]):
            raise ConfigError("preset parts do not share a key column")
        for k, v in table.columns.items():
            if k != key:
                cols[k + suffix] = v
        meta.update({k + suffix: v for k, v in table.meta.items()})
    return ResultTable(cols, meta)


# ---------------------------------------------------------------------------
# provenance and output


def _git_describe():
    here = os.path.dirname(os.path.abspath(__file__))
    try:
        out = subprocess.run(["git", "describe", "--always", "--dirty"], cwd=here,
                             capture_output=True, text=True, timeout=5)
        return out.stdout.strip() or "unknown"
    except (OSError, subprocess.SubprocessError):
        return "unknown"


def _config_hash(cfg):
    blob = json.dumps(_jsonable({k: v for k, v in cfg.to_json().items() if k != "output_path"}),
                      sort_keys=True)
    return hashlib.sha256(blob.encode()).hexdigest()[:16]


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        v = float(obj)
        return v if math.isfinite(v) else str(v)
    return obj


def _atomic_write(path, text):
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


def run(cfg):
    """Execute a configuration and return its :class:`ResultTable`."""
    if cfg.scenario == "reproduce":
        if cfg.preset not in PRESETS:
            raise ConfigError(f"unknown preset {cfg.preset!r}; choose from {sorted(PRESETS)}")
        table = _run_preset(cfg)
    else:
        table = _RUNNERS[cfg.scenario](cfg)
    table.meta = {
        "config": cfg.to_json(),
        "provenance": {
            "seed": cfg.seed,
            "git_describe": _git_describe(),
            "timestamp": datetime.datetime.now(datetime.timezone.utc).isoformat(),
            "config_hash": _config_hash(cfg),
            "version": __version__,
        },
        "results": table.meta,
    }
    return table


def write_outputs(table, path):
    _atomic_write(path, table.to_csv())
    _atomic_write(os.path.splitext(path)[0] + ".json",
                  json.dumps(_jsonable(table.meta), indent=2, sort_keys=True) + "\n")


# ---------------------------------------------------------------------------
# argument parsing


def parse_theta_db(text):
    """``"a:b:step"`` to an inclusive grid, or a comma-separated list."""
    try:
        if ":" in text:
            a, b, step = (float(v) for v in text.split(":"))
            if step <= 0:
                raise ConfigError("theta step must be positive")
            n = int(math.floor((b - a) / step + 1e-9)) + 1
            return [a + i * step for i in range(max(n, 0))]
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise ConfigError(f"bad theta grid {text!r}") from exc


def _int_list(text):
    return [int(v) for v in str(text).split(",") if v.strip()]


def _float_list(text):
    return [float(v) for v in str(text).split(",") if v.strip()]


def build_parser():
    p = argparse.ArgumentParser(prog="irs-netgeo", description=__doc__.splitlines()[0])
    p.add_argument("scenario", choices=SCENARIOS)
    p.add_argument("preset", nargs="?", help="preset name for 'reproduce'")
    p.add_argument("--config", help="JSON file with default values for the flags")
    p.add_argument("--lambda", dest="lam", type=float)
    p.add_argument("--eta", type=float)
    p.add_argument("--l0", type=float)
    p.add_argument("--q", type=float)
    p.add_argument("--mu", type=float)
    p.add_argument("--n-elements", dest="n_elements", help="comma-separated list")
    p.add_argument("--model", choices=("1", "2", "fixed", "none"))
    p.add_argument("--r2", type=float)
    p.add_argument("--delta", dest="deltas", help="comma-separated list")
    p.add_argument("--theta-db", dest="theta_db", help="a:b:step or comma list")
    p.add_argument("--samples", dest="n_samples", type=float)
    p.add_argument("--seed", type=int)
    p.add_argument("--routes", help=f"comma list from {','.join(ROUTE_NAMES)}")
    p.add_argument("--mode", choices=("voronoi", "distance"))
    p.add_argument("--workers", type=int)
    p.add_argument("--out", dest="output_path")
    return p


_FILE_KEYS = {"lambda": "lam", "n-elements": "n_elements", "delta": "deltas",
              "theta-db": "theta_db", "samples": "n_samples", "out": "output_path"}


def config_from_args(argv):
    args = build_parser().parse_args(argv)
    values = {}
    if args.config:
        try:
            with open(args.config) as fh:
                raw = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {args.config}: {exc}") from exc
        if not isinstance(raw, dict):
            raise ConfigError("config file must hold a JSON object")
        for k, v in raw.items():
            values[_FILE_KEYS.get(k, k.replace("-", "_"))] = v
    for k, v in vars(args).items():
        if k in ("config", "scenario", "preset") or v is None:
            continue
        values[k] = v
    # list-valued keys accept a string (flag syntax), a scalar or a JSON list
    parsers = {"n_elements": _int_list, "deltas": _float_list, "theta_db": parse_theta_db,
               "routes": lambda s: [r.strip() for r in s.split(",") if r.strip()]}
    for k, f in parsers.items():
        v = values.get(k)
        if isinstance(v, str):
            values[k] = f(v)
        elif isinstance(v, (int, float)):
            values[k] = [v]
    if "n_samples" in values:
        values["n_samples"] = int(float(values["n_samples"]))
    if "model" in values:
        values["model"] = str(values["model"])
    known = {f.name for f in dataclasses.fields(ExperimentConfig)}
    unknown = set(values) - known
    if unknown:
        raise ConfigError(f"unknown configuration keys {sorted(unknown)}")
    if args.scenario == "reproduce" and not args.preset:
        raise ConfigError("reproduce needs a preset name")
    try:
        return ExperimentConfig(scenario=args.scenario, preset=args.preset, **values)
    except TypeError as exc:
        raise ConfigError(str(exc)) from exc


def main(argv=None):
    argv = sys.argv[1:] if argv is None else argv
    try:
        cfg = config_from_args(argv)
        table = run(cfg)
        if cfg.output_path:
            write_outputs(table, cfg.output_path)
        else:
            sys.stdout.write(table.to_csv())
        return 0
    except IrsNetGeoError as exc:
        sys.stderr.write(json.dumps({"error": exc.category, "message": str(exc)}) + "\n")
        return EXIT_CODES.get(exc.category, 1)


if __name__ == "__main__":
    sys.exit(main())
