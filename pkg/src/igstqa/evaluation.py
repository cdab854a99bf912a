"""Correlation of objective scores with subjective ratings.

The protocol: score every (reference, synthesized) pair of a manifest, map
the objective scores onto the DMOS scale with a 4-parameter logistic, then
report PLCC and RMSE of the mapped scores and SROCC of the raw scores.
"""

import csv
import json
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from scipy.optimize import minimize
from scipy.stats import rankdata

from . import codec
from .errors import DegenerateInputError, FeatureMismatchError, IGSTQAError, InputError, InsufficientDataError
from .image_core import load_image
from .index import Config, igstqa, score_pair
from .texture_features import extract_rr_features

MANIFEST_COLUMNS = ("pair_id", "ref", "syn", "dmos")
MIN_FIT_POINTS = 5
SIMPLEX_XTOL = 1e-9
SIMPLEX_MAXITER = 2000

# "Proposed" and strongest-competitor (STQA) rows of the published tables;
# single-domain rows come from the spatial/gradient ablation table.
PUBLISHED_RESULTS = {
    "syntex": {
        "name": "SynTEX Granularity",
        "both": (0.816, 0.820, 0.718),
        "spatial": (0.785, 0.776, 0.854),
        "gradient": (0.797, 0.809, 0.753),
        "stqa": (0.770, 0.777, 0.792),
    },
    "parametric": {
        "name": "Parametric Quality Assessment",
        "both": (0.733, 0.679, 0.170),
        "spatial": (0.682, 0.651, 0.213),
        "gradient": (0.702, 0.664, 0.197),
        "stqa": (0.532, 0.520, 0.250),
    },
}


@dataclass
class EvalRecord:
    pair_id: str
    objective: float
    subjective: float


@dataclass
class EvalReport:
    plcc: float
    srocc: float
    rmse: float
    logistic_params: tuple
    n: int
    config: dict = field(default_factory=dict)
    records: list = field(default_factory=list)
    mapped: list = field(default_factory=list)
    database: str = None

    def as_dict(self):
        doc = {
            "n": self.n,
            "plcc": self.plcc,
            "srocc": self.srocc,
            "rmse": self.rmse,
            "logistic_params": list(self.logistic_params),
            "config": self.config,
        }
        if self.database:
            doc["published_comparison"] = published_comparison(self)
        doc["records"] = [
            {"pair_id": r.pair_id, "objective": r.objective, "subjective": r.subjective,
             "mapped": m}
            for r, m in zip(self.records, self.mapped)
        ]
        return doc


def _pearson(x, y):
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    dx = x - x.mean()
    dy = y - y.mean()
    sxx = np.dot(dx, dx)
    syy = np.dot(dy, dy)
    if sxx == 0 or syy == 0:
        raise DegenerateInputError("degenerate input")
    return float(np.clip(np.dot(dx, dy) / math.sqrt(sxx * syy), -1.0, 1.0))


def srocc(objective, subjective):
    """Spearman rank correlation with average ranks for ties."""
    x = np.asarray(objective, dtype=np.float64)
    y = np.asarray(subjective, dtype=np.float64)
    if x.size != y.size or x.size < 3:
        raise InsufficientDataError()
    if np.unique(x).size < 2 or np.unique(y).size < 2:
        raise DegenerateInputError("degenerate ranking")
    return _pearson(rankdata(x), rankdata(y))


def plcc_rmse(mapped, subjective):
    """Pearson correlation and root-mean-square error of mapped vs subjective."""
    m = np.asarray(mapped, dtype=np.float64)
    s = np.asarray(subjective, dtype=np.float64)
    if m.size != s.size or m.size < 3:
        raise InsufficientDataError()
    return _pearson(m, s), float(np.sqrt(np.mean((m - s) ** 2)))


def logistic(x, params):
    """``b1 * (1/2 - 1/(1 + exp(b2*(x - b3)))) + b4``."""
    b1, b2, b3, b4 = params
    return b1 * np.tanh(b2 * (np.asarray(x, dtype=np.float64) - b3) / 2) / 2 + b4


def _logistic_slope_form(x, p):
    # p = (slope at b3, b2, b3, b4); finite as b2 -> 0, where the curve is a line
    slope, b2, b3, b4 = p
    t = np.asarray(x, dtype=np.float64) - b3
    if b2 == 0:
        return slope * t + b4
    return 2 * slope * np.tanh(b2 * t / 2) / b2 + b4


def logistic_fit(objective, subjective):
    """Fit the 4-parameter logistic by Nelder-Mead; return ``(params, mapped)``.

    Initialization is deterministic: b1 = range of subjective, b2 = 1/std of
    objective, b3 = mean objective, b4 = mean subjective.  The simplex runs
    over (slope at b3, b2, b3, b4) so near-linear data do not send b1 off
    along an ill-conditioned valley; the returned params are the usual b's.
    """
    x = np.asarray(objective, dtype=np.float64)
    y = np.asarray(subjective, dtype=np.float64)
    if x.size != y.size or x.size < MIN_FIT_POINTS:
        raise InsufficientDataError()
    sx = x.std()
    if sx == 0:
        raise DegenerateInputError("degenerate input")
    b1, b2, b3, b4 = np.ptp(y), 1.0 / sx, x.mean(), y.mean()
    start = np.array([b1 * b2 / 4, b2, b3, b4])

    def sse(p):
        r = _logistic_slope_form(x, p) - y
        return float(np.dot(r, r))

    res = minimize(sse, start, method="Nelder-Mead",
                   options={"xatol": SIMPLEX_XTOL, "fatol": np.inf,
                            "maxiter": SIMPLEX_MAXITER, "maxfev": 50 * SIMPLEX_MAXITER})
    slope, b2, b3, b4 = (float(v) for v in res.x)
    mapped = _logistic_slope_form(x, res.x)
    if b2 == 0:
        b2 = math.ulp(0.0)
    params = (4 * slope / b2, b2, b3, b4)
    return params, [float(v) for v in mapped]


def evaluate_records(records, config=None, database=None):
    records = sorted(records, key=lambda r: r.pair_id)
    if len(records) < MIN_FIT_POINTS:
        raise InsufficientDataError()
    obj = [r.objective for r in records]
    subj = [r.subjective for r in records]
    params, mapped = logistic_fit(obj, subj)
    plcc, rmse = plcc_rmse(mapped, subj)
    return EvalReport(plcc=plcc, srocc=srocc(obj, subj), rmse=rmse,
                      logistic_params=params, n=len(records),
                      config=config.as_dict() if config else {},
                      records=records, mapped=mapped, database=database)


def published_comparison(report):
    ref = PUBLISHED_RESULTS[report.database]
    domains = report.config.get("domains", ["I", "IGM"])
    mode = {("I",): "spatial", ("IGM",): "gradient"}.get(tuple(domains), "both")
    proposed = ref[mode]
    stqa = ref["stqa"]
    return {
        "database": ref["name"],
        "mode": mode,
        "published_proposed": dict(zip(("plcc", "srocc", "rmse"), proposed)),
        "published_stqa": dict(zip(("plcc", "srocc", "rmse"), stqa)),
        "srocc_exceeds_stqa": abs(report.srocc) > stqa[1],
    }


def read_manifest(path):
    """Rows of a ``pair_id,ref,syn,dmos`` CSV with paths resolved against its folder."""
    path = Path(path)
    try:
        with path.open(newline="", encoding="utf-8") as fh:
            reader = csv.DictReader(fh)
            if reader.fieldnames is None:
                raise InsufficientDataError()
            if tuple(reader.fieldnames) != MANIFEST_COLUMNS:
                raise InputError(f"manifest header must be {','.join(MANIFEST_COLUMNS)}")
            rows = list(reader)
    except OSError as exc:
        raise InputError(f"cannot read manifest {path}: {exc}") from exc
    base = path.parent
    out = []
    for k, row in enumerate(rows, start=2):
        pid = row["pair_id"]
        try:
            dmos = float(row["dmos"])
        except (TypeError, ValueError):
            raise InputError(f"row {pid or k}: bad dmos value {row['dmos']!r}") from None
        if not math.isfinite(dmos):
            raise InputError(f"row {pid or k}: non-finite dmos")
        out.append((pid, base / row["ref"], base / row["syn"], dmos))
    ids = [r[0] for r in out]
    if len(set(ids)) != len(ids):
        raise InputError("duplicate pair_id in manifest")
    return out


def score_reference(ref, syn_img, config):
    """Score ``syn_img`` against a reference image path or ``.igstqa.json`` payload."""
    if codec.is_payload_path(ref):
        payload = codec.read_payload(ref)
        if (payload.levels != config.levels or payload.domains != config.domains
                or payload.boundary != config.boundary):
            raise FeatureMismatchError()
        syn = extract_rr_features(syn_img, config.levels, config.domains, config.boundary)
        return igstqa(payload.feature_sets, syn, config.alpha)
    return score_pair(load_image(ref), syn_img, config)


def _score_row(args):
    pid, ref, syn, dmos, config = args
    try:
        score = score_reference(ref, load_image(syn), config)
    except IGSTQAError as exc:
        return pid, None, exc
    return pid, EvalRecord(pid, score.value, dmos), None


def score_manifest(rows, config, jobs=1):
    """Score every row; abort with the failing row ids if any row fails."""
    tasks = [(pid, ref, syn, dmos, config) for pid, ref, syn, dmos in rows]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_score_row, tasks))
    else:
        results = [_score_row(t) for t in tasks]
    results.sort(key=lambda t: t[0])
    failed = [(pid, exc) for pid, _, exc in results if exc is not None]
    if failed:
        pid, exc = failed[0]
        err = type(exc)(f"row {pid}: {exc}")
        err.failed_rows = [p for p, _ in failed]
        raise err from exc
    return [rec for _, rec, _ in results]


def run_benchmark(manifest, config=None, jobs=1, database=None):
    config = config or Config()
    if database is not None and database not in PUBLISHED_RESULTS:
        raise InputError(f"unknown database {database!r}")
    rows = read_manifest(manifest)
    if len(rows) < MIN_FIT_POINTS:
        raise InsufficientDataError()
    records = score_manifest(rows, config, jobs=jobs)
    return evaluate_records(records, config, database=database)


def format_table(report, styled=False):
    """Plain-text results table in the layout of the published comparison tables."""
    bold = ("\033[1m", "\033[0m") if styled else ("", "")
    levels = report.config.get("levels", "L")
    n_dom = len(report.config.get("domains", ["I", "IGM"]))
    feats = f"{12 * n_dom}L={12 * n_dom * levels}" if isinstance(levels, int) else "24L"
    lines = [f"{bold[0]}{'Method':<28}{'# Features':>12}{'PLCC':>9}{'SROCC':>9}{'RMSE':>9}{bold[1]}",
             "-" * 67,
             f"{'IGSTQA (this run)':<28}{feats:>12}{report.plcc:>9.3f}{report.srocc:>9.3f}{report.rmse:>9.3f}"]
    if report.database:
        cmp = published_comparison(report)
        p, s = cmp["published_proposed"], cmp["published_stqa"]
        lines.append(f"{'Published, proposed':<28}{f'{12 * n_dom}L':>12}"
                     f"{p['plcc']:>9.3f}{p['srocc']:>9.3f}{p['rmse']:>9.3f}")
        lines.append(f"{'Published, STQA':<28}{'7':>12}"
                     f"{s['plcc']:>9.3f}{s['srocc']:>9.3f}{s['rmse']:>9.3f}")
        lines.append("-" * 67)
        verdict = "yes" if cmp["srocc_exceeds_stqa"] else "no"
        lines.append(f"database: {cmp['database']}; SROCC exceeds STQA: {verdict}")
    else:
        lines.append("-" * 67)
    lines.append(f"n = {report.n}")
    return "\n".join(lines) + "\n"


def write_report(report, path, figure=True):
    """Write ``path`` (JSON), ``path`` with ``.txt`` suffix (table) and a ``.png`` figure."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(report.as_dict(), indent=2, allow_nan=False) + "\n",
                    encoding="utf-8", newline="\n")
    path.with_suffix(".txt").write_text(format_table(report), encoding="utf-8", newline="\n")
    if figure:
        from .plotting import plot_regression
        plot_regression(report, path.with_suffix(".png"))


def table_styling_enabled(stream):
    return not os.environ.get("IGSTQA_NO_COLOR") and hasattr(stream, "isatty") and stream.isatty()
