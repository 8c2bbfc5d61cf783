"""Command-line front end: run a verification suite and write a CSV or JSON report.

Every report row has the columns ``check_id, n, m, ell, params, residual,
tolerance, status``.  The first line of the file is a ``# generated ...``
timestamp; everything after it depends only on the command line.  The exit
status is 0 when every row is PASS (rows marked INFO are informational), 1 when
any row fails, and 3 when the library rejects the parameters.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from .cone import (ConeFunction, ConeParams, basis_indices, basis_norm, cone_grid, gram_matrix,
                   random_polynomial, sample_panel)
from .diffop import EIGEN_TOL, NOT_EIGEN_TOL, apply_D, eigen_check, eigenspace_U, eigenvalue
from .exceptions import ConicPolyError
from .projection import (CutoffFunction, error_table, project, q_near_best, sobolev_fourier_coeffs,
                         sobolev_project_integral, verify_commutation, verify_factor_theorem,
                         verify_sobolev_commutation)

COLUMNS = ("check_id", "n", "m", "ell", "params", "residual", "tolerance", "status")
OUTPUT_ENV = "CONICPOLY_OUTPUT_DIR"
COMMANDS = ("gram", "sobolev-gram", "eigencheck", "commute", "project-compare", "factor",
            "approx-table", "eigenspace")


@dataclass
class RunConfig:
    command: str
    d: int = 2
    beta: float = 0.0
    gamma: float = 0.0
    s: int | None = None
    n_max: int = 6
    n_list: tuple = (4, 8, 12, 16, 20)
    lambdas: tuple | None = None
    eta: str = "smooth-step"
    f: str = "exp-t"
    samples: int = 10
    output: str | None = None
    format: str = "csv"
    seed: int = 0


def _row(check_id, params, residual, tolerance, status, n="", m="", ell=""):
    return {"check_id": check_id, "n": n, "m": m, "ell": ell, "params": params,
            "residual": float(residual), "tolerance": float(tolerance), "status": status}


def _status(ok):
    return "PASS" if ok else "FAIL"


def _eta(name):
    if name == "smooth-step":
        return CutoffFunction()
    if name == "linear":
        return CutoffFunction(lambda x: np.clip(2 - x, 0.0, 1.0))
    raise ValueError(f"unknown cut-off {name!r}")


def _sobolev(cfg):
    if cfg.s is None:
        raise ValueError(f"{cfg.command} needs --s")
    return ConeParams.sobolev(cfg.d, cfg.beta, cfg.s, cfg.lambdas)


# ---------------------------------------------------------------------------
# suites


def run_gram(cfg, sobolev=False):
    params = _sobolev(cfg) if sobolev else ConeParams.ordinary(cfg.d, cfg.beta, cfg.gamma)
    tol = 1e-9 if sobolev else 1e-10
    idx, G = gram_matrix(params, cfg.n_max)
    desc = params.describe()
    rows = []
    off = np.abs(G - np.diag(np.diag(G)))
    for k, (n, m, ell) in enumerate(idx):
        h = basis_norm(params, n, m)
        rel = abs(G[k, k] - h) / abs(h)
        rows.append(_row("norm", desc, rel, tol, _status(rel < tol), n, m, ell))
        rows.append(_row("orthogonality", desc, off[k].max(), tol, _status(off[k].max() < tol), n, m, ell))
    return rows


def run_eigencheck(cfg):
    if cfg.s is not None:
        params = ConeParams.sobolev(cfg.d, -1.0, cfg.s, cfg.lambdas)
    else:
        params = ConeParams.ordinary(cfg.d, -1.0, cfg.gamma)
    desc = params.describe()
    rows = []
    for idx in basis_indices(cfg.d, cfg.n_max):
        rep = eigen_check(params, idx)
        expect_eigen = cfg.s is None or idx.m <= idx.n - cfg.s or idx.m == idx.n
        if expect_eigen:
            rows.append(_row("eigen", desc, rep.residual, EIGEN_TOL, _status(rep.classified == "eigen"), *idx))
        else:
            rows.append(_row("not-eigen", desc, rep.residual, NOT_EIGEN_TOL,
                             _status(rep.classified == "not-eigen"), *idx))
    return rows


def _polys(cfg, degree):
    return [random_polynomial(cfg.d, degree, seed=cfg.seed + k) for k in range(cfg.samples)]


def run_commute(cfg):
    rows = []
    polys = _polys(cfg, 5)
    if cfg.s is None:
        params = ConeParams.ordinary(cfg.d, cfg.beta, cfg.gamma)
        for n in range(cfg.n_max + 1):
            res = max(verify_commutation(f, params, n) for f in polys)
            rows.append(_row("commute", params.describe() + f";seed={cfg.seed}", res, 1e-9, _status(res < 1e-9), n))
        return rows
    params = _sobolev(cfg)
    for n in range(cfg.s, cfg.n_max + 1):
        res = max(verify_sobolev_commutation(f, params, n) for f in polys)
        rows.append(_row("sobolev-commute", params.describe() + f";seed={cfg.seed}", res, 1e-9,
                         _status(res < 1e-9), n))
    return rows


def run_project_compare(cfg):
    params = _sobolev(cfg)
    desc = params.describe() + f";seed={cfg.seed}"
    xi, t = sample_panel(cfg.d, 20)
    rows = []
    polys = _polys(cfg, 5)
    tables = [sobolev_fourier_coeffs(f, params, cfg.n_max) for f in polys]
    for n in range(cfg.n_max + 1):
        res = max(float(np.max(np.abs(project(T, n, xi, t) - sobolev_project_integral(f, params, n, xi, t))))
                  for f, T in zip(polys, tables))
        rows.append(_row("integral-representation", desc, res, 1e-9, _status(res < 1e-9), n))
    direct = [sobolev_fourier_coeffs(f, params, cfg.n_max, method="direct") for f in polys]
    for n in range(cfg.n_max + 1):
        # relative to the coefficient scale: the direct path divides by norms as small as 1e-8
        res = max(max(abs(A.entries[i] - B.entries[i]) for i in A.degree(n))
                  / max(1.0, max(abs(v) for v in A.entries.values())) for A, B in zip(tables, direct))
        rows.append(_row("coefficient-paths", desc, res, 1e-9, _status(res < 1e-9), n))
    return rows


def run_factor(cfg):
    params = _sobolev(cfg)
    desc = params.describe() + f";seed={cfg.seed}"
    polys = [random_polynomial(cfg.d, 4, seed=cfg.seed + k) for k in range(cfg.samples)]
    rows = []
    for n in range(cfg.n_max + 1):
        res = max(verify_factor_theorem(g, params, n) for g in polys)
        rows.append(_row("factor", desc, res, 1e-10, _status(res < 1e-10), n))
    return rows


TEST_FUNCTIONS = {
    "exp-t": lambda d: ConeFunction(d, lambda x, t: np.exp(t), [lambda x, t: np.exp(t)] * 4, "exp-t"),
    "exp-t-cos": lambda d: ConeFunction(
        d, lambda x, t: np.exp(t) * x[..., 0], [lambda x, t: np.exp(t) * x[..., 0]] * 4, "exp-t-cos"),
}


def run_approx_table(cfg):
    params = _sobolev(cfg) if cfg.s is not None else ConeParams.ordinary(cfg.d, cfg.beta, cfg.gamma)
    eta = _eta(cfg.eta)
    f = TEST_FUNCTIONS[cfg.f](cfg.d)
    desc = params.describe() + f";f={cfg.f};eta={cfg.eta}"
    rows = []
    xi, t = sample_panel(cfg.d)
    for n in cfg.n_list:
        g = random_polynomial(cfg.d, n, seed=cfg.seed + n)
        gv = np.asarray(g(xi, t))
        res = float(np.max(np.abs(q_near_best(g, params, n, eta, xi, t) - gv)) / np.max(np.abs(gv)))
        rows.append(_row("reproduce", desc + f";seed={cfg.seed + n}", res, 1e-10, _status(res < 1e-10), n))
    table = error_table(f, params, cfg.n_list, eta, grid=cone_grid(cfg.d), best_fit=False)
    prev = math.inf
    for row in table:
        err = row["sup_err"]
        rows.append(_row("sup-error-decreasing", desc, err, prev, _status(err < prev), row["n"]))
        prev = err
    ratio = table[-1]["sup_err"] / table[0]["sup_err"]
    rows.append(_row("sup-error-drop", desc, ratio, 0.1, _status(ratio <= 0.1), table[-1]["n"]))
    return rows


def run_eigenspace(cfg):
    if cfg.s is None:
        raise ValueError("eigenspace needs --s")
    desc = f"d={cfg.d};beta=-1;s={cfg.s}"
    xi, t = sample_panel(cfg.d)
    rows = []
    for n in range(cfg.n_max + 1):
        U = eigenspace_U(n, cfg.s, cfg.d)
        lam = eigenvalue(n, -cfg.s, cfg.d)
        for label, (nn, m, ell), Z in U.elements:
            z = np.asarray(Z(xi, t))
            res = float(np.max(np.abs(apply_D(-cfg.s, Z)(xi, t) - lam * z))) / float(np.max(np.abs(z)))
            rows.append(_row(f"eigenspace-{label}", desc, res, 1e-9, _status(res < 1e-9), n, m, ell))
        rows.append(_row("count-vs-dimV", desc, abs(U.count - U.dim_V), 0.5, _status(U.matches_dim_V), n))
        rows.append(_row("count-vs-binomial", desc, abs(U.count - U.dim_claimed), 0.5,
                         "PASS" if U.matches_claimed else "INFO", n))
    return rows


SUITES = {
    "gram": run_gram,
    "sobolev-gram": lambda cfg: run_gram(cfg, sobolev=True),
    "eigencheck": run_eigencheck,
    "commute": run_commute,
    "project-compare": run_project_compare,
    "factor": run_factor,
    "approx-table": run_approx_table,
    "eigenspace": run_eigenspace,
}


# ---------------------------------------------------------------------------
# reports


def _fmt(v):
    return repr(v) if isinstance(v, float) else str(v)


def render(rows, fmt):
    """Report body (without the timestamp line)."""
    if fmt == "json":
        return json.dumps([{k: r[k] for k in COLUMNS} for r in rows], indent=1, ensure_ascii=False) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\r\n")
    w.writerow(COLUMNS)
    for r in rows:
        w.writerow([_fmt(r[k]) for k in COLUMNS])
    return buf.getvalue()


def load_report(path):
    """Parse a report written by :func:`run`, skipping the timestamp line."""
    text = Path(path).read_text(encoding="utf-8")
    body = "".join(line for line in text.splitlines(keepends=True) if not line.startswith("#"))
    if body.lstrip().startswith("["):
        return json.loads(body)
    return list(csv.DictReader(io.StringIO(body)))


def default_output(cfg):
    base = Path(os.environ.get(OUTPUT_ENV, "."))
    return base / f"{cfg.command}.{cfg.format}"


def run(cfg: RunConfig, stream=None):
    """Run one suite, write its report and return the exit status."""
    stream = sys.stdout if stream is None else stream
    rows = SUITES[cfg.command](cfg)
    body = render(rows, cfg.format)
    stamp = datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")
    text = f"# generated {stamp} by conicpoly {cfg.command}\n" + body
    if cfg.output == "-":
        stream.write(text)
        target = "<stdout>"
    else:
        path = Path(cfg.output) if cfg.output else default_output(cfg)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8", newline="")
        target = str(path)
    failed = [r for r in rows if r["status"] not in ("PASS", "INFO")]
    print(f"{cfg.command}: {len(rows)} rows, {len(failed)} failed -> {target}", file=sys.stderr)
    return 1 if failed else 0


# ---------------------------------------------------------------------------
# argument parsing


def _floats(text):
    return tuple(float(v) for v in text.split(",") if v.strip())


def _ints(text):
    return tuple(int(v) for v in text.split(",") if v.strip())


def build_parser():
    parser = argparse.ArgumentParser(prog="conicpoly", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--d", type=int, default=2, choices=(2, 3))
        p.add_argument("--beta", type=float, default=0.0)
        p.add_argument("--gamma", type=float, default=0.0)
        p.add_argument("--s", type=int, default=None)
        p.add_argument("--n-max", type=int, default=6)
        p.add_argument("--lambdas", "--mu", dest="lambdas", type=_floats, default=None,
                       help="comma-separated rim weights, one per derivative order below s")
        p.add_argument("--eta", choices=("smooth-step", "linear"), default="smooth-step")
        p.add_argument("--samples", type=int, default=10, help="number of random test polynomials")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--output", default=None,
                       help=f"report path, '-' for stdout (default: ${OUTPUT_ENV}/<command>.<format>)")
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        if name == "approx-table":
            p.add_argument("--f", choices=sorted(TEST_FUNCTIONS), default="exp-t")
            p.add_argument("--n", dest="n_list", type=_ints, default=(4, 8, 12, 16, 20))
    return parser


def config_from_args(ns) -> RunConfig:
    if ns.n_max < 0:
        raise ValueError("--n-max must be nonnegative")
    if ns.samples < 1:
        raise ValueError("--samples must be positive")
    return RunConfig(command=ns.command, d=ns.d, beta=ns.beta, gamma=ns.gamma, s=ns.s, n_max=ns.n_max,
                     n_list=getattr(ns, "n_list", (4, 8, 12, 16, 20)), lambdas=ns.lambdas, eta=ns.eta,
                     f=getattr(ns, "f", "exp-t"), samples=ns.samples, output=ns.output,
                     format=ns.format, seed=ns.seed)


def main(argv=None):
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        cfg = config_from_args(ns)
        return run(cfg)
    except ConicPolyError as exc:
        print(f"conicpoly: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        parser.error(str(exc))


if __name__ == "__main__":
    sys.exit(main())
