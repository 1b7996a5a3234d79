"""Coupling sweeps, paradigm-state tables and oracle comparisons as CSV.

Every writer emits one header line, comma separators, ``.`` decimals and
12 significant digits, so identical inputs give byte-identical files.
Writers accept a path or an open text stream.
"""
from __future__ import annotations

import csv
import io
import logging
import os
from concurrent.futures import ThreadPoolExecutor
from contextlib import contextmanager
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from . import ed, ising
from ._errors import NumericalError
from .paradigm import FAMILIES, ParadigmFamily, build_state, closed_form
from .quadrature import QuadratureSpec
from .qstate import eg2_of_state, g2_of_state, meyer_wallach
from .records import MeasureReport

log = logging.getLogger(__name__)

DEFAULT_REFINE = (1.0, 0.1, 1e-3)
DEFAULT_TABLE1_N = (4, 6, 8, 10)
DEFAULT_ORACLE_N = (12, 14, 16)
DEFAULT_ORACLE_LAMBDA = (0.2, 0.5, 0.8, 1.0)


def fmt(x: float) -> str:
    return f"{float(x):.12g}"


@contextmanager
def _open_out(out):
    if out is None or out == "-":
        import sys
        yield sys.stdout
    elif isinstance(out, (str, os.PathLike)):
        with open(out, "w", newline="", encoding="utf-8") as fh:
            yield fh
    else:
        yield out


def write_csv(header: Sequence[str], rows: Iterable[Sequence], out) -> None:
    with _open_out(out) as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([fmt(v) if isinstance(v, (float, np.floating)) else v for v in row])


@dataclass(frozen=True)
class SweepConfig:
    """Coupling grid plus evaluation settings.

    The default reproduces the measure-vs-coupling figures: 401 points on
    [0, 2] refined to 1e-3 spacing on [0.9, 1.1], with G(2, l) up to l = 15.
    """

    lambda_min: float = 0.0
    lambda_max: float = 2.0
    steps: int = 401
    refine: tuple[float, float, float] | None = DEFAULT_REFINE
    l_max: int = ising.DEFAULT_L_MAX
    quad: QuadratureSpec = field(default_factory=QuadratureSpec)
    output_path: str | None = None
    threads: int | None = None

    def __post_init__(self):
        if not self.lambda_min < self.lambda_max:
            raise ValueError(f"need lambda_min < lambda_max, got [{self.lambda_min}, {self.lambda_max}]")
        if self.lambda_min < 0:
            raise ValueError("couplings must be >= 0")
        if self.steps < 2:
            raise ValueError(f"steps must be >= 2, got {self.steps}")
        if self.l_max < 1:
            raise ValueError(f"l_max must be >= 1, got {self.l_max}")
        if self.refine is not None:
            center, half, step = self.refine
            if half <= 0 or step <= 0 or step > 2 * half:
                raise ValueError(f"invalid refine window {self.refine}")

    def grid(self) -> np.ndarray:
        lams = list(np.linspace(self.lambda_min, self.lambda_max, self.steps))
        if self.refine is not None:
            center, half, step = self.refine
            n = int(round(2 * half / step))
            lams += list(center + half * np.linspace(-1.0, 1.0, n + 1))
        # dedupe on the printed value so refined points do not double up
        uniq = {}
        for lam in lams:
            if self.lambda_min <= lam <= self.lambda_max and lam >= 0:
                uniq.setdefault(round(lam, 12), round(lam, 12))
        return np.array(sorted(uniq.values()))


def _pool_map(fn, items, threads):
    items = list(items)
    if threads == 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads or os.cpu_count()) as pool:
        return list(pool.map(fn, items))


def sweep(config: SweepConfig) -> list[MeasureReport]:
    """Analytic measures at every grid coupling, sorted by coupling."""

    def one(lam):
        try:
            return ising.ising_report(lam, config.l_max, config.quad)
        except NumericalError as exc:
            raise type(exc)(f"lambda={float(lam)!r}: {exc}") from exc

    lams = [float(x) for x in config.grid()]
    return sorted(_pool_map(one, lams, config.threads), key=lambda r: r.lam)


def sweep_header(l_max: int) -> list[str]:
    return (["lambda", "eg1", "sv"] + [f"g2_{l}" for l in range(1, l_max + 1)]
            + ["eg2", "upper_bound"])


def sweep_rows(reports: Sequence[MeasureReport]):
    for r in reports:
        yield [r.lam, r.eg1, r.sv_single_site, *map(float, r.g2l), r.eg2, int(r.upper_bound)]


def run_sweep(config: SweepConfig, out=None) -> list[MeasureReport]:
    """Write the sweep CSV to ``out`` (default ``config.output_path``) and return the reports."""
    reports = sweep(config)
    write_csv(sweep_header(config.l_max), sweep_rows(reports),
              out if out is not None else config.output_path)
    return reports


def read_sweep_csv(source) -> list[MeasureReport]:
    if isinstance(source, (str, os.PathLike)):
        text = Path(source).read_text(encoding="utf-8")
    else:
        text = source.read()
    rows = list(csv.reader(io.StringIO(text)))
    header, body = rows[0], rows[1:]
    g_cols = [i for i, h in enumerate(header) if h.startswith("g2_")]
    col = {h: i for i, h in enumerate(header)}
    return [MeasureReport(lam=float(r[col["lambda"]]), eg1=float(r[col["eg1"]]),
                          g2l=[float(r[i]) for i in g_cols], eg2=float(r[col["eg2"]]),
                          sv_single_site=float(r[col["sv"]]))
            for r in body]


TABLE1_HEADER = ["family", "N", "eg1_closed", "g21_closed", "eg2_closed",
                 "eg1_brute", "g21_brute", "eg2_brute", "max_abs_diff"]


def table1_rows(n_list: Sequence[int] = DEFAULT_TABLE1_N) -> list[list]:
    """Closed-form and brute-force measure triples per family and size.

    Odd sizes are skipped for EPR.
    """
    rows = []
    for n in n_list:
        for tag in FAMILIES:
            if tag == "EPR" and n % 2:
                continue
            fam = ParadigmFamily(tag, int(n))
            exact = closed_form(fam).as_tuple()
            psi = build_state(fam)
            brute = (meyer_wallach(psi), g2_of_state(psi, 1), eg2_of_state(psi))
            diff = max(abs(a - b) for a, b in zip(exact, brute))
            rows.append([tag, int(n), *exact, *brute, diff])
    return rows


def run_table1(n_list: Sequence[int] = DEFAULT_TABLE1_N, out=None) -> list[list]:
    rows = table1_rows(n_list)
    write_csv(TABLE1_HEADER, rows, out)
    return rows


def gl_profile(lam: float, l_list: Sequence[int],
               quad: QuadratureSpec | None = None) -> list[tuple[int, float]]:
    l_list = [int(l) for l in l_list]
    if not l_list or any(l < 1 for l in l_list):
        raise ValueError("l_list must hold separations >= 1")
    if l_list != sorted(l_list):
        raise ValueError("l_list must be sorted ascending")
    point = ising.ising_point(lam, max(l_list), quad)
    return [(l, 4.0 / 3.0 * (1.0 - ising.pair_purity(point, l))) for l in l_list]


def run_gl_profile(lam: float, l_list: Sequence[int], out=None,
                   quad: QuadratureSpec | None = None) -> list[tuple[int, float]]:
    rows = gl_profile(lam, l_list, quad)
    write_csv(["l", "g2"], rows, out)
    return rows


ORACLE_HEADER = ["n", "lambda", "quantity", "ed", "analytic", "abs_diff", "status"]


def oracle_rows(n_list: Sequence[int] = DEFAULT_ORACLE_N,
                lambda_list: Sequence[float] = DEFAULT_ORACLE_LAMBDA,
                l_max: int = 3, allow_above_critical: bool = False,
                quad: QuadratureSpec | None = None, threads: int | None = None) -> list[list]:
    """ED versus analytic values in long format, one row per quantity.

    Rows with ``n`` set to ``richardson`` or ``aitken`` hold finite-size
    extrapolations of the correlators over all sizes in ``n_list``.
    Correlators are reported in the ferromagnetic sign convention.
    """
    lambda_list = [float(x) for x in lambda_list]
    n_list = sorted(int(n) for n in n_list)
    above = [x for x in lambda_list if x > 1.0]
    if above and not allow_above_critical:
        raise ValueError(f"couplings {above} > 1: finite rings lack the broken-symmetry "
                         "state; pass allow_above_critical to compare anyway")
    if above:
        log.warning("comparing above the critical coupling: ED and analytic states differ")
    if any(n % 2 for n in n_list):
        raise ValueError("oracle comparison needs even ring sizes")
    if l_max > min(n_list) - 1:
        raise ValueError(f"l_max={l_max} too large for N={min(n_list)}")

    jobs = [(n, lam) for lam in lambda_list for n in n_list]
    reports = dict(zip(jobs, _pool_map(
        lambda job: ed.oracle_measures(ed.ChainSpec(*job), l_max), jobs, threads)))

    rows = []
    for lam in lambda_list:
        point = ising.ising_point(lam, l_max, quad)
        analytic_corr = {"sz": point.sz_mean}
        for l in range(1, l_max + 1):
            analytic_corr.update({f"xx_{l}": point.xx[l], f"yy_{l}": point.yy[l],
                                  f"zz_{l}": point.zz[l]})
        ref = ising.ising_report(lam, l_max, quad)
        analytic_meas = {"eg1": ref.eg1, "sv": ref.sv_single_site}
        analytic_meas.update({f"g2_{l}": float(ref.g2l[l - 1]) for l in range(1, l_max + 1)})

        ed_corr = {}
        for n in n_list:
            rep = reports[(n, lam)]
            status = "degenerate-gap" if rep.degenerate else (
                "above-critical" if lam > 1.0 else "ok")
            conv = ed.to_ferromagnetic_convention(rep)
            vals = {"sz": conv["sz"]}
            for l in range(1, l_max + 1):
                vals.update({f"xx_{l}": conv["xx"][l], f"yy_{l}": conv["yy"][l],
                             f"zz_{l}": conv["zz"][l]})
            meas = {"eg1": rep.eg1, "sv": rep.sv_single_site}
            meas.update({f"g2_{l}": float(rep.g2l[l - 1]) for l in range(1, l_max + 1)})
            for q, v in {**meas, **vals}.items():
                a = {**analytic_meas, **analytic_corr}[q]
                if status == "degenerate-gap":
                    rows.append([n, lam, q, v, a, "", status])
                else:
                    rows.append([n, lam, q, v, a, abs(v - a), status])
            if status != "degenerate-gap":
                ed_corr[n] = vals

        if len(ed_corr) >= 3:
            ns = sorted(ed_corr)
            even = len(set(np.diff(ns[-3:]))) == 1
            for q, a in analytic_corr.items():
                series = {n: ed_corr[n][q] for n in ns}
                r = ed.extrapolate(series).value
                rows.append(["richardson", lam, q, r, a, abs(r - a), "ok"])
                if even:
                    ait = ed.aitken(series)
                    rows.append(["aitken", lam, q, ait, a, abs(ait - a), "ok"])
    return rows


def run_oracle_compare(n_list: Sequence[int] = DEFAULT_ORACLE_N,
                       lambda_list: Sequence[float] = DEFAULT_ORACLE_LAMBDA,
                       l_max: int = 3, out=None, **kwargs) -> list[list]:
    rows = oracle_rows(n_list, lambda_list, l_max, **kwargs)
    write_csv(ORACLE_HEADER, rows, out)
    return rows
