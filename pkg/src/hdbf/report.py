"""Plain-text and CSV rendering of test results and simulation tables.

Human tables print percentages; machine CSV stores proportions.
"""
import math
from collections import OrderedDict

from .simulation import METHODS, are_metric
from .stat_tests import Method

__all__ = ["format_table", "render_test_results", "test_result_rows",
           "render_grid", "grid_csv_rows", "GRID_CSV_FIELDS"]


def format_table(headers, rows, title=None):
    cells = [[str(h) for h in headers]] + [[str(c) for c in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(headers))]
    lines = []
    if title:
        lines.append(title)
    rule = "-" * (sum(widths) + 2 * (len(widths) - 1))
    lines.append(rule)
    for k, r in enumerate(cells):
        lines.append("  ".join(c.rjust(w) for c, w in zip(r, widths)).rstrip())
        if k == 0:
            lines.append(rule)
    lines.append(rule)
    return "\n".join(lines)


def _fmt(value, spec):
    if value is None or (isinstance(value, float) and math.isnan(value)):
        return "-"
    return format(value, spec)


def _fmt_p(p):
    return f"{p:.5f}" if p >= 1e-5 else f"{p:.3e}"


def render_test_results(results, alpha, n1=None, n2=None, p=None):
    headers = ["Method", "Statistic", "p-value", "d1_hat", "d2_hat", f"Reject@{alpha:g}"]
    rows = []
    notes = []
    for res in results:
        if res.report is None:
            rows.append([res.method.label, "error", "-", "-", "-", "-"])
            notes.append(f"{res.method.label}: {res.error}")
            continue
        r = res.report
        rows.append([res.method.label, f"{r.standardized:.2f}", _fmt_p(r.p_value),
                     _fmt(r.d1_hat, ".2f"), _fmt(r.d2_hat, ".2f"), "yes" if res.reject else "no"])
        notes.extend(f"{res.method.label}: {note}" for note in r.notes)
    title = None
    if n1 is not None:
        title = f"Two-sample test  n1={n1}  n2={n2}  p={p}"
    text = format_table(headers, rows, title)
    if notes:
        text += "\n" + "\n".join(f"note: {n}" for n in notes)
    return text


TEST_CSV_FIELDS = ["method", "statistic", "standardized", "p_value", "d1_hat", "d2_hat",
                   "beta1_hat", "beta2_hat", "reject", "error"]


def test_result_rows(results):
    rows = []
    for res in results:
        r = res.report
        if r is None:
            rows.append({"method": res.method.value, "statistic": "", "standardized": "",
                         "p_value": "", "d1_hat": "", "d2_hat": "", "beta1_hat": "",
                         "beta2_hat": "", "reject": "", "error": res.error})
            continue
        rows.append({"method": res.method.value, "statistic": r.statistic,
                     "standardized": r.standardized, "p_value": r.p_value,
                     "d1_hat": "" if r.d1_hat is None else r.d1_hat,
                     "d2_hat": "" if r.d2_hat is None else r.d2_hat,
                     "beta1_hat": "" if r.beta1_hat is None else r.beta1_hat,
                     "beta2_hat": "" if r.beta2_hat is None else r.beta2_hat,
                     "reject": int(res.reject), "error": ""})
    return rows


# -- simulation grids ----------------------------------------------------------

_ROW_FIELDS = ("model", "cov_family", "p", "n1", "n2", "delta", "rho1",
               "sigma1_sq", "sigma2_sq", "alpha", "n_reps")


def _row_layout(grid):
    varying = [f for f in _ROW_FIELDS
               if len({getattr(c, f) for c in grid.cells}) > 1 and f not in ("n1", "n2")]
    shown = ["model", "p", "n"]
    if grid.table == "power" or "delta" in varying:
        shown.append("delta")
    shown += [f for f in varying if f not in ("model", "p", "delta")]
    return shown


def _row_value(cfg, f):
    if f == "n":
        return f"({cfg.n1},{cfg.n2})"
    if f == "model":
        return cfg.model.number
    if f == "cov_family":
        return cfg.cov_family.value
    return getattr(cfg, f)


def render_grid(grid, results):
    """Cross-tab: one row per (model, p, n, ...) and one column block per rho2."""
    shown = _row_layout(grid)
    rho2s = list(OrderedDict.fromkeys(c.rho2 for c in grid.cells))
    table = OrderedDict()
    for res in results:
        cfg = res.config
        key = tuple(getattr(cfg, f) for f in _ROW_FIELDS)
        row = table.setdefault(key, {"cfg": cfg, "by_rho": {}})
        row["by_rho"][cfg.rho2] = res

    if grid.table == "df":
        sub = ["d1_hat", "d2_hat"]
    else:
        sub = [m.label for m in METHODS]
    headers = list(shown) + [f"{s}|rho2={r:g}" for r in rho2s for s in sub]

    rows = []
    for entry in table.values():
        cfg = entry["cfg"]
        line = [_row_value(cfg, f) for f in shown]
        for r in rho2s:
            res = entry["by_rho"].get(r)
            if res is None:
                line += ["-"] * len(sub)
            elif grid.table == "df":
                line += [_fmt(res.mean_d1_hat, ".1f"), _fmt(res.mean_d2_hat, ".0f")]
            else:
                line += [_fmt(100.0 * res.rejection_rate[m], ".2f") for m in METHODS]
        rows.append(line)

    if grid.table == "size":
        line = ["ARE"] + [""] * (len(shown) - 1)
        for r in rho2s:
            for m in METHODS:
                sizes = [res.rejection_rate[m] for res in results
                         if res.config.rho2 == r and not math.isnan(res.rejection_rate[m])]
                alpha = next(res.config.alpha for res in results if res.config.rho2 == r)
                line.append(_fmt(are_metric(sizes, alpha), ".2f") if sizes else "-")
        rows.append(line)

    kind = {"size": "Empirical sizes (%)", "power": "Empirical powers (%)",
            "df": "Mean estimated degrees of freedom"}[grid.table]
    title = f"{grid.name}: {kind}"
    text = format_table(headers, rows, title)
    failed = sum(res.n_failed_reps for res in results)
    if failed:
        text += f"\nnote: {failed} replication(s) had at least one failed method (excluded)"
    return text


GRID_CSV_FIELDS = (["model", "cov_family", "p", "n1", "n2", "rho1", "rho2", "sigma1_sq",
                    "sigma2_sq", "delta", "n_reps", "alpha", "seed"]
                   + [f"rate_{m.value}" for m in METHODS]
                   + ["mean_d1_hat", "mean_d2_hat"]
                   + [f"n_failed_{m.value}" for m in METHODS])


def grid_csv_rows(results):
    rows = []
    for res in results:
        row = res.config.to_dict()
        for m in METHODS:
            row[f"rate_{m.value}"] = res.rejection_rate[m]
            row[f"n_failed_{m.value}"] = res.n_failed[m]
        row["mean_d1_hat"] = res.mean_d1_hat
        row["mean_d2_hat"] = res.mean_d2_hat
        rows.append({k: row[k] for k in GRID_CSV_FIELDS})
    return rows


def method_from_label(text):
    key = text.strip().upper().replace("_", "")
    aliases = {"TCQ": Method.TCQ, "CQ": Method.TCQ, "TNP": Method.TNP, "FNP": Method.FNP}
    if key not in aliases:
        raise ValueError(f"unknown method {text!r}; use TCQ, TNP or FNP")
    return aliases[key]
