"""Experiment drivers and machine-readable reports.

Each driver reproduces one of the package's quantitative claims at desk
scale and returns an ExperimentReport whose rows are flat dicts of
primitives: ints, 12-significant-digit floats, and strings (rationals as
"num/den").  Reports serialize to JSON and CSV and round-trip exactly;
summary scalars are recomputed from rows on load.

The wide residual sweep aggregates per modulus instead of materializing
per-character rows (the full grid would be ~1e8 rows); the explicit-grid
path keeps one row per (character, alpha, B) triple.
"""

from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from charsum import kernels
from charsum.analysis import (
    PrefixSumTable,
    fourier_constant_term,
    gauss_sum,
    half_gap_scan,
    half_model_sum,
    half_window_report,
    l_value_at_one,
    least_nonresidue,
    log_growth_series,
    nonsmooth_count,
)
from charsum.arith import sieve_primes
from charsum.characters import (
    DirichletCharacter,
    character,
    enumerate_characters,
    product_character,
    quadratic_character,
    unit_group,
)
from charsum.constructions import paley_modulus, residue_one_modulus
from charsum.errors import InvalidArgumentError, NotFoundError

ARTIFACT_VERSION = "0.1.0"
EULER_GAMMA = float(np.euler_gamma)


# ---------------------------------------------------------------------------
# report container


def _round12(x: float) -> float:
    return float(f"{x:.12g}")


def _clean(value):
    """Canonicalize a row/summary value: floats to 12 significant digits,
    Fractions to 'num/den' strings."""
    if value is None or isinstance(value, (int, str)):
        return value
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, complex):
        raise TypeError("split complex values into _re/_im fields")
    if isinstance(value, (float, np.floating)):
        return _round12(float(value))
    if isinstance(value, np.integer):
        return int(value)
    raise TypeError(f"unsupported report value {value!r}")


def clean_row(row: dict) -> dict:
    return {k: _clean(v) for k, v in row.items()}


@dataclass
class ExperimentReport:
    experiment_id: str
    inputs: dict
    rows: list[dict]
    summary: dict
    artifact_version: str = ARTIFACT_VERSION
    timestamp: str | None = None
    seed: int | None = None

    def _meta(self) -> dict:
        return {
            "experiment_id": self.experiment_id,
            "inputs": self.inputs,
            "summary": self.summary,
            "artifact_version": self.artifact_version,
            "timestamp": self.timestamp,
            "seed": self.seed,
        }

    def to_json(self) -> str:
        obj = self._meta()
        obj["rows"] = self.rows
        return json.dumps(obj, indent=1)

    @classmethod
    def from_json(cls, text: str) -> "ExperimentReport":
        obj = json.loads(text)
        report = cls(
            experiment_id=obj["experiment_id"],
            inputs=obj["inputs"],
            rows=obj["rows"],
            summary=obj["summary"],
            artifact_version=obj["artifact_version"],
            timestamp=obj["timestamp"],
            seed=obj["seed"],
        )
        verify_summary(report)
        return report

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write("# charsum-report " + json.dumps(self._meta()) + "\n")
        if self.rows:
            cols = list(self.rows[0].keys())
            types = {c: _column_type(self.rows, c) for c in cols}
            buf.write("# types " + json.dumps(types) + "\n")
            writer = csv.writer(buf, lineterminator="\n")
            writer.writerow(cols)
            for row in self.rows:
                writer.writerow([_csv_cell(row[c]) for c in cols])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> "ExperimentReport":
        lines = text.splitlines()
        if not lines or not lines[0].startswith("# charsum-report "):
            raise InvalidArgumentError("not a charsum CSV report")
        meta = json.loads(lines[0][len("# charsum-report ") :])
        rows: list[dict] = []
        if len(lines) > 1 and lines[1].startswith("# types "):
            types = json.loads(lines[1][len("# types ") :])
            reader = csv.reader(lines[2:])
            cols = next(reader)
            for rec in reader:
                rows.append(
                    {c: _parse_cell(v, types[c]) for c, v in zip(cols, rec)}
                )
        report = cls(
            experiment_id=meta["experiment_id"],
            inputs=meta["inputs"],
            rows=rows,
            summary=meta["summary"],
            artifact_version=meta["artifact_version"],
            timestamp=meta["timestamp"],
            seed=meta["seed"],
        )
        verify_summary(report)
        return report


def _column_type(rows: list[dict], col: str) -> str:
    for row in rows:
        v = row[col]
        if v is None:
            continue
        if isinstance(v, bool):
            return "bool"
        if isinstance(v, int):
            return "int"
        if isinstance(v, float):
            return "float"
        return "str"
    return "str"


def _csv_cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return f"{v:.12g}"
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def _parse_cell(s: str, typ: str):
    if s == "":
        return None
    if typ == "int":
        return int(s)
    if typ == "float":
        return float(s)
    if typ == "bool":
        return s == "true"
    return s


def _summary_thm1(rows: list[dict]) -> dict:
    key = "max_residual_over_sqrt_q" if rows and "max_residual_over_sqrt_q" in rows[0] else "residual_over_sqrt_q"
    vals = [r[key] for r in rows if r.get(key) is not None]
    return {"c_obs": max(vals) if vals else None, "n_rows": len(rows)}


def _summary_max(field_name: str):
    def rule(rows: list[dict]) -> dict:
        vals = [r[field_name] for r in rows if r.get(field_name) is not None]
        return {f"max_{field_name}": max(vals) if vals else None, "n_rows": len(rows)}

    return rule


def _summary_thm4(rows: list[dict]) -> dict:
    found = [r for r in rows if r.get("q") is not None]
    out = {"n_rows": len(rows)}
    if found:
        top = max(found, key=lambda r: r["y"])
        out["largest_y"] = top["y"]
        out["normalized_gap_at_largest_y"] = top["normalized_gap"]
    return out


_SUMMARY_RULES = {
    "thm1": _summary_thm1,
    "lemma3": _summary_max("abs_deviation"),
    "thm2": _summary_max("normalized_magnitude"),
    "thm3": _summary_max("ratio_to_loglog"),
    "corollary": lambda rows: {"n_rows": len(rows)},
    "thm4": _summary_thm4,
    "smoothness": _summary_max("ratio"),
}


def verify_summary(report: ExperimentReport) -> None:
    """Recompute the summary scalars from the rows; raise on mismatch."""
    rule = _SUMMARY_RULES.get(report.experiment_id)
    if rule is None:
        return
    expected = rule(report.rows)
    for k, v in expected.items():
        if report.summary.get(k) != v:
            raise InvalidArgumentError(
                f"summary field {k!r} does not match rows: {report.summary.get(k)!r} != {v!r}"
            )


def _make_report(experiment_id, inputs, rows, summary, seed, stamp=None) -> ExperimentReport:
    report = ExperimentReport(
        experiment_id=experiment_id,
        inputs=inputs,
        rows=rows,
        summary=summary,
        timestamp=stamp,
        seed=seed,
    )
    verify_summary(report)
    return report


# ---------------------------------------------------------------------------
# window-average residual driver


def default_alpha_grid(denominator: int = 40) -> list[Fraction]:
    return [Fraction(k, denominator) for k in range(denominator)]


def sqrt_power_b_list(q: int) -> list[int]:
    """Powers of two in [2, floor(sqrt(q))]."""
    out = []
    b = 2
    while b * b <= q:
        out.append(b)
        b *= 2
    return out


def _primitive_exponent_data(q: int):
    """Vectorized primitivity/parity over all characters mod q.

    Returns (orders, strides, prim_indices, odd_mask_for_those, lam).
    """
    group = unit_group(q)
    comps = group.components
    orders = np.array([c.order for c in comps], dtype=np.int64)
    lam = group.exponent
    phi = group.phi
    idx = np.arange(phi, dtype=np.int64)
    exps = np.empty((len(comps), phi), dtype=np.int64)
    stride = phi
    for i, d in enumerate(orders):
        stride //= d
        exps[i] = idx // stride % d

    cond = np.ones(phi, dtype=np.int64)
    half = np.zeros(phi, dtype=np.int64)
    i = 0
    for p, e in group.factorization:
        if p == 2:
            if e == 1:
                continue
            if e == 2:
                x = exps[i]
                cond *= np.where(x > 0, 4, 1)
                half += x * (lam // 2)
                i += 1
                continue
            a, c = exps[i], exps[i + 1]
            v = np.zeros(phi, dtype=np.int64)
            t = c.copy()
            for _ in range(e):
                more = (t > 0) & (t % 2 == 0)
                t[more] //= 2
                v[more] += 1
            c2 = np.where(c > 0, 1 << (e - v), np.where(a > 0, 4, 1))
            cond *= c2
            half += a * (lam // 2)
            i += 2
            continue
        comp = comps[i]
        x = exps[i]
        t = comp.order // np.gcd(comp.order, x)
        vp = np.zeros(phi, dtype=np.int64)
        tt = t.copy()
        for _ in range(e):
            more = tt % p == 0
            tt[more] //= p
            vp[more] += 1
        cond *= np.where(t > 1, p ** (1 + vp), 1)
        half += x * comp.minus_one_log * (lam // comp.order)
        i += 1

    prim = np.flatnonzero(cond == q)
    odd = (half[prim] % lam) != 0
    return group, exps, prim, odd, lam


def _window_endpoint(q: int, t: Fraction):
    """Exact decomposition of the integral endpoint t for the batched path."""
    w = t * q
    k_full = math.floor(w)
    frac = float(w - k_full)
    p, k0 = divmod(k_full, q)
    geom = q * p * (p - 1) // 2 + p * k0
    return p, k0, frac, geom


def _thm1_modulus(q: int, alphas: list[Fraction], b_list: list[int], collect_rows: bool):
    """All primitive characters mod q against the given (alpha, B) grid.

    Returns (rows, n_characters, best) where best is
    (max residual/sqrt q, char label, alpha, B) or None.
    """
    rows: list[dict] = []
    if q < 3 or not b_list or not alphas:
        return rows, 0, None
    group, exps, prim, odd_mask, lam = _primitive_exponent_data(q)
    if prim.size == 0:
        return rows, 0, None
    comps = group.components
    if any(c.dlog is None for c in comps):
        raise InvalidArgumentError(f"modulus {q} too large for the batched sweep")

    dmat = np.stack([np.tile(c.dlog.astype(np.int64), q // c.part) for c in comps])
    unit_cols = np.flatnonzero((dmat >= 0).all(axis=0))
    dmat_c = np.clip(dmat, 0, None).astype(np.float64)
    zeta = np.exp(2j * np.pi * np.arange(lam) / lam)
    eq = np.exp(2j * np.pi * np.arange(q) / q)
    avec = np.arange(q, dtype=np.float64)
    sqrt_q = math.sqrt(q)

    b_sorted = sorted(set(int(b) for b in b_list))
    if b_sorted[0] < 2:
        raise InvalidArgumentError("window parameter B must be >= 2")
    cut_max = b_sorted[-1] - 1
    n_alpha = len(alphas)
    ncut = np.arange(1, cut_max + 1, dtype=np.float64)
    alpha_f = np.array([float(a) for a in alphas])
    phases = 2.0 * np.pi * ((ncut[:, None] * alpha_f[None, :]) % 1.0)
    kern_cos = np.cos(phases) / ncut[:, None]
    kern_sin = np.sin(phases) / ncut[:, None]
    endpoints = {
        b: (
            [_window_endpoint(q, a - Fraction(1, b)) for a in alphas],
            [_window_endpoint(q, a + Fraction(1, b)) for a in alphas],
        )
        for b in b_sorted
    }

    scale = np.array([lam // c.order for c in comps], dtype=np.int64)
    best = None
    n_chars = prim.size
    block_size = 512
    for lo in range(0, n_chars, block_size):
        rows_idx = prim[lo : lo + block_size]
        odd_rows = odd_mask[lo : lo + block_size]
        weights = (exps[:, rows_idx].T * scale).astype(np.float64)
        k = (weights @ dmat_c).astype(np.int64) % lam
        vmat = np.zeros((rows_idx.size, q), dtype=np.complex128)
        vmat[:, unit_cols] = zeta[k[:, unit_cols]]

        shifted = np.empty_like(vmat)
        shifted[:, : q - 1] = vmat[:, 1:]
        shifted[:, q - 1] = vmat[:, 0]
        prefix = np.zeros((rows_idx.size, q + 1), dtype=np.complex128)
        prefix[:, 1:] = kernels.comp_cumsum_complex(shifted)
        iprefix = np.zeros((rows_idx.size, q + 1), dtype=np.complex128)
        iprefix[:, 1:] = kernels.comp_cumsum_complex(prefix[:, :q])

        tau = vmat @ eq
        const = np.where(odd_rows, -(vmat @ avec) / q, 0.0)

        if cut_max < q:
            conj_v = np.conj(vmat[:, 1 : cut_max + 1])
        else:  # the truncation reaches past one period
            conj_v = np.conj(np.tile(vmat, (1, cut_max // q + 1))[:, 1 : cut_max + 1])
        g_cos = np.zeros((rows_idx.size, n_alpha), dtype=np.complex128)
        g_sin = np.zeros((rows_idx.size, n_alpha), dtype=np.complex128)
        prev_cut = 0
        for b in b_sorted:
            cut = b - 1
            if cut > prev_cut:
                sl = slice(prev_cut, cut)
                g_cos += conj_v[:, sl] @ kern_cos[sl]
                g_sin += conj_v[:, sl] @ kern_sin[sl]
                prev_cut = cut
            series = np.where(
                odd_rows[:, None],
                (tau / (1j * math.pi))[:, None] * (-g_cos),
                (tau / (1j * math.pi))[:, None] * (1j * g_sin),
            )
            lo_pts, hi_pts = endpoints[b]
            lhs = np.empty((rows_idx.size, n_alpha), dtype=np.complex128)
            drift = prefix[:, q]
            ipq = iprefix[:, q]
            for side, pts in ((1.0, hi_pts), (-1.0, lo_pts)):
                p_arr = np.array([p for p, _, _, _ in pts], dtype=np.float64)
                k0_arr = np.array([k0 for _, k0, _, _ in pts], dtype=np.int64)
                fr_arr = np.array([fr for _, _, fr, _ in pts])
                ge_arr = np.array([ge for _, _, _, ge in pts], dtype=np.float64)
                t_val = (
                    p_arr[None, :] * ipq[:, None]
                    + iprefix[:, k0_arr]
                    + drift[:, None] * ge_arr[None, :]
                    + fr_arr[None, :] * (prefix[:, k0_arr] + p_arr[None, :] * drift[:, None])
                ) / q
                if side > 0:
                    lhs = t_val
                else:
                    lhs = lhs - t_val
            lhs *= b / 2.0
            residual = lhs - const[:, None] - series
            rz = np.abs(residual) / sqrt_q
            if collect_rows:
                for r in range(rows_idx.size):
                    label = ",".join(str(int(e)) for e in exps[:, rows_idx[r]])
                    for ai, a in enumerate(alphas):
                        rows.append(
                            clean_row(
                                {
                                    "q": q,
                                    "index": label,
                                    "alpha": a,
                                    "b": b,
                                    "lhs_re": lhs[r, ai].real,
                                    "lhs_im": lhs[r, ai].imag,
                                    "rhs_re": (const[r] + series[r, ai]).real,
                                    "rhs_im": (const[r] + series[r, ai]).imag,
                                    "residual_over_sqrt_q": rz[r, ai],
                                }
                            )
                        )
            m = float(rz.max())
            if best is None or m > best[0]:
                r, ai = np.unravel_index(int(np.argmax(rz)), rz.shape)
                label = ",".join(str(int(e)) for e in exps[:, rows_idx[r]])
                best = (m, label, alphas[ai], b)
    return rows, int(n_chars), best


def run_thm1(
    q_list,
    alphas=None,
    b_list=None,
    sweep: bool = False,
    threads: int = 1,
    seed: int | None = None,
    stamp: str | None = None,
) -> ExperimentReport:
    """Exact window averages vs. truncated predictions over a (q, alpha, B) grid.

    Explicit-grid mode emits one row per (character, alpha, B); sweep mode
    derives B per modulus (powers of two up to sqrt q) and emits one row
    per modulus carrying the worst normalized residual.
    """
    q_list = sorted(set(int(q) for q in q_list))
    if not q_list:
        raise InvalidArgumentError("empty modulus list")
    alphas = list(alphas) if alphas is not None else default_alpha_grid()
    if not alphas:
        raise InvalidArgumentError("empty alpha grid")
    alphas = [Fraction(a) for a in alphas]
    if not sweep:
        if not b_list:
            raise InvalidArgumentError("empty B list")
        b_per_q = {q: [int(b) for b in b_list] for q in q_list}
    else:
        b_per_q = {q: (sqrt_power_b_list(q) if b_list is None else [int(b) for b in b_list if b * b <= q]) for q in q_list}

    def work(q):
        return _thm1_modulus(q, alphas, b_per_q[q], collect_rows=not sweep)

    results = {}
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            for q, res in zip(q_list, pool.map(work, q_list)):
                results[q] = res
    else:
        for q in q_list:
            results[q] = work(q)

    rows: list[dict] = []
    n_characters = 0
    for q in q_list:
        q_rows, n_chars, best = results[q]
        n_characters += n_chars
        if sweep:
            if best is None:
                continue
            rows.append(
                clean_row(
                    {
                        "q": q,
                        "n_primitive": n_chars,
                        "max_residual_over_sqrt_q": best[0],
                        "argmax_index": best[1],
                        "argmax_alpha": best[2],
                        "argmax_b": best[3],
                    }
                )
            )
        else:
            rows.extend(q_rows)

    inputs = {
        "q_list": q_list,
        "alphas": [_clean(a) for a in alphas],
        "b_list": "sqrt-powers" if (sweep and b_list is None) else sorted(set(int(b) for b in b_list)),
        "sweep": sweep,
        "threads": threads,
    }
    return _make_report("thm1", inputs, rows, _summary_thm1(rows), seed, stamp)


# ---------------------------------------------------------------------------
# log-growth driver (the section-3 lemma at desk scale)


def run_lemma3(
    q: int = 4,
    index=None,
    a: int = 1,
    x_lo: int = 100,
    x_hi: int = 10**6,
    n_points: int = 64,
    seed: int | None = None,
    stamp: str | None = None,
) -> ExperimentReport:
    """Twisted partial sums against their predicted log growth on a log grid."""
    chi = _resolve_character(q, index)
    grid = np.unique(
        np.round(np.exp(np.linspace(math.log(x_lo), math.log(x_hi), n_points))).astype(np.int64)
    )
    series = log_growth_series(chi, a, grid)
    rows = []
    for x, lhs, pred in series.rows():
        rows.append(
            clean_row(
                {
                    "x": int(x),
                    "lhs_re": complex(lhs).real,
                    "lhs_im": complex(lhs).imag,
                    "predicted_re": complex(pred).real,
                    "predicted_im": complex(pred).imag,
                    "abs_deviation": abs(complex(lhs) - complex(pred)),
                }
            )
        )
    inputs = {"q": q, "index": chi.label(), "a": a, "x_lo": x_lo, "x_hi": x_hi}
    return _make_report(
        "lemma3", inputs, rows, _SUMMARY_RULES["lemma3"](rows), seed, stamp
    )


# ---------------------------------------------------------------------------
# opposite-parity mimicry drivers


def _loglog(q: int) -> float:
    return math.log(math.log(q))


def run_thm2(
    b: int,
    psi_index=None,
    y: int = 7,
    seed: int | None = None,
    stamp: str | None = None,
) -> ExperimentReport:
    """Window averages near a/b for a character built to mimic psi mod b.

    b = 1 runs the classical construction: a prime q = 1 (mod 4) whose
    quadratic character copies the odd character mod 4 on small n, with
    windows near 1/4 and 3/4.
    """
    if b == 1:
        pm = paley_modulus(y)
        chi = quadratic_character(pm.q1)
        psi = character(4, (1,))
        b_eff = 4
        q1 = pm.q1
    else:
        psi = _resolve_character(b, psi_index)
        if not psi.is_primitive:
            raise InvalidArgumentError("psi must be primitive")
        pm = residue_one_modulus(y, coprime_to=b)
        q1 = pm.q1
        chi = product_character(quadratic_character(q1), psi)
        b_eff = b
    q = chi.modulus
    table = PrefixSumTable(chi)
    b_window = max(2, math.floor(0.5 * math.log(q1)))
    tau_chi = gauss_sum(chi, table.values).value
    tau_psi_bar = gauss_sum(psi.conjugate()).value
    const = fourier_constant_term(chi)
    lnln = _loglog(q) if q > math.e else 1.0

    grh_re = grh_im = None
    if chi.is_odd and b_eff > 1:
        l_chi = l_value_at_one(chi, table.values)
        bound = 2.0
        for p in sieve_primes(max(2, math.floor(math.log(q)))):
            bound /= 1.0 - complex(psi(int(p))) / float(p)
        grh_re, grh_im = complex(bound).real, complex(bound).imag
    else:
        l_chi = None

    rows = []
    for a in range(1, b_eff):
        if math.gcd(a, b_eff) != 1:
            continue
        alpha = Fraction(a, b_eff)
        avg = complex(table.window_average(alpha, b_window))
        dev = avg - const
        psi_a = complex(psi(a))
        predicted = psi_a * tau_chi * tau_psi_bar / (1j * b_eff * math.pi) * math.log(b_window)
        eq1 = psi_a * tau_psi_bar * math.exp(EULER_GAMMA) * tau_chi / (1j * math.pi * b_eff) * lnln
        s_at = complex(table.sum_to(Fraction(a * q, b_eff)))
        row = {
            "a": a,
            "alpha": alpha,
            "b_window": b_window,
            "avg_re": avg.real,
            "avg_im": avg.imag,
            "deviation_re": dev.real,
            "deviation_im": dev.imag,
            "normalized_magnitude": abs(dev) * math.pi * math.sqrt(b_eff) / (math.sqrt(q) * lnln),
            "predicted_re": predicted.real,
            "predicted_im": predicted.imag,
            "s_at_ab_re": s_at.real,
            "s_at_ab_im": s_at.imag,
            "eq1_re": eq1.real,
            "eq1_im": eq1.imag,
            "l_one_re": None if l_chi is None else complex(l_chi).real,
            "l_one_im": None if l_chi is None else complex(l_chi).imag,
            "l_grh_bound_re": grh_re,
            "l_grh_bound_im": grh_im,
        }
        rows.append(clean_row(row))
    inputs = {
        "b": b,
        "psi_index": psi.label(),
        "y": y,
        "q1": q1,
        "q": q,
        "chi_parity": chi.parity,
        "chi_order": chi.order,
    }
    return _make_report("thm2", inputs, rows, _SUMMARY_RULES["thm2"](rows), seed, stamp)


def run_thm3(
    b: int, y: int = 7, seed: int | None = None, stamp: str | None = None
) -> ExperimentReport:
    """Signed maxima of S near each a/b for the real mimicking character."""
    psi = None
    for cand in enumerate_characters(b):
        if cand.order == 2 and cand.is_odd and cand.is_primitive:
            psi = cand
            break
    if psi is None:
        raise InvalidArgumentError(f"no primitive odd quadratic character mod {b}")
    pm = residue_one_modulus(y, coprime_to=b)
    q1 = pm.q1
    chi = product_character(quadratic_character(q1), psi)
    q = chi.modulus
    table = PrefixSumTable(chi)
    b_window = max(2, math.floor(0.5 * math.log(q1)))
    lnln = _loglog(q) if q > math.e else 1.0
    rows = []
    for a in range(1, b):
        if math.gcd(a, b) != 1:
            continue
        psi_a = int(complex(psi(a)).real)
        lo = Fraction(a, b) - Fraction(1, b_window)
        hi = Fraction(a, b) + Fraction(1, b_window)
        n_lo = max(0, math.ceil(lo * q))
        n_hi = min(q, math.floor(hi * q))
        seg = table.prefix[n_lo : n_hi + 1].astype(np.int64)
        i = int(np.argmax(psi_a * seg))
        n_star = n_lo + i
        s_val = int(seg[i])
        alpha_star = Fraction(n_star, q)
        normalized = s_val * math.pi * math.sqrt(b) / math.sqrt(q)
        rows.append(
            clean_row(
                {
                    "a": a,
                    "psi_a": psi_a,
                    "alpha_star": alpha_star,
                    "n_star": n_star,
                    "s_at_alpha": s_val,
                    "normalized": normalized,
                    "ratio_to_loglog": psi_a * normalized / lnln,
                    "alpha_dist_times_logq": abs(float(alpha_star - Fraction(a, b))) * math.log(q),
                    "sign_matches": bool(psi_a * s_val > 0),
                }
            )
        )
    inputs = {
        "b": b,
        "psi_index": psi.label(),
        "y": y,
        "q1": q1,
        "q": q,
        "b_window": b_window,
    }
    return _make_report("thm3", inputs, rows, _SUMMARY_RULES["thm3"](rows), seed, stamp)


# ---------------------------------------------------------------------------
# short-interval corollary driver


def run_corollary(
    chi: DirichletCharacter,
    a_param: float,
    seed: int | None = None,
    stamp: str | None = None,
) -> ExperimentReport:
    """Window-average bound at alpha = 1/3 vs. the best short-interval sum."""
    if chi.is_odd:
        raise InvalidArgumentError("the short-interval bound is for even characters")
    if not chi.is_primitive:
        raise InvalidArgumentError("chi must be primitive")
    if a_param <= 0:
        raise InvalidArgumentError("A must be positive")
    q = chi.modulus
    b = math.log(q) ** a_param
    if b < 2:
        raise InvalidArgumentError(f"B = (log q)^A = {b:.3g} is below the window contract")
    table = PrefixSumTable(chi)
    avg = complex(table.window_average(Fraction(1, 3), Fraction(b)))
    x0 = q // 3
    max_len = max(1, int(q / b))
    n_star, short_best = table.short_interval_max(x0, max_len)
    s_third = abs(complex(table.sum_to(Fraction(q, 3))))
    bound_main = math.sqrt(q) * math.log(b) / math.pi
    row = clean_row(
        {
            "q": q,
            "index": chi.label(),
            "a_param": float(a_param),
            "b": b,
            "avg_abs": abs(avg),
            "bound_main": bound_main,
            "s_third_abs": s_third,
            "short_len": max_len,
            "short_n_star": n_star,
            "short_best": float(short_best),
            "margin": float(short_best) - (s_third - abs(avg)),
        }
    )
    inputs = {"q": q, "index": chi.label(), "a_param": float(a_param)}
    return _make_report("corollary", inputs, [row], {"n_rows": 1}, seed, stamp)


# ---------------------------------------------------------------------------
# least-nonresidue gap driver


def run_thm4(
    y_list, search_hi: int = 10**7, seed: int | None = None, stamp: str | None = None
) -> ExperimentReport:
    """Central-gap scan for odd quadratic characters with large least nonresidue."""
    y_values = sorted(set(int(y) for y in y_list))
    if not y_values:
        raise InvalidArgumentError("empty y list")
    rows = []
    for y in y_values:
        try:
            pm = residue_one_modulus(y, hi=search_hi)
        except NotFoundError:
            rows.append(
                clean_row(
                    {
                        "y": y,
                        "q": None,
                        "b": None,
                        "gap": None,
                        "normalized_gap": None,
                        "t_star": None,
                        "dist_to_target": None,
                        "s_half": None,
                        "identity_residual": None,
                        "model_a4": None,
                        "model_a16": None,
                        "model_a64": None,
                        "exact_average": None,
                    }
                )
            )
            continue
        chi = quadratic_character(pm.q1)
        table = PrefixSumTable(chi)
        b = least_nonresidue(table.values)
        scan = half_gap_scan(table, b)
        hw = half_window_report(table, 64)
        models = {a: half_model_sum(b, a, chi_values=table.values) for a in (4, 16, 64)}
        target = Fraction(b - 1, 2 * b)
        rows.append(
            clean_row(
                {
                    "y": y,
                    "q": pm.q1,
                    "b": b,
                    "gap": scan.gap,
                    "normalized_gap": scan.normalized_gap,
                    "t_star": scan.t_star,
                    "dist_to_target": abs(float(scan.t_star - target)),
                    "s_half": scan.s_half,
                    "identity_residual": hw.identity_residual,
                    "model_a4": models[4],
                    "model_a16": models[16],
                    "model_a64": models[64],
                    "exact_average": hw.exact_average,
                }
            )
        )
    inputs = {"y_list": y_values, "search_hi": search_hi}
    return _make_report("thm4", inputs, rows, _summary_thm4(rows), seed, stamp)


# ---------------------------------------------------------------------------
# smooth-number driver


def run_smoothness(
    a_grid, b_grid, seed: int | None = None, stamp: str | None = None
) -> ExperimentReport:
    """Exact counts of non-smooth integers against the A^2 B / log(AB) bound."""
    a_values = sorted(set(int(a) for a in a_grid))
    b_values = sorted(set(int(b) for b in b_grid))
    if not a_values or not b_values:
        raise InvalidArgumentError("empty grid")
    rows = []
    for a in a_values:
        for b in b_values:
            count = nonsmooth_count(a, b)
            bound = a * a * b / math.log(a * b)
            rows.append(
                clean_row(
                    {
                        "a": a,
                        "b": b,
                        "count": count,
                        "bound": bound,
                        "ratio": count / bound,
                    }
                )
            )
    inputs = {"a_grid": a_values, "b_grid": b_values}
    return _make_report(
        "smoothness", inputs, rows, _SUMMARY_RULES["smoothness"](rows), seed, stamp
    )


# ---------------------------------------------------------------------------
# shared


def _resolve_character(q: int, index) -> DirichletCharacter:
    """Build a character from a modulus and an exponent-vector label.

    index None picks the quadratic character: Legendre for odd prime q,
    the odd character for q = 4.
    """
    if index is None:
        if q == 4:
            return character(4, (1,))
        return quadratic_character(q)
    if isinstance(index, DirichletCharacter):
        return index
    if isinstance(index, str):
        exps = () if index == "principal" else tuple(int(t) for t in index.split(","))
    else:
        exps = tuple(int(t) for t in index)
    return character(q, exps)
