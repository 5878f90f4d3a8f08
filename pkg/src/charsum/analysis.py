"""Character-sum analysis.

Central objects: the exact step-function table of S(x) = sum_{n<=x} chi(n)
over one period, window averages of S computed by exact integration on the
rational breakpoints n/q, the truncated oscillatory expansion that predicts
those averages, and the L(1) / Gauss-sum constants that enter them.

Exactness policy: step values are exact integers for real characters and
compensated doubles otherwise; interval lengths are Fractions throughout,
so window averages of real characters are exact rationals end to end.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from charsum import kernels
from charsum.characters import DirichletCharacter
from charsum.errors import InvalidArgumentError

_CHUNK = 1 << 20
NONSMOOTH_LIMIT = 10**8


def _as_fraction(x) -> Fraction:
    if isinstance(x, str):
        return Fraction(x)
    return Fraction(x)


class PrefixSumTable:
    """One period of S(x) with its running integral, built once per character.

    prefix[n] = S(n) for 0 <= n <= q; iprefix[n] = sum_{i<n} prefix[i], the
    numerators of the exact integral of the step function at breakpoints.
    Real characters use int64 arrays (exact), others complex128 with
    compensated cumulative sums.  Immutable after construction.
    """

    __slots__ = ("character", "modulus", "values", "prefix", "iprefix", "is_real")

    def __init__(self, character: DirichletCharacter):
        self.character = character
        q = character.modulus
        self.modulus = q
        values = character.value_table()
        self.values = values
        self.is_real = values.dtype != np.complex128
        if self.is_real:
            shifted = np.empty(q, dtype=np.int64)
            shifted[: q - 1] = values[1:]
            shifted[q - 1] = values[0]  # chi(q) = chi(0)
            prefix = np.zeros(q + 1, dtype=np.int64)
            prefix[1:] = np.cumsum(shifted)
            iprefix = np.zeros(q + 1, dtype=np.int64)
            iprefix[1:] = np.cumsum(prefix[:q])
        else:
            shifted = np.empty(q, dtype=np.complex128)
            shifted[: q - 1] = values[1:]
            shifted[q - 1] = values[0]
            prefix = np.zeros(q + 1, dtype=np.complex128)
            prefix[1:] = kernels.comp_cumsum_complex(shifted)
            iprefix = np.zeros(q + 1, dtype=np.complex128)
            iprefix[1:] = kernels.comp_cumsum_complex(prefix[:q])
        self.prefix = prefix
        self.iprefix = iprefix

    @classmethod
    def build(cls, character: DirichletCharacter) -> "PrefixSumTable":
        return cls(character)

    # -- point queries -------------------------------------------------

    def _prefix_ext(self, m: int):
        """S at integer m, extended beyond [0, q] (periodic up to drift)."""
        p, k = divmod(m, self.modulus)
        drift = self.prefix[self.modulus]
        val = self.prefix[k] + p * drift
        return int(val) if self.is_real else complex(val)

    def sum_to(self, x):
        """S(x) = sum_{n <= x} chi(n); arbitrary real x, periodic extension."""
        return self._prefix_ext(math.floor(x))

    def midpoint_sum(self, x):
        """Half-jump value: S(x) - chi(x)/2 at integer jump points, S(x) elsewhere."""
        if x == math.floor(x):
            m = int(math.floor(x)) % self.modulus
            v = self.values[m]
            if v != 0:
                s = self.sum_to(x)
                return s - (complex(v) / 2 if not self.is_real else v / 2)
        return self.sum_to(x)

    def max_abs(self) -> tuple[int, float]:
        """(smallest argmax x*, M) with M = max_{1<=n<=q} |S(n)|."""
        mags = np.abs(self.prefix[1:])
        i = int(np.argmax(mags))
        m = mags[i]
        return i + 1, int(m) if self.is_real else float(m)

    def short_interval_max(self, x0: int, max_len: int):
        """Largest |S(x0+N) - S(x0)| over |N| <= max_len, both signs of N.

        Ties prefer the smallest |N|, then the positive N.
        """
        q = self.modulus
        if not 0 <= x0 < q:
            raise InvalidArgumentError(f"x0 must lie in [0, {q}), got {x0}")
        ln = int(max_len)
        if ln < 1:
            raise InvalidArgumentError("max_len must be >= 1")
        offs = np.arange(-ln, ln + 1, dtype=np.int64)
        m = x0 + offs
        p = m // q
        k = m - p * q
        ext = self.prefix[k] + p * self.prefix[q]
        diffs = np.abs(ext - self.prefix[x0])
        best = diffs.max()
        cands = np.flatnonzero(diffs == best)
        picks = sorted((abs(int(offs[c])), 0 if offs[c] >= 0 else 1, int(offs[c])) for c in cands)
        n_star = picks[0][2]
        return n_star, int(best) if self.is_real else float(best)

    # -- exact window integration ---------------------------------------

    def integral_to(self, t):
        """Integral of S(q u) du from 0 to t, exact rational for real chi.

        The step function is integrated on its breakpoints: whole unit cells
        of S contribute through iprefix, the partial cell through an exact
        Fraction length times the step value.  Works for any real t, with
        the drift term keeping principal characters correct.
        """
        t = _as_fraction(t)
        q = self.modulus
        w = t * q
        k_full = math.floor(w)
        frac = w - k_full
        p, k0 = divmod(k_full, q)
        geom = q * p * (p - 1) // 2 + p * k0
        if self.is_real:
            drift = int(self.prefix[q])
            base = p * int(self.iprefix[q]) + int(self.iprefix[k0]) + drift * geom
            step = int(self.prefix[k0]) + p * drift
            return (base + frac * step) / q
        drift = complex(self.prefix[q])
        base = p * complex(self.iprefix[q]) + complex(self.iprefix[k0]) + drift * geom
        step = complex(self.prefix[k0]) + p * drift
        return (base + float(frac) * step) / q

    def window_average(self, alpha, b):
        """(B/2) * integral of S(q t) over [alpha - 1/B, alpha + 1/B].

        alpha is an exact rational; B >= 2 (the window must fit in one
        period).  Returns an exact Fraction for real characters, complex
        otherwise.  Windows crossing 0 or 1 wrap periodically.
        """
        b = _as_fraction(b)
        if b < 2:
            raise InvalidArgumentError(f"window parameter B must be >= 2, got {b}")
        alpha = _as_fraction(alpha)
        hi = self.integral_to(alpha + 1 / b)
        lo = self.integral_to(alpha - 1 / b)
        return (hi - lo) * b / 2


@dataclass(frozen=True)
class GaussSumValue:
    """tau(chi) = sum_n chi(n) e(n/q); |tau|^2 = q for primitive chi."""

    value: complex
    modulus: int

    @property
    def magnitude_squared(self) -> float:
        return abs(self.value) ** 2


def gauss_sum(chi: DirichletCharacter, values: np.ndarray | None = None) -> GaussSumValue:
    """Direct O(q) evaluation of the Gauss sum."""
    q = chi.modulus
    if q > 5 * 10**7:
        raise InvalidArgumentError(f"gauss_sum modulus {q} beyond desk scale")
    if values is None:
        values = chi.value_table()
    re_parts, im_parts = [], []
    for lo in range(0, q, _CHUNK):
        n = np.arange(lo, min(lo + _CHUNK, q), dtype=np.float64)
        z = values[lo : lo + _CHUNK] * np.exp(2j * np.pi * n / q)
        re_parts.append(float(np.sum(z.real)))
        im_parts.append(float(np.sum(z.imag)))
    return GaussSumValue(complex(math.fsum(re_parts), math.fsum(im_parts)), q)


def l_value_at_one(chi: DirichletCharacter, values: np.ndarray | None = None) -> complex:
    """L(1, chi) by the exact finite formulas (parity-split).

    Odd chi:  (i pi / q^2) tau(chi) sum_a conj(chi)(a) a.
    Even chi: -(tau(chi)/q) sum_a conj(chi)(a) log(2 sin(pi a / q)).
    """
    if chi.is_principal:
        raise InvalidArgumentError("L(1) formulas need a non-principal character")
    if not chi.is_primitive:
        raise InvalidArgumentError("L(1) formulas need a primitive character")
    q = chi.modulus
    if values is None:
        values = chi.value_table()
    conj_vals = values if chi.is_real else np.conj(values)
    tau = gauss_sum(chi, values).value
    if chi.is_odd:
        if chi.is_real:
            s = int(conj_vals.astype(np.int64) @ np.arange(q, dtype=np.int64))
        else:
            s = complex(conj_vals @ np.arange(q, dtype=np.float64))
        return complex(1j * math.pi * tau * s) / q / q
    a = np.arange(1, q, dtype=np.float64)
    weights = np.log(2.0 * np.sin(np.pi * a / q))
    s = complex(conj_vals[1:] @ weights)
    return complex(-(tau / q) * s)


def fourier_constant_term(chi: DirichletCharacter) -> complex:
    """Constant term of the expansion of S(qt): (1 - chi(-1)) tau / (2 pi i) * L(1, conj chi).

    Zero for even characters.
    """
    if not chi.is_primitive:
        raise InvalidArgumentError("constant term is defined for primitive characters")
    if chi.is_even:
        return 0j
    tau = gauss_sum(chi).value
    return tau / (1j * math.pi) * l_value_at_one(chi.conjugate())


@dataclass(frozen=True)
class FourierTruncation:
    """Partial sum of the oscillatory expansion at point t, n <= length."""

    t: float
    length: int
    value: complex
    parity_kernel: str  # "cos" for odd characters, "sin" for even


def truncated_fourier(chi: DirichletCharacter, t: float, length: int) -> FourierTruncation:
    """F_N(t): -sum_{n<=N} conj(chi)(n) cos(2 pi n t)/n  (odd chi),
    i sum_{n<=N} conj(chi)(n) sin(2 pi n t)/n  (even chi)."""
    length = int(length)
    if length < 1:
        raise InvalidArgumentError("truncation length must be >= 1")
    q = chi.modulus
    if length <= 2048 and length < q:
        vals = np.array([chi.value(n).approx for n in range(length + 1)])
    else:
        table = chi.value_table().astype(np.complex128)
        vals = np.tile(table, length // q + 1)[: length + 1]
    n = np.arange(1, length + 1, dtype=np.float64)
    phase = 2.0 * np.pi * ((n * t) % 1.0)
    conj_vals = np.conj(vals[1:])
    if chi.is_odd:
        terms = -conj_vals * np.cos(phase) / n
        kern = "cos"
    else:
        terms = 1j * conj_vals * np.sin(phase) / n
        kern = "sin"
    value = complex(kernels.kahan_sum(terms.real), kernels.kahan_sum(terms.imag))
    return FourierTruncation(float(t), length, value, kern)


def _truncation_cut(b) -> int:
    # strict n < B: the largest admissible n
    return math.ceil(_as_fraction(b)) - 1


def prediction_series(
    chi: DirichletCharacter, alpha, b, tau: complex | None = None
) -> complex:
    """tau/(i pi) * sum_{n<B} conj(chi)(n) f(2 pi n alpha) / n.

    f(x) = -cos(x) for odd chi, i sin(x) for even chi.
    """
    alpha = _as_fraction(alpha)
    cut = _truncation_cut(b)
    if tau is None:
        tau = gauss_sum(chi).value
    total = 0j
    odd = chi.is_odd
    for n in range(1, cut + 1):
        v = chi.value(n)
        if v.is_zero:
            continue
        x = 2.0 * math.pi * float((n * alpha) % 1)
        f = -math.cos(x) if odd else 1j * math.sin(x)
        total += v.conjugate().approx * f / n
    return tau / (1j * math.pi) * total


def window_prediction(chi: DirichletCharacter, alpha, b) -> complex:
    """Predicted window average: constant term plus the truncated series."""
    if not chi.is_primitive:
        raise InvalidArgumentError("prediction requires a primitive character")
    return fourier_constant_term(chi) + prediction_series(chi, alpha, b)


@dataclass(frozen=True)
class WindowAverageReport:
    """Exact window average vs. its truncated prediction, with the residual."""

    alpha: Fraction
    b: Fraction
    lhs_exact: object  # Fraction for real characters, complex otherwise
    constant_term: complex
    rhs_truncated: complex
    residual: complex
    residual_over_sqrt_q: float


def window_report(table: PrefixSumTable, alpha, b) -> WindowAverageReport:
    chi = table.character
    alpha = _as_fraction(alpha)
    b = _as_fraction(b)
    lhs = table.window_average(alpha, b)
    const = fourier_constant_term(chi)
    tau = gauss_sum(chi, table.values).value
    series = prediction_series(chi, alpha, b, tau)
    residual = complex(lhs) - const - series
    return WindowAverageReport(
        alpha=alpha,
        b=b,
        lhs_exact=lhs,
        constant_term=const,
        rhs_truncated=series,
        residual=residual,
        residual_over_sqrt_q=abs(residual) / math.sqrt(chi.modulus),
    )


@dataclass(frozen=True)
class LogGrowthSeries:
    """Partial sums of chi(n) k(2 pi a n / q)/n against their log-growth prediction."""

    x: np.ndarray
    lhs: np.ndarray
    predicted: np.ndarray
    coefficient: complex

    def rows(self):
        return zip(self.x.tolist(), self.lhs.tolist(), self.predicted.tolist())


def log_growth_series(chi: DirichletCharacter, a: int, x_grid) -> LogGrowthSeries:
    """Partial sums sum_{n<x} chi(n) kern(2 pi a n/q)/n on a grid of x values.

    kern is cos for even chi and sin for odd chi; the predicted value is
    coefficient * log x with coefficient conj(chi)(a) tau / q (even) or
    conj(chi)(a) tau / (i q) (odd).
    """
    q = chi.modulus
    a = int(a)
    if math.gcd(a, q) != 1:
        raise InvalidArgumentError(f"a={a} must be coprime to q={q}")
    x = np.asarray(list(x_grid), dtype=np.float64)
    if x.size == 0:
        raise InvalidArgumentError("empty x grid")
    cuts = np.ceil(x).astype(np.int64) - 1  # strict n < x
    nmax = int(cuts.max()) if cuts.size else 0
    cval = chi.value(a).conjugate().approx
    tau = gauss_sum(chi).value
    coef = cval * tau / (1j * q) if chi.is_odd else cval * tau / q

    real_char = chi.is_real
    lhs = np.zeros(x.size, dtype=np.float64 if real_char else np.complex128)
    if nmax >= 1:
        table = chi.value_table()
        vals = np.tile(table, nmax // q + 1)[: nmax + 1]
        angle = 2.0 * np.pi * np.arange(q, dtype=np.float64) / q
        ktab = np.sin(angle) if chi.is_odd else np.cos(angle)
        n = np.arange(1, nmax + 1, dtype=np.int64)
        kern = ktab[(a % q) * n % q]
        terms = vals[1:] * kern / n
        if real_char:
            partial = kernels.comp_cumsum(terms.astype(np.float64))
        else:
            partial = kernels.comp_cumsum_complex(terms)
        pos = cuts >= 1
        lhs[pos] = partial[cuts[pos] - 1]
    predicted = coef * np.log(np.maximum(x, 1.0))
    return LogGrowthSeries(x=x, lhs=lhs, predicted=predicted, coefficient=coef)


def nonsmooth_count(a_param, b: int) -> int:
    """Exact count of n <= A*B whose largest prime factor is >= B."""
    if a_param < 1:
        raise InvalidArgumentError("A must be >= 1")
    b = int(b)
    if b < 2:
        raise InvalidArgumentError("B must be >= 2")
    limit = math.floor(_as_fraction(a_param) * b)
    if limit > NONSMOOTH_LIMIT:
        raise InvalidArgumentError(f"A*B = {limit} exceeds {NONSMOOTH_LIMIT}")
    return int(kernels.nonsmooth_count(limit, b))


def half_model_sum(b_nonresidue: int, a_param, chi_values: np.ndarray | None = None) -> float:
    """Truncated model of the half-point window average:

    B * sum_{n <= A B} (-1)^(n+1) chi(n) sin(2 pi n / B) / (2 pi n^2),

    with chi == 1 when chi_values is None.  Tail beyond A*B is < 1/(2 pi A).
    """
    b = int(b_nonresidue)
    if b < 2:
        raise InvalidArgumentError("B must be >= 2")
    limit = math.floor(_as_fraction(a_param) * b)
    sin_table = np.sin(2.0 * np.pi * np.arange(b, dtype=np.float64) / b)
    raw = kernels.half_model_sum(limit, sin_table, chi_values)
    return b * raw / (2.0 * math.pi)


def least_nonresidue(values: np.ndarray) -> int:
    """Smallest n >= 2 with chi(n) = -1, from a value table of a real character."""
    neg = np.flatnonzero(values[2:] == -1)
    if neg.size == 0:
        raise InvalidArgumentError("character has no nonresidue below its modulus")
    return int(neg[0]) + 2


@dataclass(frozen=True)
class HalfWindowReport:
    """Window average around t=1/2 for an odd quadratic character."""

    b_nonresidue: int
    a_param: float
    exact_average: Fraction
    model_sum: float
    identity_residual: float  # S(q/2) - (sqrt q / pi) L(1, chi); zero in exact arithmetic


def half_window_report(table: PrefixSumTable, a_param) -> HalfWindowReport:
    chi = table.character
    if chi.is_even:
        raise InvalidArgumentError("half-window analysis needs an odd character")
    if chi.order != 2 or not chi.is_primitive:
        raise InvalidArgumentError("half-window analysis needs a primitive quadratic character")
    b = least_nonresidue(table.values)
    if b < 3:
        raise InvalidArgumentError("least nonresidue must be >= 3 (chi(2) = 1)")
    q = chi.modulus
    exact = table.window_average(Fraction(1, 2), b)
    model = half_model_sum(b, a_param, chi_values=table.values)
    lval = l_value_at_one(chi, table.values).real
    s_half = table.sum_to(Fraction(q, 2))
    identity_residual = float(s_half - math.sqrt(q) / math.pi * lval)
    return HalfWindowReport(
        b_nonresidue=b,
        a_param=float(a_param),
        exact_average=exact,
        model_sum=model,
        identity_residual=identity_residual,
    )


@dataclass(frozen=True)
class HalfGapScan:
    """Largest rise of S over its central value on [1/2 - 1/B, 1/2]."""

    t_star: Fraction
    gap: int
    normalized_gap: float  # gap * pi / (sqrt(q) log 2)
    s_half: int
    n_star: int


def half_gap_scan(table: PrefixSumTable, b_nonresidue: int) -> HalfGapScan:
    """Scan every jump point n/q in [1/2 - 1/B, 1/2] for the largest
    S(n) - S(q/2); ties break to the smallest n."""
    chi = table.character
    if chi.is_even or chi.order != 2:
        raise InvalidArgumentError("scan needs an odd quadratic character")
    b = int(b_nonresidue)
    if b <= 2:
        raise InvalidArgumentError("scan needs least nonresidue B >= 3")
    if int(table.values[b]) != -1 or np.any(table.values[1:b] != 1):
        raise InvalidArgumentError(f"B={b} is not the least nonresidue of this character")
    q = table.modulus
    n_lo = -((-q * (b - 2)) // (2 * b))  # ceil(q (1/2 - 1/B))
    n_hi = q // 2
    seg = table.prefix[n_lo : n_hi + 1]
    s_half = int(table.prefix[n_hi])
    gaps = seg.astype(np.int64) - s_half
    i = int(np.argmax(gaps))
    gap = int(gaps[i])
    n_star = n_lo + i
    normalized = gap * math.pi / (math.sqrt(q) * math.log(2.0))
    return HalfGapScan(
        t_star=Fraction(n_star, q),
        gap=gap,
        normalized_gap=normalized,
        s_half=s_half,
        n_star=n_star,
    )
