"""NumPy reference implementations of the hot kernels.

Accuracy notes: running sums are computed blockwise (sequential rounding
confined to 4096-element blocks, block totals combined with Kahan carries),
single totals go through math.fsum or pairwise np.sum.  This is the
fallback selected when the compiled extension is unavailable.
"""

from __future__ import annotations

import math

import numpy as np

BACKEND_NAME = "python"

_BLOCK = 4096
_CHUNK = 1 << 20


def kahan_sum(x) -> float:
    """Error-free total of a 1-d float64 array (math.fsum)."""
    return math.fsum(np.asarray(x, dtype=np.float64).tolist())


def comp_cumsum(x: np.ndarray) -> np.ndarray:
    """Compensated running sums along the last axis of a float64 array."""
    x = np.ascontiguousarray(x, dtype=np.float64)
    n = x.shape[-1]
    if n <= _BLOCK:
        return np.cumsum(x, axis=-1)
    nblocks = -(-n // _BLOCK)
    pad = nblocks * _BLOCK - n
    lead = x.shape[:-1]
    padded = np.concatenate(
        [x, np.zeros(lead + (pad,), dtype=np.float64)], axis=-1
    ).reshape(lead + (nblocks, _BLOCK))
    within = np.cumsum(padded, axis=-1)
    totals = within[..., -1]

    offsets = np.zeros(lead + (nblocks,), dtype=np.float64)
    run = np.zeros(lead, dtype=np.float64)
    carry = np.zeros(lead, dtype=np.float64)
    for j in range(nblocks):
        offsets[..., j] = run
        y = totals[..., j] + carry
        t = run + y
        carry = y - (t - run)
        run = t
    within += offsets[..., None]
    return within.reshape(lead + (nblocks * _BLOCK,))[..., :n]


def nonsmooth_count(limit: int, b: int) -> int:
    """Count n <= limit having at least one prime factor >= b.

    Splits at sqrt(limit): a full sieve marks n divisible by a prime in
    [b, sqrt(limit)], and each remaining nonsmooth n factors uniquely as
    m*p with p > sqrt(limit) prime and m a (b-1)-smooth cofactor.
    """
    limit = int(limit)
    b = int(b)
    if limit < 2 or limit < b:
        return 0
    if b <= 2:
        return limit - 1
    root = math.isqrt(limit)

    comp = np.zeros(limit + 1, dtype=bool)
    comp[:2] = True
    for p in range(2, root + 1):
        if not comp[p]:
            comp[p * p :: p] = True

    mark = np.zeros(limit + 1, dtype=bool)
    for p in range(b, root + 1):
        if not comp[p]:
            mark[p::p] = True
    total = int(np.count_nonzero(mark))

    smooth_cum = np.cumsum(~mark[: root + 1])
    smooth_cum -= 1  # drop the m=0 slot; m ranges over positive integers

    big = np.flatnonzero(~comp[root + 1 :]) + root + 1
    if b > root:
        big = big[big >= b]
    if big.size:
        total += int(smooth_cum[limit // big].sum())
    return total


def half_model_sum(limit: int, sin_table: np.ndarray, chi: np.ndarray | None) -> float:
    """sum_{n=1}^{limit} (-1)^(n+1) chi(n) sin_table[n mod len] / n^2.

    chi is a full period of character values (int8) indexed by n mod q,
    or None for the all-ones model.
    """
    sin_table = np.asarray(sin_table, dtype=np.float64)
    period = sin_table.shape[0]
    pieces = []
    for lo in range(1, limit + 1, _CHUNK):
        hi = min(lo + _CHUNK - 1, limit)
        n = np.arange(lo, hi + 1, dtype=np.int64)
        terms = sin_table[n % period] / (n.astype(np.float64) ** 2)
        terms[n % 2 == 0] *= -1.0
        if chi is not None:
            terms *= chi[n % chi.shape[0]]
        pieces.append(float(np.sum(terms)))
    return math.fsum(pieces)
