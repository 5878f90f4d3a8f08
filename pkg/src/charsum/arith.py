"""Elementary number-theoretic helpers: sieves, factoring, primality, CRT.

Everything here is deterministic.  Primality testing uses the fixed
Miller-Rabin witness set that is known to be exact below 3.3e24, which
covers the 2^62 search bound used elsewhere in the package.
"""

from __future__ import annotations

import math

import numpy as np

from charsum.errors import InvalidArgumentError

# Exact for all n < 3,317,044,064,679,887,385,961,981 (> 2^64).
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

_TRIAL_LIMIT = 1 << 20
_trial_primes: np.ndarray | None = None


def sieve_primes(limit: int) -> np.ndarray:
    """All primes <= limit, ascending, as an int64 array."""
    if limit < 2:
        return np.zeros(0, dtype=np.int64)
    comp = np.zeros(limit + 1, dtype=bool)
    comp[:2] = True
    for p in range(2, math.isqrt(limit) + 1):
        if not comp[p]:
            comp[p * p :: p] = True
    return np.flatnonzero(~comp).astype(np.int64)


def _trial_table() -> np.ndarray:
    global _trial_primes
    if _trial_primes is None:
        _trial_primes = sieve_primes(_TRIAL_LIMIT)
    return _trial_primes


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin; exact for n < 2^64."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def factorize(n: int) -> list[tuple[int, int]]:
    """Prime factorization of n as [(p, e), ...], p ascending.

    Trial division up to 2^20; a surviving cofactor below 2^40 is
    necessarily prime, which is all the modulus bound requires.
    """
    if n < 1:
        raise InvalidArgumentError(f"cannot factor {n}")
    out: list[tuple[int, int]] = []
    rest = n
    for p in _trial_table():
        p = int(p)
        if p * p > rest:
            break
        if rest % p == 0:
            e = 0
            while rest % p == 0:
                rest //= p
                e += 1
            out.append((p, e))
    if rest > 1:
        if rest >= (1 << 40) and not is_prime(rest):
            raise InvalidArgumentError(f"cofactor {rest} too large to factor")
        out.append((rest, 1))
    return out


def euler_phi(n: int) -> int:
    phi = 1
    for p, e in factorize(n):
        phi *= p ** (e - 1) * (p - 1)
    return phi


def crt_pair(r1: int, m1: int, r2: int, m2: int) -> tuple[int, int]:
    """Solve x = r1 (mod m1), x = r2 (mod m2) for coprime moduli."""
    if math.gcd(m1, m2) != 1:
        raise InvalidArgumentError("crt_pair needs coprime moduli")
    m = m1 * m2
    x = (r1 * m2 * pow(m2, -1, m1) + r2 * m1 * pow(m1, -1, m2)) % m
    return x, m


def crt_list(pairs: list[tuple[int, int]]) -> tuple[int, int]:
    """Combine a list of (residue, modulus) congruences, moduli coprime."""
    r, m = 0, 1
    for ri, mi in pairs:
        r, m = crt_pair(r, m, ri % mi, mi)
    return r, m


def multiplicative_order(g: int, modulus: int, group_order: int) -> int:
    """Order of g mod modulus, given a multiple group_order of it."""
    order = group_order
    for p, _ in factorize(group_order):
        while order % p == 0 and pow(g, order // p, modulus) == 1:
            order //= p
    return order


def primitive_root(prime_power: int) -> int:
    """Smallest primitive root modulo an odd prime power."""
    fac = factorize(prime_power)
    if len(fac) != 1 or fac[0][0] == 2:
        raise InvalidArgumentError(f"{prime_power} is not an odd prime power")
    p, e = fac[0]
    phi = p ** (e - 1) * (p - 1)
    g = 2
    while True:
        if g % p != 0 and multiplicative_order(g, prime_power, phi) == phi:
            return g
        g += 1


def power_table(g: int, count: int, modulus: int) -> np.ndarray:
    """[g^0, g^1, ..., g^(count-1)] mod modulus as int64, by doubling.

    modulus must stay below ~3e9 so intermediate products fit in int64.
    """
    if modulus >= 3_000_000_000:
        raise InvalidArgumentError("power_table modulus too large for int64")
    out = np.ones(count, dtype=np.int64)
    if count <= 1:
        return out
    out[1] = g % modulus
    filled = 2
    while filled < count:
        step = min(filled, count - filled)
        mult = int(out[filled - 1]) * (g % modulus) % modulus
        out[filled : filled + step] = out[:step] * mult % modulus
        filled += step
    return out
