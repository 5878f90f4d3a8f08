"""Searches for extremal characters.

Prescribed Legendre-symbol values at small primes are compiled, through
quadratic reciprocity, into a single residue class r mod m; any prime in
the class satisfies every condition.  The compiler enumerates admissible
residues per condition prime and intersects them by scanning the parity
progression, which keeps the reciprocity sign bookkeeping testable against
a direct Jacobi-symbol scan of whatever prime the search returns.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from charsum.arith import is_prime, sieve_primes
from charsum.characters import (
    DirichletCharacter,
    jacobi_symbol,
    product_character,
    quadratic_character,
)
from charsum.errors import InfeasibleError, InvalidArgumentError, NotFoundError

SEARCH_LIMIT = 1 << 62
DEPTH_LIMIT = 40


@dataclass(frozen=True)
class LocalCondition:
    """Require (prime | q) == required for the modulus q being searched."""

    prime: int
    required: int

    def __post_init__(self):
        if not is_prime(self.prime):
            raise InvalidArgumentError(f"{self.prime} is not prime")
        if self.required not in (-1, 1):
            raise InvalidArgumentError("required symbol must be +1 or -1")


@dataclass(frozen=True)
class SearchSpec:
    """Legendre conditions plus a parity class for the target prime q."""

    conditions: tuple[LocalCondition, ...]
    parity_residue: int
    parity_modulus: int = 4  # 4 or 8
    search_range: tuple[int, int] = (2, SEARCH_LIMIT)
    want_prime: bool = True

    def __post_init__(self):
        primes = [c.prime for c in self.conditions]
        if len(set(primes)) != len(primes):
            raise InvalidArgumentError("condition primes must be pairwise distinct")
        if self.parity_modulus not in (4, 8):
            raise InvalidArgumentError("parity constraint must be mod 4 or mod 8")
        if self.parity_residue % 2 == 0:
            raise InvalidArgumentError("parity residue must be odd")
        lo, hi = self.search_range
        if not lo < hi:
            raise InvalidArgumentError("search range must satisfy lo < hi")


def reciprocity_conditions(spec: SearchSpec) -> tuple[int, int]:
    """Compile a SearchSpec into the least admissible residue class (r, m).

    m is parity_modulus * product(odd condition primes), with the parity
    part widened to 8 when a condition at 2 pins q mod 8.  Every prime
    q = r (mod m) satisfies all the conditions.
    """
    r2 = spec.parity_residue % spec.parity_modulus
    m2 = spec.parity_modulus
    odd_conditions = []
    for cond in spec.conditions:
        if cond.prime == 2:
            allowed = {1, 7} if cond.required == 1 else {3, 5}
            lifts = {u for u in range(r2, 8, m2)} & allowed
            if not lifts:
                raise InfeasibleError("condition at 2 contradicts the parity class")
            if len(lifts) == 1:
                r2, m2 = lifts.pop(), 8
            # both lifts admissible: the mod-4 class already encodes them
        else:
            odd_conditions.append(cond)

    q_is_3_mod_4 = r2 % 4 == 3
    residue_sets: dict[int, set[int]] = {}
    for cond in odd_conditions:
        p = cond.prime
        eps = -1 if (p % 4 == 3 and q_is_3_mod_4) else 1
        want = cond.required * eps  # the needed value of (q mod p | p)
        residue_sets[p] = {u for u in range(1, p) if jacobi_symbol(u, p) == want}

    m = m2 * math.prod(residue_sets.keys()) if residue_sets else m2
    # Every residue set is nonempty, so CRT guarantees a hit within one period.
    for u in range(r2, m + 1, m2):
        if all(u % p in rs for p, rs in residue_sets.items()):
            return u, m
    raise InfeasibleError("no admissible residue class")


def find_prime_in_class(
    r: int,
    m: int,
    lo: int | None = None,
    hi: int = SEARCH_LIMIT,
    coprime_to: int = 1,
) -> int:
    """Smallest prime = r (mod m) in [lo, hi], deterministic Miller-Rabin."""
    if hi > SEARCH_LIMIT:
        raise InvalidArgumentError(f"search bound {hi} exceeds 2^62")
    if math.gcd(r, m) != 1:
        raise InfeasibleError(f"class {r} mod {m} contains at most one prime")
    if lo is None:
        lo = m + 1
    lo = max(lo, 2)
    r %= m
    start = r if r >= lo else r + ((lo - r + m - 1) // m) * m
    for q in range(start, hi + 1, m):
        if math.gcd(q, coprime_to) == 1 and is_prime(q):
            return q
    raise NotFoundError(f"no prime = {r} (mod {m}) in [{lo}, {hi}]")


@dataclass(frozen=True)
class PretentiousModulus:
    """A prime whose quadratic character copies a target pattern to depth y."""

    q1: int
    depth: int  # largest y with the pattern verified for all n < y
    residue_class: tuple[int, int]


def _verified_depth(q: int, target) -> int:
    """Largest y such that (n|q) == target(n) for all applicable n < y.

    target maps n to +1/-1, or to 0 meaning "unconstrained at n".
    """
    cap = min(q, 10**6)
    n = 1
    while n < cap:
        want = target(n)
        if want != 0 and math.gcd(n, q) == 1 and jacobi_symbol(n, q) != want:
            break
        n += 1
    return n


def _chi_minus_four(n: int) -> int:
    return 0 if n % 2 == 0 else (1 if n % 4 == 1 else -1)


def paley_modulus(y: int, hi: int = SEARCH_LIMIT) -> PretentiousModulus:
    """Prime q = 1 (mod 4) whose Legendre symbol matches the odd quadratic
    character mod 4 at every odd n < y, found in the least admissible class.

    Only odd n are constrained (the pattern vanishes at even n).
    """
    if not 2 <= y <= DEPTH_LIMIT:
        raise InvalidArgumentError(f"depth must lie in [2, {DEPTH_LIMIT}]")
    conditions = tuple(
        LocalCondition(int(p), _chi_minus_four(int(p)))
        for p in sieve_primes(y - 1)
        if p != 2
    )
    spec = SearchSpec(conditions=conditions, parity_residue=1, parity_modulus=4)
    r, m = reciprocity_conditions(spec)
    q = find_prime_in_class(r, m, lo=2, hi=hi)
    depth = _verified_depth(q, _chi_minus_four)
    if depth < y:
        raise AssertionError(f"search returned q={q} failing its own conditions")
    return PretentiousModulus(q1=q, depth=depth, residue_class=(r, m))


def residue_one_modulus(
    y: int, hi: int = SEARCH_LIMIT, coprime_to: int = 1
) -> PretentiousModulus:
    """Prime q1 = 3 (mod 4) with (p|q1) = 1 for all primes p < y.

    The quadratic character mod q1 is odd with least nonresidue >= y; the
    recorded depth is that least nonresidue.
    """
    if not 2 <= y <= DEPTH_LIMIT:
        raise InvalidArgumentError(f"depth must lie in [2, {DEPTH_LIMIT}]")
    conditions = tuple(LocalCondition(int(p), 1) for p in sieve_primes(y - 1))
    spec = SearchSpec(conditions=conditions, parity_residue=3, parity_modulus=4)
    r, m = reciprocity_conditions(spec)
    q = find_prime_in_class(r, m, lo=2, hi=hi, coprime_to=coprime_to)
    depth = _verified_depth(q, lambda n: 1)
    if depth < y:
        raise AssertionError(f"search returned q={q} failing its own conditions")
    return PretentiousModulus(q1=q, depth=depth, residue_class=(r, m))


def build_mimicking_character(
    psi: DirichletCharacter, y: int, hi: int = SEARCH_LIMIT
) -> DirichletCharacter:
    """Character of parity opposite to psi agreeing with it below y.

    Multiplies psi by an odd quadratic character mod a searched prime q1
    that has no nonresidue below y; the product mod b*q1 is primitive with
    order lcm(2, order(psi)) and equals psi(n) for n < y coprime to q1.
    """
    b = psi.modulus
    pm = residue_one_modulus(y, hi=hi, coprime_to=b)
    chi1 = quadratic_character(pm.q1)
    chi = product_character(chi1, psi)
    assert chi.parity == -psi.parity
    assert chi.order == math.lcm(2, psi.order)
    for n in range(1, min(y, chi.modulus)):
        if chi.value(n) != psi.value(n):
            raise AssertionError(f"mimicry check failed at n={n}")
    return chi
