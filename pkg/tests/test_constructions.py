import math
import random

import pytest

from charsum.arith import is_prime
from charsum.characters import (
    character,
    jacobi_symbol,
    principal_character,
    quadratic_character,
)
from charsum.constructions import (
    LocalCondition,
    SearchSpec,
    build_mimicking_character,
    find_prime_in_class,
    paley_modulus,
    reciprocity_conditions,
    residue_one_modulus,
)
from charsum.errors import InfeasibleError, InvalidArgumentError, NotFoundError


def euler_criterion(n, p):
    n %= p
    if n == 0:
        return 0
    return 1 if pow(n, (p - 1) // 2, p) == 1 else -1


def test_compile_example_class_71():
    spec = SearchSpec(
        conditions=(LocalCondition(2, 1), LocalCondition(3, 1), LocalCondition(5, 1)),
        parity_residue=3,
    )
    r, m = reciprocity_conditions(spec)
    assert m == 120
    assert 71 % m == r
    for p in (2, 3, 5):
        assert euler_criterion(p, 71) == 1


def test_compile_empty_conditions():
    spec = SearchSpec(conditions=(), parity_residue=1)
    assert reciprocity_conditions(spec) == (1, 4)


def test_compile_condition_at_2_second_supplement():
    spec = SearchSpec(conditions=(LocalCondition(2, 1),), parity_residue=1)
    r, m = reciprocity_conditions(spec)
    assert m == 8 and r % 8 in (1, 7)
    # exhaustive check over primes < 1000 in the class
    for q in range(r, 1000, m):
        if is_prime(q):
            assert euler_criterion(2, q) == 1
    # and the complementary sign
    spec = SearchSpec(conditions=(LocalCondition(2, -1),), parity_residue=1)
    r, m = reciprocity_conditions(spec)
    assert m == 8 and r % 8 in (3, 5)


def test_compile_infeasible_and_duplicates():
    with pytest.raises(InfeasibleError):
        reciprocity_conditions(
            SearchSpec(conditions=(LocalCondition(2, -1),), parity_residue=7, parity_modulus=8)
        )
    with pytest.raises(InvalidArgumentError):
        SearchSpec(conditions=(LocalCondition(3, 1), LocalCondition(3, -1)), parity_residue=1)


def test_compile_classes_are_sound_randomized():
    """Every prime found in a compiled class satisfies all its conditions,
    verified with the Jacobi symbol, never the reciprocity bookkeeping."""
    rng = random.Random(42)
    pool = [2, 3, 5, 7, 11, 13]
    for trial in range(50):
        k = rng.randrange(0, 5)
        primes = rng.sample(pool, k)
        conds = tuple(LocalCondition(p, rng.choice((-1, 1))) for p in primes)
        parity = rng.choice((1, 3))
        spec = SearchSpec(conditions=conds, parity_residue=parity)
        r, m = reciprocity_conditions(spec)
        q = find_prime_in_class(r, m, lo=2)
        assert q % 4 == parity
        for c in conds:
            if c.prime == 2:
                got = 1 if q % 8 in (1, 7) else -1
            else:
                got = jacobi_symbol(c.prime, q)
            assert got == c.required, (conds, parity, q)
        # minimality within the class: nothing smaller is prime
        for smaller in range(r, q, m):
            assert not is_prime(smaller)


def test_find_prime_examples():
    assert find_prime_in_class(3, 4, 60, 80) == 67
    assert find_prime_in_class(1, 2, 2, 3) == 3
    assert find_prime_in_class(71, 120, 2, 10**6) == 71
    # default lo is m + 1
    assert find_prime_in_class(71, 120) == 191


def test_find_prime_errors():
    with pytest.raises(InfeasibleError):
        find_prime_in_class(4, 8)
    with pytest.raises(NotFoundError):
        find_prime_in_class(1, 97, lo=2, hi=5)
    with pytest.raises(InvalidArgumentError):
        find_prime_in_class(1, 4, hi=1 << 63)


def test_find_prime_coprime_filter():
    assert find_prime_in_class(3, 4, 2, 100, coprime_to=3) == 7


def test_residue_one_examples():
    assert residue_one_modulus(2).q1 == 3
    assert residue_one_modulus(3).q1 == 7
    pm = residue_one_modulus(7)
    assert pm.q1 == 71 and pm.depth == 7
    r, m = pm.residue_class
    assert pm.q1 % m == r and m == 120
    for y, pm in ((5, residue_one_modulus(5)), (11, residue_one_modulus(11))):
        q = pm.q1
        assert is_prime(q) and q % 4 == 3
        for p in range(2, y):
            if is_prime(p):
                assert jacobi_symbol(p, q) == 1
        assert pm.depth >= y
        assert jacobi_symbol(pm.depth, q) == -1


def test_residue_one_depth_is_least_nonresidue():
    for y in (3, 5, 7):
        pm = residue_one_modulus(y)
        scan = next(n for n in range(2, pm.q1) if jacobi_symbol(n, pm.q1) == -1)
        assert pm.depth == scan


def test_growth_trend_logged():
    rows = []
    for y in range(2, 14):
        pm = residue_one_modulus(y)
        rows.append((y, pm.q1, y / math.log(pm.q1)))
    print("depth vs log q1:", rows)
    assert all(q1 >= 3 for _, q1, _ in rows)


def test_paley_examples():
    pm = paley_modulus(2)
    assert pm.q1 % 4 == 1 and is_prime(pm.q1)
    pm = paley_modulus(7)
    for n in range(3, 7, 2):
        want = 1 if n % 4 == 1 else -1
        assert jacobi_symbol(n, pm.q1) == want
    assert pm.depth >= 7


def test_depth_bounds():
    with pytest.raises(InvalidArgumentError):
        residue_one_modulus(1)
    with pytest.raises(InvalidArgumentError):
        paley_modulus(41)


def test_build_mimicking_character_examples():
    psi = quadratic_character(3)
    chi = build_mimicking_character(psi, 7)
    assert chi.is_even and chi.order == 2 and chi.is_primitive
    assert chi.modulus == 3 * 71
    for n in range(1, 7):
        assert chi.value(n) == psi.value(n)
    # principal mod 1: the product is the searched quadratic character itself
    chi1 = build_mimicking_character(principal_character(1), 5)
    assert chi1.is_odd and chi1.order == 2
    assert chi1.modulus == residue_one_modulus(5).q1
    # order lcm with a quartic psi
    psi4 = character(5, (1,))
    chi4 = build_mimicking_character(psi4, 5)
    assert chi4.order == 4 and chi4.parity == -psi4.parity
