import math
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from charsum.characters import (
    character,
    enumerate_characters,
    jacobi_symbol,
    principal_character,
    product_character,
    quadratic_character,
    unit_group,
)
from charsum.errors import InvalidArgumentError


def euler_criterion(n: int, p: int) -> int:
    """Legendre symbol oracle for odd prime p."""
    n %= p
    if n == 0:
        return 0
    r = pow(n, (p - 1) // 2, p)
    return 1 if r == 1 else -1


ODD_PRIMES = [p for p in range(3, 1000) if all(p % d for d in range(2, p))]


# -- unit group -------------------------------------------------------------


def test_unit_group_trivial():
    g = unit_group(1)
    assert g.phi == 1 and g.generators == ()


def test_unit_group_mod4():
    g = unit_group(4)
    assert g.generators == ((3, 2),)


def test_unit_group_mod7():
    # oracle: exhaustive check that 3 generates (Z/7)*
    powers = {pow(3, k, 7) for k in range(6)}
    assert powers == {1, 2, 3, 4, 5, 6}
    g = unit_group(7)
    assert g.generators == ((3, 6),)


def test_unit_group_invalid():
    with pytest.raises(InvalidArgumentError):
        unit_group(0)
    with pytest.raises(InvalidArgumentError):
        unit_group(-4)


@pytest.mark.parametrize("q", [2, 3, 8, 12, 16, 45, 72, 360, 1024])
def test_unit_group_structure(q):
    g = unit_group(q)
    assert math.prod(p**e for p, e in g.factorization) == q
    phi = sum(1 for k in range(1, q + 1) if math.gcd(k, q) == 1)
    assert math.prod(d for _, d in g.generators) == phi == g.phi
    # re-exponentiating discrete logs reproduces every unit
    for u in range(1, q):
        if math.gcd(u, q) != 1:
            continue
        acc = 1
        for (gen, _), comp in zip(g.generators, g.components):
            acc = acc * pow(gen, int(comp.dlog[u % comp.part]), q) % q
        assert acc == u


# -- evaluation -------------------------------------------------------------


def test_eval_mod4_examples():
    chi = character(4, (1,))
    assert chi.value(3) == -1
    assert chi.value(1) == 1
    assert chi.value(2).is_zero
    assert chi.value(-1) == -1  # negative arguments reduce mod q


def test_eval_legendre_mod7():
    chi = quadratic_character(7)
    assert euler_criterion(2, 7) == 1
    assert chi.value(2) == 1


def test_value_approx_matches_index():
    for chi in enumerate_characters(35):
        for n in (1, 2, 3, 11, 34):
            v = chi.value(n)
            if v.is_zero:
                assert v.approx == 0
            else:
                import cmath

                ref = cmath.exp(2j * cmath.pi * v.numerator / v.denominator)
                assert abs(v.approx - ref) <= 4 * np.finfo(float).eps


@settings(max_examples=150, deadline=None)
@given(
    q=st.integers(min_value=1, max_value=150),
    m=st.integers(min_value=-300, max_value=300),
    n=st.integers(min_value=-300, max_value=300),
    pick=st.integers(min_value=0, max_value=10**6),
)
def test_multiplicativity_exact(q, m, n, pick):
    chars = enumerate_characters(q)
    chi = chars[pick % len(chars)]
    assert chi.value(m * n) == chi.value(m) * chi.value(n)


def test_periodicity_and_zero_pattern():
    rng = random.Random(2)
    for q in (5, 12, 36, 49):
        for chi in enumerate_characters(q):
            for _ in range(5):
                n = rng.randrange(-1000, 1000)
                assert chi.value(n) == chi.value(n + q)
                if math.gcd(n, q) > 1:
                    assert chi.value(n).is_zero
    assert character(1, ()).value(0) == 1  # modulus 1: identically one


def test_parity_equals_eval_at_minus_one():
    for q in (3, 4, 5, 8, 21, 40, 100):
        for chi in enumerate_characters(q):
            v = chi.value(q - 1)
            assert v == chi.parity


# -- jacobi symbol ----------------------------------------------------------


def test_jacobi_trivial_and_errors():
    for q in (1, 3, 9, 15, 99):
        assert jacobi_symbol(1, q) == 1
    with pytest.raises(InvalidArgumentError):
        jacobi_symbol(3, 4)
    with pytest.raises(InvalidArgumentError):
        jacobi_symbol(3, -7)


def test_jacobi_examples():
    assert jacobi_symbol(2, 7) == euler_criterion(2, 7) == 1
    # exhaustive square search mod 71
    squares = {x * x % 71 for x in range(1, 71)}
    assert (3 in squares) and jacobi_symbol(3, 71) == 1


@settings(max_examples=200, deadline=None)
@given(n=st.integers(min_value=-10**6, max_value=10**6), p=st.sampled_from(ODD_PRIMES))
def test_jacobi_euler_criterion(n, p):
    assert jacobi_symbol(n, p) == euler_criterion(n, p)


def test_jacobi_multiplicative_in_modulus():
    rng = random.Random(5)
    for _ in range(200):
        a = rng.randrange(1, 10**6)
        m = rng.choice(ODD_PRIMES)
        n = rng.choice(ODD_PRIMES)
        assert jacobi_symbol(a, m * n) == jacobi_symbol(a, m) * jacobi_symbol(a, n)


def test_jacobi_matches_quadratic_character_eval():
    for p in ODD_PRIMES:  # all odd primes below 1000
        chi = quadratic_character(p)
        table = chi.value_table()
        jac = np.array([jacobi_symbol(n, p) for n in range(p)], dtype=np.int8)
        assert np.array_equal(table, jac)


# -- quadratic characters ---------------------------------------------------


def test_quadratic_character_parity():
    assert quadratic_character(3).is_odd  # 3 = 3 mod 4
    assert quadratic_character(5).is_even  # 5 = 1 mod 4
    chi71 = quadratic_character(71)
    assert chi71.is_odd
    # least nonresidue via direct scan
    scan = next(n for n in range(2, 71) if euler_criterion(n, 71) == -1)
    assert scan == 7


def test_quadratic_character_invalid():
    for q in (1, 2, 9, 15, 4):
        with pytest.raises(InvalidArgumentError):
            quadratic_character(q)


# -- products ---------------------------------------------------------------


def test_product_mod21_pointwise():
    chi7 = quadratic_character(7)
    chi3 = quadratic_character(3)
    prod = product_character(chi7, chi3)
    assert prod.modulus == 21 and prod.is_even and prod.order == 2 and prod.is_primitive
    for n in range(21):
        assert prod.value(n) == chi7.value(n) * chi3.value(n)


def test_product_identity_and_parity():
    chi7 = quadratic_character(7)
    one = principal_character(1)
    same = product_character(chi7, one)
    assert same == chi7
    chi3 = quadratic_character(3)
    assert product_character(chi7, chi3).parity == chi7.parity * chi3.parity


def test_product_requires_coprime():
    with pytest.raises(InvalidArgumentError):
        product_character(quadratic_character(3), character(9, (1,)))


def test_product_higher_order():
    psi = character(5, (1,))
    assert psi.order == 4
    chi = product_character(quadratic_character(7), psi)
    assert chi.order == 4
    # verified by exponentiation: every value is a 4th root of unity and
    # some value has exact order 4
    orders = set()
    for n in range(1, 35):
        v = chi.value(n)
        if v.is_zero:
            continue
        assert (v * v) * (v * v) == 1
        orders.add(v.denominator)
    assert 4 in orders


# -- enumeration, conductor, conjugation -------------------------------------


def test_enumerate_counts_and_orders_mod5():
    chars = enumerate_characters(5)
    assert len(chars) == 4
    # cyclic of order 4: one character of each order 1 and 2, two of order 4
    assert sorted(c.order for c in chars) == [1, 2, 4, 4]


@pytest.mark.parametrize("q", [3, 4, 5, 8, 12, 16, 21, 45, 100])
def test_enumerate_distinct_and_conjugation_closed(q):
    chars = enumerate_characters(q)
    phi = sum(1 for k in range(1, q + 1) if math.gcd(k, q) == 1)
    assert len(chars) == phi
    tables = {tuple(np.round(c.value_table().astype(complex), 9).tolist()) for c in chars}
    assert len(tables) == phi
    keys = {c.exponents for c in chars}
    for c in chars:
        assert c.conjugate().exponents in keys
        assert c.conjugate().order == c.order
        assert c.conjugate().parity == c.parity


def brute_conductor(chi) -> int:
    """Smallest f | q inducing chi: chi constant on units congruent mod f."""
    q = chi.modulus
    for f in sorted(d for d in range(1, q + 1) if q % d == 0):
        classes = {}
        ok = True
        for n in range(1, q + 1):
            if math.gcd(n, q) != 1:
                continue
            key = n % f
            v = chi.value(n)
            if key in classes and classes[key] != v:
                ok = False
                break
            classes[key] = v
        if ok:
            return f
    return q


@pytest.mark.parametrize("q", [3, 4, 5, 8, 9, 12, 16, 24, 36, 40, 63])
def test_conductor_against_brute_force(q):
    for chi in enumerate_characters(q):
        assert chi.conductor == brute_conductor(chi)
        assert q % chi.conductor == 0
        assert chi.is_primitive == (chi.conductor == q)


def test_conductor_primitive_mod7():
    for chi in enumerate_characters(7):
        if not chi.is_principal:
            assert chi.conductor == 7


def test_conjugate_of_real_is_self():
    chi = quadratic_character(13)
    assert chi.conjugate() == chi


# -- orthogonality ----------------------------------------------------------


@pytest.mark.parametrize("q", [3, 4, 5, 7, 12, 36, 41, 100])
def test_orthogonality(q):
    for chi in enumerate_characters(q):
        if chi.is_principal:
            continue
        # exact: the nonzero values cover each root of unity equally often
        counts = {}
        for n in range(1, q + 1):
            v = chi.value(n)
            if not v.is_zero:
                counts[v.angle] = counts.get(v.angle, 0) + 1
        assert len(set(counts.values())) == 1 and len(counts) == chi.order
        # float check
        total = complex(np.sum(chi.value_table().astype(np.complex128)))
        assert abs(total) < 1e-9
