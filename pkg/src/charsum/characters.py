"""Dirichlet characters mod q as exponent vectors over a canonical generator set.

The unit group (Z/qZ)* is decomposed into cyclic factors with a fixed,
deterministic choice of generators: the smallest primitive root for each
odd prime power, the class of 3 for modulus 4, and the pair (-1, 5) for
2^e with e >= 3.  A character is the tuple of exponents e_i with
chi(g_i) = e(e_i / d_i), which makes order, parity and conductor cheap
arithmetic and keeps all algebraic identities exact (values are stored as
root-of-unity indices, not floats).

Quadratic characters evaluate through the Jacobi symbol, so they work for
moduli far beyond the range where discrete-log tables are affordable.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product as _iproduct

import numpy as np

from charsum.arith import factorize, is_prime, power_table, primitive_root
from charsum.errors import InvalidArgumentError

MODULUS_LIMIT = 1 << 40
# Discrete-log lookup tables are materialized per prime-power component,
# and only when the component is small enough to index directly.
TABLE_COMPONENT_LIMIT = 1 << 22


def jacobi_symbol(n: int, q: int) -> int:
    """Jacobi symbol (n|q) for odd positive q."""
    if q <= 0 or q % 2 == 0:
        raise InvalidArgumentError(f"Jacobi symbol needs odd positive q, got {q}")
    n %= q
    sign = 1
    while True:
        if q == 1:
            return sign
        if n == 0:
            return 0
        while n % 4 == 0:
            n //= 4
        if n % 2 == 0:
            n //= 2
            if q % 8 in (3, 5):
                sign = -sign
        if n == 1:
            return sign
        if n % 4 == 3 and q % 4 == 3:
            sign = -sign
        n, q = q % n, n


class CharacterValue:
    """A root of unity e(numerator/denominator), or the zero value.

    The exact part is a reduced fraction with 0 <= numerator < denominator;
    denominator 0 marks zero.  ``approx`` is the complex double.
    """

    __slots__ = ("numerator", "denominator")

    def __init__(self, numerator: int, denominator: int):
        if denominator == 0:
            self.numerator = 0
            self.denominator = 0
        else:
            frac = Fraction(numerator, denominator) % 1
            self.numerator = frac.numerator
            self.denominator = frac.denominator

    @classmethod
    def zero(cls) -> "CharacterValue":
        return cls(0, 0)

    @classmethod
    def from_angle(cls, angle: Fraction) -> "CharacterValue":
        return cls(angle.numerator, angle.denominator)

    @property
    def is_zero(self) -> bool:
        return self.denominator == 0

    @property
    def angle(self) -> Fraction:
        if self.is_zero:
            raise InvalidArgumentError("zero value has no angle")
        return Fraction(self.numerator, self.denominator)

    @property
    def approx(self) -> complex:
        if self.is_zero:
            return 0j
        return cmath.rect(1.0, 2.0 * math.pi * self.numerator / self.denominator)

    def __mul__(self, other: "CharacterValue") -> "CharacterValue":
        if self.is_zero or other.is_zero:
            return CharacterValue.zero()
        return CharacterValue.from_angle(self.angle + other.angle)

    def conjugate(self) -> "CharacterValue":
        if self.is_zero:
            return self
        return CharacterValue(-self.numerator, self.denominator)

    def __complex__(self) -> complex:
        return self.approx

    def __eq__(self, other) -> bool:
        if isinstance(other, CharacterValue):
            return (self.numerator, self.denominator) == (
                other.numerator,
                other.denominator,
            )
        if self.is_zero:
            return other == 0
        if self.denominator == 1:
            return other == 1
        if self.denominator == 2:
            return other == -1
        return complex(other) == self.approx

    def __hash__(self):
        return hash((self.numerator, self.denominator))

    def __repr__(self):
        if self.is_zero:
            return "CharacterValue(0)"
        return f"CharacterValue(e({self.numerator}/{self.denominator}))"


@dataclass(frozen=True)
class _Component:
    """One cyclic factor of (Z/qZ)*: chi restricted to <generator>."""

    prime: int
    part: int  # p^e
    generator: int  # residue mod part
    order: int
    minus_one_log: int  # discrete log of -1 in this factor
    dlog: np.ndarray | None = field(compare=False)  # residue mod part -> log, -1 off units


def _odd_component(p: int, e: int) -> _Component:
    part = p**e
    d = part // p * (p - 1)
    g = primitive_root(part)
    dlog = None
    if part <= TABLE_COMPONENT_LIMIT:
        dlog = np.full(part, -1, dtype=np.int32)
        dlog[power_table(g, d, part)] = np.arange(d, dtype=np.int32)
    return _Component(p, part, g, d, d // 2, dlog)


def _two_components(e: int) -> list[_Component]:
    part = 1 << e
    if e <= 1:
        return []
    if e == 2:
        dlog = np.array([-1, 0, -1, 1], dtype=np.int32)
        return [_Component(2, 4, 3, 2, 1, dlog)]
    d5 = part // 4
    sign = five = None
    if part <= TABLE_COMPONENT_LIMIT:
        pows = power_table(5, d5, part)
        sign = np.full(part, -1, dtype=np.int32)
        five = np.full(part, -1, dtype=np.int32)
        sign[pows] = 0
        five[pows] = np.arange(d5, dtype=np.int32)
        neg = (part - pows) % part
        sign[neg] = 1
        five[neg] = np.arange(d5, dtype=np.int32)
    return [
        _Component(2, part, part - 1, 2, 1, sign),
        _Component(2, part, 5, d5, 0, five),
    ]


class UnitGroupStructure:
    """Canonical cyclic decomposition of (Z/qZ)* with discrete-log tables."""

    __slots__ = ("modulus", "factorization", "components", "phi", "exponent")

    def __init__(self, modulus: int):
        if modulus <= 0:
            raise InvalidArgumentError(f"modulus must be positive, got {modulus}")
        if modulus > MODULUS_LIMIT:
            raise InvalidArgumentError(f"modulus {modulus} exceeds 2^40")
        self.modulus = modulus
        self.factorization = tuple(factorize(modulus)) if modulus > 1 else ()
        comps: list[_Component] = []
        for p, e in self.factorization:
            if p == 2:
                comps.extend(_two_components(e))
            else:
                comps.append(_odd_component(p, e))
        self.components = tuple(comps)
        self.phi = math.prod(c.order for c in comps) if comps else 1
        self.exponent = math.lcm(*(c.order for c in comps)) if comps else 1

    @property
    def generators(self) -> tuple[tuple[int, int], ...]:
        """(generator, order) pairs, generators lifted to residues mod q."""
        q = self.modulus
        out = []
        for c in self.components:
            rest = q // c.part
            if rest == 1:
                g = c.generator % q
            else:
                g = (
                    c.generator * rest * pow(rest, -1, c.part)
                    + self._one_lift(rest, c.part)
                ) % q
            out.append((g, c.order))
        return tuple(out)

    @staticmethod
    def _one_lift(rest: int, part: int) -> int:
        # residue that is 1 mod rest and 0 mod part
        return part * pow(part, -1, rest)

    @property
    def dlog_tables(self) -> tuple[np.ndarray | None, ...]:
        return tuple(c.dlog for c in self.components)

    def __repr__(self):
        return f"UnitGroupStructure(modulus={self.modulus}, orders={[c.order for c in self.components]})"


@lru_cache(maxsize=64)
def unit_group(q: int) -> UnitGroupStructure:
    """Canonical unit-group structure mod q (cached)."""
    return UnitGroupStructure(q)


def _conductor_from_exponents(group: UnitGroupStructure, exponents: tuple[int, ...]) -> int:
    cond = 1
    idx = 0
    for p, e in group.factorization:
        if p == 2:
            if e == 1:
                continue
            if e == 2:
                x = exponents[idx]
                idx += 1
                cond *= 4 if x else 1
                continue
            a, c = exponents[idx], exponents[idx + 1]
            idx += 2
            if c == 0:
                cond *= 4 if a else 1
            else:
                v = (c & -c).bit_length() - 1  # 2-adic valuation of c
                cond *= 1 << (e - v)
            continue
        comp = group.components[idx]
        x = exponents[idx]
        idx += 1
        t = comp.order // math.gcd(comp.order, x)
        if t == 1:
            continue
        vp = 0
        while t % p == 0:
            t //= p
            vp += 1
        cond *= p ** (1 + vp)
    return cond


class DirichletCharacter:
    """A Dirichlet character mod q, identified by its exponent vector.

    chi(g_i) = e(exponents[i] / d_i) for the canonical generators g_i of
    orders d_i.  Immutable after construction; order, parity (the value of
    chi(-1)) and conductor are computed eagerly from the exponents.
    """

    __slots__ = ("group", "exponents", "order", "parity", "conductor")

    def __init__(self, group: UnitGroupStructure | int, exponents):
        if isinstance(group, int):
            group = unit_group(group)
        exponents = tuple(int(e) for e in exponents)
        if len(exponents) != len(group.components):
            raise InvalidArgumentError(
                f"expected {len(group.components)} exponents for modulus "
                f"{group.modulus}, got {len(exponents)}"
            )
        for e, c in zip(exponents, group.components):
            if not 0 <= e < c.order:
                raise InvalidArgumentError(f"exponent {e} out of range for order {c.order}")
        self.group = group
        self.exponents = exponents
        self.order = math.lcm(
            *(c.order // math.gcd(c.order, e) for c, e in zip(group.components, exponents))
        ) if exponents else 1
        half = sum(
            Fraction(e * c.minus_one_log, c.order)
            for c, e in zip(group.components, exponents)
        ) % 1
        self.parity = 1 if half == 0 else -1
        self.conductor = _conductor_from_exponents(group, exponents)

    @property
    def modulus(self) -> int:
        return self.group.modulus

    @property
    def is_even(self) -> bool:
        return self.parity == 1

    @property
    def is_odd(self) -> bool:
        return self.parity == -1

    @property
    def is_principal(self) -> bool:
        return self.order == 1

    @property
    def is_primitive(self) -> bool:
        return self.conductor == self.modulus

    @property
    def is_real(self) -> bool:
        return self.order <= 2

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, DirichletCharacter)
            and self.modulus == other.modulus
            and self.exponents == other.exponents
        )

    def __hash__(self):
        return hash((self.modulus, self.exponents))

    def __repr__(self):
        return f"DirichletCharacter(modulus={self.modulus}, exponents={list(self.exponents)})"

    def label(self) -> str:
        """Exponent vector as a comma-joined string (the CLI --index form)."""
        return ",".join(str(e) for e in self.exponents) if self.exponents else "principal"

    # -- evaluation ---------------------------------------------------

    def value(self, n: int) -> CharacterValue:
        """Exact value chi(n); n is reduced mod q, negatives allowed."""
        q = self.modulus
        if q == 1:
            return CharacterValue(0, 1)
        n %= q
        for p, e in self.group.factorization:
            if p == 2 and e == 1 and n % 2 == 0:
                return CharacterValue.zero()
        angle = Fraction(0)
        for comp, exp in zip(self.group.components, self.exponents):
            r = n % comp.part
            if comp.dlog is not None:
                log = int(comp.dlog[r])
                if log < 0:
                    return CharacterValue.zero()
                angle += Fraction(exp * log, comp.order)
                continue
            if r % comp.prime == 0:
                return CharacterValue.zero()
            if exp == 0:
                continue
            if 2 * exp == comp.order and comp.prime != 2:
                if jacobi_symbol(r, comp.prime) == -1:
                    angle += Fraction(1, 2)
                continue
            raise InvalidArgumentError(
                f"component {comp.part} too large for direct evaluation"
            )
        return CharacterValue.from_angle(angle % 1)

    def __call__(self, n: int) -> complex:
        return self.value(n).approx

    def conjugate(self) -> "DirichletCharacter":
        return DirichletCharacter(
            self.group,
            tuple((c.order - e) % c.order for c, e in zip(self.group.components, self.exponents)),
        )

    # -- bulk values ---------------------------------------------------

    def value_table(self) -> np.ndarray:
        """chi(n) for n in [0, q): int8 for real characters, complex128 otherwise."""
        q = self.modulus
        real = self.is_real
        if q == 1:
            return np.ones(1, dtype=np.int8 if real else np.complex128)
        out = None
        for comp, exp in zip(self.group.components, self.exponents):
            tab = _component_value_table(comp, exp, real)
            tiled = np.tile(tab, q // comp.part)
            out = tiled if out is None else out * tiled
        if out is None:  # q = 2: only the principal character
            out = np.ones(q, dtype=np.int8)
        for p, e in self.group.factorization:
            if p == 2 and e == 1:
                out[0::2] = 0
        return out


def _component_value_table(comp: _Component, exp: int, real: bool) -> np.ndarray:
    part, d = comp.part, comp.order
    if comp.dlog is not None:
        logs = comp.dlog.astype(np.int64)
        unit = logs >= 0
        if real:
            k = (exp * np.where(unit, logs, 0)) % d
            tab = np.where(k * 2 == d, -1, 1).astype(np.int8)
            tab[~unit] = 0
        else:
            zeta = np.exp(2j * np.pi * np.arange(d) / d)
            tab = zeta[(exp * np.where(unit, logs, 0)) % d]
            tab[~unit] = 0
        return tab
    # Untabled component: principal or quadratic on an odd prime power.
    if exp == 0:
        tab = np.ones(part, dtype=np.int8 if real else np.complex128)
        tab[0 :: comp.prime] = 0
        return tab
    if 2 * exp == d and comp.prime != 2:
        tab = _legendre_table(comp.prime)
        if part != comp.prime:
            tab = np.tile(tab, part // comp.prime)
        return tab if real else tab.astype(np.complex128)
    raise InvalidArgumentError(f"component {part} too large for a value table")


def _legendre_table(p: int) -> np.ndarray:
    """Legendre symbol (n|p) for n in [0, p) via the squares of 1..(p-1)/2."""
    tab = np.full(p, -1, dtype=np.int8)
    x = np.arange(1, p // 2 + 1, dtype=np.int64)
    tab[(x * x) % p] = 1
    tab[0] = 0
    return tab


def character(q: int, exponents) -> DirichletCharacter:
    return DirichletCharacter(unit_group(q), exponents)


def principal_character(q: int) -> DirichletCharacter:
    g = unit_group(q)
    return DirichletCharacter(g, (0,) * len(g.components))


def quadratic_character(q: int) -> DirichletCharacter:
    """The Legendre-symbol character mod an odd prime q."""
    if q < 3 or q % 2 == 0 or not is_prime(q):
        raise InvalidArgumentError(f"quadratic_character needs an odd prime, got {q}")
    g = unit_group(q)
    return DirichletCharacter(g, ((q - 1) // 2,))


def product_character(chi1: DirichletCharacter, chi2: DirichletCharacter) -> DirichletCharacter:
    """The character n -> chi1(n) chi2(n) mod q1*q2, for coprime moduli."""
    q1, q2 = chi1.modulus, chi2.modulus
    if math.gcd(q1, q2) != 1:
        raise InvalidArgumentError(f"moduli {q1}, {q2} are not coprime")
    group = unit_group(q1 * q2)
    by_part: dict[tuple[int, int], int] = {}
    for src in (chi1, chi2):
        seen: dict[int, int] = {}
        for comp, e in zip(src.group.components, src.exponents):
            pos = seen.get(comp.part, 0)
            seen[comp.part] = pos + 1
            by_part[(comp.part, pos)] = e
    exponents = []
    seen = {}
    for comp in group.components:
        pos = seen.get(comp.part, 0)
        seen[comp.part] = pos + 1
        exponents.append(by_part.get((comp.part, pos), 0))
    return DirichletCharacter(group, tuple(exponents))


def enumerate_characters(q: int) -> list[DirichletCharacter]:
    """All phi(q) characters mod q, principal first, exponents lexicographic."""
    g = unit_group(q)
    return [
        DirichletCharacter(g, exps)
        for exps in _iproduct(*(range(c.order) for c in g.components))
    ]


def conductor(chi: DirichletCharacter) -> int:
    return chi.conductor


def conjugate(chi: DirichletCharacter) -> DirichletCharacter:
    return chi.conjugate()
