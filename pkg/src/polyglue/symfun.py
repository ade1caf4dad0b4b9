"""Power-sum polynomials, Schur functions and characters of symmetric groups.

Power sums p_1, p_2, ... are formal generators with deg p_m = m. A
:class:`SymPoly` stores a sparse map from exponent vectors
``(e_1, e_2, ...)`` (meaning prod_m p_m^{e_m}) to exact rationals.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Sequence

from .linalg import det
from .partitions import (
    Partition,
    as_partition,
    centralizer_size,
    dimension,
    dimension_factor,
    partitions_of,
)


def _trim(exps: Sequence[int]) -> tuple[int, ...]:
    exps = tuple(exps)
    while exps and exps[-1] == 0:
        exps = exps[:-1]
    return exps


def powersum_exponents(delta: Partition) -> tuple[int, ...]:
    delta = as_partition(delta)
    if not delta.parts:
        return ()
    exps = [0] * delta.parts[0]
    for p in delta.parts:
        exps[p - 1] += 1
    return tuple(exps)


def exponents_to_partition(exps: Sequence[int]) -> Partition:
    parts = []
    for m in range(len(exps), 0, -1):
        parts.extend([m] * exps[m - 1])
    return Partition(tuple(parts))


@dataclass(frozen=True)
class SymPoly:
    terms: Mapping[tuple[int, ...], Fraction] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for exps, c in self.terms.items():
            c = Fraction(c)
            if c:
                key = _trim(exps)
                clean[key] = clean.get(key, Fraction(0)) + c
        object.__setattr__(self, "terms", {k: v for k, v in clean.items() if v})

    @classmethod
    def constant(cls, c) -> "SymPoly":
        return cls({(): Fraction(c)})

    @classmethod
    def p(cls, m: int) -> "SymPoly":
        return cls({(0,) * (m - 1) + (1,): Fraction(1)})

    @classmethod
    def p_partition(cls, delta: Partition) -> "SymPoly":
        return cls({powersum_exponents(delta): Fraction(1)})

    def __add__(self, other: "SymPoly") -> "SymPoly":
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return SymPoly(out)

    def __neg__(self) -> "SymPoly":
        return SymPoly({k: -v for k, v in self.terms.items()})

    def __sub__(self, other: "SymPoly") -> "SymPoly":
        return self + (-other)

    def __mul__(self, other) -> "SymPoly":
        if not isinstance(other, SymPoly):
            c = Fraction(other)
            return SymPoly({k: v * c for k, v in self.terms.items()})
        out: dict[tuple[int, ...], Fraction] = {}
        for k1, v1 in self.terms.items():
            for k2, v2 in other.terms.items():
                n = max(len(k1), len(k2))
                key = tuple(
                    (k1[i] if i < len(k1) else 0) + (k2[i] if i < len(k2) else 0) for i in range(n)
                )
                out[key] = out.get(key, 0) + v1 * v2
        return SymPoly(out)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, SymPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def weighted_degree(self) -> int | None:
        """Common weighted degree sum_m m*e_m of all terms, or None when mixed."""
        degs = {sum((m + 1) * e for m, e in enumerate(k)) for k in self.terms}
        if len(degs) == 1:
            return degs.pop()
        return 0 if not degs else None

    def coefficient(self, delta: Partition) -> Fraction:
        return self.terms.get(powersum_exponents(delta), Fraction(0))

    def evaluate(self, power_sums: Mapping[int, object] | Sequence) -> object:
        """Substitute values for p_m. ``power_sums`` is indexed by m (dict) or m-1 (sequence)."""
        if isinstance(power_sums, Mapping):
            get = power_sums.__getitem__
        else:
            get = lambda m: power_sums[m - 1]  # noqa: E731
        total = 0
        for exps, c in self.terms.items():
            term = c
            for m, e in enumerate(exps, start=1):
                if e:
                    term = term * get(m) ** e
            total = total + term
        return total

    def __repr__(self) -> str:
        if not self.terms:
            return "SymPoly(0)"
        pieces = []
        for exps, c in sorted(self.terms.items()):
            mono = "*".join(
                f"p{m}" + (f"^{e}" if e > 1 else "") for m, e in enumerate(exps, start=1) if e
            )
            pieces.append(f"{c}" + (f"*{mono}" if mono else ""))
        return "SymPoly(" + " + ".join(pieces) + ")"


@lru_cache(maxsize=None)
def complete_symbol(i: int) -> SymPoly:
    """Coefficient of z^i in exp(sum_{m>0} p_m z^m / m); zero for i < 0.

    Uses i*h_i = sum_{m=1}^{i} p_m h_{i-m}, obtained by differentiating the
    generating series in z.
    """
    if i < 0:
        return SymPoly()
    if i == 0:
        return SymPoly.constant(1)
    acc = SymPoly()
    for m in range(1, i + 1):
        acc = acc + SymPoly.p(m) * complete_symbol(i - m)
    return acc * Fraction(1, i)


def _sympoly_det(matrix: list[list[SymPoly]]) -> SymPoly:
    n = len(matrix)

    @lru_cache(maxsize=None)
    def minor(row: int, cols: frozenset) -> SymPoly:
        if row == n:
            return SymPoly.constant(1)
        acc = SymPoly()
        sign = 1
        for col in sorted(cols):
            entry = matrix[row][col]
            if entry.terms:
                sub = minor(row + 1, cols - {col})
                if sub.terms:
                    acc = acc + entry * sub * sign
            sign = -sign
        return acc

    return minor(0, frozenset(range(n)))


@lru_cache(maxsize=None)
def _schur_jt(parts: tuple[int, ...], n: int) -> SymPoly:
    lam = Partition(parts)
    shifted = [p - (i + 1) + n for i, p in enumerate(lam.padded(n))]
    matrix = [[complete_symbol(shifted[i] + (j + 1) - n) for j in range(n)] for i in range(n)]
    return _sympoly_det(matrix)


def schur_in_powersums(lam: Partition, n: int | None = None) -> SymPoly:
    """s_lam(p) = det[s_(H_i + j - n)(p)] with shifted parts H_i = lam_i - i + n."""
    lam = as_partition(lam)
    if n is None:
        n = max(lam.length(), 1)
    if n < lam.length():
        raise ValueError(f"need n >= len(lam) = {lam.length()}, got {n}")
    return _schur_jt(lam.parts, n)


def schur_numeric(lam: Partition, x: Sequence) -> Fraction:
    """Bialternant det[x_j^{lam_i - i + n}] / det[x_j^{n - i}] with n = len(x).

    Vanishes when len(lam) > len(x). When values repeat, the k-th copy of a
    value contributes the k-th derivative column (confluent alternants); the
    ratio of the confluent determinants is the limit of the bialternant.
    """
    lam = as_partition(lam)
    x = [Fraction(v) for v in x]
    n = len(x)
    if lam.length() > n:
        return Fraction(0)
    if n == 0:
        return Fraction(1)
    parts = lam.padded(n)
    order = []
    seen: dict[Fraction, int] = {}
    for v in x:
        order.append(seen.get(v, 0))
        seen[v] = order[-1] + 1
    num = det([[_derivative_power(x[j], parts[i] - (i + 1) + n, order[j]) for j in range(n)] for i in range(n)])
    den = det([[_derivative_power(x[j], n - (i + 1), order[j]) for j in range(n)] for i in range(n)])
    return num / den


def _derivative_power(v: Fraction, e: int, k: int) -> Fraction:
    """(d/dx)^k x^e at x = v."""
    if k > e:
        return Fraction(0)
    return Fraction(math.perm(e, k)) * v ** (e - k)


def _beta_set(lam: Partition) -> frozenset[int]:
    ell = lam.length()
    return frozenset(p + ell - 1 - i for i, p in enumerate(lam.parts))


def _from_beta(beta: frozenset[int]) -> Partition:
    ordered = sorted(beta, reverse=True)
    ell = len(ordered)
    return Partition(tuple(b - (ell - 1 - i) for i, b in enumerate(ordered)))


@lru_cache(maxsize=None)
def _mn(lam: Partition, delta: tuple[int, ...]) -> int:
    # Murnaghan-Nakayama: strip a rim hook of length delta[0] in every possible way.
    if not delta:
        return 1 if lam.weight() == 0 else 0
    r, rest = delta[0], delta[1:]
    beta = _beta_set(lam)
    total = 0
    for b in beta:
        target = b - r
        if target < 0 or target in beta:
            continue
        height = sum(1 for c in beta if target < c < b)
        total += (-1) ** height * _mn(_from_beta((beta - {b}) | {target}), rest)
    return total


def character(lam: Partition, delta: Partition) -> int:
    """chi_lam evaluated on the class of cycle type ``delta``."""
    lam, delta = as_partition(lam), as_partition(delta)
    if lam.weight() != delta.weight():
        raise ValueError(f"weight mismatch: |{lam}| != |{delta}|")
    return _mn(lam, delta.parts)


def normalized_character(lam: Partition, delta: Partition) -> Fraction:
    """phi_lam(delta) = d! chi_lam(delta) / (zeta_delta dim lam).

    This is the normalization for which s_lam = (dim lam / d!) sum_delta phi_lam(delta) p_delta.
    """
    lam, delta = as_partition(lam), as_partition(delta)
    d = lam.weight()
    return Fraction(math.factorial(d) * character(lam, delta), centralizer_size(delta) * dimension(lam))


def schur_from_characters(lam: Partition) -> SymPoly:
    """Right-hand side of the character map: (dim lam/d!) sum_delta phi_lam(delta) p_delta."""
    lam = as_partition(lam)
    f = dimension_factor(lam)
    terms = {}
    for delta in partitions_of(lam.weight()):
        terms[powersum_exponents(delta)] = f * normalized_character(lam, delta)
    return SymPoly(terms)


def powersum_to_schur(delta: Partition) -> dict[Partition, Fraction]:
    """Coefficients c_lam in p_delta = sum_lam c_lam s_lam."""
    delta = as_partition(delta)
    z = centralizer_size(delta)
    out = {}
    for lam in partitions_of(delta.weight()):
        c = dimension_factor(lam) * z * normalized_character(lam, delta)
        if c:
            out[lam] = c
    return out


@dataclass(frozen=True)
class CharacterTable:
    d: int
    values: Mapping[tuple[Partition, Partition], int]
    normalized: Mapping[tuple[Partition, Partition], Fraction]

    @classmethod
    def build(cls, d: int) -> "CharacterTable":
        parts = partitions_of(d)
        values = {(lam, delta): character(lam, delta) for lam in parts for delta in parts}
        normalized = {(lam, delta): normalized_character(lam, delta) for lam in parts for delta in parts}
        return cls(d, values, normalized)

    def chi(self, lam: Partition, delta: Partition) -> int:
        return self.values[as_partition(lam), as_partition(delta)]

    def phi(self, lam: Partition, delta: Partition) -> Fraction:
        return self.normalized[as_partition(lam), as_partition(delta)]


def orthogonality_first(table: CharacterTable, mu: Partition, delta: Partition) -> Fraction:
    """zeta_delta sum_lam (dim lam/d!)^2 phi_lam(mu) phi_lam(delta); expected delta_{delta,mu}."""
    total = Fraction(0)
    for lam in partitions_of(table.d):
        total += dimension_factor(lam) ** 2 * table.phi(lam, mu) * table.phi(lam, delta)
    return centralizer_size(delta) * total


def orthogonality_second(table: CharacterTable, lam: Partition, mu: Partition) -> Fraction:
    """(dim lam/d!)^2 sum_delta zeta_delta phi_lam(delta) phi_mu(delta); expected delta_{lam,mu}."""
    total = Fraction(0)
    for delta in partitions_of(table.d):
        total += centralizer_size(delta) * table.phi(lam, delta) * table.phi(mu, delta)
    return dimension_factor(lam) ** 2 * total
