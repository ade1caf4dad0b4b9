"""Schur states, cut-and-join eigenvalues and three-point Hurwitz numbers.

Two normalizations of the three-point numbers appear below.

* The *Fock coefficient* F(lam, mu, nu) is what the operator identity produces:
  H_lam(I) prod_i tr(x^{mu_i}) |0> = sum_nu F(lam, mu, nu) prod_i tr(x^{nu_i}) |0>.
* The *symmetric* number Hur(lam, mu, nu) = sum_rho (dim rho/d!)^2 phi_rho(lam) phi_rho(mu) phi_rho(nu),
  which is invariant under permuting its arguments.

They are related by F = zeta_lam zeta_mu Hur, and F = zeta_lam zeta_mu c^nu_{lam mu} / zeta_nu
in terms of the class-sum structure constants of S_d.
"""
from __future__ import annotations

import itertools
import json
import math
import random
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator

import flint

from .fock.apply import apply
from .fock.state import FockState, _mpoly_ctx, from_mpoly, powersum_state, trace_powers_mpoly
from .fock.words import build_H, build_H_mu
from .linalg import RationalMatrix, random_rational_matrix, solve_consistent
from .partitions import (
    Partition,
    Permutation,
    as_partition,
    centralizer_size,
    cycle_type,
    dimension,
    dimension_factor,
    partitions_of,
)
from .symfun import character, normalized_character, schur_in_powersums

MAX_CLASS_DEGREE = 6


@dataclass(frozen=True)
class SchurState:
    lam: Partition
    C: RationalMatrix
    state: FockState


def _substitute(poly, traces: list, n: int) -> FockState:
    ctx = _mpoly_ctx(n)
    total = ctx.from_dict({})
    for exps, c in poly.terms.items():
        term = ctx.from_dict({(0,) * (n * n): flint.fmpq(c.numerator, c.denominator)})
        for m, e in enumerate(exps, start=1):
            if e:
                term = term * traces[m - 1] ** e
        total = total + term
    return from_mpoly(n, total)


@lru_cache(maxsize=256)
def schur_state(lam, C: RationalMatrix, N: int | None = None) -> SchurState:
    """s_lam(xC)|0>: the power-sum form of s_lam with p_m replaced by tr((xC)^m).

    Vanishes identically when l(lam) > N; this is not special-cased.
    """
    lam = as_partition(lam)
    n = C.size if N is None else N
    if C.size != n:
        raise ValueError(f"matrix size {C.size} does not match N={n}")
    d = lam.weight()
    if d == 0:
        return SchurState(lam, C, FockState.vacuum(n))
    traces = trace_powers_mpoly(n, C, d)
    return SchurState(lam, C, _substitute(schur_in_powersums(lam), traces, n))


def generic_matrix(n: int, seed: int = 0) -> RationalMatrix:
    return random_rational_matrix(n, random.Random(seed))


def eigenvalue_formula(n: int, lam) -> Fraction:
    """d!/(d-n)! chi_lam(n, 1^{d-n}) / dim lam, and 0 for n > d."""
    lam = as_partition(lam)
    d = lam.weight()
    if n > d:
        return Fraction(0)
    cls = Partition((n,) + (1,) * (d - n))
    return Fraction(math.factorial(d) // math.factorial(d - n) * character(lam, cls), dimension(lam))


def eigenvalue_of(n: int, lam, N: int | None = None, C: RationalMatrix | None = None, seed: int = 0) -> Fraction:
    """E_n(lam) read off from H_n(I) s_lam(xC)|0> = E_n(lam) s_lam(xC)|0>.

    Raises ArithmeticError if the image is not an exact multiple of the state.
    """
    lam = as_partition(lam)
    if N is None:
        N = max(lam.length(), 1)
    if N < lam.length():
        raise ValueError("need N >= l(lam) for a nonzero Schur state")
    if C is None:
        C = generic_matrix(N, seed)
    s = schur_state(lam, C, N).state
    image = apply(build_H(n, RationalMatrix.identity(N)), s)
    ratio = image.ratio_to(s)
    if ratio is None:
        raise ArithmeticError(f"H_{n}(I) s_{lam} is not proportional to s_{lam}")
    return ratio


def verify_shift(lam, A: RationalMatrix, C: RationalMatrix) -> bool:
    """H_n(A) s_lam(xC)|0> == E_n(lam) s_lam(xAC)|0> with n = |lam|."""
    lam = as_partition(lam)
    n = lam.weight()
    lhs = apply(build_H(n, A), schur_state(lam, C).state)
    rhs = schur_state(lam, A @ C).state * eigenvalue_formula(n, lam)
    return lhs == rhs


@dataclass(frozen=True)
class MMNReport:
    lam: Partition
    mu: Partition
    factor: Fraction
    passed: bool
    lhs: FockState = field(repr=False)
    rhs: FockState = field(repr=False)


def mmn_factor(lam, mu) -> Fraction:
    lam, mu = as_partition(lam), as_partition(mu)
    return Fraction(math.factorial(mu.weight()) * character(mu, lam), dimension(mu))


def verify_mmn(lam, mu, A: RationalMatrix, C: RationalMatrix, N: int | None = None) -> MMNReport:
    """H_lam(A) s_mu(xC)|0> == (|mu|!/dim mu) chi_mu(lam) s_mu(xAC)|0>, H_lam the multi-trace operator."""
    lam, mu = as_partition(lam), as_partition(mu)
    if lam.weight() != mu.weight():
        raise ValueError(f"weights differ: |{lam}| != |{mu}|")
    n = A.size if N is None else N
    lhs = apply(build_H_mu(lam, A), schur_state(mu, C, n).state)
    factor = mmn_factor(lam, mu)
    rhs = schur_state(mu, A @ C, n).state * factor
    return MMNReport(lam, mu, factor, lhs == rhs, lhs, rhs)


# Class algebra of S_d, by enumeration.


@lru_cache(maxsize=None)
def _perms_by_type(d: int) -> dict[Partition, tuple[Permutation, ...]]:
    out: dict[Partition, list[Permutation]] = {}
    for images in itertools.permutations(range(1, d + 1)):
        p = Permutation(images)
        out.setdefault(cycle_type(p), []).append(p)
    return {k: tuple(v) for k, v in out.items()}


def class_structure_constants(lam, mu) -> dict[Partition, int]:
    """c^nu in C_lam C_mu = sum_nu c^nu C_nu (class sums in the group algebra of S_d)."""
    lam, mu = as_partition(lam), as_partition(mu)
    d = lam.weight()
    if mu.weight() != d:
        raise ValueError("weights differ")
    if d > MAX_CLASS_DEGREE:
        raise ValueError(f"class enumeration limited to d <= {MAX_CLASS_DEGREE}")
    classes = _perms_by_type(d)
    out = {}
    for nu, members in classes.items():
        g = members[0]
        # number of a in C_lam with a^{-1} g in C_mu
        count = sum(1 for a in classes[lam] if cycle_type(a.inverse() * g) == mu)
        if count:
            out[nu] = count
    return dict(sorted(out.items(), reverse=True))


def hurwitz_3pt(lam, mu, nu, normalization: str = "symmetric") -> Fraction:
    """Three-point Hurwitz number by the character sum.

    ``normalization="symmetric"`` gives sum_rho (dim rho/d!)^2 phi_rho(lam) phi_rho(mu) phi_rho(nu);
    ``normalization="fock"`` multiplies by zeta_lam zeta_mu, which is the
    coefficient produced by the Fock-space identity.
    """
    lam, mu, nu = as_partition(lam), as_partition(mu), as_partition(nu)
    d = lam.weight()
    if mu.weight() != d or nu.weight() != d:
        raise ValueError("weights differ")
    total = Fraction(0)
    for rho in partitions_of(d):
        total += (
            dimension_factor(rho) ** 2
            * normalized_character(rho, lam)
            * normalized_character(rho, mu)
            * normalized_character(rho, nu)
        )
    if normalization == "symmetric":
        return total
    if normalization == "fock":
        return centralizer_size(lam) * centralizer_size(mu) * total
    raise ValueError(f"unknown normalization {normalization!r}")


def _state_vector(s: FockState) -> dict:
    return dict(s.terms)


def expand_in_powersums(state: FockState, d: int, C: RationalMatrix) -> dict[Partition, Fraction]:
    """Coefficients of ``state`` in the basis prod_i tr((xC)^{nu_i}), nu in partitions_of(d)."""
    basis = partitions_of(d)
    columns = [_state_vector(powersum_state(nu, C)) for nu in basis]
    sol = solve_consistent(columns, _state_vector(state))
    if sol is None:
        raise ArithmeticError("state is not in the span of the power-sum states")
    return dict(zip(basis, sol))


def extract_hurwitz_from_fock(lam, mu, N: int | None = None) -> dict[Partition, Fraction]:
    """F(lam, mu, .) from H_lam(I) prod tr(x^{mu_i})|0> expanded over prod tr(x^{nu_i})|0>."""
    lam, mu = as_partition(lam), as_partition(mu)
    d = lam.weight()
    if mu.weight() != d:
        raise ValueError("weights differ")
    n = d if N is None else N
    if n < d:
        raise ValueError("power sums tr(x^m), m <= d, are independent only for N >= d")
    eye = RationalMatrix.identity(n)
    image = apply(build_H_mu(lam, eye), powersum_state(mu, eye))
    return expand_in_powersums(image, d, eye)


def extract_hurwitz_generic(lam, mu, A: RationalMatrix, C: RationalMatrix) -> dict[Partition, Fraction]:
    """Same extraction with H_lam(A) acting on prod tr((xC)^{mu_i}), expanded over prod tr((xAC)^{nu_i})."""
    lam, mu = as_partition(lam), as_partition(mu)
    image = apply(build_H_mu(lam, A), powersum_state(mu, C))
    return expand_in_powersums(image, lam.weight(), A @ C)


Triple = tuple[Partition, Partition, Partition]


@dataclass
class HurwitzTable:
    """Fock coefficients F and symmetric numbers Hur = F / (zeta_lam zeta_mu) for all triples of weight d."""

    d: int
    fock: dict[Triple, Fraction]
    entries: dict[Triple, Fraction]

    @classmethod
    def build(cls, d: int, N: int | None = None) -> "HurwitzTable":
        fock: dict[Triple, Fraction] = {}
        entries: dict[Triple, Fraction] = {}
        for lam in partitions_of(d):
            for mu in partitions_of(d):
                coeffs = extract_hurwitz_from_fock(lam, mu, N)
                for nu in partitions_of(d):
                    f = coeffs[nu]
                    fock[lam, mu, nu] = f
                    entries[lam, mu, nu] = f / (centralizer_size(lam) * centralizer_size(mu))
        return cls(d, fock, entries)

    def __len__(self) -> int:
        return len(self.entries)

    def records(self) -> Iterator[dict]:
        for (lam, mu, nu), value in self.entries.items():
            yield {
                "lambda": str(lam),
                "mu": str(mu),
                "nu": str(nu),
                "value": str(value),
                "fock": str(self.fock[lam, mu, nu]),
            }

    def to_jsonl(self) -> str:
        return "".join(json.dumps(r, sort_keys=True) + "\n" for r in self.records())

    def symmetry_violations(self) -> list[Triple]:
        bad = []
        for key, value in self.entries.items():
            for perm in itertools.permutations(key):
                if self.entries[perm] != value:
                    bad.append(key)
                    break
        return bad

    def fock_asymmetric_triples(self) -> list[Triple]:
        return [k for k, v in self.fock.items() if any(self.fock[p] != v for p in itertools.permutations(k))]

    def product(self, x: dict[Partition, Fraction], y: dict[Partition, Fraction]) -> dict[Partition, Fraction]:
        """p_lam * p_mu = sum_nu F(lam, mu, nu) p_nu, extended bilinearly."""
        out: Counter = Counter()
        for lam, a in x.items():
            for mu, b in y.items():
                for nu in partitions_of(self.d):
                    out[nu] += a * b * self.fock[lam, mu, nu]
        return {k: Fraction(v) for k, v in out.items() if v}

    def associativity_defects(self) -> list[Triple]:
        basis = partitions_of(self.d)
        bad = []
        for a, b, c in itertools.product(basis, repeat=3):
            one = {a: Fraction(1)}
            two = {b: Fraction(1)}
            three = {c: Fraction(1)}
            if self.product(self.product(one, two), three) != self.product(one, self.product(two, three)):
                bad.append((a, b, c))
        return bad

    def commutativity_defects(self) -> list[Triple]:
        return [(l, m, n) for (l, m, n), v in self.fock.items() if self.fock[m, l, n] != v]


def consistency_triangle(table: HurwitzTable) -> list[dict]:
    """Entries where extraction, character sum and rescaled class constants disagree."""
    bad = []
    d = table.d
    for lam in partitions_of(d):
        for mu in partitions_of(d):
            classes = class_structure_constants(lam, mu)
            for nu in partitions_of(d):
                f = table.fock[lam, mu, nu]
                char = hurwitz_3pt(lam, mu, nu, normalization="fock")
                zl, zm, zn = centralizer_size(lam), centralizer_size(mu), centralizer_size(nu)
                cls = Fraction(zl * zm * classes.get(nu, 0), zn)
                if not f == char == cls:
                    bad.append({"lambda": str(lam), "mu": str(mu), "nu": str(nu),
                                "fock": str(f), "character": str(char), "class": str(cls)})
    return bad


@dataclass(frozen=True)
class EigenRecord:
    n: int
    lam: Partition
    value: Fraction
    formula: Fraction
    padded_character: Fraction | None  # phi_lam(n, 1^{d-n}), None when n > d

    @property
    def conjecture_holds(self) -> bool | None:
        if self.padded_character is None:
            return None
        return self.value == self.padded_character


def eigenvalue_table(nmax: int = 4, dmax: int = 4, seed: int = 0) -> list[EigenRecord]:
    """E_n(lam) for n <= nmax, 1 <= |lam| <= dmax, with the padded-class character beside it."""
    out = []
    for d in range(1, dmax + 1):
        for lam in partitions_of(d):
            for n in range(1, nmax + 1):
                value = eigenvalue_of(n, lam, seed=seed)
                padded = normalized_character(lam, Partition((n,) + (1,) * (d - n))) if n <= d else None
                out.append(EigenRecord(n, lam, value, eigenvalue_formula(n, lam), padded))
    return out


def schur_states_for(weights: Iterable[int], seed: int = 0) -> Iterator[tuple[Partition, SchurState]]:
    for d in weights:
        for mu in partitions_of(d):
            C = generic_matrix(d, seed)
            yield mu, schur_state(mu, C, d)
