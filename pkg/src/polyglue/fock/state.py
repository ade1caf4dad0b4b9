"""Fock space over N^2 bosonic oscillators, realized as polynomials.

The creation operator phi_{ij} is multiplication by the variable x_{ij}; the
vacuum is the constant polynomial 1. Monomials are exponent tuples of length
N*N, with x_{ij} (0-based i, j) at position i*N + j.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Mapping

import flint

from ..linalg import RationalMatrix, to_fraction

Monomial = tuple[int, ...]


@lru_cache(maxsize=None)
def _mpoly_ctx(n: int):
    return flint.fmpq_mpoly_ctx.get(("x", n * n), "lex")


def to_mpoly(state: "FockState"):
    ctx = _mpoly_ctx(state.n)
    return ctx.from_dict({m: flint.fmpq(c.numerator, c.denominator) for m, c in state.terms.items()})


def from_mpoly(n: int, poly) -> "FockState":
    return FockState(n, {tuple(int(e) for e in m): to_fraction(c) for m, c in poly.to_dict().items()})


def var_index(n: int, i: int, j: int) -> int:
    return i * n + j


def monomial_add(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def monomial_basis(n: int, d: int) -> list[Monomial]:
    """All degree-d monomials in N^2 variables, graded-lexicographic (x_11 largest first)."""
    nvars = n * n
    out = []

    def rec(pos: int, left: int, acc: list[int]):
        if pos == nvars - 1:
            out.append(tuple(acc + [left]))
            return
        for e in range(left, -1, -1):
            rec(pos + 1, left - e, acc + [e])

    if nvars == 0:
        return [()] if d == 0 else []
    rec(0, d, [])
    return out


@dataclass(frozen=True, eq=False)
class FockState:
    n: int
    terms: Mapping[Monomial, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        size = self.n * self.n
        clean = {}
        for mono, c in self.terms.items():
            if len(mono) != size:
                raise ValueError(f"monomial {mono} has wrong length for N={self.n}")
            if c:
                clean[mono] = Fraction(c)
        object.__setattr__(self, "terms", clean)

    @classmethod
    def vacuum(cls, n: int) -> "FockState":
        return cls(n, {(0,) * (n * n): Fraction(1)})

    @classmethod
    def zero(cls, n: int) -> "FockState":
        return cls(n, {})

    @classmethod
    def variable(cls, n: int, i: int, j: int) -> "FockState":
        mono = [0] * (n * n)
        mono[var_index(n, i, j)] = 1
        return cls(n, {tuple(mono): Fraction(1)})

    @classmethod
    def monomial(cls, n: int, mono: Monomial, coeff=1) -> "FockState":
        return cls(n, {tuple(mono): Fraction(coeff)})

    def _check(self, other: "FockState"):
        if not isinstance(other, FockState):
            raise TypeError(f"expected FockState, got {type(other).__name__}")
        if other.n != self.n:
            raise ValueError(f"dimension mismatch: N={self.n} vs N={other.n}")

    def __add__(self, other: "FockState") -> "FockState":
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return FockState(self.n, out)

    def __neg__(self) -> "FockState":
        return FockState(self.n, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "FockState") -> "FockState":
        return self + (-other)

    def __mul__(self, other) -> "FockState":
        if not isinstance(other, FockState):
            c = Fraction(other)
            return FockState(self.n, {m: v * c for m, v in self.terms.items()})
        self._check(other)
        if len(self.terms) * len(other.terms) > 64:
            return from_mpoly(self.n, to_mpoly(self) * to_mpoly(other))
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                key = monomial_add(m1, m2)
                out[key] = out.get(key, 0) + c1 * c2
        return FockState(self.n, out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "FockState":
        out = FockState.vacuum(self.n)
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, FockState):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __iter__(self) -> Iterator[tuple[Monomial, Fraction]]:
        return iter(self.terms.items())

    def __len__(self) -> int:
        return len(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def degrees(self) -> set[int]:
        return {sum(m) for m in self.terms}

    def degree(self) -> int | None:
        """Common degree of all terms; None when the state mixes degrees (or is zero)."""
        degs = self.degrees()
        return degs.pop() if len(degs) == 1 else None

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def ratio_to(self, other: "FockState") -> Fraction | None:
        """Scalar c with self == c * other, or None if not proportional."""
        self._check(other)
        if other.is_zero():
            return Fraction(0) if self.is_zero() else None
        mono, c0 = next(iter(other.terms.items()))
        c = self.terms.get(mono, Fraction(0)) / c0
        return c if self == other * c else None

    def __repr__(self) -> str:
        if not self.terms:
            return f"FockState(N={self.n}, 0)"
        pieces = []
        for mono, c in sorted(self.terms.items(), reverse=True):
            vars_ = []
            for idx, e in enumerate(mono):
                if e:
                    i, j = divmod(idx, self.n)
                    vars_.append(f"x{i + 1}{j + 1}" + (f"^{e}" if e > 1 else ""))
            pieces.append(f"{c}" + ("*" + "*".join(vars_) if vars_ else ""))
        return f"FockState(N={self.n}, " + " + ".join(pieces) + ")"


PolyMatrix = list[list[FockState]]


def variable_matrix(n: int) -> PolyMatrix:
    return [[FockState.variable(n, i, j) for j in range(n)] for i in range(n)]


def constant_matrix(n: int, m: RationalMatrix) -> PolyMatrix:
    if m.size != n:
        raise ValueError(f"matrix size {m.size} does not match N={n}")
    vac = FockState.vacuum(n)
    return [[vac * m[i, j] for j in range(n)] for i in range(n)]


def polymatrix_mul(a: PolyMatrix, b: PolyMatrix) -> PolyMatrix:
    n = len(a)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = FockState.zero(a[0][0].n)
            for k in range(n):
                if a[i][k].terms and b[k][j].terms:
                    acc = acc + a[i][k] * b[k][j]
            row.append(acc)
        out.append(row)
    return out


def polymatrix_trace(a: PolyMatrix) -> FockState:
    acc = FockState.zero(a[0][0].n)
    for i in range(len(a)):
        acc = acc + a[i][i]
    return acc


def trace_powers(n: int, c: RationalMatrix, mmax: int) -> list[FockState]:
    """[tr((X C)^m) for m = 1..mmax] as Fock states."""
    return [from_mpoly(n, t) for t in trace_powers_mpoly(n, c, mmax)]


def trace_powers_mpoly(n: int, c: RationalMatrix, mmax: int) -> list:
    if c.size != n:
        raise ValueError(f"matrix size {c.size} does not match N={n}")
    ctx = _mpoly_ctx(n)
    gens = ctx.gens()
    cq = [[flint.fmpq(c[i, j].numerator, c[i, j].denominator) for j in range(n)] for i in range(n)]
    xc = [[sum((gens[var_index(n, i, k)] * cq[k][j] for k in range(n)), ctx.from_dict({})) for j in range(n)]
          for i in range(n)]
    out = []
    power = xc
    for m in range(1, mmax + 1):
        if m > 1:
            power = [[sum((power[i][k] * xc[k][j] for k in range(n)), ctx.from_dict({})) for j in range(n)]
                     for i in range(n)]
        out.append(sum((power[i][i] for i in range(n)), ctx.from_dict({})))
    return out


def powersum_state(mu, c: RationalMatrix) -> FockState:
    """prod_i tr((X C)^{mu_i}) |0>."""
    n = c.size
    parts = tuple(mu)
    if not parts:
        return FockState.vacuum(n)
    traces = trace_powers_mpoly(n, c, max(parts))
    out = _mpoly_ctx(n).from_dict({(0,) * (n * n): 1})
    for p in parts:
        out = out * traces[p - 1]
    return from_mpoly(n, out)


def monomials_of_degree(n: int, d: int) -> Iterator[Monomial]:
    # Unordered multisets of variable indices, converted to exponent tuples.
    for combo in itertools.combinations_with_replacement(range(n * n), d):
        mono = [0] * (n * n)
        for v in combo:
            mono[v] += 1
        yield tuple(mono)
