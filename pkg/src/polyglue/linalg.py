"""Exact rational matrices and the few dense linear-algebra helpers we need.

Heavy lifting (determinants, solves, products of large blocks) goes through
python-flint's ``fmpq_mat``; :class:`RationalMatrix` is the small immutable
value type used for the constant matrices A, B_i, C_i, C and a.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Sequence

import flint


def to_fraction(x) -> Fraction:
    if isinstance(x, flint.fmpq):
        return Fraction(int(x.p), int(x.q))
    if isinstance(x, flint.fmpz):
        return Fraction(int(x))
    return Fraction(x)


def to_fmpq_mat(rows: Sequence[Sequence]) -> flint.fmpq_mat:
    n = len(rows)
    m = len(rows[0]) if n else 0
    flat = []
    for row in rows:
        for v in row:
            v = Fraction(v)
            flat.append(flint.fmpq(v.numerator, v.denominator))
    return flint.fmpq_mat(n, m, flat)


def det(rows: Sequence[Sequence]) -> Fraction:
    if not rows:
        return Fraction(1)
    return to_fraction(to_fmpq_mat(rows).det())


@dataclass(frozen=True)
class RationalMatrix:
    entries: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(Fraction(v) for v in row) for row in self.entries)
        if any(len(r) != len(rows) for r in rows):
            raise ValueError("matrix must be square")
        object.__setattr__(self, "entries", rows)

    @property
    def size(self) -> int:
        return len(self.entries)

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls(tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)))

    @classmethod
    def zero(cls, n: int) -> "RationalMatrix":
        return cls(tuple((Fraction(0),) * n for _ in range(n)))

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.entries[i][j]

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.size != other.size:
            raise ValueError("size mismatch")
        n = self.size
        cols = list(zip(*other.entries))
        return RationalMatrix(
            tuple(tuple(sum((a * b for a, b in zip(row, col)), Fraction(0)) for col in cols) for row in self.entries)
        )

    def __add__(self, other: "RationalMatrix") -> "RationalMatrix":
        return RationalMatrix(
            tuple(tuple(a + b for a, b in zip(r1, r2)) for r1, r2 in zip(self.entries, other.entries))
        )

    def scale(self, c) -> "RationalMatrix":
        c = Fraction(c)
        return RationalMatrix(tuple(tuple(v * c for v in row) for row in self.entries))

    def trace(self) -> Fraction:
        return sum((self.entries[i][i] for i in range(self.size)), Fraction(0))

    def is_identity(self) -> bool:
        return self == RationalMatrix.identity(self.size)

    def denominator_lcm(self) -> int:
        return math.lcm(1, *(v.denominator for row in self.entries for v in row))

    def integer_entries(self) -> tuple[int, list[list[int]]]:
        """Return (L, M) with self = M / L and M integral."""
        L = self.denominator_lcm()
        return L, [[int(v * L) for v in row] for row in self.entries]

    def to_text(self) -> str:
        lines = [str(self.size)]
        lines += [" ".join(str(v) for v in row) for row in self.entries]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "RationalMatrix":
        """Parse the plain-text format: first line N, then N lines of N entries (``p/q`` or integers)."""
        lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
        if not lines:
            raise ValueError("empty matrix file")
        n = int(lines[0])
        rows = [ln.split() for ln in lines[1:]]
        if len(rows) != n or any(len(r) != n for r in rows):
            raise ValueError(f"expected {n} rows of {n} entries")
        return cls(tuple(tuple(Fraction(v) for v in r) for r in rows))

    @classmethod
    def load(cls, path: str | Path) -> "RationalMatrix":
        return cls.from_text(Path(path).read_text())

    def __str__(self) -> str:
        return "[" + "; ".join(" ".join(str(v) for v in row) for row in self.entries) + "]"


def random_rational(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-9, 9), rng.randint(1, 9))


def random_rational_matrix(n: int, rng: random.Random | int) -> RationalMatrix:
    """Entries p/q with p in [-9, 9] and q in [1, 9]."""
    if not isinstance(rng, random.Random):
        rng = random.Random(rng)
    return RationalMatrix(tuple(tuple(random_rational(rng) for _ in range(n)) for _ in range(n)))


def solve_consistent(columns: Sequence[dict], target: dict) -> list[Fraction] | None:
    """Find coefficients c with sum_i c_i columns[i] == target exactly.

    Vectors are sparse dicts over arbitrary hashable coordinates. Returns None
    when the system has no solution; raises if the columns are dependent.
    """
    coords = sorted({k for col in columns for k in col} | set(target), key=repr)
    rows = [[col.get(k, 0) for col in columns] + [target.get(k, 0)] for k in coords]
    n = len(columns)
    aug = to_fmpq_mat(rows) if rows else flint.fmpq_mat(0, n + 1)
    rank_cols = to_fmpq_mat([r[:n] for r in rows]).rank() if rows else 0
    if rank_cols < n:
        raise ArithmeticError("columns are linearly dependent")
    if aug.rank() > n:
        return None
    rref, rank = aug.rref()
    sol = [Fraction(0)] * n
    for i in range(rank):
        row = [to_fraction(rref[i, j]) for j in range(n + 1)]
        pivot = next(j for j in range(n) if row[j] != 0)
        sol[pivot] = row[n] / row[pivot]
    return sol
