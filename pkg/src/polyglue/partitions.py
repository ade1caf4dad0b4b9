"""Integer partitions, permutations of {1..k} and conjugacy-class bookkeeping."""
from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator


@dataclass(frozen=True, order=True)
class Partition:
    """Weakly decreasing tuple of positive parts. Trailing zeros are stripped."""

    parts: tuple[int, ...] = ()

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        while parts and parts[-1] == 0:
            parts = parts[:-1]
        if any(p <= 0 for p in parts):
            raise ValueError(f"partition parts must be positive: {self.parts!r}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f"partition parts must be weakly decreasing: {self.parts!r}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def parse(cls, text: str) -> "Partition":
        """Parse comma-joined parts, e.g. ``"3,1,1"``; empty string is the empty partition."""
        text = text.strip().strip("()")
        if not text:
            return cls(())
        return cls(tuple(int(t) for t in text.split(",") if t.strip()))

    def weight(self) -> int:
        return sum(self.parts)

    def length(self) -> int:
        return len(self.parts)

    def padded(self, n: int) -> tuple[int, ...]:
        if n < len(self.parts):
            raise ValueError(f"cannot pad {self} to {n} parts")
        return self.parts + (0,) * (n - len(self.parts))

    def multiplicities(self) -> dict[int, int]:
        return dict(Counter(self.parts))

    def conjugate(self) -> "Partition":
        if not self.parts:
            return self
        return Partition(tuple(sum(1 for p in self.parts if p > j) for j in range(self.parts[0])))

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __getitem__(self, i):
        return self.parts[i]

    def __str__(self) -> str:
        return ",".join(str(p) for p in self.parts)


def as_partition(obj) -> Partition:
    if isinstance(obj, Partition):
        return obj
    if isinstance(obj, str):
        return Partition.parse(obj)
    if isinstance(obj, int):
        return Partition((obj,))
    return Partition(tuple(sorted(obj, reverse=True)))


@lru_cache(maxsize=None)
def _partitions(d: int, largest: int) -> tuple[tuple[int, ...], ...]:
    if d == 0:
        return ((),)
    out = []
    for first in range(min(d, largest), 0, -1):
        for rest in _partitions(d - first, first):
            out.append((first,) + rest)
    return tuple(out)


def partitions_of(d: int) -> list[Partition]:
    """All partitions of ``d`` in reverse-lexicographic order, e.g. (3), (2,1), (1,1,1)."""
    if d < 0:
        raise ValueError("d must be nonnegative")
    return [Partition(p) for p in _partitions(d, d)]


def centralizer_size(delta: Partition) -> int:
    """zeta_Delta = prod_i i^{m_i} m_i!; d!/zeta is the size of the conjugacy class."""
    delta = as_partition(delta)
    z = 1
    for part, mult in delta.multiplicities().items():
        z *= part**mult * math.factorial(mult)
    return z


def class_size(delta: Partition) -> int:
    delta = as_partition(delta)
    return math.factorial(delta.weight()) // centralizer_size(delta)


def dimension_factor(lam: Partition, n: int | None = None) -> Fraction:
    """dim(lam)/d! from the product formula over shifted parts lam_i - i + n.

    Any ``n >= len(lam)`` gives the same value; the default is ``len(lam)``.
    """
    lam = as_partition(lam)
    if n is None:
        n = lam.length()
    parts = lam.padded(n)
    num = 1
    for i in range(n):
        for j in range(i + 1, n):
            num *= parts[i] - parts[j] - i + j
    den = 1
    for i in range(n):
        den *= math.factorial(parts[i] - (i + 1) + n)
    return Fraction(num, den)


def dimension(lam: Partition) -> int:
    lam = as_partition(lam)
    value = dimension_factor(lam) * math.factorial(lam.weight())
    if value.denominator != 1:
        raise ArithmeticError(f"non-integral dimension for {lam}: {value}")
    return value.numerator


@dataclass(frozen=True)
class Permutation:
    """Bijection of {1..k}, stored as the tuple of images (p(1), ..., p(k))."""

    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(i) for i in self.images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ValueError(f"not a permutation of 1..{len(images)}: {self.images!r}")
        object.__setattr__(self, "images", images)

    @classmethod
    def identity(cls, k: int) -> "Permutation":
        return cls(tuple(range(1, k + 1)))

    @classmethod
    def from_cycles(cls, k: int, cycles: Iterable[Iterable[int]]) -> "Permutation":
        images = list(range(1, k + 1))
        for cyc in cycles:
            cyc = list(cyc)
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                images[a - 1] = b
        return cls(tuple(images))

    @property
    def size(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        # (p * q)(i) = p(q(i)): q acts first.
        if other.size != self.size:
            raise ValueError("size mismatch")
        return Permutation(tuple(self.images[j - 1] for j in other.images))

    def inverse(self) -> "Permutation":
        inv = [0] * self.size
        for i, j in enumerate(self.images, start=1):
            inv[j - 1] = i
        return Permutation(tuple(inv))

    def cycles(self) -> list[tuple[int, ...]]:
        seen = set()
        out = []
        for start in range(1, self.size + 1):
            if start in seen:
                continue
            cyc = []
            i = start
            while i not in seen:
                seen.add(i)
                cyc.append(i)
                i = self(i)
            out.append(tuple(cyc))
        return out

    def __str__(self) -> str:
        return "".join("(" + " ".join(map(str, c)) + ")" for c in self.cycles())


def cycle_type(p: Permutation) -> Partition:
    return Partition(tuple(sorted((len(c) for c in p.cycles()), reverse=True)))


def all_permutations(k: int) -> Iterator[Permutation]:
    for images in itertools.permutations(range(1, k + 1)):
        yield Permutation(images)
