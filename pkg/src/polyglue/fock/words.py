"""Normal-ordered sums of products of cyclic trace-words.

A word is a cyclic sequence over three letter kinds:

* ``ANNIH``  -- the matrix phi^dagger, whose (i, j) entry differentiates by x_{ji};
* ``CREATE`` -- the matrix phi, whose (i, j) entry multiplies by x_{ij};
* ``Letter.const(name, M)`` -- a constant matrix.

Matrix products follow (XY)_{ij} = sum_k X_{ik} Y_{kj}. The trace of a word is
read left to right. In a normal-ordered product every ANNIH acts before every
CREATE, regardless of where the letters sit in the words.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from ..linalg import RationalMatrix
from ..partitions import Partition, as_partition


@dataclass(frozen=True, order=True)
class Letter:
    rank: int
    name: str
    matrix: RationalMatrix | None = field(default=None, compare=False, hash=False, repr=False)

    @classmethod
    def const(cls, name: str, matrix: RationalMatrix | None = None) -> "Letter":
        if name in ("D", "X"):
            raise ValueError(f"constant name {name!r} is reserved")
        return cls(2, name, matrix)

    @property
    def is_annih(self) -> bool:
        return self.rank == 0

    @property
    def is_create(self) -> bool:
        return self.rank == 1

    @property
    def is_const(self) -> bool:
        return self.rank == 2

    def __str__(self) -> str:
        return self.name


ANNIH = Letter(0, "D")
CREATE = Letter(1, "X")

Word = tuple[Letter, ...]
Product = tuple[Word, ...]


def canonical_word(word: Sequence[Letter]) -> Word:
    """Lexicographically minimal rotation."""
    word = tuple(word)
    if not word:
        return word
    return min(word[i:] + word[:i] for i in range(len(word)))


def canonical_product(words: Iterable[Sequence[Letter]]) -> Product:
    return tuple(sorted(canonical_word(w) for w in words))


def word_text(word: Word) -> str:
    return "tr(" + " ".join(str(l) for l in word) + ")"


def product_text(product: Product) -> str:
    return " ".join(word_text(w) for w in product) if product else "1"


class TraceWordOp:
    """Formal rational combination of canonical word products."""

    __slots__ = ("terms", "normal_ordered", "constants")

    def __init__(self, terms: Mapping[Product, Fraction] | None = None, normal_ordered: bool = True):
        clean: dict[Product, Fraction] = {}
        constants: dict[str, RationalMatrix | None] = {}
        for prod, c in (terms or {}).items():
            c = Fraction(c)
            if not c:
                continue
            key = canonical_product(prod)
            for word in key:
                for letter in word:
                    if letter.is_const:
                        _register(constants, letter)
            clean[key] = clean.get(key, Fraction(0)) + c
        self.terms = {k: v for k, v in clean.items() if v}
        self.normal_ordered = normal_ordered
        self.constants = constants

    @classmethod
    def single(cls, words: Iterable[Sequence[Letter]], coeff=1) -> "TraceWordOp":
        return cls({tuple(tuple(w) for w in words): Fraction(coeff)})

    def __add__(self, other: "TraceWordOp") -> "TraceWordOp":
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return TraceWordOp(out, self.normal_ordered and other.normal_ordered)

    def __neg__(self) -> "TraceWordOp":
        return TraceWordOp({k: -v for k, v in self.terms.items()}, self.normal_ordered)

    def __sub__(self, other: "TraceWordOp") -> "TraceWordOp":
        return self + (-other)

    def __mul__(self, c) -> "TraceWordOp":
        c = Fraction(c)
        return TraceWordOp({k: v * c for k, v in self.terms.items()}, self.normal_ordered)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, TraceWordOp):
            return NotImplemented
        return self.terms == other.terms

    def __len__(self) -> int:
        return len(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def dimension(self) -> int | None:
        sizes = {m.size for m in self.constants.values() if m is not None}
        if len(sizes) > 1:
            raise ValueError(f"constants of different sizes: {sizes}")
        return sizes.pop() if sizes else None

    def is_symbolic(self) -> bool:
        return any(m is None for m in self.constants.values())

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        lines = []
        for prod, c in sorted(self.terms.items()):
            lines.append(f"{c} * {product_text(prod)}")
        return "\n".join(lines)

    def __repr__(self) -> str:
        return f"TraceWordOp({len(self.terms)} terms)"


def _register(constants: dict, letter: Letter):
    known = constants.get(letter.name, letter.matrix)
    if letter.name in constants and known is not None and letter.matrix is not None and known != letter.matrix:
        raise ValueError(f"constant {letter.name!r} bound to two different matrices")
    constants[letter.name] = known if known is not None else letter.matrix


def _const(matrix: RationalMatrix | None, name: str) -> Letter:
    return Letter.const(name, matrix)


def h_block_word(n: int, a: Letter) -> Word:
    """(D X A)^n, the word of tr((phi^dagger phi A)^n)."""
    return (ANNIH, CREATE, a) * n


def build_H(n: int, A: RationalMatrix | None = None, name: str = "A") -> TraceWordOp:
    """H_n(A) = :tr((phi^dagger phi A)^n):. ``A=None`` leaves the constant symbolic."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return TraceWordOp.single([h_block_word(n, _const(A, name))])


def build_H_mu(mu, A: RationalMatrix | None = None, name: str = "A") -> TraceWordOp:
    """H_mu(A) = :prod_i tr((phi^dagger phi A)^{mu_i}):."""
    mu = as_partition(mu)
    letter = _const(A, name)
    return TraceWordOp.single([h_block_word(p, letter) for p in mu.parts])


def build_h(n: int, a: RationalMatrix | None = None, name: str = "a") -> TraceWordOp:
    """h_n(a) = :tr(a (phi^dagger phi)^n):."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return TraceWordOp.single([(_const(a, name),) + (ANNIH, CREATE) * n])


def build_h_lambda(lam, a: RationalMatrix | None = None, name: str = "a") -> TraceWordOp:
    """h_lambda(a) = :prod_i tr(a (phi^dagger phi)^{lambda_i}):."""
    lam = as_partition(lam)
    letter = _const(a, name)
    return TraceWordOp.single([(letter,) + (ANNIH, CREATE) * p for p in lam.parts])


def number_operator(n_dim: int) -> TraceWordOp:
    return build_H(1, RationalMatrix.identity(n_dim), name="I")
