"""Action of normal-ordered trace-word operators on Fock states.

Binding an ANNIH letter to a factor x_{rc} of a monomial turns it into the
unit matrix E_{cr}. With the ANNIH letters of a word at cyclic positions
t = 1..K, and P_t the (polynomial) matrix product of the letters between
ANNIH t and ANNIH t+1, the word evaluates to prod_t P_t[r_t, c_{t+1}]. Every
such entry is cached, so the per-monomial work is the enumeration of
derivative bindings plus sparse accumulation.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

import flint

from ..linalg import RationalMatrix, to_fraction
from .state import (
    FockState,
    Monomial,
    constant_matrix,
    monomial_basis,
    polymatrix_mul,
    polymatrix_trace,
    variable_matrix,
)
from .words import TraceWordOp, Word


def _letter_matrix(letter, n: int, const_cache: dict):
    if letter.is_create:
        return variable_matrix(n)
    if letter.matrix is None:
        raise ValueError(f"constant {letter.name!r} is symbolic; bind a matrix before applying")
    if letter.matrix.size != n:
        raise ValueError(f"constant {letter.name!r} has size {letter.matrix.size}, state has N={n}")
    if letter.name not in const_cache:
        const_cache[letter.name] = constant_matrix(n, letter.matrix)
    return const_cache[letter.name]


def _segment_product(letters: Word, n: int, const_cache: dict):
    """Polynomial matrix of a letter run without ANNIH, scaled to integers: (L, entries)."""
    mats = []
    for letter in letters:
        if letter.is_const and letter.matrix is not None and letter.matrix.is_identity():
            continue
        mats.append(_letter_matrix(letter, n, const_cache))
    if not mats:
        entries = [[{(0,) * (n * n): Fraction(int(i == j))} if i == j else {} for j in range(n)] for i in range(n)]
    else:
        prod = mats[0]
        for m in mats[1:]:
            prod = polymatrix_mul(prod, m)
        entries = [[dict(prod[i][j].terms) for j in range(n)] for i in range(n)]
    L = math.lcm(1, *(c.denominator for row in entries for e in row for c in e.values()))
    int_entries = [[tuple((mono, int(c * L)) for mono, c in e.items()) for e in row] for row in entries]
    return L, int_entries


@dataclass
class _Term:
    scale: Fraction
    closed: FockState | None
    segs: list[int]  # segment id following each ANNIH letter
    nexts: list[int]  # index of the next ANNIH letter in the same word


@dataclass
class CompiledOp:
    n: int
    terms: list[_Term] = field(default_factory=list)
    segments: list = field(default_factory=list)
    expand_cache: dict = field(default_factory=dict)
    mpoly_cache: dict = field(default_factory=dict)

    @classmethod
    def build(cls, op: TraceWordOp, n: int) -> "CompiledOp":
        if not op.normal_ordered:
            raise ValueError("apply requires a normal-ordered operator")
        dim = op.dimension()
        if dim is not None and dim != n:
            raise ValueError(f"dimension mismatch: operator has N={dim}, state has N={n}")
        self = cls(n)
        const_cache: dict = {}
        seg_ids: dict = {}
        for product, coeff in op.terms.items():
            scale = Fraction(coeff)
            closed = None
            segs: list[int] = []
            nexts: list[int] = []
            for word in product:
                positions = [i for i, l in enumerate(word) if l.is_annih]
                if not positions:
                    if not word:
                        scale *= n
                        continue
                    mats = [_letter_matrix(l, n, const_cache) for l in word]
                    prod = mats[0]
                    for m in mats[1:]:
                        prod = polymatrix_mul(prod, m)
                    value = polymatrix_trace(prod)
                    closed = value if closed is None else closed * value
                    continue
                base = len(segs)
                k = len(positions)
                for t, p in enumerate(positions):
                    q = positions[(t + 1) % k]
                    run = word[p + 1 : q] if q > p else word[p + 1 :] + word[:q]
                    if run not in seg_ids:
                        seg_ids[run] = len(self.segments)
                        self.segments.append(_segment_product(run, n, const_cache))
                    sid = seg_ids[run]
                    scale /= self.segments[sid][0]
                    segs.append(sid)
                    nexts.append(base + (t + 1) % k)
            self.terms.append(_Term(scale, closed, segs, nexts))
        return self

    def expand(self, ykey: tuple) -> dict[Monomial, int]:
        """Integer polynomial prod over (seg, r, c) in ykey of P_seg[r, c]."""
        cached = self.expand_cache.get(ykey)
        if cached is not None:
            return cached
        if not ykey:
            result = {(0,) * (self.n * self.n): 1}
        else:
            head = self.expand(ykey[:-1])
            seg, r, c = ykey[-1]
            entry = self.segments[seg][1][r][c]
            result = {}
            for m1, v1 in head.items():
                for m2, v2 in entry:
                    key = tuple(a + b for a, b in zip(m1, m2))
                    result[key] = result.get(key, 0) + v1 * v2
            result = {k: v for k, v in result.items() if v}
        self.expand_cache[ykey] = result
        return result


    def expand_mpoly(self, ykey: tuple):
        """``expand`` as a flint integer polynomial, for large states."""
        cached = self.mpoly_cache.get(ykey)
        if cached is None:
            ctx = flint.fmpz_mpoly_ctx.get(("x", self.n * self.n), "lex")
            if not ykey:
                cached = ctx.from_dict({(0,) * (self.n * self.n): 1})
            else:
                seg, r, c = ykey[-1]
                cached = self.expand_mpoly(ykey[:-1]) * ctx.from_dict(dict(self.segments[seg][1][r][c]))
            self.mpoly_cache[ykey] = cached
        return cached


def _bindings(mono: Monomial, k: int) -> Iterator[tuple[int, tuple[int, ...], Monomial]]:
    """Ordered choices of k factors of ``mono``: (multiplicity weight, variables, remainder)."""
    exps = list(mono)
    support = [v for v, e in enumerate(mono) if e]
    chosen: list[int] = []

    def rec(depth: int, weight: int):
        if depth == k:
            yield weight, tuple(chosen), tuple(exps)
            return
        for v in support:
            e = exps[v]
            if e:
                exps[v] = e - 1
                chosen.append(v)
                yield from rec(depth + 1, weight * e)
                chosen.pop()
                exps[v] = e

    yield from rec(0, 1)


def _apply_term_int(comp: CompiledOp, term: _Term, items) -> dict[Monomial, int]:
    """Integer part of one term acting on integer-coefficient monomials ``items``."""
    n = comp.n
    k = len(term.segs)
    segs, nexts = term.segs, term.nexts
    keys: dict = {}
    for mono, coef in items:
        if sum(mono) < k:
            continue
        for weight, chosen, rem in _bindings(mono, k):
            ykey = tuple(
                sorted((segs[t], chosen[t] // n, chosen[nexts[t]] % n) for t in range(k))
            )
            key = (rem, ykey)
            keys[key] = keys.get(key, 0) + coef * weight
    out: dict[Monomial, int] = {}
    for (rem, ykey), cnt in keys.items():
        if not cnt:
            continue
        for m, v in comp.expand(ykey).items():
            mono = tuple(a + b for a, b in zip(rem, m))
            out[mono] = out.get(mono, 0) + cnt * v
    return out


def _apply_term_mpoly(comp: CompiledOp, term: _Term, items):
    n = comp.n
    k = len(term.segs)
    segs, nexts = term.segs, term.nexts
    ctx = flint.fmpz_mpoly_ctx.get(("x", n * n), "lex")
    groups: dict = {}
    for mono, coef in items:
        if sum(mono) < k:
            continue
        for weight, chosen, rem in _bindings(mono, k):
            ykey = tuple(sorted((segs[t], chosen[t] // n, chosen[nexts[t]] % n) for t in range(k)))
            bucket = groups.setdefault(ykey, {})
            bucket[rem] = bucket.get(rem, 0) + coef * weight
    out = ctx.from_dict({})
    for ykey, rems in groups.items():
        rems = {m: c for m, c in rems.items() if c}
        if rems:
            out += ctx.from_dict(rems) * comp.expand_mpoly(ykey)
    return out


def _integer_state(state: FockState) -> tuple[int, list[tuple[Monomial, int]]]:
    L = math.lcm(1, *(c.denominator for c in state.terms.values()))
    return L, [(m, int(c * L)) for m, c in state.terms.items()]


def apply_compiled(comp: CompiledOp, state: FockState) -> FockState:
    if state.n != comp.n:
        raise ValueError(f"dimension mismatch: operator N={comp.n}, state N={state.n}")
    L, items = _integer_state(state)
    total = FockState.zero(comp.n)
    for term in comp.terms:
        raw = _apply_term_mpoly(comp, term, items)
        factor = term.scale / L
        part = FockState(comp.n, {tuple(int(e) for e in m): int(v) * factor for m, v in raw.to_dict().items()})
        if term.closed is not None:
            part = part * term.closed
        total = total + part
    return total


def apply(op: TraceWordOp, state: FockState) -> FockState:
    """Act with a normal-ordered operator: ANNIH letters first, then constants and CREATE letters."""
    return apply_compiled(CompiledOp.build(op, state.n), state)


@dataclass
class OperatorMatrix:
    """Sparse matrix of an operator on the degree-d component, in graded-lex monomial order."""

    n: int
    degree: int
    basis: list[Monomial]
    entries: dict[tuple[int, int], Fraction]

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def is_zero(self) -> bool:
        return not self.entries

    def nonzero_count(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        return self.entries.get(ij, Fraction(0))

    def to_dense(self) -> list[list[Fraction]]:
        dense = [[Fraction(0)] * self.dimension for _ in range(self.dimension)]
        for (i, j), v in self.entries.items():
            dense[i][j] = v
        return dense

    def column_state(self, j: int) -> FockState:
        return FockState(self.n, {self.basis[i]: v for (i, jj), v in self.entries.items() if jj == j})

    def first_nonzero(self) -> dict | None:
        if not self.entries:
            return None
        (i, j) = min(self.entries)
        return {
            "row": i,
            "col": j,
            "row_monomial": list(self.basis[i]),
            "col_monomial": list(self.basis[j]),
            "value": str(self.entries[i, j]),
        }


def operator_matrix(op: TraceWordOp, d: int, n: int) -> OperatorMatrix:
    """Matrix of ``op`` on the degree-d component; raises if op leaves that component."""
    comp = CompiledOp.build(op, n)
    basis = monomial_basis(n, d)
    index = {m: i for i, m in enumerate(basis)}
    entries: dict[tuple[int, int], Fraction] = {}
    for j, mono in enumerate(basis):
        col: dict[Monomial, Fraction] = {}
        for term in comp.terms:
            raw = _apply_term_int(comp, term, [(mono, 1)])
            if term.closed is not None:
                part = FockState(n, {m: term.scale * v for m, v in raw.items() if v}) * term.closed
                for m, v in part.terms.items():
                    col[m] = col.get(m, 0) + v
            else:
                for m, v in raw.items():
                    if v:
                        col[m] = col.get(m, 0) + term.scale * v
        for m, v in col.items():
            if not v:
                continue
            if m not in index:
                raise ValueError(f"operator does not preserve degree {d}: produced monomial of degree {sum(m)}")
            entries[index[m], j] = v
    return OperatorMatrix(n, d, basis, entries)


def _components(size: int, *mats: OperatorMatrix) -> list[list[int]]:
    parent = list(range(size))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for m in mats:
        for i, j in m.entries:
            ri, rj = find(i), find(j)
            if ri != rj:
                parent[ri] = rj
    groups: dict[int, list[int]] = {}
    for i in range(size):
        groups.setdefault(find(i), []).append(i)
    return list(groups.values())


def _block(m: OperatorMatrix, idx: list[int]) -> flint.fmpq_mat:
    pos = {g: a for a, g in enumerate(idx)}
    blk = flint.fmpq_mat(len(idx), len(idx))
    for (i, j), v in m.entries.items():
        if i in pos and j in pos:
            blk[pos[i], pos[j]] = flint.fmpq(v.numerator, v.denominator)
    return blk


def matrix_commutator(m1: OperatorMatrix, m2: OperatorMatrix) -> OperatorMatrix:
    """m1 m2 - m2 m1, computed block by block on the common invariant subspaces."""
    if m1.basis != m2.basis:
        raise ValueError("operator matrices live on different bases")
    entries: dict[tuple[int, int], Fraction] = {}
    for idx in _components(m1.dimension, m1, m2):
        if len(idx) == 1:
            continue  # 1x1 blocks always commute
        b1, b2 = _block(m1, idx), _block(m2, idx)
        c = b1 * b2 - b2 * b1
        for a in range(len(idx)):
            for b in range(len(idx)):
                v = c[a, b]
                if v != 0:
                    entries[idx[a], idx[b]] = to_fraction(v)
    return OperatorMatrix(m1.n, m1.degree, m1.basis, entries)


def matrix_product(m1: OperatorMatrix, m2: OperatorMatrix) -> OperatorMatrix:
    entries: dict[tuple[int, int], Fraction] = {}
    for idx in _components(m1.dimension, m1, m2):
        c = _block(m1, idx) * _block(m2, idx)
        for a in range(len(idx)):
            for b in range(len(idx)):
                v = c[a, b]
                if v != 0:
                    entries[idx[a], idx[b]] = to_fraction(v)
    return OperatorMatrix(m1.n, m1.degree, m1.basis, entries)


def commutator_matrix(op1: TraceWordOp, op2: TraceWordOp, d: int, n: int) -> OperatorMatrix:
    """Matrix of op1 . op2 - op2 . op1 on the degree-d component."""
    return matrix_commutator(operator_matrix(op1, d, n), operator_matrix(op2, d, n))
