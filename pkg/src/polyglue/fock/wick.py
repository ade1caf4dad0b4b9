"""Wick expansion of products of normal-ordered trace-word operators.

A product of words is flattened to a list of letters with a successor map
``succ`` (the cyclic order inside each trace). Contracting an ANNIH letter
``a`` with a CREATE letter ``b`` identifies in(a) = out(b) and out(a) = in(b);
on successors this is succ' = succ o (a b), after which ``a`` and ``b`` are
identity letters and are skipped when reading off the new cycles. A cycle made
only of identity letters is an empty word, i.e. a factor tr(1) = N.
"""
from __future__ import annotations

import itertools
from collections import Counter
from fractions import Fraction
from typing import Iterator, Sequence

from .words import Letter, Product, TraceWordOp, Word


def _flatten(product: Product) -> tuple[list[Letter], list[int]]:
    letters: list[Letter] = []
    succ: list[int] = []
    for word in product:
        base = len(letters)
        letters.extend(word)
        k = len(word)
        succ.extend(base + (t + 1) % k for t in range(k))
    return letters, succ


def splice(letters: Sequence[Letter], succ: Sequence[int], pairs: Sequence[tuple[int, int]]) -> list[Word]:
    """Contract each (annih, create) pair and read off the resulting words."""
    succ = list(succ)
    removed = set()
    for a, b in pairs:
        succ[a], succ[b] = succ[b], succ[a]
        removed.add(a)
        removed.add(b)
    seen = [False] * len(letters)
    words: list[Word] = []
    for start in range(len(letters)):
        if seen[start]:
            continue
        cyc = []
        i = start
        while not seen[i]:
            seen[i] = True
            if i not in removed:
                cyc.append(letters[i])
            i = succ[i]
        words.append(tuple(cyc))
    return words


def _contractions(left: Product, right: Product) -> Iterator[tuple[int, tuple, tuple, list, list]]:
    lletters, lsucc = _flatten(left)
    rletters, rsucc = _flatten(right)
    offset = len(lletters)
    letters = lletters + rletters
    succ = lsucc + [s + offset for s in rsucc]
    annih = [i for i, l in enumerate(lletters) if l.is_annih]
    create = [offset + i for i, l in enumerate(rletters) if l.is_create]
    for k in range(min(len(annih), len(create)) + 1):
        for chosen_a in itertools.combinations(annih, k):
            for chosen_b in itertools.combinations(create, k):
                for perm in itertools.permutations(chosen_b):
                    yield k, chosen_a, chosen_b, list(zip(chosen_a, perm)), (letters, succ)


def wick_expand_by_order(left: TraceWordOp, right: TraceWordOp) -> dict[int, TraceWordOp]:
    """:left: :right: = sum_k :Q_k:, with k the number of contractions; returns {k: Q_k}."""
    if not (left.normal_ordered and right.normal_ordered):
        raise ValueError("wick_expand requires normal-ordered inputs")
    out: dict[int, dict] = {}
    for lprod, lc in left.terms.items():
        for rprod, rc in right.terms.items():
            for k, _, _, pairs, (letters, succ) in _contractions(lprod, rprod):
                words = tuple(splice(letters, succ, pairs))
                bucket = out.setdefault(k, {})
                op_key = TraceWordOp({words: 1})
                for key, v in op_key.terms.items():
                    bucket[key] = bucket.get(key, Fraction(0)) + lc * rc * v
    return {k: TraceWordOp(terms) for k, terms in sorted(out.items())}


def wick_expand(left: TraceWordOp, right: TraceWordOp) -> TraceWordOp:
    """Normal-ordered form of the composition left . right (right acts first)."""
    total = TraceWordOp()
    for part in wick_expand_by_order(left, right).values():
        total = total + part
    return total


def wick_sample_counts(left: TraceWordOp, right: TraceWordOp) -> dict[int, tuple[int, int]]:
    """For single-term operators: {k: (number of sample pairs, pairings per sample pair)}."""
    if len(left.terms) != 1 or len(right.terms) != 1:
        raise ValueError("sample counts are defined for single word products")
    (lprod,) = left.terms
    (rprod,) = right.terms
    samples: dict[int, set] = {}
    pairings: Counter = Counter()
    for k, chosen_a, chosen_b, _, _ in _contractions(lprod, rprod):
        samples.setdefault(k, set()).add((chosen_a, chosen_b))
        pairings[k, chosen_a, chosen_b] += 1
    out = {}
    for k, s in samples.items():
        per = {pairings[k, a, b] for a, b in s}
        if len(per) != 1:
            raise AssertionError("pairing count depends on the sample")
        out[k] = (len(s), per.pop())
    return out


def normal_order_printed(words: Sequence[Word]) -> TraceWordOp:
    """Normal-order a product read as written: each word is cut at its first letter
    and operators act right to left, so every ANNIH standing left of a CREATE is
    contracted with it in all possible ways."""
    letters: list[Letter] = []
    succ: list[int] = []
    for word in words:
        base = len(letters)
        letters.extend(word)
        succ.extend(base + (t + 1) % len(word) for t in range(len(word)))
    annih = [i for i, l in enumerate(letters) if l.is_annih]
    create = [i for i, l in enumerate(letters) if l.is_create]
    terms: dict = {}

    def rec(ai: int, used: frozenset, pairs: list):
        if ai == len(annih):
            key = tuple(splice(letters, succ, pairs))
            for k, v in TraceWordOp({key: 1}).terms.items():
                terms[k] = terms.get(k, 0) + v
            return
        a = annih[ai]
        rec(ai + 1, used, pairs)
        for b in create:
            if b > a and b not in used:
                rec(ai + 1, used | {b}, pairs + [(a, b)])

    rec(0, frozenset(), [])
    return TraceWordOp(terms)


def symbolic_commutator(n: int, m: int, name: str = "A") -> TraceWordOp:
    """wick(H_n, H_m) - wick(H_m, H_n) with a single symbolic constant; empty when they commute."""
    from .words import build_H

    hn, hm = build_H(n, None, name), build_H(m, None, name)
    return wick_expand(hn, hm) - wick_expand(hm, hn)
