"""Gluing a black 2k-gon to a white 2k-gon along their dotted edges.

The black trace is tr(D^(1) B_1 D^(2) B_2 ... D^(k) B_k); the white trace is
tr(X^(w_1) C_(w_1) X^(w_2) C_(w_2) ... X^(w_k) C_(w_k)), where (w_1, ..., w_k)
is the *white order*, the colors of the white creation letters as read. Color a
of the black polygon is glued to color a of the white one.

Walking around a vertex of the glued surface, black corner B_a is followed by
white corner C_(a+1), and white corner C_(w_t) is followed by black corner
B_(w_(t+1)). Vertices are the cycles of this corner-following map.
"""
from __future__ import annotations

import itertools
import random
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .fock.wick import _flatten, splice
from .fock.words import ANNIH, CREATE, Letter, TraceWordOp, Word
from .linalg import RationalMatrix, random_rational_matrix
from .partitions import Permutation, all_permutations

Corner = tuple[str, int]  # ("B", i) or ("C", j)


@dataclass(frozen=True)
class GluingDiagram:
    """Pairing of dotted edges plus spacings.

    ``sigma`` maps reading position t to the white color w_t. ``black_spacings[a-1]``
    is the number of full (D X A) blocks after the a-th chosen annihilator,
    ``white_spacings[j-1]`` the number after the creator of color j. ``dual``
    marks a diagram of the reversed product :H_m: :H_n:, where the same blocks
    are chosen but the n-word supplies creators and the m-word annihilators.
    """

    k: int
    sigma: Permutation
    black_spacings: tuple[int, ...] = ()
    white_spacings: tuple[int, ...] = ()
    dual: bool = False

    def __post_init__(self):
        if self.sigma.size != self.k:
            raise ValueError("sigma must be a permutation of 1..k")
        bs = tuple(self.black_spacings) or (0,) * self.k
        ws = tuple(self.white_spacings) or (0,) * self.k
        if len(bs) != self.k or len(ws) != self.k or min(bs + ws, default=0) < 0:
            raise ValueError("spacings must be k nonnegative integers each")
        object.__setattr__(self, "black_spacings", bs)
        object.__setattr__(self, "white_spacings", ws)

    @classmethod
    def from_white_order(cls, white_order: Sequence[int], black_spacings=(), white_spacings=()) -> "GluingDiagram":
        perm = Permutation(tuple(white_order))
        return cls(perm.size, perm, tuple(black_spacings), tuple(white_spacings))

    @classmethod
    def sphere(cls, k: int) -> "GluingDiagram":
        """White order (k, k-1, ..., 1): k vertices with monodromies B_a C_(a+1)."""
        return cls.from_white_order(range(k, 0, -1))

    @property
    def white_order(self) -> tuple[int, ...]:
        return self.sigma.images

    def black_total(self) -> int:
        return sum(self.black_spacings)

    def white_total(self) -> int:
        return sum(self.white_spacings)


@dataclass(frozen=True)
class VertexMonodromy:
    corners: tuple[Corner, ...]

    @property
    def valence(self) -> int:
        return len(self.corners)

    def alternates(self) -> bool:
        kinds = [c[0] for c in self.corners]
        return len(kinds) % 2 == 0 and all(kinds[i] != kinds[(i + 1) % len(kinds)] for i in range(len(kinds)))

    def pairs(self) -> list[tuple[int, int]]:
        """[(i_1, j_1), ..., (i_v, j_v)] for W = (B_{i_1} C_{j_1}) ... (B_{i_v} C_{j_v})."""
        return [(self.corners[t][1], self.corners[t + 1][1]) for t in range(0, len(self.corners), 2)]

    def __str__(self) -> str:
        return "".join(f"{kind}{idx}" for kind, idx in self.corners)


def vertex_cycles(diag: GluingDiagram) -> list[VertexMonodromy]:
    k = diag.k
    w = diag.white_order
    nxt: dict[Corner, Corner] = {}
    for a in range(1, k + 1):
        nxt["B", a] = ("C", a % k + 1)
    for t, color in enumerate(w):
        nxt["C", color] = ("B", w[(t + 1) % k])
    seen = set()
    out = []
    for a in range(1, k + 1):
        start = ("B", a)
        if start in seen:
            continue
        cyc = []
        c = start
        while c not in seen:
            seen.add(c)
            cyc.append(c)
            c = nxt[c]
        out.append(VertexMonodromy(tuple(cyc)))
    return out


def genus(diag: GluingDiagram) -> int:
    """Genus from V - E + F with F = 2 polygons and E = k glued edges."""
    v = len(vertex_cycles(diag))
    euler = v - diag.k + 2
    if euler % 2 or euler > 2:
        raise AssertionError(f"impossible Euler characteristic {euler} for {diag}")
    return (2 - euler) // 2


def _trace_product(mats: Sequence[RationalMatrix]) -> Fraction:
    prod = mats[0]
    for m in mats[1:]:
        prod = prod @ m
    return prod.trace()


def evaluate_monodromies(diag: GluingDiagram, B: Sequence[RationalMatrix], C: Sequence[RationalMatrix]) -> Fraction:
    """prod over vertices of tr(W_alpha)."""
    if len(B) != diag.k or len(C) != diag.k:
        raise ValueError(f"need {diag.k} black and {diag.k} white corner matrices")
    total = Fraction(1)
    for vertex in vertex_cycles(diag):
        mats = [B[i - 1] if kind == "B" else C[i - 1] for kind, i in vertex.corners]
        total *= _trace_product(mats)
    return total


def brute_force_expectation(
    k: int, white_order: Sequence[int], B: Sequence[RationalMatrix], C: Sequence[RationalMatrix], n: int
) -> Fraction:
    """<0| tr(D^(1) B_1 ... D^(k) B_k) tr(X^(w_1) C_(w_1) ... X^(w_k) C_(w_k)) |0> by index summation.

    Black letter D^(a) carries indices (i_a, j_a), white letter X^(w_t) carries
    (p_t, q_t). The only nonzero pairing matches equal colors, and
    <0|phi^(a)dag_{ij} phi^(a)_{j'i'}|0> = delta_{ii'} delta_{jj'} forces
    p_t = j_(w_t) and q_t = i_(w_t).
    """
    if len(B) != k or len(C) != k:
        raise ValueError("need k black and k white corner matrices")
    w = list(white_order)
    scaleB = [m.integer_entries() for m in B]
    scaleC = [m.integer_entries() for m in C]
    denom = 1
    for L, _ in scaleB + scaleC:
        denom *= L
    Bi = [e for _, e in scaleB]
    Ci = [e for _, e in scaleC]
    total = 0
    for ii in itertools.product(range(n), repeat=k):
        for jj in itertools.product(range(n), repeat=k):
            term = 1
            for a in range(k):
                term *= Bi[a][jj[a]][ii[(a + 1) % k]]
                if not term:
                    break
            if not term:
                continue
            for t in range(k):
                color, nxt = w[t] - 1, w[(t + 1) % k] - 1
                term *= Ci[color][ii[color]][jj[nxt]]
                if not term:
                    break
            total += term
    return Fraction(total, denom)


def vertex_spectra(diag: GluingDiagram) -> list[tuple[int, ...]]:
    """Per-vertex spacing sums, each rotated to its lexicographic minimum.

    For W = (B_{i_1} C_{j_1}) ... (B_{i_v} C_{j_v}) the trace is
    tr(A (DXA)^{e_1 + 1} ... A (DXA)^{e_v + 1}); the trailing phi^dag of C_{j_a}
    merges with the leading phi of B_{i_(a+1)}, so e_a = m_{j_a} + n_{i_(a+1)}.
    For a diagram of the reversed product (``dual``) the same reading gives
    e_a = n_{i_a} + m_{j_a}.
    """
    n, m = diag.black_spacings, diag.white_spacings
    out = []
    for vertex in vertex_cycles(diag):
        pairs = vertex.pairs()
        v = len(pairs)
        if diag.dual:
            seq = [n[i - 1] + m[j - 1] for i, j in pairs]
        else:
            seq = [m[pairs[a][1] - 1] + n[pairs[(a + 1) % v][0] - 1] for a in range(v)]
        out.append(canonical_cycle(seq))
    return out


def canonical_cycle(seq: Sequence[int]) -> tuple[int, ...]:
    seq = tuple(seq)
    if not seq:
        return seq
    return min(seq[i:] + seq[:i] for i in range(len(seq)))


def dual_diagram(diag: GluingDiagram) -> GluingDiagram:
    """Diagram of the dual sample in the reversed product.

    Same sigma and white spacings; around every vertex the black spacings are
    shifted one step, n_{i_a} -> n_{i_(a+1)}. The spectra of the result coincide
    with those of ``diag``, which is what makes the two orderings cancel.
    """
    new = list(diag.black_spacings)
    for vertex in vertex_cycles(diag):
        blacks = [i for i, _ in vertex.pairs()]
        for a, i in enumerate(blacks):
            new[i - 1] = diag.black_spacings[blacks[(a + 1) % len(blacks)] - 1]
    return GluingDiagram(diag.k, diag.sigma, tuple(new), diag.white_spacings, dual=not diag.dual)


def spectra_multiset(diag: GluingDiagram) -> Counter:
    return Counter(vertex_spectra(diag))


def compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(total + 1):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


def all_diagrams(k: int, max_black: int, max_white: int) -> Iterator[GluingDiagram]:
    """Every sigma in S_k with spacing vectors of sums <= max_black, max_white."""
    for sigma in all_permutations(k):
        for nb in range(max_black + 1):
            for bs in compositions(nb, k):
                for nw in range(max_white + 1):
                    for ws in compositions(nw, k):
                        yield GluingDiagram(k, sigma, bs, ws)


def genus_census(k: int) -> dict[int, int]:
    census: Counter = Counter()
    for sigma in all_permutations(k):
        census[genus(GluingDiagram(k, sigma))] += 1
    return dict(sorted(census.items()))


def sample_white_orders(k: int, count: int, rng: random.Random) -> list[tuple[int, ...]]:
    perms = [tuple(rng.sample(range(1, k + 1), k)) for _ in range(count)]
    return perms


def oracle_check(k: int, white_order: Sequence[int], n: int, seed: int) -> tuple[bool, Fraction, Fraction]:
    """Compare brute-force expectation with the monodromy product for seeded random corners."""
    rng = random.Random(seed)
    B = [random_rational_matrix(n, rng) for _ in range(k)]
    C = [random_rational_matrix(n, rng) for _ in range(k)]
    brute = brute_force_expectation(k, white_order, B, C, n)
    glued = evaluate_monodromies(GluingDiagram.from_white_order(white_order), B, C)
    return brute == glued, brute, glued


# Contact with the Wick expansion of :tr((phi^dag phi A)^n): :tr((phi^dag phi A)^m):.


def black_corner_word(spacing: int, a: Letter) -> Word:
    """B_i = phi A (phi^dag phi A)^{n_i}."""
    return (CREATE, a) + (ANNIH, CREATE, a) * spacing


def white_corner_word(spacing: int, a: Letter) -> Word:
    """C_j = A (phi^dag phi A)^{m_j} phi^dag."""
    return (a,) + (ANNIH, CREATE, a) * spacing + (ANNIH,)


def monodromy_words(diag: GluingDiagram, a: Letter) -> list[Word]:
    words = []
    for vertex in vertex_cycles(diag):
        word: Word = ()
        for kind, idx in vertex.corners:
            if kind == "B":
                word += black_corner_word(diag.black_spacings[idx - 1], a)
            else:
                word += white_corner_word(diag.white_spacings[idx - 1], a)
        words.append(word)
    return words


def _cyclic_gaps(positions: Sequence[int], length: int) -> list[int]:
    k = len(positions)
    return [(positions[(t + 1) % k] - positions[t] - 1) % length if k > 1 else length - 1 for t in range(k)]


@dataclass(frozen=True)
class Sample:
    """Chosen blocks of both words and the pairing, as enumerated by the Wick rule."""

    black_blocks: tuple[int, ...]
    white_blocks: tuple[int, ...]
    diagram: GluingDiagram


def samples(n: int, m: int, k: int) -> Iterator[Sample]:
    """All choices of k annihilators in (D X A)^n, k creators in (D X A)^m and a pairing.

    The chosen annihilators are colored 1..k left to right; the white order is
    the sequence of colors met reading the chosen creators left to right.
    """
    for black in itertools.combinations(range(n), k):
        nb = _cyclic_gaps(black, n)
        for white in itertools.combinations(range(m), k):
            gaps = _cyclic_gaps(white, m)
            for order in itertools.permutations(range(1, k + 1)):
                ws = [0] * k
                for t, color in enumerate(order):
                    ws[color - 1] = gaps[t]
                diag = GluingDiagram(k, Permutation(order), tuple(nb), tuple(ws))
                yield Sample(black, white, diag)


def sample_words(n: int, m: int, sample: Sample, a: Letter, reverse: bool = False) -> list[Word]:
    """Words produced by actually contracting the sample inside :H_n: :H_m:.

    With ``reverse`` the product is :H_m: :H_n: and the same blocks are used,
    the creator of each chosen n-block paired with the annihilator of the
    m-block it was paired with before.
    """
    order = sample.diagram.white_order
    left, right = (ANNIH, CREATE, a) * n, (ANNIH, CREATE, a) * m
    if not reverse:
        letters, succ = _flatten((left, right))
        ann = {c + 1: 3 * b for c, b in enumerate(sample.black_blocks)}
        cre = {order[t]: 3 * n + 3 * w + 1 for t, w in enumerate(sample.white_blocks)}
    else:
        letters, succ = _flatten((right, left))
        ann = {order[t]: 3 * w for t, w in enumerate(sample.white_blocks)}
        cre = {c + 1: 3 * m + 3 * b + 1 for c, b in enumerate(sample.black_blocks)}
    return splice(letters, succ, [(ann[c], cre[c]) for c in ann])


def predicted_wick_order(n: int, m: int, k: int, a: Letter) -> TraceWordOp:
    """:Q_k: of :H_n: :H_m: assembled from gluing diagrams and their monodromy words."""
    if k == 0:
        return TraceWordOp.single([(ANNIH, CREATE, a) * n, (ANNIH, CREATE, a) * m])
    total: dict = {}
    for s in samples(n, m, k):
        key = tuple(monodromy_words(s.diagram, a))
        for prod, c in TraceWordOp({key: 1}).terms.items():
            total[prod] = total.get(prod, 0) + c
    return TraceWordOp(total)


def word_spectrum(word: Word) -> tuple[int, ...]:
    """Spectrum of a monodromy trace tr(A (DXA)^{e_1} A (DXA)^{e_2} ...): (e_1 - 1, e_2 - 1, ...)."""
    L = len(word)
    # piece starts: a constant letter whose cyclic predecessor is also a constant
    starts = [i for i in range(L) if word[i].is_const and word[i - 1].is_const]
    if not starts:
        raise ValueError(f"not a monodromy word: {word}")
    seq = []
    for t, s in enumerate(starts):
        e = (starts[(t + 1) % len(starts)] - s - 1) % L
        if len(starts) == 1:
            e = L - 1
        if e % 3:
            raise ValueError(f"not a monodromy word: {word}")
        seq.append(e // 3 - 1)
    return canonical_cycle(seq)
