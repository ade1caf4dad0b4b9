"""Verification suites shared by the command line driver and the test suite.

Every suite returns a list of :class:`Case`; a case passes only on exact equality.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .fock import (
    build_H,
    build_H_mu,
    build_h,
    build_h_lambda,
    matrix_commutator,
    operator_matrix,
)
from .gluing import (
    GluingDiagram,
    all_diagrams,
    brute_force_expectation,
    dual_diagram,
    evaluate_monodromies,
    genus,
    genus_census,
    sample_white_orders,
    spectra_multiset,
    vertex_cycles,
)
from .hurwitz import (
    HurwitzTable,
    consistency_triangle,
    eigenvalue_of,
    generic_matrix,
    verify_mmn,
)
from .linalg import RationalMatrix, random_rational_matrix
from .partitions import (
    Partition,
    all_permutations,
    as_partition,
    dimension_factor,
    partitions_of,
)
from .symfun import (
    CharacterTable,
    orthogonality_first,
    orthogonality_second,
    powersum_to_schur,
    schur_from_characters,
    schur_in_powersums,
    schur_numeric,
    SymPoly,
)

FAMILIES = ("HH", "HHmu", "HI-h", "hh")


@dataclass
class Case:
    name: str
    passed: bool
    detail: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        out = {"case": self.name, "passed": self.passed}
        if self.detail:
            out["detail"] = self.detail
        return out


def _fr(x) -> str:
    return str(Fraction(x))


def _monomial_text(n: int, mono) -> str:
    parts = []
    for v, e in enumerate(mono):
        if e:
            parts.append(f"x{v // n + 1}{v % n + 1}" + (f"^{e}" if e > 1 else ""))
    return "*".join(parts) or "1"


def family_operators(family: str, N: int, A: RationalMatrix, a: RationalMatrix, n: int, m: int | None,
                     part: Partition | None):
    """The pair of operators whose commutator a family tests."""
    if family == "HH":
        return build_H(n, A), build_H(m, A)
    if family == "HHmu":
        return build_H(n, A), build_H_mu(part, A)
    if family == "HI-h":
        return build_H(n, RationalMatrix.identity(N)), build_h_lambda(part, a)
    if family == "hh":
        return build_h(n, a), build_h_lambda(part, a)
    raise ValueError(f"unknown family {family!r}; expected one of {', '.join(FAMILIES)}")


def commutation_case(label: str, op1, op2, d: int, N: int) -> Case:
    m1, m2 = operator_matrix(op1, d, N), operator_matrix(op2, d, N)
    comm = matrix_commutator(m1, m2)
    if comm.is_zero():
        return Case(label, True, {"dimension": comm.dimension})
    (i, j), value = min(comm.entries.items())
    detail = {
        "dimension": comm.dimension,
        "nonzero_entries": len(comm.entries),
        "row": _monomial_text(N, comm.basis[i]),
        "column": _monomial_text(N, comm.basis[j]),
        "value": _fr(value),
        "operators": [op1.to_text(), op2.to_text()],
    }
    return Case(label, False, detail)


def commutation_cases(family: str, n: int, m: int | None, part, N: int, degrees: Sequence[int],
                      matrices: Sequence[tuple[str, RationalMatrix, RationalMatrix]]) -> list[Case]:
    part = as_partition(part) if part is not None else None
    cases = []
    for label, A, a in matrices:
        op1, op2 = family_operators(family, N, A, a, n, m, part)
        for d in degrees:
            cases.append(commutation_case(f"{family} N={N} d={d} {label}", op1, op2, d, N))
    return cases


def gluing_cases(k: int, Ns: Sequence[int], seeds: Sequence[int], sampled: int = 20, sample_seed: int = 0) -> list[Case]:
    """Brute-force multicomponent expectation against the product of monodromy traces."""
    if k <= 4:
        orders = [p.images for p in all_permutations(k)]
    else:
        orders = sample_white_orders(k, sampled, random.Random(sample_seed))
    cases = []
    for order in orders:
        diag = GluingDiagram.from_white_order(order)
        monos = " ".join(f"tr({v})" for v in vertex_cycles(diag))
        for N in Ns:
            for seed in seeds:
                rng = random.Random(seed)
                B = [random_rational_matrix(N, rng) for _ in range(k)]
                C = [random_rational_matrix(N, rng) for _ in range(k)]
                brute = brute_force_expectation(k, order, B, C, N)
                glued = evaluate_monodromies(diag, B, C)
                detail = {"monodromies": monos, "genus": genus(diag)}
                if brute != glued:
                    detail.update(brute=_fr(brute), glued=_fr(glued))
                name = f"k={k} order={','.join(map(str, order))} N={N} seed={seed}"
                cases.append(Case(name, brute == glued, detail))
    return cases


def duality_cases(k: int, max_black: int = 3, max_white: int = 3) -> list[Case]:
    cases = []
    total = bad = 0
    example = None
    for diag in all_diagrams(k, max_black, max_white):
        dual = dual_diagram(diag)
        total += 1
        ok = (
            spectra_multiset(dual) == spectra_multiset(diag)
            and dual.black_total() == diag.black_total()
            and dual.white_total() == diag.white_total()
        )
        if not ok:
            bad += 1
            if example is None:
                example = {
                    "white_order": list(diag.white_order),
                    "black_spacings": list(diag.black_spacings),
                    "white_spacings": list(diag.white_spacings),
                }
    detail = {"diagrams": total}
    if example:
        detail["counterexample"] = example
    cases.append(Case(f"duality k={k} sums<={max_black},{max_white}", bad == 0, detail))
    return cases


def census_case(k: int) -> Case:
    census = genus_census(k)
    return Case(f"genus census k={k}", sum(census.values()) == len(list(all_permutations(k))),
                {"census": {str(g): c for g, c in census.items()}})


def schur_cases(d: int, seeds: Sequence[int] = (0, 1, 2)) -> list[Case]:
    """Orthogonality, character-map roundtrip, basis consistency and N-independence at weight d."""
    table = CharacterTable.build(d)
    parts = partitions_of(d)
    cases = []
    bad = [(str(mu), str(de)) for mu in parts for de in parts
           if orthogonality_first(table, mu, de) != (1 if mu == de else 0)]
    cases.append(Case(f"orth1 d={d}", not bad, {"violations": bad} if bad else {}))
    bad = [(str(l), str(mu)) for l in parts for mu in parts
           if orthogonality_second(table, l, mu) != (1 if l == mu else 0)]
    cases.append(Case(f"orth2 d={d}", not bad, {"violations": bad} if bad else {}))
    bad = []
    for delta in parts:
        total = SymPoly()
        for lam, c in powersum_to_schur(delta).items():
            total = total + schur_from_characters(lam) * c
        if total != SymPoly.p_partition(delta):
            bad.append(str(delta))
    cases.append(Case(f"roundtrip d={d}", not bad, {"violations": bad} if bad else {}))
    bad = []
    for lam in parts:
        if schur_in_powersums(lam) != schur_from_characters(lam):
            bad.append(f"character map {lam}")
        if schur_in_powersums(lam, lam.length()) != schur_in_powersums(lam, lam.length() + 2):
            bad.append(f"Jacobi-Trudi N-independence {lam}")
        if dimension_factor(lam, lam.length()) != dimension_factor(lam, lam.length() + 3):
            bad.append(f"dimension N-independence {lam}")
        for seed in seeds:
            rng = random.Random(seed)
            x = [Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(lam.length() + seed % 2)]
            sp = schur_in_powersums(lam)
            via_p = sp.evaluate({m: sum(v ** m for v in x) for m in range(1, d + 1)})
            if via_p != schur_numeric(lam, x):
                bad.append(f"bialternant {lam} x={[str(v) for v in x]}")
    cases.append(Case(f"schur bases d={d}", not bad, {"violations": bad} if bad else {}))
    return cases


def mmn_cases(d: int, matrices: Sequence[tuple[str, RationalMatrix, RationalMatrix]], N: int | None = None) -> list[Case]:
    cases = []
    for label, A, C in matrices:
        for lam in partitions_of(d):
            for mu in partitions_of(d):
                r = verify_mmn(lam, mu, A, C, N)
                detail = {"factor": _fr(r.factor)}
                if not r.passed:
                    diff = r.lhs - r.rhs
                    mono, val = min(diff.terms.items())
                    detail.update(monomial=_monomial_text(A.size, mono), difference=_fr(val))
                cases.append(Case(f"mmn lambda={lam} mu={mu} {label}", r.passed, detail))
    return cases


def diagonality_cases(nmax: int, d: int, seed: int = 0) -> list[Case]:
    cases = []
    for mu in partitions_of(d):
        for n in range(1, nmax + 1):
            try:
                value = eigenvalue_of(n, mu, N=d, seed=seed)
                cases.append(Case(f"H_{n}(I) on s_{mu}", True, {"eigenvalue": _fr(value)}))
            except ArithmeticError as exc:
                cases.append(Case(f"H_{n}(I) on s_{mu}", False, {"error": str(exc)}))
    return cases


def hurwitz_cases(table: HurwitzTable) -> list[Case]:
    triangle = consistency_triangle(table)
    sym = table.symmetry_violations()
    assoc = table.associativity_defects()
    comm = table.commutativity_defects()
    d = table.d
    return [
        Case(f"triangle d={d}", not triangle, {"violations": triangle[:5]} if triangle else {}),
        Case(f"symmetry d={d}", not sym, {"violations": [list(map(str, t)) for t in sym[:5]]} if sym else {}),
        Case(f"associativity d={d}", not assoc, {"violations": [list(map(str, t)) for t in assoc[:5]]} if assoc else {}),
        Case(f"commutativity d={d}", not comm, {"violations": [list(map(str, t)) for t in comm[:5]]} if comm else {}),
    ]


def seeded_pairs(N: int, seeds: Sequence[int]) -> list[tuple[str, RationalMatrix, RationalMatrix]]:
    out = []
    for s in seeds:
        rng = random.Random(s)
        out.append((f"seed={s}", random_rational_matrix(N, rng), random_rational_matrix(N, rng)))
    return out


def identity_pair(N: int) -> tuple[str, RationalMatrix, RationalMatrix]:
    eye = RationalMatrix.identity(N)
    return ("identity", eye, eye)


__all__ = [
    "Case",
    "FAMILIES",
    "census_case",
    "commutation_case",
    "commutation_cases",
    "diagonality_cases",
    "duality_cases",
    "family_operators",
    "generic_matrix",
    "gluing_cases",
    "hurwitz_cases",
    "identity_pair",
    "mmn_cases",
    "schur_cases",
    "seeded_pairs",
]
