"""Command line driver: every verification suite as a subcommand with JSON reports.

Exit codes: 0 when every case is an exact equality, 1 on a mathematical
failure (the report carries a counterexample), 2 on a usage error.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Callable, Sequence

from . import __version__
from .hurwitz import HurwitzTable, verify_mmn
from .linalg import RationalMatrix, random_rational_matrix
from .partitions import Partition
from .suites import (
    FAMILIES,
    Case,
    census_case,
    commutation_cases,
    diagonality_cases,
    duality_cases,
    gluing_cases,
    hurwitz_cases,
    mmn_cases,
    schur_cases,
)


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    N: int | None = None
    degree: int | None = None
    n: int | None = None
    m: int | None = None
    mu: str | None = None
    lam: str | None = None
    k: int | None = None
    family: str | None = None
    matrix: str = "random"
    seed: int = 0
    trials: int = 1
    out: str | None = None
    table: str | None = None
    json: bool = False

    def params(self) -> dict:
        return {k: v for k, v in asdict(self).items() if v is not None and k not in ("out", "table", "json")}


@dataclass
class Report:
    suite: str
    params: dict
    cases: list[Case] = field(default_factory=list)
    wall_time: float = 0.0
    extra: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.cases)

    def counterexample(self) -> dict | None:
        for c in self.cases:
            if not c.passed:
                return c.as_dict()
        return None

    def as_dict(self) -> dict:
        out = {
            "suite": self.suite,
            "version": __version__,
            "params": self.params,
            "verdict": "pass" if self.passed else "fail",
            "cases": [c.as_dict() for c in self.cases],
            "counterexample": self.counterexample(),
            "wall_time": round(self.wall_time, 3),
        }
        out.update(self.extra)
        return out

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2, sort_keys=True)


def parse_partition(text: str | None, flag: str) -> Partition:
    if text is None:
        raise UsageError(f"{flag} is required for this command")
    try:
        return Partition.parse(text)
    except ValueError as exc:
        raise UsageError(f"{flag}: {exc}") from None


def resolve_matrices(cfg: RunConfig, N: int) -> list[tuple[str, RationalMatrix, RationalMatrix]]:
    """(label, A, a) per trial from --matrix; random trials use seeds seed, seed+1, ..."""
    source = cfg.matrix
    if source == "identity":
        eye = RationalMatrix.identity(N)
        return [("identity", eye, eye)]
    if source == "random":
        out = []
        for t in range(cfg.trials):
            rng = random.Random(cfg.seed + t)
            out.append((f"seed={cfg.seed + t}", random_rational_matrix(N, rng), random_rational_matrix(N, rng)))
        return out
    if source.startswith("file:"):
        path = source[5:]
        try:
            M = RationalMatrix.load(path)
        except (OSError, ValueError) as exc:
            raise UsageError(f"--matrix {source}: {exc}") from None
        if M.size != N:
            raise UsageError(f"matrix in {path} has size {M.size}, but --N is {N}")
        return [(f"file={path}", M, M)]
    raise UsageError("--matrix must be identity, random or file:<path>")


def _require(value, flag: str):
    if value is None:
        raise UsageError(f"{flag} is required for this command")
    return value


def _degrees(cfg: RunConfig, default: Sequence[int]) -> list[int]:
    if cfg.degree is None:
        return list(default)
    if cfg.degree < 0:
        raise UsageError("--degree must be nonnegative")
    return [cfg.degree]


def cmd_verify_commutation(cfg: RunConfig) -> Report:
    family = cfg.family or "HH"
    if family not in FAMILIES:
        raise UsageError(f"--family must be one of {', '.join(FAMILIES)}")
    N = cfg.N or 2
    n = _require(cfg.n, "--n")
    if n < 1:
        raise UsageError("--n must be >= 1")
    m = None
    part = None
    if family == "HH":
        m = _require(cfg.m, "--m")
        if m < 1:
            raise UsageError("--m must be >= 1")
    elif family == "HHmu":
        part = parse_partition(cfg.mu, "--mu")
    else:
        part = parse_partition(cfg.lam, "--lambda")
    cases = commutation_cases(family, n, m, part, N, _degrees(cfg, range(1, 4)), resolve_matrices(cfg, N))
    return Report("verify commutation", cfg.params(), cases)


def cmd_verify_gluing(cfg: RunConfig) -> Report:
    k = _require(cfg.k, "--k")
    if not 1 <= k <= 5:
        raise UsageError("--k must be between 1 and 5")
    Ns = [cfg.N] if cfg.N else [2, 3]
    seeds = [cfg.seed + t for t in range(max(cfg.trials, 1))]
    cases = gluing_cases(k, Ns, seeds, sample_seed=cfg.seed)
    if k <= 4:
        cases += duality_cases(k)
    cases.append(census_case(k))
    return Report("verify gluing", cfg.params(), cases)


def cmd_verify_schur(cfg: RunConfig) -> Report:
    degrees = _degrees(cfg, range(1, 7))
    if max(degrees) > 6:
        raise UsageError("--degree must be at most 6")
    cases = []
    for d in degrees:
        if d >= 1:
            cases += schur_cases(d, seeds=[cfg.seed, cfg.seed + 1, cfg.seed + 2])
    return Report("verify schur", cfg.params(), cases)


def cmd_verify_mmn(cfg: RunConfig) -> Report:
    degrees = _degrees(cfg, range(1, 4))
    if max(degrees) > 4 and cfg.lam is None:
        raise UsageError("--degree must be at most 4 for the exhaustive run")
    cases: list[Case] = []
    if cfg.lam is not None or cfg.mu is not None:
        lam, mu = parse_partition(cfg.lam, "--lambda"), parse_partition(cfg.mu, "--mu")
        if lam.weight() != mu.weight():
            raise UsageError("--lambda and --mu must have the same weight")
        N = cfg.N or max(mu.weight(), 1)
        for label, A, C in resolve_matrices(cfg, N):
            r = verify_mmn(lam, mu, A, C)
            cases.append(Case(f"mmn lambda={lam} mu={mu} {label}", r.passed, {"factor": str(r.factor)}))
        return Report("verify mmn", cfg.params(), cases)
    for d in degrees:
        if d < 1:
            continue
        N = cfg.N or d
        cases += mmn_cases(d, resolve_matrices(cfg, N))
        cases += diagonality_cases(4, d, seed=cfg.seed) if N == d else []
    return Report("verify mmn", cfg.params(), cases)


def cmd_hurwitz_table(cfg: RunConfig) -> Report:
    d = cfg.degree if cfg.degree is not None else 3
    if not 1 <= d <= 5:
        raise UsageError("--degree must be between 1 and 5")
    if cfg.N is not None and cfg.N < d:
        raise UsageError("--N must be at least the degree")
    table = HurwitzTable.build(d, cfg.N)
    cases = hurwitz_cases(table)
    records = list(table.records())
    report = Report("hurwitz table", cfg.params(), cases)
    report.extra["entries"] = len(records)
    if cfg.table:
        Path(cfg.table).write_text(table.to_jsonl())
        report.extra["table_path"] = cfg.table
    else:
        report.extra["table"] = records
    return report


def cmd_census_genus(cfg: RunConfig) -> Report:
    k = _require(cfg.k, "--k")
    if not 1 <= k <= 7:
        raise UsageError("--k must be between 1 and 7")
    cases = [census_case(j) for j in range(1, k + 1)]
    return Report("census genus", cfg.params(), cases)


COMMANDS: dict[tuple[str, str], Callable[[RunConfig], Report]] = {
    ("verify", "commutation"): cmd_verify_commutation,
    ("verify", "gluing"): cmd_verify_gluing,
    ("verify", "schur"): cmd_verify_schur,
    ("verify", "mmn"): cmd_verify_mmn,
    ("hurwitz", "table"): cmd_hurwitz_table,
    ("census", "genus"): cmd_census_genus,
}


def _shared(p: argparse.ArgumentParser):
    p.add_argument("--N", type=int, help="matrix size")
    p.add_argument("--degree", type=int, help="Fock degree or partition weight")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=1, help="number of random matrices (seeds seed, seed+1, ...)")
    p.add_argument("--matrix", default="random", help="identity | random | file:<path>")
    p.add_argument("--out", help="write the JSON report here")
    p.add_argument("--json", action="store_true", help="print the JSON report to stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="polyglue", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"polyglue {__version__}")
    groups = parser.add_subparsers(dest="group", required=True)

    verify = groups.add_parser("verify").add_subparsers(dest="command", required=True)
    p = verify.add_parser("commutation", help="commutators of the H and h families")
    _shared(p)
    p.add_argument("--family", choices=FAMILIES, default="HH")
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--mu")
    p.add_argument("--lambda", dest="lam")
    p = verify.add_parser("gluing", help="monodromy formula against brute force, duality, genus")
    _shared(p)
    p.add_argument("--k", type=int, required=True)
    p = verify.add_parser("schur", help="orthogonality, roundtrip and Schur basis checks")
    _shared(p)
    p = verify.add_parser("mmn", help="H_lambda(A) on Schur states")
    _shared(p)
    p.add_argument("--mu")
    p.add_argument("--lambda", dest="lam")

    hurwitz = groups.add_parser("hurwitz").add_subparsers(dest="command", required=True)
    p = hurwitz.add_parser("table", help="three-point Hurwitz numbers from the Fock space")
    _shared(p)
    p.add_argument("--table", help="write the JSON-lines table here")

    census = groups.add_parser("census").add_subparsers(dest="command", required=True)
    p = census.add_parser("genus", help="genus distribution of all gluings of two 2k-gons")
    _shared(p)
    p.add_argument("--k", type=int, required=True)
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    fields = RunConfig.__dataclass_fields__
    values = {k: v for k, v in vars(args).items() if k in fields}
    values["command"] = f"{args.group} {args.command}"
    return RunConfig(**values)


def _summary(report: Report) -> str:
    lines = [f"{report.suite}: {'PASS' if report.passed else 'FAIL'} "
             f"({sum(c.passed for c in report.cases)}/{len(report.cases)} cases, {report.wall_time:.2f}s)"]
    for c in report.cases:
        if not c.passed:
            lines.append(f"  FAIL {c.name}: {json.dumps(c.detail, sort_keys=True)}")
    return "\n".join(lines)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    cfg = config_from_args(args)
    handler = COMMANDS[args.group, args.command]
    start = time.perf_counter()
    try:
        report = handler(cfg)
    except UsageError as exc:
        print(f"polyglue: error: {exc}", file=sys.stderr)
        return 2
    report.wall_time = time.perf_counter() - start
    text = report.to_json()
    if cfg.out:
        Path(cfg.out).write_text(text + "\n")
    print(text if cfg.json else _summary(report))
    return 0 if report.passed else 1


if __name__ == "__main__":
    sys.exit(main())
