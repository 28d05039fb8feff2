"""Worked-example corpus, brute-force oracle, and classification sweeps."""
from __future__ import annotations

import csv
import io
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Any, Callable, Iterable, Sequence

from .parabolic import ParabolicFlag, adjoint_crossing, adjoint_flag, flag_from_dict, make_flag
from .rootsys import RootSystemType, build_root_system
from .submodule import (
    EnumerationOverflow,
    Submodule,
    decomposition_count,
    default_cap,
    enumerate_submodules,
    growth_vector,
    is_contact,
    is_first_order_nondegenerate,
    is_frobenius,
    is_nontrivial,
    is_submodule,
    saturate,
    semicanonical_ratio,
)

SCHEMA = "flagvar.classification/1"
ORACLE_GUARD = 20


class OracleGuardError(ValueError):
    pass


def brute_force_submodules(flag: ParabolicFlag, guard: int = ORACLE_GUARD) -> list[frozenset]:
    """Every closed subset of noncompact positive roots, by testing all 2^N subsets.

    Works from raw coordinate arithmetic so it shares nothing with the
    up-set enumerator.  Returns root sets ordered by (size, sorted roots).
    """
    nc = list(flag.noncompact)
    n = len(nc)
    if n > guard:
        raise OracleGuardError(f"{n} noncompact roots exceeds the oracle guard of {guard}")
    system = flag.system
    crossed_cols = [c - 1 for c in flag.crossed]
    everything = [r for r in system.roots]
    actors = [b for b in everything if all(b[c] == 0 for c in crossed_cols) or b in nc]
    edges = []
    for i, a in enumerate(nc):
        for b in actors:
            s = tuple(x + y for x, y in zip(a, b))
            if system.is_root(s):
                edges.append((i, nc.index(s)))
    found = []
    for mask in range(1 << n):
        if all(not (mask >> i & 1) or (mask >> j & 1) for i, j in edges):
            found.append(frozenset(nc[k] for k in range(n) if mask >> k & 1))
    found.sort(key=lambda s: (len(s), sorted(s)))
    return found


def _level_set(flag: ParabolicFlag, level: int) -> Submodule:
    return Submodule.from_roots(flag, [r for r in flag.noncompact if flag.level(r) == level])


def _flag(series: str, rank: int, crossed) -> ParabolicFlag:
    return make_flag(build_root_system(RootSystemType(series, rank)), crossed)


def _ratio(s: Submodule) -> str | None:
    t = semicanonical_ratio(s)
    return None if t is None else str(t)


@dataclass
class Expectation:
    label: str
    provenance: str
    expected: Any
    compute: Callable[[], Any]


@dataclass
class NamedExample:
    name: str
    flag_spec: dict
    expectations: list[Expectation] = field(default_factory=list)

    def expect(self, label, provenance, expected, compute):
        self.expectations.append(Expectation(label, provenance, expected, compute))
        return self


def _spec(series, rank, crossed):
    return {"factors": [{"series": series, "rank": rank}], "crossed": [list(crossed)]}


def _g2_p1() -> NamedExample:
    f = _flag("G", 2, [1])
    star = Submodule.from_roots(f, [(3, 2), (2, 1), (3, 1)])
    ex = NamedExample("G2/P1", _spec("G", 2, [1]))
    ex.expect("positive roots", "source", sorted([(1, 0), (0, 1), (1, 1), (2, 1), (3, 1), (3, 2)]),
              lambda: sorted(f.system.positive))
    ex.expect("highest root", "source", (3, 2), f.system.highest_root)
    ex.expect("dimension", "source", 5, lambda: f.dimension)
    ex.expect("omega", "source", (10, 5), lambda: f.omega)
    ex.expect("starred set is a submodule", "source", True, lambda: is_submodule(f, star))
    ex.expect("starred weight", "source", (8, 4), lambda: star.weight)
    ex.expect("starred ratio", "source", "4/5", lambda: _ratio(star))
    ex.expect("starred nontrivial", "source", True, lambda: is_nontrivial(star))
    ex.expect("starred frobenius", "source", False, lambda: is_frobenius(star))
    ex.expect("growth of {a, a+b}", "source", (2, 3, 5), lambda: growth_vector(f, [(1, 0), (1, 1)]))
    ex.expect("submodule count", "derived", 4, lambda: len(enumerate_submodules(f)))
    return ex


def _an_point_line(n: int) -> NamedExample:
    f = _flag("A", n, [1, 2])
    e = lambda k: tuple(int(j == k - 1) for j in range(n))
    point = saturate(f, [e(1)])
    line = saturate(f, [e(2)])
    zero = saturate(f, [tuple(int(j < 2) for j in range(n))])
    ex = NamedExample(f"A{n}/P12", _spec("A", n, [1, 2]))
    ex.expect("submodule count", "source", 5, lambda: len(enumerate_submodules(f)))
    ex.expect("sizes", "source", sorted([0, n - 1, n, 2 * n - 2, 2 * n - 1]),
              lambda: sorted(s.size for s in enumerate_submodules(f)))
    ex.expect("omega", "source", tuple([n] + [2 * (n - k + 1) for k in range(2, n + 1)]), lambda: f.omega)
    ex.expect("det I_point", "source", tuple(n - k + 1 for k in range(1, n + 1)), lambda: point.weight)
    ex.expect("det I_line", "source", tuple([n - 1] + [2 * (n - k + 1) for k in range(2, n + 1)]),
              lambda: line.weight)
    ex.expect("det I_0", "source", tuple([n - 1] + [n - k + 1 for k in range(2, n + 1)]), lambda: zero.weight)
    ex.expect("ratio I_0", "source", "1/2" if n == 2 else None, lambda: _ratio(zero))
    ex.expect("ratio I_point", "source", None, lambda: _ratio(point))
    ex.expect("ratio I_line", "source", None, lambda: _ratio(line))
    ex.expect("I_point frobenius", "source", True, lambda: is_frobenius(point))
    ex.expect("I_line frobenius", "source", True, lambda: is_frobenius(line))
    return ex


ADJOINT_TABLE = (
    [("A", n, 2 * n - 1) for n in range(2, 9)]
    + [("B", n, 4 * n - 5) for n in range(3, 7)]
    + [("C", n, 2 * n - 1) for n in range(3, 7)]
    + [("D", n, 4 * n - 7) for n in range(4, 7)]
    + [("E", 6, 21), ("E", 7, 33), ("E", 8, 57), ("F", 4, 15), ("G", 2, 5)]
)


def _adjoint_table() -> NamedExample:
    ex = NamedExample("adjoint varieties", {})
    for s, n, dim in ADJOINT_TABLE:
        ex.expect(f"{s}{n} dimension", "source", dim,
                  lambda s=s, n=n: adjoint_flag(build_root_system(RootSystemType(s, n))).dimension)
    return ex


def _an_adjoint(n: int) -> NamedExample:
    f = adjoint_flag(build_root_system(RootSystemType("A", n)))
    s1 = Submodule.from_roots(f, [tuple(int(j < k) for j in range(n)) for k in range(1, n + 1)])
    sn = Submodule.from_roots(f, [tuple(int(j >= i) for j in range(n)) for i in range(n)])
    theta = Submodule.from_roots(f, [(1,) * n])
    ex = NamedExample(f"A{n} adjoint", _spec("A", n, sorted(f.crossed)))
    ex.expect("crossed", "source", [1, n], lambda: sorted(f.crossed))
    ex.expect("S_1 submodule", "source", True, lambda: is_submodule(f, s1))
    ex.expect("S_n submodule", "source", True, lambda: is_submodule(f, sn))
    ex.expect("S_1 frobenius", "source", True, lambda: is_frobenius(s1))
    ex.expect("S_n frobenius", "source", True, lambda: is_frobenius(sn))
    ex.expect("S_1 meet S_n", "source", theta.members, lambda: s1.members & sn.members)
    ex.expect("contact", "source", True, lambda: is_contact(theta))
    ex.expect("contact ratio", "derived", f"1/{n}", lambda: _ratio(theta))
    return ex


def _b3() -> NamedExample:
    f = _flag("B", 3, [3])
    s = _level_set(f, 2)
    listed = [(0, 0, 1), (0, 1, 1), (1, 1, 1), (0, 1, 2), (1, 1, 2), (1, 2, 2)]
    ex = NamedExample("B3/P3", _spec("B", 3, [3]))
    ex.expect("dimension", "source", 6, lambda: f.dimension)
    ex.expect("noncompact roots", "source", sorted(listed), lambda: sorted(f.noncompact))
    ex.expect("S", "source", sorted([(0, 1, 2), (1, 1, 2), (1, 2, 2)]), lambda: sorted(s.roots))
    ex.expect("S submodule", "source", True, lambda: is_submodule(f, s))
    ex.expect("each member decomposes", "source", True,
              lambda: all(decomposition_count(s, r) >= 1 for r in s.roots))
    ex.expect("alpha_3 + (alpha_2+alpha_3)", "source", (0, 1, 2), lambda: f.system.add((0, 0, 1), (0, 1, 1)))
    ex.expect("omega", "derived", (3, 6, 9), lambda: f.omega)
    ex.expect("ratio", "derived", "2/3", lambda: _ratio(s))
    return ex


def _c3() -> NamedExample:
    f = _flag("C", 3, [2])
    s = _level_set(f, 2)
    listed = [(0, 1, 0), (1, 1, 0), (0, 1, 1), (1, 1, 1), (0, 2, 1), (1, 2, 1), (2, 2, 1)]
    ex = NamedExample("C3/P2", _spec("C", 3, [2]))
    ex.expect("dimension", "source", 7, lambda: f.dimension)
    ex.expect("noncompact roots", "source", sorted(listed), lambda: sorted(f.noncompact))
    ex.expect("levels", "source", [1, 1, 1, 1, 2, 2, 2], lambda: sorted(f.level(r) for r in f.noncompact))
    ex.expect("S", "source", sorted([(0, 2, 1), (1, 2, 1), (2, 2, 1)]), lambda: sorted(s.roots))
    ex.expect("ratio", "derived", "3/5", lambda: _ratio(s))
    ex.expect("frobenius", "source", False, lambda: is_frobenius(s))
    return ex


def _bn_level2(n: int) -> NamedExample:
    f = _flag("B", n, [n])
    s = _level_set(f, 2)
    ex = NamedExample(f"B{n}/P{n} level-2 system", _spec("B", n, [n]))
    ex.expect("level-1 count", "source", n, lambda: sum(f.level(r) == 1 for r in f.noncompact))
    ex.expect("level-2 count", "source", n * (n - 1) // 2, lambda: s.size)
    ex.expect("dimension", "source", n * (n + 1) // 2, lambda: f.dimension)
    ex.expect("first order nondegenerate", "source", True, lambda: is_first_order_nondegenerate(s))
    ex.expect("growth of level 1", "source", (n, n * (n + 1) // 2),
              lambda: growth_vector(f, [r for r in f.noncompact if f.level(r) == 1]))
    ex.expect("ratio", "derived", str(Fraction(n - 1, n)), lambda: _ratio(s))
    return ex


def _nontrivial_semicanonical(series: str, rank: int) -> int:
    f = _flag(series, rank, "all")
    return sum(1 for s in enumerate_submodules(f) if is_nontrivial(s) and semicanonical_ratio(s) is not None)


def _rank2_borel() -> NamedExample:
    ex = NamedExample("rank-2 Borel survey", {})
    ex.expect("A2/B nontrivial semicanonical", "source", 1, lambda: _nontrivial_semicanonical("A", 2))
    ex.expect("B2/B nontrivial semicanonical", "source", 0, lambda: _nontrivial_semicanonical("B", 2))
    ex.expect("G2/B nontrivial semicanonical", "source", 0, lambda: _nontrivial_semicanonical("G", 2))
    ex.expect("A2/B submodule count", "derived", 5, lambda: len(enumerate_submodules(_flag("A", 2, "all"))))
    ex.expect("A2/B unique semicanonical set", "source", [(1, 1)],
              lambda: [list(s.roots) for s in enumerate_submodules(_flag("A", 2, "all"))
                       if is_nontrivial(s) and semicanonical_ratio(s) is not None][0])
    return ex


def borel_complements(series: str, rank: int) -> list[Submodule]:
    """For each simple root, all positive roots except it (closed in a Borel)."""
    f = _flag(series, rank, "all")
    return [Submodule(f, f.full_mask & ~(1 << f.bit(a))) for a in f.system.simple]


def _borel_complements() -> NamedExample:
    ex = NamedExample("Borel complement of a simple root", {})
    for s, n in [("A", 2), ("A", 3), ("B", 2), ("B", 3), ("G", 2)]:
        ex.expect(f"{s}{n} none semicanonical", "source", True,
                  lambda s=s, n=n: all(is_submodule(c.flag, c) and semicanonical_ratio(c) is None
                                       for c in borel_complements(s, n)))
    ex.expect("A1 semicanonical", "source", True,
              lambda: all(semicanonical_ratio(c) is not None for c in borel_complements("A", 1)))
    return ex


def corpus() -> list[NamedExample]:
    return (
        [_g2_p1()]
        + [_an_point_line(n) for n in range(2, 9)]
        + [_adjoint_table()]
        + [_an_adjoint(n) for n in range(2, 7)]
        + [_b3(), _c3()]
        + [_bn_level2(n) for n in range(3, 7)]
        + [_rank2_borel(), _borel_complements()]
    )


@dataclass
class CheckResult:
    example: str
    label: str
    provenance: str
    expected: Any
    computed: Any
    passed: bool


@dataclass
class Report:
    results: list[CheckResult]

    @property
    def ok(self) -> bool:
        return all(r.passed for r in self.results)

    @property
    def failures(self) -> list[CheckResult]:
        return [r for r in self.results if not r.passed]

    def render(self) -> str:
        lines = []
        for r in self.results:
            mark = "PASS" if r.passed else "FAIL"
            line = f"{mark}  {r.example}: {r.label} [{r.provenance}]"
            if not r.passed:
                line += f"  expected {r.expected!r}, got {r.computed!r}"
            lines.append(line)
        n = len(self.results)
        if self.ok:
            lines.append(f"all {n} expectations passed")
        else:
            lines.append(f"{len(self.failures)} of {n} expectations failed")
        return "\n".join(lines)


def verify_corpus(examples: Iterable[NamedExample] | None = None) -> Report:
    if examples is None:
        examples = corpus()
    results = []
    for ex in examples:
        for e in ex.expectations:
            try:
                got = e.compute()
            except Exception as exc:  # failures are data here
                got = f"{type(exc).__name__}: {exc}"
            results.append(CheckResult(ex.name, e.label, e.provenance, e.expected, got, got == e.expected))
    return Report(results)


# ---------------------------------------------------------------- sweeps

RANK_RANGES = {
    "A": range(1, 10**6),
    "B": range(2, 10**6),
    "C": range(3, 10**6),
    "D": range(4, 10**6),
    "E": range(6, 9),
    "F": range(4, 5),
    "G": range(2, 3),
}


@dataclass
class ClassificationRecord:
    flag: dict
    label: str
    dimension: int
    omega: list[int]
    submodule_count: int | None
    submodules: list[dict]
    error: str | None = None

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA,
            "flag": self.flag,
            "label": self.label,
            "dimension": self.dimension,
            "omega": self.omega,
            "submodule_count": self.submodule_count,
            "submodules": self.submodules,
            "error": self.error,
        }

    def nontrivial_semicanonical(self) -> list[dict]:
        return [s for s in self.submodules if s["nontrivial"] and s["ratio"] is not None]


def classify_flag(flag: ParabolicFlag, cap: int | None = None) -> ClassificationRecord:
    try:
        subs = enumerate_submodules(flag, cap)
    except EnumerationOverflow as exc:
        return ClassificationRecord(flag.to_dict(), flag.label, flag.dimension, list(flag.omega), None, [], str(exc))
    rows = []
    for s in subs:
        d = s.to_dict()
        d["size"] = s.size
        d["first_order_nondegenerate"] = is_first_order_nondegenerate(s)
        rows.append(d)
    return ClassificationRecord(flag.to_dict(), flag.label, flag.dimension, list(flag.omega), len(subs), rows)


def _crossings(t: RootSystemType, crossing) -> list[tuple[int, ...]]:
    nodes = range(1, t.rank + 1)
    if crossing == "all":
        return [c for k in range(1, t.rank + 1) for c in combinations(nodes, k)]
    if crossing == "maximal":
        return [(i,) for i in nodes]
    if crossing == "borel":
        return [tuple(nodes)]
    if crossing == "adjoint":
        return [tuple(sorted(adjoint_crossing(build_root_system(t))))]
    if callable(crossing):
        return [c for k in range(1, t.rank + 1) for c in combinations(nodes, k) if crossing(t, c)]
    raise ValueError(f"unknown crossing filter {crossing!r}")


def sweep_specs(max_rank, crossing="all", series: str = "ABCDEFG") -> list[tuple[RootSystemType, tuple[int, ...]]]:
    """(type, crossed) pairs in sweep order: series, rank, crossing size, nodes."""
    out = []
    for s in series:
        bound = max_rank.get(s, 0) if isinstance(max_rank, dict) else max_rank
        for n in RANK_RANGES[s]:
            if n > bound:
                break
            t = RootSystemType(s, n)
            for c in _crossings(t, crossing):
                out.append((t, c))
    return out


def _classify_spec(args) -> ClassificationRecord:
    t, crossed, cap = args
    return classify_flag(make_flag(build_root_system(t), crossed), cap)


def classify_sweep(
    max_rank: int | dict[str, int],
    crossing: str | Callable = "all",
    series: str = "ABCDEFG",
    workers: int = 1,
    cap: int | None = None,
) -> list[ClassificationRecord]:
    """One record per irreducible type within bounds and each matching crossing."""
    if cap is None:
        cap = default_cap()
    jobs = [(t, c, cap) for t, c in sweep_specs(max_rank, crossing, series)]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_classify_spec, jobs, chunksize=4))
    return [_classify_spec(j) for j in jobs]


def records_to_jsonl(records: Sequence[ClassificationRecord]) -> str:
    return "".join(json.dumps(r.to_dict(), separators=(",", ":")) + "\n" for r in records)


def records_from_jsonl(text: str) -> list[dict]:
    return [json.loads(line) for line in text.splitlines() if line.strip()]


def records_to_table(records: Sequence[ClassificationRecord]) -> str:
    header = ("flag", "dim", "omega", "submodules", "nontrivial semicanonical", "of which frobenius")
    rows = []
    for r in records:
        if r.error:
            rows.append((r.label, str(r.dimension), ",".join(map(str, r.omega)), "overflow", "-", "-"))
            continue
        ns = r.nontrivial_semicanonical()
        rows.append((
            r.label,
            str(r.dimension),
            ",".join(map(str, r.omega)),
            str(r.submodule_count),
            str(len(ns)),
            str(sum(1 for s in ns if s["frobenius"])),
        ))
    widths = [max(len(x) for x in col) for col in zip(header, *rows)]
    fmt = lambda row: "  ".join(x.ljust(w) for x, w in zip(row, widths)).rstrip()
    return "\n".join([fmt(header), fmt(tuple("-" * w for w in widths))] + [fmt(r) for r in rows]) + "\n"


def records_to_csv(records: Sequence[ClassificationRecord]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["flag", "dimension", "omega", "size", "weight", "ratio", "nontrivial", "frobenius",
                "contact", "first_order_nondegenerate", "members"])
    for r in records:
        for s in r.submodules:
            w.writerow([
                r.label, r.dimension, " ".join(map(str, r.omega)), s["size"], " ".join(map(str, s["weight"])),
                s["ratio"] or "", int(s["nontrivial"]), int(s["frobenius"]), int(s["contact"]),
                int(s["first_order_nondegenerate"]), " ".join(map(str, s["members"])),
            ])
    return buf.getvalue()
