"""Lattice of parabolics containing P, circle relabeling, and product rigidity.

Everything here is bookkeeping on crossed-node sets.  Uncrossing nodes
enlarges the parabolic; the empty crossing stands for G (a point model).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

from .parabolic import ParabolicFlag
from .rootsys import RootSystem
from .submodule import (
    Submodule,
    is_frobenius,
    is_nontrivial,
    is_submodule,
    semicanonical_ratio,
)

# Diagram automorphisms used to tag targets that agree up to outer automorphism.
# D4 triality is not included; only the involutions are.


def _diagram_involution(series: str, rank: int) -> dict[int, int] | None:
    if series == "A" and rank > 1:
        return {i: rank + 1 - i for i in range(1, rank + 1)}
    if series == "D" and rank >= 4:
        d = {i: i for i in range(1, rank + 1)}
        d[rank - 1], d[rank] = rank, rank - 1
        return d
    if series == "E" and rank == 6:
        return {1: 6, 6: 1, 3: 5, 5: 3, 2: 2, 4: 4}
    return None


def outer_class(system: RootSystem, crossed: Iterable[int]) -> str:
    """Canonical label of a crossing up to per-factor diagram involutions."""
    crossed = set(crossed)
    parts = []
    for k, t in enumerate(system.factors):
        o = system.offsets[k]
        local = sorted(c - o for c in crossed if o < c <= o + t.rank)
        inv = _diagram_involution(t.series, t.rank)
        if inv is not None:
            local = min(local, sorted(inv[c] for c in local))
        parts.append(f"{t}:{','.join(map(str, local)) or '-'}")
    return " ".join(parts)


@dataclass(frozen=True)
class DropTarget:
    """A parabolic containing the source, given by its crossed nodes.

    ``flag`` is None for the empty crossing (the group itself).
    """

    crossed: frozenset[int]
    fiber_crossed: frozenset[int]
    flag: ParabolicFlag | None
    equivalence: str

    @property
    def is_point(self) -> bool:
        return not self.crossed


def _target(system: RootSystem, crossed, source_crossed) -> DropTarget:
    crossed = frozenset(crossed)
    return DropTarget(
        crossed=crossed,
        fiber_crossed=frozenset(source_crossed) - crossed,
        flag=ParabolicFlag(system, crossed) if crossed else None,
        equivalence=outer_class(system, crossed),
    )


def parabolics_containing(flag: ParabolicFlag) -> list[DropTarget]:
    """All 2^|crossed| targets, largest crossing first."""
    nodes = sorted(flag.crossed)
    out = []
    for k in range(len(nodes), -1, -1):
        for sub in combinations(nodes, k):
            out.append(_target(flag.system, sub, flag.crossed))
    return out


def drop_lattice(flag: ParabolicFlag) -> dict:
    """DAG of drop targets: an edge uncrosses exactly one node."""
    targets = parabolics_containing(flag)
    nodes = [sorted(t.crossed) for t in targets]
    edges = []
    for t in targets:
        for c in sorted(t.crossed):
            edges.append([sorted(t.crossed), sorted(t.crossed - {c})])
    return {
        "flag": flag.to_dict(),
        "nodes": [{"crossed": n, "equivalence": t.equivalence} for n, t in zip(nodes, targets)],
        "edges": edges,
    }


def is_maximal(flag: ParabolicFlag) -> bool:
    if not flag.system.is_irreducible:
        raise ValueError(f"{flag.system} is reducible; ask per factor")
    return len(flag.crossed) == 1


@dataclass(frozen=True)
class CircleDrop:
    """Parabolic Q obtained by turning rational-circle crosses into dots."""

    source: ParabolicFlag
    crossed: frozenset[int]

    @property
    def flag(self) -> ParabolicFlag | None:
        return ParabolicFlag(self.source.system, self.crossed) if self.crossed else None

    def drops_to(self, target_crossed: Iterable[int]) -> bool:
        """Whether the geometry drops to the parabolic with these crossed nodes."""
        target_crossed = frozenset(target_crossed)
        if not target_crossed <= self.source.crossed:
            raise ValueError("target must contain the source parabolic")
        return target_crossed <= self.crossed


def circle_drop(flag: ParabolicFlag, rational: Iterable[int]) -> CircleDrop:
    rational = frozenset(rational)
    for r in rational:
        flag.system.factor_of_node(r)
    return CircleDrop(flag, flag.crossed - rational)


def borel_dichotomy(flag: ParabolicFlag, rational: Iterable[int]) -> str:
    """For a Borel model: ``"drops"`` if some simple root has rational circles,
    else ``"all-frobenius"`` (every B-submodule Pfaffian system is Frobenius)."""
    if not flag.is_borel:
        raise ValueError("the dichotomy applies to Borel models only")
    q = circle_drop(flag, rational)
    return "drops" if q.crossed != flag.crossed else "all-frobenius"


@dataclass(frozen=True)
class RigidityVerdict:
    rigid: bool
    failures: tuple[tuple[int, str], ...] = field(default=())


def product_rigidity_check(
    flag: ParabolicFlag, submodules: Sequence[Submodule | Iterable[Sequence[int]]]
) -> RigidityVerdict:
    """Check the per-factor hypotheses of the product rigidity statement.

    One submodule per factor, in factor-local coordinates (a Submodule over
    that factor's flag, or an iterable of local roots).
    """
    factors = flag.factor_flags()
    if len(submodules) != len(factors):
        raise ValueError(f"expected {len(factors)} submodules, one per factor")
    failures = []
    for (k, fflag), sub in zip(factors, submodules):
        if fflag is None or len(fflag.crossed) != 1:
            raise ValueError(f"factor {k} ({flag.system.factors[k]}) is not maximally crossed")
        if isinstance(sub, Submodule):
            if sub.flag != fflag:
                raise ValueError(f"submodule for factor {k} lives on {sub.flag.label}, not {fflag.label}")
        else:
            sub = Submodule.from_roots(fflag, sub)
        if not is_submodule(fflag, sub):
            raise ValueError(f"roots given for factor {k} are not closed")
        if not is_nontrivial(sub):
            failures.append((k, "trivial"))
        elif semicanonical_ratio(sub) is None:
            failures.append((k, "not semicanonical"))
        elif is_frobenius(sub):
            failures.append((k, "frobenius"))
    return RigidityVerdict(not failures, tuple(failures))
