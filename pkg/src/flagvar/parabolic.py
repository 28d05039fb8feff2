"""Generalized flag varieties G/P as Dynkin diagrams with crossed nodes."""
from __future__ import annotations

from functools import cached_property
from typing import Iterable, Sequence

from .rootsys import (
    Root,
    RootSystem,
    RootSystemType,
    SpecError,
    build_root_system,
    negate,
    pairing,
)

Weight = tuple[int, ...]


class ParabolicFlag:
    """A root system together with a nonempty set of crossed nodes.

    Crossed nodes use 1-based global (Bourbaki) numbering.  The noncompact
    positive roots are kept in the system's positive-root order; bit ``k`` of
    a submodule mask refers to ``noncompact[k]``.
    """

    def __init__(self, system: RootSystem, crossed: Iterable[int]):
        crossed = frozenset(int(c) for c in crossed)
        if not crossed:
            raise SpecError("empty-crossing", "no crossed nodes: that is G itself, not a flag variety")
        for c in crossed:
            system.factor_of_node(c)
        self.system = system
        self.crossed: frozenset[int] = crossed
        cols = sorted(c - 1 for c in crossed)
        self._cols = cols
        compact_pos = [r for r in system.positive if not any(r[c] for c in cols)]
        self.compact: tuple[Root, ...] = tuple(compact_pos) + tuple(negate(r) for r in compact_pos)
        self.noncompact: tuple[Root, ...] = tuple(r for r in system.positive if any(r[c] for c in cols))
        self._bit = {r: k for k, r in enumerate(self.noncompact)}
        self.omega: Weight = tuple(sum(col) for col in zip(*self.noncompact))

    def __repr__(self):
        return f"ParabolicFlag({self.label})"

    def __eq__(self, other):
        return isinstance(other, ParabolicFlag) and self.system == other.system and self.crossed == other.crossed

    def __hash__(self):
        return hash((self.system, self.crossed))

    @property
    def label(self) -> str:
        parts = []
        for k, t in enumerate(self.system.factors):
            local = self.local_crossed(k)
            parts.append(f"{t}/{{{','.join(map(str, local))}}}")
        return " x ".join(parts)

    @property
    def dimension(self) -> int:
        return len(self.noncompact)

    @property
    def full_mask(self) -> int:
        return (1 << len(self.noncompact)) - 1

    @property
    def is_borel(self) -> bool:
        return len(self.crossed) == self.system.rank

    def bit(self, root: Sequence[int]) -> int:
        try:
            return self._bit[tuple(root)]
        except KeyError:
            raise ValueError(f"{tuple(root)} is not a noncompact positive root of {self.label}") from None

    def is_noncompact(self, root: Sequence[int]) -> bool:
        return tuple(root) in self._bit

    def mask_of(self, roots: Iterable[Sequence[int]]) -> int:
        m = 0
        for r in roots:
            m |= 1 << self.bit(r)
        return m

    def roots_of(self, mask: int) -> tuple[Root, ...]:
        return tuple(r for k, r in enumerate(self.noncompact) if mask >> k & 1)

    def level(self, root: Sequence[int]) -> int:
        return sum(root[c] for c in self._cols)

    def local_crossed(self, factor: int) -> tuple[int, ...]:
        o = self.system.offsets[factor]
        r = self.system.factors[factor].rank
        return tuple(sorted(c - o for c in self.crossed if o < c <= o + r))

    def to_dict(self) -> dict:
        return {
            "factors": [t.to_dict() for t in self.system.factors],
            "crossed": [list(self.local_crossed(k)) for k in range(len(self.system.factors))],
        }

    @cached_property
    def successor_masks(self) -> tuple[int, ...]:
        """Bit k: noncompact roots reachable from noncompact[k] in one step.

        A step adds a compact root (either sign) or a noncompact positive root
        and must land on a root.
        """
        roots = self.system.roots
        bit = self._bit
        out = []
        for a in self.noncompact:
            m = 0
            for b in self.compact + self.noncompact:
                s = tuple(x + y for x, y in zip(a, b))
                if s in roots:
                    m |= 1 << bit[s]
            out.append(m)
        return tuple(out)

    @cached_property
    def reach_masks(self) -> tuple[int, ...]:
        """Transitive closure of successor_masks, each including its own bit."""
        reach = [m | (1 << k) for k, m in enumerate(self.successor_masks)]
        changed = True
        while changed:
            changed = False
            for k in range(len(reach)):
                acc = reach[k]
                m = acc
                while m:
                    low = m & -m
                    acc |= reach[low.bit_length() - 1]
                    m ^= low
                if acc != reach[k]:
                    reach[k] = acc
                    changed = True
        return tuple(reach)

    @cached_property
    def sum_pairs(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        """For each noncompact root, the unordered pairs (i <= j) of noncompact
        positive roots summing to it."""
        pairs: list[list[tuple[int, int]]] = [[] for _ in self.noncompact]
        nc = self.noncompact
        for i in range(len(nc)):
            for j in range(i, len(nc)):
                s = tuple(x + y for x, y in zip(nc[i], nc[j]))
                k = self._bit.get(s)
                if k is not None:
                    pairs[k].append((i, j))
        return tuple(tuple(p) for p in pairs)

    def factor_flags(self) -> list[tuple[int, "ParabolicFlag | None"]]:
        """Per-factor projections; None for factors with nothing crossed."""
        out = []
        for k, t in enumerate(self.system.factors):
            local = self.local_crossed(k)
            out.append((k, ParabolicFlag(build_root_system(t), local) if local else None))
        return out


def make_flag(system: RootSystem, crossed: Iterable[int] | str) -> ParabolicFlag:
    if crossed == "all":
        crossed = range(1, system.rank + 1)
    return ParabolicFlag(system, crossed)


def flag_from_dict(d: dict) -> ParabolicFlag:
    """Build a flag from ``{"factors": [...], "crossed": [[...], ...]}``."""
    try:
        factors = [RootSystemType.from_dict(f) for f in d["factors"]]
        crossed_lists = d["crossed"]
    except (KeyError, TypeError) as exc:
        raise SpecError("bad-descriptor", f"malformed flag descriptor: {exc}") from None
    if len(crossed_lists) != len(factors):
        raise SpecError("bad-descriptor", "need one crossed list per factor")
    system = build_root_system(factors)
    crossed = []
    for k, local in enumerate(crossed_lists):
        r = factors[k].rank
        if local == "all":
            local = range(1, r + 1)
        for c in local:
            if not 1 <= int(c) <= r:
                raise SpecError("bad-node", f"node {c} out of range 1..{r} for {factors[k]}")
            crossed.append(system.offsets[k] + int(c))
    return ParabolicFlag(system, crossed)


def dimension(flag: ParabolicFlag) -> int:
    return flag.dimension


def omega(flag: ParabolicFlag) -> Weight:
    return flag.omega


def level_grading(flag: ParabolicFlag) -> dict[Root, int]:
    return {r: flag.level(r) for r in flag.noncompact}


def adjoint_crossing(system: RootSystem) -> frozenset[int]:
    if not system.is_irreducible:
        raise ValueError(f"{system} is reducible; build adjoint flags per factor")
    theta = system.highest_root()
    return frozenset(i + 1 for i in range(system.rank) if pairing(system.cartan, theta, i) != 0)


def adjoint_flag(system: RootSystem) -> ParabolicFlag:
    """The stabilizer of the highest-root line."""
    return ParabolicFlag(system, adjoint_crossing(system))
