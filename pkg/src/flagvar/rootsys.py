"""Finite root systems in exact simple-root coordinates.

Every root is a tuple of integers giving its coefficients on the simple
roots, numbered as in Bourbaki:

    A_n   1 - 2 - ... - n
    B_n   1 - 2 - ... - (n-1) => n        (alpha_n short)
    C_n   1 - 2 - ... - (n-1) <= n        (alpha_n long)
    D_n   1 - 2 - ... - (n-2) < (n-1), n
    E_n   1 - 3 - 4 - 5 - ... - n, with 2 attached to 4
    F_4   1 - 2 => 3 - 4                  (alpha_1, alpha_2 long)
    G_2   1 <= 2                          (alpha_1 short)

A semisimple system is a product of simple factors; its coordinates are
the concatenation of the factors' coordinates and its nodes are numbered
consecutively across factors (factor 2's node 1 is global node
``rank(factor 1) + 1``).
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

Root = tuple[int, ...]

SERIES = "ABCDEFG"


class SpecError(ValueError):
    """Invalid root system or flag descriptor.

    ``code`` is a short machine-readable tag such as ``"bad-rank"``.
    """

    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code


@dataclass(frozen=True, order=True)
class RootSystemType:
    series: str
    rank: int

    def __post_init__(self):
        if self.series not in SERIES or len(self.series) != 1:
            raise SpecError("bad-series", f"unknown series {self.series!r}; expected one of {SERIES}")
        if not isinstance(self.rank, int) or isinstance(self.rank, bool):
            raise SpecError("bad-rank", f"rank must be an integer, got {self.rank!r}")
        lo, allowed = {
            "A": (1, None),
            "B": (2, None),
            "C": (2, None),
            "D": (3, None),
            "E": (6, (6, 7, 8)),
            "F": (4, (4,)),
            "G": (2, (2,)),
        }[self.series]
        if self.rank < lo or (allowed is not None and self.rank not in allowed):
            raise SpecError("bad-rank", f"{self.series}{self.rank} is not a valid type")

    def __str__(self):
        return f"{self.series}{self.rank}"

    @classmethod
    def parse(cls, text: str) -> "RootSystemType":
        """Parse ``"G2"`` or ``"b3"``."""
        text = text.strip()
        if len(text) < 2 or not text[1:].isdigit():
            raise SpecError("bad-type", f"cannot parse root system type {text!r}")
        return cls(text[0].upper(), int(text[1:]))

    def to_dict(self) -> dict:
        return {"series": self.series, "rank": self.rank}

    @classmethod
    def from_dict(cls, d: dict) -> "RootSystemType":
        try:
            return cls(str(d["series"]).upper(), d["rank"])
        except KeyError as exc:
            raise SpecError("bad-descriptor", f"factor descriptor missing {exc}") from None


def _chain(n: int) -> list[list[int]]:
    m = [[0] * n for _ in range(n)]
    for i in range(n):
        m[i][i] = 2
        if i + 1 < n:
            m[i][i + 1] = m[i + 1][i] = -1
    return m


def _from_edges(n: int, edges: Iterable[tuple[int, int]]) -> list[list[int]]:
    m = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for a, b in edges:
        m[a - 1][b - 1] = m[b - 1][a - 1] = -1
    return m


def cartan_matrix(t: RootSystemType) -> list[list[int]]:
    """Cartan matrix with entry ``[i][j] = <alpha_j, alpha_i^vee>``."""
    n = t.rank
    if t.series == "A":
        return _chain(n)
    if t.series == "B":
        m = _chain(n)
        m[n - 1][n - 2] = -2
        return m
    if t.series == "C":
        m = _chain(n)
        m[n - 2][n - 1] = -2
        return m
    if t.series == "D":
        edges = [(i, i + 1) for i in range(1, n - 1)] + [(n - 2, n)]
        return _from_edges(n, edges)
    if t.series == "E":
        edges = [(1, 3), (3, 4), (4, 5), (2, 4)] + [(i, i + 1) for i in range(5, n)]
        return _from_edges(n, edges)
    if t.series == "F":
        m = _chain(4)
        m[2][1] = -2
        return m
    # G2
    return [[2, -3], [-1, 2]]


def _block_diagonal(blocks: Sequence[list[list[int]]]) -> list[list[int]]:
    n = sum(len(b) for b in blocks)
    m = [[0] * n for _ in range(n)]
    off = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, x in enumerate(row):
                m[off + i][off + j] = x
        off += len(b)
    return m


def pairing(cartan: Sequence[Sequence[int]], v: Sequence[int], i: int) -> int:
    """``<v, alpha_i^vee>`` for v in simple-root coordinates (i is 0-based)."""
    row = cartan[i]
    return sum(c * row[j] for j, c in enumerate(v) if c)


def positive_roots_by_strings(cartan: Sequence[Sequence[int]]) -> list[Root]:
    """Positive roots by breadth-first closure over root strings.

    gamma + alpha_i is a root iff p - <gamma, alpha_i^vee> > 0, where p is the
    length of the alpha_i-string below gamma.  Roots come out height by height.
    """
    n = len(cartan)
    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    known = set(simple)
    layer = list(simple)
    out = list(simple)
    while layer:
        nxt: list[Root] = []
        for g in layer:
            for i in range(n):
                if g == simple[i]:
                    continue
                p = 0
                down = list(g)
                while True:
                    down[i] -= 1
                    if tuple(down) not in known:
                        break
                    p += 1
                if p - pairing(cartan, g, i) > 0:
                    up = list(g)
                    up[i] += 1
                    up = tuple(up)
                    if up not in known:
                        known.add(up)
                        nxt.append(up)
        out.extend(nxt)
        layer = nxt
    return out


def reflection_closure_roots(cartan: Sequence[Sequence[int]]) -> set[Root]:
    """All roots as the orbit of the simple roots under simple reflections."""
    n = len(cartan)
    frontier = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    seen = set(frontier)
    while frontier:
        nxt = []
        for v in frontier:
            for i in range(n):
                c = pairing(cartan, v, i)
                if c == 0:
                    continue
                w = list(v)
                w[i] -= c
                w = tuple(w)
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    return seen


def _sort_key(r: Root):
    return (sum(r), r)


class RootSystem:
    """A (possibly reducible) root system with interned positive roots.

    Treat instances as immutable.  ``positive`` is ordered by
    (height, coefficient tuple); ``index(r)`` gives a root's position in
    that ordering, which is what bitmasks over roots refer to.
    """

    def __init__(self, factors: Sequence[RootSystemType] | RootSystemType):
        if isinstance(factors, RootSystemType):
            factors = (factors,)
        factors = tuple(factors)
        if not factors:
            raise SpecError("bad-descriptor", "a root system needs at least one factor")
        self.factors: tuple[RootSystemType, ...] = factors
        self.cartan: tuple[tuple[int, ...], ...] = tuple(
            tuple(row) for row in _block_diagonal([cartan_matrix(t) for t in factors])
        )
        self.rank = len(self.cartan)
        self.simple: tuple[Root, ...] = tuple(
            tuple(int(i == j) for j in range(self.rank)) for i in range(self.rank)
        )
        self.positive: tuple[Root, ...] = tuple(sorted(positive_roots_by_strings(self.cartan), key=_sort_key))
        self._index = {r: k for k, r in enumerate(self.positive)}
        self._roots = frozenset(self.positive) | frozenset(negate(r) for r in self.positive)
        offs = []
        off = 0
        for t in factors:
            offs.append(off)
            off += t.rank
        self.offsets: tuple[int, ...] = tuple(offs)

    def __repr__(self):
        return f"RootSystem({' x '.join(str(t) for t in self.factors)})"

    def __eq__(self, other):
        return isinstance(other, RootSystem) and self.factors == other.factors

    def __hash__(self):
        return hash(self.factors)

    @property
    def is_irreducible(self) -> bool:
        return len(self.factors) == 1

    @property
    def roots(self) -> frozenset[Root]:
        return self._roots

    def is_root(self, v: Sequence[int]) -> bool:
        return tuple(v) in self._roots

    def index(self, root: Sequence[int]) -> int:
        """Dense index of a positive root."""
        try:
            return self._index[tuple(root)]
        except KeyError:
            raise ValueError(f"{tuple(root)} is not a positive root of {self}") from None

    def add(self, a: Sequence[int], b: Sequence[int]) -> Root | None:
        a, b = tuple(a), tuple(b)
        for r in (a, b):
            if r not in self._roots:
                raise ValueError(f"{r} is not a root of {self}")
        s = tuple(x + y for x, y in zip(a, b))
        return s if s in self._roots else None

    @cached_property
    def positive_sum_table(self) -> tuple[tuple[int, ...], ...]:
        """``table[i][j]`` = index of positive[i] + positive[j], or -1."""
        idx = self._index
        rows = []
        for a in self.positive:
            rows.append(tuple(idx.get(tuple(x + y for x, y in zip(a, b)), -1) for b in self.positive))
        return tuple(rows)

    def factor_of_node(self, node: int) -> int:
        """Factor index of a 1-based global node number."""
        if not 1 <= node <= self.rank:
            raise SpecError("bad-node", f"node {node} out of range 1..{self.rank} for {self}")
        for k in range(len(self.factors) - 1, -1, -1):
            if node > self.offsets[k]:
                return k
        raise AssertionError("unreachable")

    def factor_support(self, root: Sequence[int]) -> int:
        """Factor index carrying a root (roots never straddle factors)."""
        for k, t in enumerate(self.factors):
            o = self.offsets[k]
            if any(root[o:o + t.rank]):
                return k
        raise ValueError("zero vector has no support")

    def highest_root(self) -> Root:
        if not self.is_irreducible:
            raise ValueError(f"{self} is reducible; query its components separately")
        top = self.positive[-1]
        for r in self.positive:
            if any(x < y for x, y in zip(top, r)):
                raise AssertionError(f"{top} does not dominate {r}")
        return top

    def components(self) -> list[tuple[int, "RootSystem"]]:
        return [(k, RootSystem(t)) for k, t in enumerate(self.factors)]

    def embed(self, factor: int, root: Sequence[int]) -> Root:
        """Place a factor-local coordinate vector into global coordinates."""
        out = [0] * self.rank
        o = self.offsets[factor]
        t = self.factors[factor]
        if len(root) != t.rank:
            raise ValueError(f"expected {t.rank} coordinates for {t}")
        out[o:o + t.rank] = root
        return tuple(out)

    def restrict(self, factor: int, root: Sequence[int]) -> Root:
        o = self.offsets[factor]
        return tuple(root[o:o + self.factors[factor].rank])


def negate(r: Sequence[int]) -> Root:
    return tuple(-x for x in r)


_CACHE: dict[tuple[RootSystemType, ...], RootSystem] = {}


def build_root_system(types: RootSystemType | Sequence[RootSystemType] | str) -> RootSystem:
    """Build (or fetch the cached) root system for one or more factors."""
    if isinstance(types, str):
        types = [RootSystemType.parse(p) for p in types.replace("x", " ").split()]
    if isinstance(types, RootSystemType):
        types = (types,)
    key = tuple(types)
    sys = _CACHE.get(key)
    if sys is None:
        sys = _CACHE[key] = RootSystem(key)
    return sys


def add_roots(sys: RootSystem, a: Sequence[int], b: Sequence[int]) -> Root | None:
    return sys.add(a, b)


def highest_root(sys: RootSystem) -> Root:
    return sys.highest_root()


def is_root(sys: RootSystem, v: Sequence[int]) -> bool:
    if len(v) != sys.rank:
        raise ValueError(f"vector has length {len(v)}, expected {sys.rank}")
    return sys.is_root(v)


def diagram_components(types: Sequence[RootSystemType]) -> list[tuple[int, RootSystem]]:
    return [(k, build_root_system(t)) for k, t in enumerate(types)]


def expected_positive_count(t: RootSystemType) -> int:
    n = t.rank
    return {
        "A": n * (n + 1) // 2,
        "B": n * n,
        "C": n * n,
        "D": n * (n - 1),
        "E": {6: 36, 7: 63, 8: 120}.get(n, 0),
        "F": 24,
        "G": 6,
    }[t.series]
