"""P-submodules of the cotangent module as closed sets of noncompact roots.

A P-invariant subspace of (g/p)* is a sum of root spaces, and the set S of
its roots is closed under adding compact roots and noncompact positive roots
(whenever the sum is a root).  Such sets are exactly the up-sets of the
reachability preorder ``a -> a + b``, which is how they are enumerated.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .parabolic import ParabolicFlag, Weight
from .rootsys import Root

DEFAULT_CAP = 10**7


class EnumerationOverflow(RuntimeError):
    """Raised when an enumeration would exceed its configured cap."""

    def __init__(self, cap: int, what: str = "submodules"):
        super().__init__(f"more than {cap} {what}; raise FLAGVAR_GUARD to continue")
        self.cap = cap


def default_cap() -> int:
    env = os.environ.get("FLAGVAR_GUARD")
    if env:
        try:
            return int(env)
        except ValueError:
            raise ValueError(f"FLAGVAR_GUARD must be an integer, got {env!r}") from None
    return DEFAULT_CAP


def _popcount(m: int) -> int:
    return bin(m).count("1")


@dataclass(frozen=True)
class Submodule:
    """A set of noncompact positive roots of ``flag``, stored as a bitmask.

    The constructor does not check closure; use :func:`is_submodule` or build
    through :func:`saturate` / :func:`enumerate_submodules`.
    """

    flag: ParabolicFlag
    members: int

    @classmethod
    def from_roots(cls, flag: ParabolicFlag, roots: Iterable[Sequence[int]]) -> "Submodule":
        return cls(flag, flag.mask_of(roots))

    @cached_property
    def roots(self) -> tuple[Root, ...]:
        return self.flag.roots_of(self.members)

    @property
    def size(self) -> int:
        return _popcount(self.members)

    @cached_property
    def weight(self) -> Weight:
        rank = self.flag.system.rank
        if not self.members:
            return (0,) * rank
        return tuple(sum(col) for col in zip(*self.roots))

    def __contains__(self, root) -> bool:
        return self.flag.is_noncompact(root) and bool(self.members >> self.flag.bit(root) & 1)

    def __len__(self):
        return self.size

    def to_dict(self) -> dict:
        ratio = semicanonical_ratio(self)
        index = self.flag.system.index
        return {
            "members": [index(r) for r in self.roots],
            "weight": list(self.weight),
            "ratio": None if ratio is None else f"{ratio.numerator}/{ratio.denominator}",
            "nontrivial": is_nontrivial(self),
            "frobenius": is_frobenius(self),
            "contact": is_contact(self),
        }


def _as_mask(flag: ParabolicFlag, roots) -> int:
    if isinstance(roots, Submodule):
        return roots.members
    if isinstance(roots, int):
        return roots
    return flag.mask_of(roots)


def is_submodule(flag: ParabolicFlag, roots) -> bool:
    m = _as_mask(flag, roots)
    succ = flag.successor_masks
    k = m
    while k:
        low = k & -k
        if succ[low.bit_length() - 1] & ~m:
            return False
        k ^= low
    return True


def saturate(flag: ParabolicFlag, seeds) -> Submodule:
    """Smallest submodule containing the seed roots."""
    m = _as_mask(flag, seeds)
    reach = flag.reach_masks
    out = 0
    k = m
    while k:
        low = k & -k
        out |= reach[low.bit_length() - 1]
        k ^= low
    return Submodule(flag, out)


def _classes(flag: ParabolicFlag) -> list[tuple[int, int]]:
    """Equivalence classes of the preorder, top first, as (class mask, strictly-above mask)."""
    reach = flag.reach_masks
    seen = 0
    classes = []
    for k in range(len(reach)):
        if seen >> k & 1:
            continue
        cls = 0
        m = reach[k]
        while m:
            low = m & -m
            j = low.bit_length() - 1
            if reach[j] >> k & 1:
                cls |= low
            m ^= low
        seen |= cls
        classes.append((cls, reach[k] & ~cls))
    # anything strictly above a class reaches fewer roots, so this is a linear extension
    classes.sort(key=lambda c: (_popcount(c[1]), c[0]))
    return classes


def iter_submodule_masks(flag: ParabolicFlag, cap: int | None = None) -> list[int]:
    """All up-set masks (unsorted).  Raises EnumerationOverflow past ``cap``."""
    if cap is None:
        cap = default_cap()
    classes = _classes(flag)
    n = len(classes)
    out: list[int] = []
    # explicit stack of (depth, chosen mask)
    stack = [(0, 0)]
    while stack:
        depth, chosen = stack.pop()
        while depth < n:
            cls, above = classes[depth]
            depth += 1
            if not above & ~chosen:
                stack.append((depth, chosen))
                chosen |= cls
        out.append(chosen)
        if len(out) > cap:
            raise EnumerationOverflow(cap)
    return out


def enumerate_submodules(flag: ParabolicFlag, cap: int | None = None) -> list[Submodule]:
    """Every submodule, ordered by size then bitmask."""
    masks = iter_submodule_masks(flag, cap)
    masks.sort(key=lambda m: (_popcount(m), m))
    return [Submodule(flag, m) for m in masks]


def det_weight(S: Submodule) -> Weight:
    return S.weight


def ratio_against(weight: Sequence[int], omega: Sequence[int]) -> Fraction | None:
    """t with weight == t * omega exactly, or None."""
    pivot = next((i for i, w in enumerate(omega) if w), None)
    if pivot is None:
        return Fraction(0) if not any(weight) else None
    t = Fraction(weight[pivot], omega[pivot])
    p, q = t.numerator, t.denominator
    for w, o in zip(weight, omega):
        if w * q != p * o:
            return None
    return t


def semicanonical_ratio(S: Submodule) -> Fraction | None:
    return ratio_against(S.weight, S.flag.omega)


def is_semicanonical(S: Submodule) -> bool:
    return semicanonical_ratio(S) is not None


def is_nontrivial(S: Submodule) -> bool:
    return S.members != 0 and S.members != S.flag.full_mask


def is_frobenius(S: Submodule) -> bool:
    """No member of S is a sum of two noncompact positive roots outside S."""
    m = S.members
    pairs = S.flag.sum_pairs
    k = m
    while k:
        low = k & -k
        for i, j in pairs[low.bit_length() - 1]:
            if not (m >> i & 1) and not (m >> j & 1):
                return False
        k ^= low
    return True


def is_contact(S: Submodule) -> bool:
    """S = {theta} and theta - beta is noncompact positive for every other beta."""
    if S.size != 1:
        return False
    flag = S.flag
    (theta,) = S.roots
    for b in flag.noncompact:
        if b == theta:
            continue
        if not flag.is_noncompact(tuple(x - y for x, y in zip(theta, b))):
            return False
    return True


def decomposition_count(S: Submodule, root: Sequence[int]) -> int:
    root = tuple(root)
    if root not in S:
        raise ValueError(f"{root} is not a member of the submodule")
    m = S.members
    return sum(
        1 for i, j in S.flag.sum_pairs[S.flag.bit(root)] if not (m >> i & 1) and not (m >> j & 1)
    )


def growth_vector(flag: ParabolicFlag, roots) -> tuple[int, ...]:
    """Sizes of the bracket filtration generated by the roots of V."""
    v = _as_mask(flag, roots)
    if not v:
        return ()
    sums = flag.system.positive_sum_table
    index = flag.system.index
    nc_pos = [index(r) for r in flag.noncompact]
    pos_to_bit = {p: k for k, p in enumerate(nc_pos)}
    v_bits = [k for k in range(len(nc_pos)) if v >> k & 1]
    sizes = [_popcount(v)]
    cur = v
    while True:
        nxt = cur
        for a in range(len(nc_pos)):
            if not cur >> a & 1:
                continue
            for b in v_bits:
                s = sums[nc_pos[a]][nc_pos[b]]
                if s >= 0:
                    nxt |= 1 << pos_to_bit[s]
        if nxt == cur:
            return tuple(sizes)
        cur = nxt
        sizes.append(_popcount(cur))


def is_first_order_nondegenerate(S: Submodule) -> bool:
    """Complement of size k, dim = k(k+1)/2, and distinct complement pairs sum
    bijectively onto S."""
    flag = S.flag
    comp = [k for k in range(flag.dimension) if not S.members >> k & 1]
    k = len(comp)
    if flag.dimension != k * (k + 1) // 2:
        return False
    hit = 0
    nc = flag.noncompact
    for x in range(k):
        for y in range(x + 1, k):
            s = tuple(a + b for a, b in zip(nc[comp[x]], nc[comp[y]]))
            if not flag.is_noncompact(s):
                return False
            bit = 1 << flag.bit(s)
            if not S.members & bit or hit & bit:
                return False
            hit |= bit
    return hit == S.members


def factor_projections(S: Submodule) -> list[tuple[int, Submodule | None]]:
    """Split a submodule of a product flag into per-factor submodules."""
    flag = S.flag
    system = flag.system
    out = []
    for k, fflag in flag.factor_flags():
        if fflag is None:
            out.append((k, None))
            continue
        local = [system.restrict(k, r) for r in S.roots if system.factor_support(r) == k]
        out.append((k, Submodule.from_roots(fflag, local)))
    return out


def direct_sum(flag: ParabolicFlag, parts: Sequence[Submodule | None]) -> Submodule:
    """Inverse of factor_projections."""
    system = flag.system
    roots = []
    for k, part in enumerate(parts):
        if part is not None:
            roots.extend(system.embed(k, r) for r in part.roots)
    return Submodule.from_roots(flag, roots)
