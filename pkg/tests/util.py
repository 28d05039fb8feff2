from itertools import combinations

from flagvar.parabolic import make_flag
from flagvar.rootsys import RootSystemType, build_root_system

SMALL_TYPES = ["A1", "A2", "A3", "B2", "B3", "C3", "G2"]


def all_crossings(rank):
    nodes = range(1, rank + 1)
    return [c for k in range(1, rank + 1) for c in combinations(nodes, k)]


def small_flags(types=SMALL_TYPES):
    out = []
    for t in types:
        sys = build_root_system(RootSystemType.parse(t))
        out.extend(make_flag(sys, c) for c in all_crossings(sys.rank))
    return out
