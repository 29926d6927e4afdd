"""
Second PC step: v-structures from the skeleton and its separating sets,
then Meek's rules R1-R4 up to a fixed point.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from itertools import combinations
from typing import FrozenSet, List, Set, Tuple

from .core import AdjacencyMatrix
from .exceptions import DataError, PreconditionError
from .sepsets import SeparationSets

logger = logging.getLogger(__name__)

Arc = Tuple[int, int]


def _pair(i: int, j: int) -> Arc:
    return (i, j) if i < j else (j, i)


@dataclass(frozen=True)
class MixedGraph:
    """CPDAG as directed arcs plus undirected edges (stored as (min, max))."""

    n: int
    directed: FrozenSet[Arc] = field(default_factory=frozenset)
    undirected: FrozenSet[Arc] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        directed = frozenset((int(a), int(b)) for a, b in self.directed)
        undirected = frozenset(_pair(int(a), int(b)) for a, b in self.undirected)
        for a, b in directed | undirected:
            if a == b or not (0 <= a < self.n and 0 <= b < self.n):
                raise PreconditionError(f"invalid edge ({a}, {b}) for {self.n} variables")
        if any((b, a) in directed for a, b in directed):
            raise PreconditionError("directed edges must not form 2-cycles")
        if {_pair(a, b) for a, b in directed} & undirected:
            raise PreconditionError("an edge cannot be both directed and undirected")
        object.__setattr__(self, "directed", directed)
        object.__setattr__(self, "undirected", undirected)

    def skeleton_pairs(self) -> Set[Arc]:
        return {_pair(a, b) for a, b in self.directed} | set(self.undirected)

    def adjacent(self, a: int, b: int) -> bool:
        return (a, b) in self.directed or (b, a) in self.directed or _pair(a, b) in self.undirected


def find_v_structures(skeleton: AdjacencyMatrix, sepsets: SeparationSets) -> MixedGraph:
    """
    Orient i -> k <- j for every unshielded triple whose middle node is not
    in sepset(i, j). Edges receiving votes in both directions stay undirected.
    """
    n = skeleton.n
    votes: Set[Arc] = set()
    for k in range(n):
        neighbors = [v for v in range(n) if skeleton.has_edge(k, v)]
        for i, j in combinations(neighbors, 2):
            if skeleton.has_edge(i, j):
                continue
            hit, cond = sepsets.get(i, j)
            if not hit:
                raise DataError(f"no separating set stored for removed pair ({i}, {j})")
            if k not in cond:
                votes.add((i, k))
                votes.add((j, k))

    conflicted = {_pair(a, b) for a, b in votes if (b, a) in votes}
    if conflicted:
        logger.info("%d edge(s) with conflicting v-structure orientations left undirected", len(conflicted))
    directed = {arc for arc in votes if _pair(*arc) not in conflicted}
    undirected = {e for e in skeleton.edges() if e not in {_pair(a, b) for a, b in directed}}
    return MixedGraph(n, frozenset(directed), frozenset(undirected))


class _Working:
    def __init__(self, g: MixedGraph) -> None:
        self.n = g.n
        self.directed: Set[Arc] = set(g.directed)
        self.undirected: Set[Arc] = set(g.undirected)

    def adjacent(self, a: int, b: int) -> bool:
        return (a, b) in self.directed or (b, a) in self.directed or _pair(a, b) in self.undirected

    def is_undirected(self, a: int, b: int) -> bool:
        return _pair(a, b) in self.undirected

    def parents(self, b: int) -> List[int]:
        return sorted(a for a, x in self.directed if x == b)

    def children(self, a: int) -> List[int]:
        return sorted(b for x, b in self.directed if x == a)

    def undirected_neighbors(self, a: int) -> List[int]:
        return sorted({y if x == a else x for x, y in self.undirected if a in (x, y)})

    def orient(self, a: int, b: int) -> None:
        self.undirected.discard(_pair(a, b))
        self.directed.add((a, b))

    def freeze(self) -> MixedGraph:
        return MixedGraph(self.n, frozenset(self.directed), frozenset(self.undirected))


def _rule1(g: _Working, a: int, b: int) -> bool:
    # c -> a - b, c and b nonadjacent
    return any(not g.adjacent(c, b) for c in g.parents(a) if c != b)


def _rule2(g: _Working, a: int, b: int) -> bool:
    # a -> c -> b
    return any((c, b) in g.directed for c in g.children(a))


def _rule3(g: _Working, a: int, b: int) -> bool:
    # a - c -> b, a - d -> b, c and d nonadjacent
    cands = [c for c in g.undirected_neighbors(a) if (c, b) in g.directed]
    return any(not g.adjacent(c, d) for c, d in combinations(cands, 2))


def _rule4(g: _Working, a: int, b: int) -> bool:
    # a - d -> c -> b, a adjacent to c, d and b nonadjacent
    for d in g.undirected_neighbors(a):
        if d == b or g.adjacent(d, b):
            continue
        for c in g.children(d):
            if c not in (a, b) and (c, b) in g.directed and g.adjacent(a, c):
                return True
    return False


_RULES = (_rule1, _rule2, _rule3, _rule4)


def apply_meek_rules(g: MixedGraph) -> MixedGraph:
    """Orient undirected edges by R1-R4 until nothing changes."""
    work = _Working(g)
    changed = True
    while changed:
        changed = False
        for rule in _RULES:
            for x, y in sorted(work.undirected):
                if not work.is_undirected(x, y):
                    continue
                for a, b in ((x, y), (y, x)):
                    if rule(work, a, b):
                        work.orient(a, b)
                        changed = True
                        break
    return work.freeze()


def orient(skeleton: AdjacencyMatrix, sepsets: SeparationSets) -> MixedGraph:
    """CPDAG from a skeleton and its separating sets."""
    return apply_meek_rules(find_v_structures(skeleton, sepsets))
