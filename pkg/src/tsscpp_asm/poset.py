"""
Finite posets generated by closing a seed under a move system.

Elements are stored in canonical (sorted) order and referred to by index; covers
are pairs ``(lower, upper)`` of indices.  Isomorphism testing uses color
refinement followed by backtracking, which is plenty for the few-hundred element
posets that occur here.
"""

from __future__ import annotations

import sys
from collections import deque
from dataclasses import dataclass
from itertools import product as _cartesian
from typing import Any, Callable, Hashable, Iterable, Sequence

MAX_ISOMORPHISM_SIZE = 10_000


class PosetError(ValueError):
    pass


@dataclass(frozen=True)
class Poset:
    elements: tuple
    covers: frozenset[tuple[int, int]]
    labels: tuple | None = None

    def __post_init__(self):
        if self.labels is not None and len(self.labels) != len(self.elements):
            raise PosetError("one label per element required")

    def __len__(self) -> int:
        return len(self.elements)

    def index(self, element) -> int:
        return self._index_map()[element]

    def _index_map(self) -> dict:
        # cached on the instance; dataclass is frozen so go through object
        try:
            return self.__dict__["_idx"]
        except KeyError:
            idx = {e: k for k, e in enumerate(self.elements)}
            object.__setattr__(self, "_idx", idx)
            return idx

    def upper_covers(self, k: int) -> list[int]:
        return sorted(b for a, b in self.covers if a == k)

    def lower_covers(self, k: int) -> list[int]:
        return sorted(a for a, b in self.covers if b == k)

    def minimal(self) -> list[int]:
        uppers = {b for _, b in self.covers}
        return [k for k in range(len(self)) if k not in uppers]

    def maximal(self) -> list[int]:
        lowers = {a for a, _ in self.covers}
        return [k for k in range(len(self)) if k not in lowers]

    def with_labels(self, labels: Iterable[Hashable]) -> "Poset":
        return Poset(self.elements, self.covers, tuple(labels))

    def relabel(self, fn: Callable[[Any], Hashable]) -> "Poset":
        return self.with_labels(fn(e) for e in self.elements)

    def to_dot(self, fmt: Callable[[Any], str] = str, name: str = "poset") -> str:
        """Graphviz source: one node per element, one edge per cover, bottom to top."""
        lines = [f"digraph {name} {{", "  rankdir=BT;", "  node [shape=box, fontname=monospace];"]
        for k, e in enumerate(self.elements):
            text = fmt(e)
            if self.labels is not None:
                text += "\n" + str(self.labels[k])
            text = text.replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\l")
            lines.append(f'  n{k} [label="{text}\\l"];')
        for a, b in sorted(self.covers):
            lines.append(f"  n{a} -> n{b};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def _topological_order(size: int, edges: set[tuple[int, int]]) -> list[int]:
    indeg = [0] * size
    out: list[list[int]] = [[] for _ in range(size)]
    for a, b in edges:
        indeg[b] += 1
        out[a].append(b)
    queue = deque(k for k in range(size) if indeg[k] == 0)
    order = []
    while queue:
        k = queue.popleft()
        order.append(k)
        for b in out[k]:
            indeg[b] -= 1
            if indeg[b] == 0:
                queue.append(b)
    if len(order) != size:
        raise PosetError("cycle detected: the move system is not monotone")
    return order


def _transitive_reduction(size: int, edges: set[tuple[int, int]]) -> frozenset[tuple[int, int]]:
    order = _topological_order(size, edges)
    out: list[set[int]] = [set() for _ in range(size)]
    for a, b in edges:
        out[a].add(b)
    # reach[k] = everything strictly above k
    reach: list[set[int]] = [set() for _ in range(size)]
    for k in reversed(order):
        for b in out[k]:
            reach[k].add(b)
            reach[k] |= reach[b]
    covers = set()
    for a in range(size):
        for b in out[a]:
            if not any(b in reach[c] for c in out[a] if c != b):
                covers.add((a, b))
    return frozenset(covers)


def from_relations(elements: Sequence, edges: Iterable[tuple[int, int]], labels=None) -> Poset:
    edges = {(a, b) for a, b in edges if a != b}
    return Poset(tuple(elements), _transitive_reduction(len(elements), edges), labels)


def closure(seed, successors: Callable[[Any], Iterable], key: Callable | None = None) -> Poset:
    """Close ``seed`` under ``successors``; each move goes up one step.

    Elements come out sorted (by ``key`` if given), so the result does not depend
    on the traversal schedule.
    """
    seen = {seed}
    queue = deque([seed])
    moves = []
    while queue:
        x = queue.popleft()
        for y in successors(x):
            moves.append((x, y))
            if y not in seen:
                seen.add(y)
                queue.append(y)
    elements = sorted(seen, key=key)
    idx = {e: k for k, e in enumerate(elements)}
    return from_relations(elements, ((idx[x], idx[y]) for x, y in moves))


def dual(P: Poset) -> Poset:
    return Poset(P.elements, frozenset((b, a) for a, b in P.covers), P.labels)


def product(*posets: Poset) -> Poset:
    """Cartesian product; elements are tuples, covers change one coordinate."""
    if not posets:
        return Poset(((),), frozenset())
    index_tuples = list(_cartesian(*(range(len(P)) for P in posets)))
    idx = {t: k for k, t in enumerate(index_tuples)}
    covers = set()
    for t in index_tuples:
        for axis, P in enumerate(posets):
            for b in P.upper_covers(t[axis]) if len(P) < 64 else _uppers(P)[t[axis]]:
                u = t[:axis] + (b,) + t[axis + 1:]
                covers.add((idx[t], idx[u]))
    elements = tuple(tuple(P.elements[i] for P, i in zip(posets, t)) for t in index_tuples)
    labels = None
    if all(P.labels is not None for P in posets):
        labels = tuple(tuple(P.labels[i] for P, i in zip(posets, t)) for t in index_tuples)
    return Poset(elements, frozenset(covers), labels)


def _uppers(P: Poset) -> list[list[int]]:
    ups: list[list[int]] = [[] for _ in range(len(P))]
    for a, b in P.covers:
        ups[a].append(b)
    return ups


def _adjacency(P: Poset) -> tuple[list[set[int]], list[set[int]]]:
    up: list[set[int]] = [set() for _ in range(len(P))]
    down: list[set[int]] = [set() for _ in range(len(P))]
    for a, b in P.covers:
        up[a].add(b)
        down[b].add(a)
    return up, down


def _refine(P: Poset, Q: Poset, respect_labels: bool):
    """Joint color refinement; returns per-element colors for P and Q."""
    adj = [_adjacency(P), _adjacency(Q)]
    posets = [P, Q]
    colors = []
    for X, (up, down) in zip(posets, adj):
        lab = X.labels if (respect_labels and X.labels is not None) else [None] * len(X)
        colors.append([(repr(lab[k]), len(up[k]), len(down[k])) for k in range(len(X))])
    while True:
        sigs = []
        for col, (up, down) in zip(colors, adj):
            sigs.append([
                (col[k], tuple(sorted(col[u] for u in up[k])), tuple(sorted(col[d] for d in down[k])))
                for k in range(len(col))
            ])
        palette = {s: c for c, s in enumerate(sorted(set(sigs[0]) | set(sigs[1])))}
        new = [[palette[s] for s in sig] for sig in sigs]
        if len(set(new[0]) | set(new[1])) == len(set(map(repr, colors[0])) | set(map(repr, colors[1]))):
            return new
        colors = new


def is_isomorphic(
    P: Poset,
    Q: Poset,
    respect_labels: bool = False,
    fixed: dict[int, int] | None = None,
) -> dict[int, int] | None:
    """Find a cover-preserving bijection P -> Q (as an index map), or None.

    With ``respect_labels`` the map must also preserve labels.  ``fixed`` pins
    some images in advance.  The search order is fixed, so the result is
    deterministic.
    """
    if max(len(P), len(Q)) > MAX_ISOMORPHISM_SIZE:
        raise PosetError(f"posets larger than {MAX_ISOMORPHISM_SIZE} elements are not supported")
    if len(P) != len(Q) or len(P.covers) != len(Q.covers):
        return None
    if respect_labels and (P.labels is None or Q.labels is None):
        raise PosetError("labels requested but missing")
    if len(P) == 0:
        return {}
    cp, cq = _refine(P, Q, respect_labels)
    if sorted(cp) != sorted(cq):
        return None
    pu, pd = _adjacency(P)
    qu, qd = _adjacency(Q)
    by_color: dict[int, list[int]] = {}
    for k, c in enumerate(cq):
        by_color.setdefault(c, []).append(k)

    # visit P in BFS order from the smallest color classes so constraints bite early
    class_size = {c: len(v) for c, v in by_color.items()}
    order: list[int] = []
    placed = set()
    for start in sorted(range(len(P)), key=lambda k: (class_size[cp[k]], k)):
        if start in placed:
            continue
        queue = deque([start])
        placed.add(start)
        while queue:
            k = queue.popleft()
            order.append(k)
            for nb in sorted(pu[k] | pd[k]):
                if nb not in placed:
                    placed.add(nb)
                    queue.append(nb)

    mapping: dict[int, int] = {}
    used: set[int] = set()
    fixed = dict(fixed or {})
    for a, b in fixed.items():
        if cp[a] != cq[b]:
            return None

    def consistent(x: int, y: int) -> bool:
        for u in pu[x]:
            if u in mapping and mapping[u] not in qu[y]:
                return False
        for d in pd[x]:
            if d in mapping and mapping[d] not in qd[y]:
                return False
        # no extra covers on the Q side among mapped elements
        mapped_up = sum(1 for u in pu[x] if u in mapping)
        mapped_down = sum(1 for d in pd[x] if d in mapping)
        q_up = sum(1 for u in qu[y] if u in used)
        q_down = sum(1 for d in qd[y] if d in used)
        return mapped_up == q_up and mapped_down == q_down

    def search(t: int) -> bool:
        if t == len(order):
            return True
        x = order[t]
        candidates = [fixed[x]] if x in fixed else by_color[cp[x]]
        for y in candidates:
            if y in used or not consistent(x, y):
                continue
            mapping[x] = y
            used.add(y)
            if search(t + 1):
                return True
            del mapping[x]
            used.discard(y)
        return False

    limit = sys.getrecursionlimit()
    if limit < len(P) + 100:
        sys.setrecursionlimit(len(P) + 100)
    try:
        found = search(0)
    finally:
        sys.setrecursionlimit(limit)
    return dict(sorted(mapping.items())) if found else None


def is_isomorphism(P: Poset, Q: Poset, mapping: dict[int, int], respect_labels: bool = False) -> bool:
    """Check that ``mapping`` is a bijection carrying covers of P exactly onto covers of Q."""
    if len(P) != len(Q) or sorted(mapping) != list(range(len(P))):
        return False
    if sorted(mapping.values()) != list(range(len(Q))):
        return False
    if {(mapping[a], mapping[b]) for a, b in P.covers} != set(Q.covers):
        return False
    if respect_labels:
        return all(P.labels[k] == Q.labels[v] for k, v in mapping.items())
    return True
