"""Greedy edge clique cover and RLF vertex clique cover of the conflict
graph. Graphs are lists of neighbor bitsets (bit w of ``nbrs[v]`` set when
v and w conflict)."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

from ..conflict import iter_bits


@dataclass
class CliqueCover:
    cliques: list[list[int]] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.cliques)

    def __iter__(self):
        return iter(self.cliques)


def is_clique(nbrs: Sequence[int], members: Sequence[int]) -> bool:
    for i, a in enumerate(members):
        for b in members[i + 1:]:
            if not nbrs[a] >> b & 1:
                return False
    return True


def _best(cand: int, key) -> int:
    best, best_key = -1, None
    for c in iter_bits(cand):
        k = key(c)
        if best_key is None or k > best_key:
            best, best_key = c, k
    return best


def edge_clique_cover(nbrs: Sequence[int], prune: bool = True) -> CliqueCover:
    """Cover every edge by a clique.

    Uncovered edges are scanned in (u, w) order; each seeds a clique grown
    greedily inside the common neighborhood, preferring candidates with most
    neighbors among the remaining candidates, then larger degree. With
    ``prune``, cliques whose edges are all covered elsewhere are dropped
    afterwards, smallest first.
    """
    V = len(nbrs)
    deg = [x.bit_count() for x in nbrs]
    uncovered = [nbrs[v] >> (v + 1) << (v + 1) for v in range(V)]
    cover = CliqueCover()
    for u in range(V):
        while uncovered[u]:
            w = (uncovered[u] & -uncovered[u]).bit_length() - 1
            clique = [u, w]
            cand = nbrs[u] & nbrs[w]
            while cand:
                c = _best(cand, lambda x: ((nbrs[x] & cand).bit_count(), deg[x], -x))
                clique.append(c)
                cand &= nbrs[c]
            clique.sort()
            mask = 0
            for a in clique:
                mask |= 1 << a
            for a in clique:
                uncovered[a] &= ~mask
            cover.cliques.append(clique)
    if prune:
        cover = _drop_redundant(cover)
    return cover


def _drop_redundant(cover: CliqueCover) -> CliqueCover:
    count: dict[tuple[int, int], int] = {}
    for c in cover:
        for e in combinations(c, 2):
            count[e] = count.get(e, 0) + 1
    keep = [True] * len(cover)
    for k in sorted(range(len(cover)), key=lambda k: (len(cover.cliques[k]), k)):
        pairs = list(combinations(cover.cliques[k], 2))
        if all(count[e] > 1 for e in pairs):
            keep[k] = False
            for e in pairs:
                count[e] -= 1
    return CliqueCover([c for c, f in zip(cover.cliques, keep) if f])


def vertex_clique_cover(
    nbrs: Sequence[int], bounds: Sequence[float], lower_bound: float, eps: float = 1e-9
) -> CliqueCover:
    """Partition the variables with bound above ``lower_bound`` into cliques.

    Recursive Largest First coloring of the complement graph restricted to
    those variables; each color class is a set of mutually conflicting
    variables, so at most one of them can be active.
    """
    V = len(nbrs)
    top = 0
    for v in range(V):
        if bounds[v] > lower_bound + eps:
            top |= 1 << v
    comp = {v: top & ~nbrs[v] & ~(1 << v) for v in iter_bits(top)}
    cover = CliqueCover()
    U = top
    while U:
        v = _best(U, lambda x: ((comp[x] & U).bit_count(), -x))
        color = [v]
        cand = U & ~comp[v] & ~(1 << v)
        excluded = U & comp[v]
        while cand:
            c = _best(cand, lambda x: ((comp[x] & excluded).bit_count(), -(comp[x] & cand).bit_count(), -x))
            color.append(c)
            excluded |= cand & comp[c]
            cand &= ~comp[c] & ~(1 << c)
        for c in color:
            U &= ~(1 << c)
        cover.cliques.append(sorted(color))
    return cover
