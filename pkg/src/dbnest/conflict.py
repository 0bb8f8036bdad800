"""Bit-packed conflict structures shared by the searches.

Bit sets are Python ints: bit ``v`` stands for placement variable ``v``.
AND, popcount and emptiness tests then run in C over machine words.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass, field
from typing import Iterator, Mapping

from .dotgrid import Instance, VariableTable, compute_stencils

DEFAULT_MEMORY_BUDGET = 2 << 30  # bytes for the V*V adjacency


class CapacityError(MemoryError):
    pass


class BitVector:
    """Fixed-length bit vector backed by an int."""

    __slots__ = ("bits", "length")

    def __init__(self, length: int, bits: int = 0):
        self.length = length
        self.bits = bits & ((1 << length) - 1)

    @classmethod
    def ones(cls, length: int) -> "BitVector":
        return cls(length, (1 << length) - 1)

    @classmethod
    def from_indices(cls, length: int, idx) -> "BitVector":
        bits = 0
        for i in idx:
            bits |= 1 << i
        return cls(length, bits)

    def __getitem__(self, i: int) -> bool:
        return bool(self.bits >> i & 1)

    def __and__(self, other: "BitVector") -> "BitVector":
        return BitVector(self.length, self.bits & other.bits)

    def __eq__(self, other) -> bool:
        return isinstance(other, BitVector) and (self.length, self.bits) == (other.length, other.bits)

    def __len__(self) -> int:
        return self.length

    def __repr__(self) -> str:
        return f"BitVector({self.length}, popcount={self.popcount()})"

    def popcount(self) -> int:
        return self.bits.bit_count()

    def any(self) -> bool:
        return self.bits != 0

    def indices(self) -> Iterator[int]:
        return iter_bits(self.bits)

    def to_words(self) -> list[int]:
        nwords = (self.length + 63) // 64
        return [(self.bits >> (64 * k)) & 0xFFFFFFFFFFFFFFFF for k in range(nwords)]


def iter_bits(x: int) -> Iterator[int]:
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def range_mask(start: int, end: int) -> int:
    return ((1 << (end - start)) - 1) << start


@dataclass
class ConflictMatrix:
    """Rows of the conflict-inverse adjacency: bit w of ``rows[v]`` is 1 when
    v and w may be active together. Same-type rows are symmetry broken."""

    rows: list[int]
    V: int
    edge_count: int
    neighbors: list[int] = field(repr=False)  # conflict graph G, no symmetry breaking

    def row(self, v: int) -> BitVector:
        return BitVector(self.V, self.rows[v])

    def __getitem__(self, vw: tuple[int, int]) -> int:
        v, w = vw
        return self.rows[v] >> w & 1

    @property
    def nbytes(self) -> int:
        return self.V * ((self.V + 63) // 64) * 8

    def edges(self) -> Iterator[tuple[int, int]]:
        for v, nb in enumerate(self.neighbors):
            for w in iter_bits(nb >> (v + 1)):
                yield v, v + 1 + w

    def export(self, path) -> None:
        """Row-major dump, each row padded to little-endian 64-bit words."""
        nwords = (self.V + 63) // 64
        with open(path, "wb") as fh:
            for r in self.rows:
                fh.write(struct.pack(f"<{nwords}Q", *BitVector(self.V, r).to_words()))

    def describe(self) -> str:
        return f"V={self.V} edges={self.edge_count} bytes={self.nbytes}"


def conflict_neighbors(
    inst: Instance, table: VariableTable, stencils: Mapping | None = None
) -> tuple[list[int], int]:
    """Conflict-graph adjacency bitsets and the number of unordered edges."""
    if stencils is None:
        stencils = compute_stencils(inst)
    b = inst.board
    R, C = b.rows, b.cols
    index = table.index
    nbrs = [0] * table.V
    # rotations available per type
    keys = [(u, kb) for u in range(inst.T) for kb in range(len(inst.types[u].rotations))]
    for v, var in enumerate(table.vars):
        c, r = divmod(var.dot, R)
        bits = 0
        for u, kb in keys:
            for dc, dr in stencils[(var.type_id, var.rotation_id, u, kb)]:
                cc, rr = c + dc, r + dr
                if 0 <= cc < C and 0 <= rr < R:
                    w = index.get((u, kb, cc * R + rr))
                    if w is not None and w != v:
                        bits |= 1 << w
        nbrs[v] = bits
    # enforce symmetry (stencils are symmetric up to tolerance)
    for v in range(table.V):
        for w in iter_bits(nbrs[v]):
            nbrs[w] |= 1 << v
    edges = sum(x.bit_count() for x in nbrs) // 2
    return nbrs, edges


def build_conflict_matrix(
    table: VariableTable,
    neighbors: list[int],
    memory_budget: int = DEFAULT_MEMORY_BUDGET,
) -> ConflictMatrix:
    """Inverse-graph rows with the same-type prefix (including the diagonal)
    cleared, so identical pieces are always placed in increasing index order."""
    V = table.V
    need = V * ((V + 63) // 64) * 8
    if need > memory_budget:
        raise CapacityError(
            f"conflict matrix needs {need} bytes for V={V}, budget is {memory_budget}"
        )
    full = (1 << V) - 1
    rows = [full & ~nb for nb in neighbors]
    for start, end in table.type_ranges.values():
        for i in range(start, end):
            rows[i] &= ~range_mask(start, i + 1)
    edges = sum(x.bit_count() for x in neighbors) // 2
    return ConflictMatrix(rows, V, edges, list(neighbors))


@dataclass
class GlobalState:
    """Search-time shared structures.

    ``non_dominated`` and ``type_masks`` are the only fields that change during
    a search, and only inside the incumbent lock; bits only go 1 -> 0.
    """

    matrix: ConflictMatrix
    table: VariableTable
    non_dominated: int
    type_masks: dict[int, int]
    instance_order: list[int]
    instance_types: list[int]
    bounds: list[float]
    next_types: list[list[int]]

    @property
    def V(self) -> int:
        return self.table.V

    @property
    def edge_count(self) -> int:
        return self.matrix.edge_count

    @property
    def N(self) -> int:
        return len(self.instance_types)

    def reset(self, enabled: int | None = None) -> None:
        """Re-enable ``enabled`` (default: all) and rebuild the type masks."""
        V = self.V
        self.non_dominated = ((1 << V) - 1) if enabled is None else enabled
        self.type_masks = {
            t: range_mask(s, e) & self.non_dominated for t, (s, e) in self.table.type_ranges.items()
        }


def init_global_state(inst: Instance, matrix: ConflictMatrix, table: VariableTable) -> GlobalState:
    # piece instances grouped by type, types by non-increasing area
    instance_order = []
    first = {}
    k = 0
    for t in range(inst.T):
        first[t] = k
        k += inst.types[t].demand
    for t in table.type_order:
        instance_order.extend(range(first[t], first[t] + inst.types[t].demand))
    types = list(table.instance_types)
    nxt = []
    for level in range(len(types)):
        seen: list[int] = []
        for t in types[level + 1:]:
            if t not in seen:
                seen.append(t)
        nxt.append(seen)
    state = GlobalState(
        matrix=matrix,
        table=table,
        non_dominated=0,
        type_masks={},
        instance_order=instance_order,
        instance_types=types,
        bounds=list(table.bounds),
        next_types=nxt,
    )
    state.reset()
    return state


def propagate(feasible: BitVector | int, matrix: ConflictMatrix, v: int):
    """Feasible set after activating ``v``; a new object, input untouched."""
    if isinstance(feasible, BitVector):
        return BitVector(feasible.length, feasible.bits & matrix.rows[v])
    return feasible & matrix.rows[v]


def build_state(inst: Instance, memory_budget: int = DEFAULT_MEMORY_BUDGET):
    """Convenience pipeline: variables, conflicts, matrix, global state."""
    from .dotgrid import enumerate_variables

    table = enumerate_variables(inst)
    nbrs, _ = conflict_neighbors(inst, table)
    matrix = build_conflict_matrix(table, nbrs, memory_budget)
    return init_global_state(inst, matrix, table)
