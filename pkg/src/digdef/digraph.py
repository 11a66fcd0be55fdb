"""Concrete finite digraphs on vertices ``1..n`` (loops allowed).

Edges are stored as an adjacency bit matrix: ``rows[i]`` has bit ``j`` set
iff ``(i+1, j+1)`` is an edge. Everything is immutable; equality is labeled
equality. Isomorphism-level reasoning goes through :mod:`digdef.canon`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Sequence


class DigraphFormatError(ValueError):
    """Malformed digraph text; ``line`` is 1-based when known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class Digraph:
    n: int
    rows: tuple[int, ...] = field(repr=False)

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("a digraph needs at least one vertex")
        if len(self.rows) != self.n:
            raise ValueError(f"expected {self.n} adjacency rows, got {len(self.rows)}")
        full = (1 << self.n) - 1
        for r in self.rows:
            if r < 0 or r & ~full:
                raise ValueError("edge endpoint outside 1..n")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Digraph":
        rows = [0] * max(n, 0)
        for u, v in edges:
            if not (1 <= u <= n and 1 <= v <= n):
                raise ValueError(f"edge ({u}, {v}) outside 1..{n}")
            rows[u - 1] |= 1 << (v - 1)
        return cls(n, tuple(rows))

    @classmethod
    def from_matrix(cls, matrix: Sequence[Sequence[int]]) -> "Digraph":
        n = len(matrix)
        return cls(n, tuple(sum(1 << j for j, x in enumerate(row) if x) for row in matrix))

    # -- basic queries (0-based helpers are prefixed with an underscore) --

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    @cached_property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return tuple((i + 1, j + 1) for i, r in enumerate(self.rows) for j in _bits(r))

    @cached_property
    def cols(self) -> tuple[int, ...]:
        """In-neighbour masks: bit ``i`` of ``cols[j]`` iff edge ``(i+1, j+1)``."""
        cols = [0] * self.n
        for i, r in enumerate(self.rows):
            for j in _bits(r):
                cols[j] |= 1 << i
        return tuple(cols)

    @cached_property
    def loop_mask(self) -> int:
        return sum(1 << i for i, r in enumerate(self.rows) if r >> i & 1)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.rows[u - 1] >> (v - 1) & 1)

    def has_loop(self, v: int) -> bool:
        return self.has_edge(v, v)

    @property
    def edge_count(self) -> int:
        return sum(r.bit_count() for r in self.rows)

    @property
    def loop_count(self) -> int:
        return self.loop_mask.bit_count()

    def out_degree(self, v: int) -> int:
        """Out-degree ignoring the loop at ``v``."""
        return (self.rows[v - 1] & ~(1 << (v - 1))).bit_count()

    def in_degree(self, v: int) -> int:
        return (self.cols[v - 1] & ~(1 << (v - 1))).bit_count()

    def successors(self, v: int) -> list[int]:
        return [j + 1 for j in _bits(self.rows[v - 1])]

    def predecessors(self, v: int) -> list[int]:
        return [i + 1 for i in _bits(self.cols[v - 1])]

    # -- derived digraphs --

    def relabel(self, perm: Sequence[int]) -> "Digraph":
        """Image under ``v -> perm[v-1]`` (``perm`` a permutation of ``1..n``)."""
        if sorted(perm) != list(self.vertices):
            raise ValueError("relabel needs a permutation of the vertex set")
        return Digraph.from_edges(self.n, ((perm[u - 1], perm[v - 1]) for u, v in self.edges))

    def induced(self, vertices: Sequence[int]) -> "Digraph":
        """Induced subgraph on ``vertices``, relabeled ``1..k`` in the given order."""
        pos = {v: k + 1 for k, v in enumerate(vertices)}
        return Digraph.from_edges(
            len(vertices), ((pos[u], pos[v]) for u, v in self.edges if u in pos and v in pos)
        )

    def add_edges(self, edges: Iterable[tuple[int, int]]) -> "Digraph":
        return Digraph.from_edges(self.n, (*self.edges, *edges))

    def remove_edges(self, edges: Iterable[tuple[int, int]]) -> "Digraph":
        drop = set(edges)
        return Digraph.from_edges(self.n, (e for e in self.edges if e not in drop))

    def add_loops(self, vertices: Iterable[int]) -> "Digraph":
        return self.add_edges((v, v) for v in vertices)

    def __str__(self) -> str:
        return f"Digraph(n={self.n}, edges={list(self.edges)})"


def transpose(g: Digraph) -> Digraph:
    return Digraph(g.n, g.cols)


def disjoint_union(*graphs: Digraph) -> Digraph:
    """Vertices of each later argument are shifted past the earlier ones."""
    if not graphs:
        raise ValueError("disjoint_union needs at least one digraph")
    rows: list[int] = []
    for g in graphs:
        shift = len(rows)
        rows.extend(r << shift for r in g.rows)
    return Digraph(len(rows), tuple(rows))


def saturate_loops(g: Digraph) -> Digraph:
    return Digraph(g.n, tuple(r | 1 << i for i, r in enumerate(g.rows)))


def strip_loops(g: Digraph) -> Digraph:
    return Digraph(g.n, tuple(r & ~(1 << i) for i, r in enumerate(g.rows)))


def component_vertex_sets(g: Digraph) -> list[tuple[int, ...]]:
    """Weakly connected components as sorted vertex tuples, ordered by least vertex."""
    undirected = [r | c for r, c in zip(g.rows, g.cols)]
    seen = 0
    comps = []
    for start in range(g.n):
        if seen >> start & 1:
            continue
        comp = frontier = 1 << start
        while frontier:
            nxt = 0
            for v in _bits(frontier):
                nxt |= undirected[v]
            frontier = nxt & ~comp
            comp |= frontier
        seen |= comp
        comps.append(tuple(v + 1 for v in _bits(comp)))
    return comps


def is_weakly_connected(g: Digraph) -> bool:
    return len(component_vertex_sets(g)) == 1


# -- text format --------------------------------------------------------------


def parse_digraph(text: str) -> Digraph:
    """Parse ``n`` followed by one ``u v`` line per edge; ``#`` starts a comment line."""
    n = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        try:
            nums = [int(p) for p in parts]
        except ValueError:
            raise DigraphFormatError(f"expected integers, got {line!r}", lineno) from None
        if n is None:
            if len(nums) != 1 or nums[0] < 1:
                raise DigraphFormatError("first line must be a positive vertex count", lineno)
            n = nums[0]
            continue
        if len(nums) != 2:
            raise DigraphFormatError(f"edge line needs two vertices, got {line!r}", lineno)
        u, v = nums
        if not (1 <= u <= n and 1 <= v <= n):
            raise DigraphFormatError(f"vertex out of range 1..{n} in {line!r}", lineno)
        edges.append((u, v))
    if n is None:
        raise DigraphFormatError("empty input: missing vertex count")
    return Digraph.from_edges(n, edges)


def format_digraph(g: Digraph, comment: str | None = None) -> str:
    lines = [f"# {comment}"] if comment else []
    lines.append(str(g.n))
    lines.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(lines) + "\n"


def to_dot(g: Digraph, name: str = "G") -> str:
    """Graphviz rendering; looped vertices are filled so they stand out."""
    out = [f'digraph "{name}" {{']
    for v in g.vertices:
        style = ' style=filled fillcolor="#f4a261"' if g.has_loop(v) else ""
        out.append(f"  {v}{style};")
    for u, v in g.edges:
        if u == v:
            out.append(f'  {u} -> {v} [color="#e76f51"];')
        else:
            out.append(f"  {u} -> {v};")
    out.append("}")
    return "\n".join(out) + "\n"
