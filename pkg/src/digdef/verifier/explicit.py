"""Explicit-mode evaluation on concrete digraphs.

Used when a lemma's gadgets do not fit in the universe. The order is decided
by embedding search; covers are the elementary steps (one edge, or one
isolated vertex), so ``A ≺ B`` iff ``A <= B`` and ``B`` has exactly one more
edge-or-vertex. Quantified variables range over finite families named by the
caller (loop additions, one-step extensions, ...).
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from typing import Iterable, Iterator

from .. import gadgets as gd
from ..canon import IsoClass, canonicalize
from ..digraph import Digraph, disjoint_union, saturate_loops, strip_loops
from ..embed import embeds


def rank(g: Digraph) -> int:
    return g.n + g.edge_count


@lru_cache(maxsize=200_000)
def _leq_canon(a: Digraph, b: Digraph) -> bool:
    return embeds(a, b)


def leq(a: Digraph, b: Digraph) -> bool:
    if a.n > b.n or a.edge_count > b.edge_count or a.loop_count > b.loop_count:
        return False
    return _leq_canon(canonicalize(a).canonical, canonicalize(b).canonical)


def nleq(a: Digraph | None, b: Digraph) -> bool:
    """``a ≰ b``; ``None`` stands for a digraph known not to exist."""
    return a is None or not leq(a, b)


def iso(a: Digraph, b: Digraph) -> bool:
    return canonicalize(a).key == canonicalize(b).key


def prec(a: Digraph, b: Digraph) -> bool:
    return rank(b) == rank(a) + 1 and leq(a, b)


def same_vertices(a: Digraph, b: Digraph) -> bool:
    return a.n == b.n


def same_loops(a: Digraph, b: Digraph) -> bool:
    return a.loop_count == b.loop_count


def same_strip(a: Digraph, b: Digraph) -> bool:
    return iso(strip_loops(a), strip_loops(b))


def dedupe(graphs: Iterable[Digraph]) -> list[Digraph]:
    seen: dict[bytes, Digraph] = {}
    for g in graphs:
        c = canonicalize(g)
        seen.setdefault(c.key, c.canonical)
    return [seen[k] for k in sorted(seen)]


def keys(graphs: Iterable[Digraph]) -> set[bytes]:
    return {canonicalize(g).key for g in graphs}


def missing_edges(g: Digraph, loops: bool = True) -> list[tuple[int, int]]:
    return [
        (u, v)
        for u in g.vertices
        for v in g.vertices
        if (loops or u != v) and not g.has_edge(u, v)
    ]


def upper_covers(g: Digraph) -> list[Digraph]:
    """One more edge, or one more isolated vertex."""
    grown = [g.add_edges([e]) for e in missing_edges(g)]
    grown.append(disjoint_union(g, gd.empty(1)))
    return dedupe(grown)


def lower_covers(g: Digraph) -> list[Digraph]:
    """One edge fewer, or one isolated vertex fewer."""
    out = [g.remove_edges([e]) for e in g.edges]
    for v in g.vertices:
        if g.in_degree(v) == 0 and g.out_degree(v) == 0 and not g.has_loop(v):
            out.append(g.induced([w for w in g.vertices if w != v]))
    return dedupe(out)


def two_step_covers(g: Digraph) -> list[Digraph]:
    """``W`` with ``g ≺ V ≺ W`` for some ``V``."""
    return dedupe(w for v in upper_covers(g) for w in upper_covers(v))


def loop_additions(g: Digraph, count: int | None = None) -> list[Digraph]:
    """``g`` with loops added to some loop-free vertices; ``count`` fixes how many
    are added. Deduplicated up to isomorphism."""
    free = [v for v in g.vertices if not g.has_loop(v)]
    sizes = range(len(free) + 1) if count is None else [count]
    out = []
    for k in sizes:
        if 0 <= k <= len(free):
            out.extend(g.add_loops(c) for c in combinations(free, k))
    return dedupe(out)


def edge_additions(g: Digraph, k: int, pool: Iterable[tuple[int, int]] | None = None) -> Iterator[Digraph]:
    """``g`` plus exactly ``k`` new edges from ``pool`` (default: every missing edge)."""
    pool = missing_edges(g) if pool is None else list(pool)
    for c in combinations(pool, k):
        yield g.add_edges(c)


def m_of(g: Digraph) -> Digraph:
    return strip_loops(g)


def l_of(g: Digraph) -> Digraph:
    return saturate_loops(g)


def cycle_partitions(n: int, smallest: int = 2) -> Iterator[tuple[int, ...]]:
    """Multisets of cycle lengths (each at least 2) summing to ``n``, non-increasing."""
    def rec(rest: int, largest: int):
        if rest == 0:
            yield ()
            return
        for part in range(min(rest, largest), smallest - 1, -1):
            for tail in rec(rest - part, part):
                yield (part, *tail)

    yield from rec(n, n)


def cycle_union(parts: Iterable[int]) -> Digraph:
    return disjoint_union(*[gd.cycle(p) for p in parts])


def cycles_below(g: Digraph, max_len: int) -> frozenset[int]:
    """Lengths ``k`` in ``2..max_len`` with ``O_k <= g``."""
    return frozenset(k for k in range(2, max_len + 1) if leq(gd.cycle(k), g))


def label(g: Digraph) -> str:
    c: IsoClass = canonicalize(g)
    return c.hex
