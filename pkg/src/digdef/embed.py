"""Injective homomorphisms (the embeddability order ``G <= H``).

Backtracking over injective partial maps. Candidate targets are filtered by
out/in-degree and loop dominance, then narrowed by the adjacency constraints
to vertices that are already placed. Extra target edges are allowed: this
is subgraph embedding, not induced embedding.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .digraph import Digraph


@dataclass(frozen=True)
class Embedding:
    source: Digraph
    target: Digraph
    map: tuple[int, ...]  # map[u-1] is the image of source vertex u

    def __post_init__(self):
        if len(set(self.map)) != len(self.map):
            raise ValueError("embedding map is not injective")
        for u, v in self.source.edges:
            if not self.target.has_edge(self.map[u - 1], self.map[v - 1]):
                raise ValueError(f"edge ({u}, {v}) is not preserved")

    def __call__(self, v: int) -> int:
        return self.map[v - 1]


def _degrees(g: Digraph):
    out = [(r & ~(1 << i)).bit_count() for i, r in enumerate(g.rows)]
    inn = [(c & ~(1 << i)).bit_count() for i, c in enumerate(g.cols)]
    loop = [r >> i & 1 for i, r in enumerate(g.rows)]
    return out, inn, loop


def _plan(g: Digraph, h: Digraph):
    """Search order plus, per step, the static candidate mask and the earlier
    steps this vertex is adjacent to. ``None`` when some vertex has no candidate."""
    if g.n > h.n or g.edge_count > h.edge_count or g.loop_count > h.loop_count:
        return None
    go, gi, gl = _degrees(g)
    ho, hi, hl = _degrees(h)
    static = []
    for u in range(g.n):
        mask = 0
        for t in range(h.n):
            if ho[t] >= go[u] and hi[t] >= gi[u] and hl[t] >= gl[u]:
                mask |= 1 << t
        if not mask:
            return None
        static.append(mask)

    score = [go[u] + gi[u] + 2 * gl[u] for u in range(g.n)]
    undirected = [(g.rows[u] | g.cols[u]) & ~(1 << u) for u in range(g.n)]
    order: list[int] = []
    placed = 0
    remaining = set(range(g.n))
    while remaining:
        u = max(remaining, key=lambda x: ((undirected[x] & placed).bit_count(), score[x], -x))
        order.append(u)
        placed |= 1 << u
        remaining.remove(u)

    steps = []
    for k, u in enumerate(order):
        outs = [j for j in range(k) if g.rows[u] >> order[j] & 1]
        ins = [j for j in range(k) if g.cols[u] >> order[j] & 1]
        steps.append((u, static[u], outs, ins))
    return steps


def iter_embeddings(g: Digraph, h: Digraph) -> Iterator[tuple[int, ...]]:
    """All injective homomorphisms ``g -> h`` as 1-based image tuples."""
    steps = _plan(g, h)
    if steps is None:
        return
    hrows, hcols = h.rows, h.cols
    k_max = len(steps)
    images = [0] * k_max

    def rec(k: int, used: int):
        if k == k_max:
            out = [0] * k_max
            for (u, _, _, _), t in zip(steps, images):
                out[u] = t + 1
            yield tuple(out)
            return
        u, cand, outs, ins = steps[k]
        cand &= ~used
        for j in outs:
            cand &= hcols[images[j]]
        for j in ins:
            cand &= hrows[images[j]]
        while cand:
            low = cand & -cand
            cand ^= low
            images[k] = low.bit_length() - 1
            yield from rec(k + 1, used | low)

    yield from rec(0, 0)


def find_embedding(g: Digraph, h: Digraph) -> Embedding | None:
    for m in iter_embeddings(g, h):
        return Embedding(g, h, m)
    return None


def is_embeddable(g: Digraph, h: Digraph) -> Embedding | None:
    """Witness of ``g <= h`` or ``None``."""
    return find_embedding(g, h)


def embeds(g: Digraph, h: Digraph) -> bool:
    return next(iter_embeddings(g, h), None) is not None
