"""Canonical forms: the identity of an isomorphism type.

The canonical labeling minimises the row-major adjacency bit string. Up to
8 vertices the minimum is taken over every vertex permutation (vectorised
with numpy). Larger digraphs are canonised component by component, each
connected piece by an individualisation/refinement search whose leaves are
compared on the same bit string. Both routes are label invariant, so equal
keys mean isomorphic digraphs; the key also records ``n``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations

import numpy as np

from .digraph import Digraph, component_vertex_sets

BRUTE_FORCE_MAX = 8


@dataclass(frozen=True)
class IsoClass:
    canonical: Digraph
    key: bytes

    @property
    def n(self) -> int:
        return self.canonical.n

    @property
    def hex(self) -> str:
        return key_hex(self.key)

    def __lt__(self, other: "IsoClass") -> bool:
        return self.key < other.key


def key_hex(key: bytes) -> str:
    n = int.from_bytes(key[:2], "big")
    return f"{n}:{key[2:].hex()}"


def _pack(n: int, code: int) -> bytes:
    """Key bytes: 2-byte vertex count, then the bit string padded to whole bytes."""
    nbits = n * n
    nbytes = (nbits + 7) // 8
    return n.to_bytes(2, "big") + (code << (8 * nbytes - nbits)).to_bytes(nbytes, "big")


def code_of_order(g: Digraph, order: list[int]) -> int:
    """Row-major bit string (as an int, first bit most significant) after
    placing old 0-based vertex ``order[k]`` at position ``k``."""
    n = g.n
    pos = [0] * n
    for k, v in enumerate(order):
        pos[v] = k
    code = 0
    for v in order:
        row = 0
        r = g.rows[v]
        while r:
            low = r & -r
            row |= 1 << (n - 1 - pos[low.bit_length() - 1])
            r ^= low
        code = code << n | row
    return code


@lru_cache(maxsize=None)
def _perm_table(n: int) -> np.ndarray:
    return np.array(list(permutations(range(n))), dtype=np.intp).reshape(-1, n)


def _brute_force_order(g: Digraph) -> list[int]:
    n = g.n
    if n == 1:
        return [0]
    adj = np.array([[r >> j & 1 for j in range(n)] for r in g.rows], dtype=bool)
    perms = _perm_table(n)
    permuted = adj[perms[:, :, None], perms[:, None, :]].reshape(len(perms), n * n)
    packed = np.packbits(permuted, axis=1)
    padded = np.zeros((len(perms), 8), dtype=np.uint8)
    padded[:, : packed.shape[1]] = packed
    best = int(np.argmin(padded.view(">u8").ravel()))
    return [int(x) for x in perms[best]]


def _refine(g: Digraph, cells: list[list[int]]) -> list[list[int]]:
    """Equitable refinement; cells split by neighbour counts into every cell,
    with the resulting pieces ordered by signature (label invariant)."""
    rows, cols = g.rows, g.cols
    while True:
        masks = [sum(1 << v for v in c) for c in cells]
        new_cells: list[list[int]] = []
        for cell in cells:
            if len(cell) == 1:
                new_cells.append(cell)
                continue
            groups: dict[tuple, list[int]] = {}
            for v in cell:
                sig = (
                    rows[v] >> v & 1,
                    tuple((rows[v] & m).bit_count() for m in masks),
                    tuple((cols[v] & m).bit_count() for m in masks),
                )
                groups.setdefault(sig, []).append(v)
            new_cells.extend(groups[s] for s in sorted(groups))
        if len(new_cells) == len(cells):
            return new_cells
        cells = new_cells


def _twins(g: Digraph, u: int, w: int) -> bool:
    """Swapping ``u`` and ``w`` is an automorphism."""
    pair = 1 << u | 1 << w
    rows, cols = g.rows, g.cols
    return (
        rows[u] & ~pair == rows[w] & ~pair
        and cols[u] & ~pair == cols[w] & ~pair
        and (rows[u] >> u & 1) == (rows[w] >> w & 1)
        and (rows[u] >> w & 1) == (rows[w] >> u & 1)
    )


def _search_order(g: Digraph) -> list[int]:
    best: list = [None, None]

    def visit(cells: list[list[int]]) -> None:
        target = next((c for c in cells if len(c) > 1), None)
        if target is None:
            order = [c[0] for c in cells]
            code = code_of_order(g, order)
            if best[0] is None or code < best[0]:
                best[0], best[1] = code, order
            return
        idx = cells.index(target)
        tried: list[int] = []
        for v in target:
            if any(_twins(g, v, t) for t in tried):
                continue
            tried.append(v)
            rest = [x for x in target if x != v]
            visit(_refine(g, cells[:idx] + [[v], rest] + cells[idx + 1 :]))

    visit(_refine(g, [list(range(g.n))]))
    return best[1]


def canonical_order(g: Digraph) -> list[int]:
    """0-based old vertices listed in canonical position order."""
    if g.n <= BRUTE_FORCE_MAX:
        return _brute_force_order(g)
    comps = component_vertex_sets(g)
    if len(comps) == 1:
        return _search_order(g)
    pieces = []
    for comp in comps:
        sub = g.induced(comp)
        cls = canonicalize(sub)
        sub_order = canonical_order(sub)
        pieces.append((cls.n, cls.key, [comp[k] - 1 for k in sub_order]))
    pieces.sort(key=lambda p: (p[0], p[1]))
    return [v for _, _, part in pieces for v in part]


@lru_cache(maxsize=1 << 17)
def canonicalize(g: Digraph) -> IsoClass:
    order = canonical_order(g)
    perm = [0] * g.n
    for k, v in enumerate(order):
        perm[v] = k + 1
    canon = g.relabel(perm)
    return IsoClass(canon, _pack(g.n, code_of_order(g, order)))


def iso_key(g: Digraph) -> bytes:
    return canonicalize(g).key


def is_isomorphic(g: Digraph, h: Digraph) -> bool:
    if g.n != h.n or g.edge_count != h.edge_count or g.loop_count != h.loop_count:
        return False
    return iso_key(g) == iso_key(h)
