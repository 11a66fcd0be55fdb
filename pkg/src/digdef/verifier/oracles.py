"""Structural oracles over a universe.

These look only at the represented digraphs (edges, loops, components) and at
the gadget constructions. They never read the order matrix, so agreement with
the formula side is a genuine cross-check.
"""

from __future__ import annotations

from functools import cached_property

from .. import gadgets as gd
from ..digraph import Digraph, component_vertex_sets, is_weakly_connected
from ..universe import Universe


def is_cycle_union(g: Digraph) -> bool:
    """Every weakly connected component is a cycle of length at least 2."""
    if g.n < 2 or g.loop_count:
        return False
    return all(g.in_degree(v) == 1 and g.out_degree(v) == 1 for v in g.vertices)


def is_cycle_union_plus_point(g: Digraph) -> bool:
    """A union of cycles, optionally together with one isolated vertex."""
    if g.n < 2 or g.loop_count:
        return False
    isolated = 0
    for v in g.vertices:
        din, dout = g.in_degree(v), g.out_degree(v)
        if din == dout == 0:
            isolated += 1
        elif din != 1 or dout != 1:
            return False
    return isolated <= 1 and isolated < g.n


def cycle_lengths(g: Digraph) -> list[int]:
    return sorted(len(c) for c in component_vertex_sets(g))


class Oracle:
    """Named gadgets and structural classes, located in ``u`` by canonical form."""

    def __init__(self, u: Universe):
        self.u = u
        self.N = u.N

    def find(self, g: Digraph) -> int | None:
        return self.u.find(g)

    def fits(self, g: Digraph) -> int | None:
        return self.u.find(g) if g.n <= self.N else None

    def graphs(self):
        return ((i, self.u.graph(i)) for i in range(len(self.u)))

    def where(self, pred) -> set[int]:
        return {i for i, g in self.graphs() if pred(g)}

    # -- counts --

    def empty(self, k: int) -> int | None:
        return self.fits(gd.empty(k)) if k >= 1 else None

    def loops(self, k: int) -> int | None:
        return self.fits(gd.loops(k)) if k >= 1 else None

    @cached_property
    def e_set(self) -> set[int]:
        return self.where(lambda g: g.edge_count == 0)

    @cached_property
    def l_set(self) -> set[int]:
        return self.where(lambda g: g.edge_count == g.loop_count == g.n)

    @cached_property
    def le_rel(self) -> set[tuple[int, int]]:
        return {(self.loops(k), self.empty(k)) for k in range(1, self.N + 1)}

    @cached_property
    def vertex_rel(self) -> set[tuple[int, int]]:
        return {(i, self.empty(self.u.n_of[i])) for i in range(len(self.u))}

    @cached_property
    def loop_rel(self) -> set[tuple[int, int]]:
        return {(i, self.loops(self.u.loops_of[i])) for i in range(len(self.u)) if self.u.loops_of[i]}

    def vertex_classes(self) -> tuple[int, ...]:
        return self.u.n_of

    def loop_classes(self) -> tuple[int, ...]:
        return self.u.loops_of

    # -- cycles and full digraphs --

    @cached_property
    def h_set(self) -> set[int]:
        return self.where(is_cycle_union_plus_point)

    @cached_property
    def o_set(self) -> set[int]:
        return self.where(is_cycle_union)

    @cached_property
    def o_cup(self) -> set[int]:
        return self.where(lambda g: is_cycle_union(g) and is_weakly_connected(g))

    @cached_property
    def o_rel(self) -> set[tuple[int, int]]:
        return {(self.fits(gd.cycle(k)), self.empty(k)) for k in range(2, self.N + 1)}

    @cached_property
    def f_set(self) -> set[int]:
        return self.where(lambda g: g.edge_count == g.n * g.n)

    @cached_property
    def f_rel(self) -> set[tuple[int, int]]:
        return {(self.fits(gd.full(k)), self.empty(k)) for k in range(1, self.N + 1)}

    @cached_property
    def m_rel(self) -> set[tuple[int, int]]:
        return {(i, j) for i, j in enumerate(self.u.strip_map)}

    def m_classes(self) -> tuple[int, ...]:
        return self.u.strip_map

    @cached_property
    def l_rel(self) -> set[tuple[int, int]]:
        return {(i, j) for i, j in enumerate(self.u.saturate_map)}

    # -- arithmetic on vertex counts --

    @cached_property
    def e_plus(self) -> set[tuple[int, int, int]]:
        out = set()
        for a in range(1, self.N + 1):
            for b in range(1, self.N + 1 - a):
                out.add((self.empty(a), self.empty(b), self.empty(a + b)))
        return out

    @cached_property
    def interval(self) -> set[tuple[int, int]]:
        return {
            (self.empty(a), self.empty(b))
            for a in range(1, self.N + 1)
            for b in range(a + 1, min(2 * a, self.N) + 1)
        }

    # -- gadgets --

    def _rel(self, build, ks) -> set[tuple[int, int]]:
        out = set()
        for k in ks:
            g = build(k)
            x = self.fits(g)
            if x is not None:
                out.add((x, self.empty(k)))
        return out

    @cached_property
    def ostar_rel(self) -> set[tuple[int, int]]:
        return self._rel(gd.star, range(1, self.N + 1))

    @cached_property
    def oarrow_rel(self) -> set[tuple[int, int]]:
        out = set()
        for k in range(2, self.N + 1):
            for t in gd.cycle_extensions(k):
                out.add((self.u.index_of(t), self.empty(k)))
        return out

    @cached_property
    def flag_rel(self) -> set[tuple[int, int]]:
        return self._rel(gd.flag, range(2, self.N + 1))

    @cached_property
    def flag_loop_rel(self) -> set[tuple[int, int]]:
        return self._rel(lambda k: gd.flag(k, looped=True), range(2, self.N + 1))

    @cached_property
    def cycle_loop_rel(self) -> set[tuple[int, int]]:
        return self._rel(gd.cycle_loop, range(2, self.N + 1))

    @cached_property
    def star_loop_rel(self) -> set[tuple[int, int]]:
        return self._rel(lambda k: gd.star(k, looped=True), range(1, self.N + 1))

    @cached_property
    def arrow_pair_rel(self) -> set[tuple[int, int, int]]:
        out = set()
        for i in range(2, self.N + 1):
            for j in range(2, self.N + 1):
                if i + j <= self.N:
                    out.add((self.find(gd.cycle_to_cycle(i, j)), self.empty(i), self.empty(j)))
        return out

    @cached_property
    def double_cycle_rel(self) -> set[tuple[int, int]]:
        return self._rel(gd.cycle_pair, [k for k in range(2, self.N + 1) if 2 * k <= self.N])
