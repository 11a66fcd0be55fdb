"""Component-level structure: wccs, the loop-blind relations, reduced subgraphs."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .canon import IsoClass, canonicalize, iso_key
from .digraph import Digraph, component_vertex_sets, disjoint_union, strip_loops
from .embed import embeds


@dataclass(frozen=True)
class WccDecomposition:
    parent: Digraph
    components: tuple[tuple[IsoClass, tuple[int, ...]], ...]

    @property
    def classes(self) -> Counter:
        """Multiset of component keys."""
        return Counter(c.key for c, _ in self.components)

    def __len__(self) -> int:
        return len(self.components)

    def subgraphs(self) -> list[Digraph]:
        return [self.parent.induced(vs) for _, vs in self.components]


def wccs(g: Digraph) -> WccDecomposition:
    comps = []
    for vs in component_vertex_sets(g):
        comps.append((canonicalize(g.induced(vs)), vs))
    return WccDecomposition(g, tuple(comps))


def equiv_m(g: Digraph, h: Digraph) -> bool:
    """``g ≡ h``: equal after removing every loop."""
    return g.n == h.n and iso_key(strip_loops(g)) == iso_key(strip_loops(h))


def below_m(g: Digraph, h: Digraph) -> bool:
    """``g ⊑ h``: the loop-stripped ``g`` embeds into the loop-stripped ``h``."""
    return embeds(strip_loops(g), strip_loops(h))


def strictly_below_m(g: Digraph, h: Digraph) -> bool:
    return below_m(g, h) and not equiv_m(g, h)


def equiv_components(g: Digraph, c: Digraph) -> list[Digraph]:
    """Components of ``g`` that are ``≡`` to ``c``."""
    target = iso_key(strip_loops(c))
    return [w for w in wccs(g).subgraphs() if iso_key(strip_loops(w)) == target]


def iso_components(g: Digraph, c: Digraph) -> list[Digraph]:
    """Components of ``g`` isomorphic to ``c``."""
    target = iso_key(c)
    return [w for w in wccs(g).subgraphs() if iso_key(w) == target]


@dataclass(frozen=True)
class ReducedPair:
    common: tuple[IsoClass, ...]
    left: tuple[IsoClass, ...]
    right: tuple[IsoClass, ...]

    @staticmethod
    def _union(parts: tuple[IsoClass, ...]) -> Digraph | None:
        return disjoint_union(*(p.canonical for p in parts)) if parts else None

    @property
    def common_graph(self) -> Digraph | None:
        return self._union(self.common)

    @property
    def left_graph(self) -> Digraph | None:
        return self._union(self.left)

    @property
    def right_graph(self) -> Digraph | None:
        return self._union(self.right)


def reduced_subgraphs(g: Digraph, h: Digraph) -> ReducedPair:
    """Split off the largest common multiset of whole components:
    ``g = C ⊔ g_R`` and ``h = C ⊔ h_R``."""
    gw, hw = wccs(g), wccs(h)
    by_key = {c.key: c for c, _ in gw.components + hw.components}
    gc, hc = gw.classes, hw.classes
    common = gc & hc

    def expand(counter: Counter) -> tuple[IsoClass, ...]:
        return tuple(by_key[k] for k in sorted(counter.elements()))

    return ReducedPair(expand(common), expand(gc - common), expand(hc - common))
