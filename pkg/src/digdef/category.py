"""The small category of digraphs on ``[n]`` and its digraph model.

Objects are labeled digraphs; a morphism is a triple ``(A, α, B)`` with ``α`` a
homomorphism. Composition is written left to right: ``compose(f, g)`` is
``fg``, i.e. first ``f`` then ``g``. The model side encodes an object as an
anchored digraph ``G <- O_n^*`` and a morphism as an ``F_α(n, m)`` gadget.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product
from typing import Iterable, Iterator, Sequence

from .digraph import Digraph, component_vertex_sets
from .embed import embeds
from .gadgets import (
    anchor,
    cycle,
    cycle_to_cycle,
    empty,
    f_alpha,
    f_family_member,
    flag,
    flag_to_flag,
    path,
    star_anchor,
    star_size,
)


class CategoryError(ValueError):
    pass


class ShapeError(ValueError):
    """Input is not an anchored digraph; the message says which check failed."""


# -- morphisms ------------------------------------------------------------------


def is_homomorphism(a: Digraph, b: Digraph, alpha: Sequence[int]) -> bool:
    if len(alpha) != a.n or any(not 1 <= x <= b.n for x in alpha):
        return False
    return all(b.has_edge(alpha[u - 1], alpha[v - 1]) for u, v in a.edges)


@dataclass(frozen=True)
class MorphismTriple:
    source: Digraph
    map: tuple[int, ...]
    target: Digraph

    def __post_init__(self):
        object.__setattr__(self, "map", tuple(self.map))
        if len(self.map) != self.source.n:
            raise CategoryError("map must send every source vertex somewhere")
        if not is_homomorphism(self.source, self.target, self.map):
            raise CategoryError("map is not a homomorphism")

    def __call__(self, x: int) -> int:
        return self.map[x - 1]

    def to_json(self) -> dict:
        return {"src": digraph_json(self.source), "map": list(self.map), "dst": digraph_json(self.target)}

    @classmethod
    def from_json(cls, obj: dict) -> "MorphismTriple":
        return cls(digraph_from_json(obj["src"]), tuple(obj["map"]), digraph_from_json(obj["dst"]))


def digraph_json(g: Digraph) -> dict:
    return {"n": g.n, "edges": [list(e) for e in g.edges]}


def digraph_from_json(obj: dict) -> Digraph:
    return Digraph.from_edges(obj["n"], (tuple(e) for e in obj["edges"]))


def identity(a: Digraph) -> MorphismTriple:
    return MorphismTriple(a, tuple(a.vertices), a)


def compose(f: MorphismTriple, g: MorphismTriple) -> MorphismTriple:
    """``fg = (A, β∘α, C)`` for ``f = (A, α, B)`` and ``g = (B, β, C)``."""
    if f.target != g.source:
        raise CategoryError("middle objects differ")
    return MorphismTriple(f.source, tuple(g.map[x - 1] for x in f.map), g.target)


def hom_maps(a: Digraph, b: Digraph) -> list[tuple[int, ...]]:
    """All homomorphisms ``a -> b`` as image tuples, in lexicographic order."""
    out: list[tuple[int, ...]] = []
    images = [0] * a.n

    def rec(k: int):
        if k == a.n:
            out.append(tuple(images))
            return
        u = k + 1
        for t in range(1, b.n + 1):
            images[k] = t
            ok = True
            if a.has_edge(u, u) and not b.has_edge(t, t):
                ok = False
            else:
                for w in range(1, u):
                    if a.has_edge(u, w) and not b.has_edge(t, images[w - 1]):
                        ok = False
                        break
                    if a.has_edge(w, u) and not b.has_edge(images[w - 1], t):
                        ok = False
                        break
            if ok:
                rec(k + 1)

    rec(0)
    return out


def hom(a: Digraph, b: Digraph) -> Iterator[MorphismTriple]:
    for m in hom_maps(a, b):
        yield MorphismTriple(a, m, b)


# -- constants of the enriched category -----------------------------------------

E1_OBJ = empty(1)
I2_OBJ = path(2)
F1_MOR = MorphismTriple(E1_OBJ, (1,), I2_OBJ)
F2_MOR = MorphismTriple(E1_OBJ, (2,), I2_OBJ)


# -- injectivity and surjectivity, directly and by cancellation -----------------


def is_mono(f: MorphismTriple) -> bool:
    return len(set(f.map)) == len(f.map)


def is_epi(f: MorphismTriple) -> bool:
    return set(f.map) == set(f.target.vertices)


def _test_objects(max_vertices: int, test_objects: Iterable[Digraph] | None) -> list[Digraph]:
    if test_objects is not None:
        return list(test_objects)
    from .universe import enumerate_types

    # One object per isomorphism type is enough: both cancellation conditions
    # are invariant under replacing X by an isomorphic object.
    return [t.canonical for t in enumerate_types(min(max_vertices, 4))]


def is_mono_categorical(f: MorphismTriple, test_objects: Iterable[Digraph] | None = None) -> bool:
    """``gf = hf  =>  g = h`` for all ``g, h in hom(X, A)`` over the test objects.

    Default test objects have at most ``max(n(A), n(B)) + 1`` vertices; a failure
    of injectivity is already witnessed by ``X = E_1``.
    """
    bound = max(f.source.n, f.target.n) + 1
    for x in _test_objects(bound, test_objects):
        seen: dict[tuple[int, ...], tuple[int, ...]] = {}
        for g in hom_maps(x, f.source):
            comp = tuple(f.map[v - 1] for v in g)
            if comp in seen and seen[comp] != g:
                return False
            seen[comp] = g
    return True


def is_epi_categorical(f: MorphismTriple, test_objects: Iterable[Digraph] | None = None) -> bool:
    """``fg = fh  =>  g = h`` for all ``g, h in hom(B, X)``; a two-vertex ``X``
    with both loops already separates maps differing off the image."""
    bound = max(f.source.n, f.target.n) + 1
    for x in _test_objects(bound, test_objects):
        seen: dict[tuple[int, ...], tuple[int, ...]] = {}
        for g in hom_maps(f.target, x):
            comp = tuple(g[v - 1] for v in f.map)
            if comp in seen and seen[comp] != g:
                return False
            seen[comp] = g
    return True


# -- reading a digraph back from its hom-sets -----------------------------------


def reconstruct(x: Digraph) -> Digraph:
    """``CD_X``: vertices are ``hom(E_1, X)``; ``(f, g)`` is an edge iff some
    ``h in hom(I_2, X)`` has ``f_1 h = f`` and ``f_2 h = g``."""
    points = list(hom(E1_OBJ, x))
    pos = {p: k + 1 for k, p in enumerate(points)}
    edges = []
    arrows = list(hom(I2_OBJ, x))
    for f in points:
        for g in points:
            if any(compose(F1_MOR, h) == f and compose(F2_MOR, h) == g for h in arrows):
                edges.append((pos[f], pos[g]))
    return Digraph.from_edges(len(points), edges)


def point(x: Digraph, v: int) -> MorphismTriple:
    return MorphismTriple(E1_OBJ, (v,), x)


def edge_holds(x: Digraph, f: MorphismTriple, g: MorphismTriple) -> bool:
    """The hom-set test for ``(f(1), g(1)) in E(X)``."""
    return any(compose(F1_MOR, h) == f and compose(F2_MOR, h) == g for h in hom(I2_OBJ, x))


# -- subsets and relations as morphisms from empty digraphs ---------------------


@dataclass(frozen=True)
class SubsetRep:
    host: Digraph
    carrier: Digraph | None  # None stands for the empty subset
    p: MorphismTriple | None

    @property
    def subset(self) -> frozenset[int]:
        return frozenset(self.p.map) if self.p is not None else frozenset()

    def contains(self, f: MorphismTriple) -> bool:
        """``∃ g in hom(E_1, carrier): g p = f``."""
        if self.p is None:
            return False
        return any(compose(g, self.p) == f for g in hom(E1_OBJ, self.carrier))


def represent_subset(a: Digraph, s: Iterable[int]) -> SubsetRep:
    members = sorted(set(s))
    if any(not 1 <= v <= a.n for v in members):
        raise CategoryError("subset element outside the host")
    if not members:
        return SubsetRep(a, None, None)
    carrier = empty(len(members))
    return SubsetRep(a, carrier, MorphismTriple(carrier, tuple(members), a))


def subset_reps(a: Digraph, exhaustive: bool = False) -> Iterator[SubsetRep]:
    """Range of a quantifier over subsets of ``a``. By default one injective
    representative per subset; ``exhaustive`` runs over every ``E_k -> a``
    with ``k <= n(a)`` (each subset then appears as an image many times)."""
    yield SubsetRep(a, None, None)
    for k in range(1, a.n + 1):
        carrier = empty(k)
        if exhaustive:
            for m in product(a.vertices, repeat=k):
                yield SubsetRep(a, carrier, MorphismTriple(carrier, m, a))
        else:
            for combo in combinations(a.vertices, k):
                yield SubsetRep(a, carrier, MorphismTriple(carrier, combo, a))


@dataclass(frozen=True)
class RelationRep:
    hosts: tuple[Digraph, ...]
    carrier: Digraph | None
    projections: tuple[MorphismTriple, ...]

    @property
    def tuples(self) -> frozenset[tuple[int, ...]]:
        if self.carrier is None:
            return frozenset()
        return frozenset(tuple(p(x) for p in self.projections) for x in self.carrier.vertices)

    def contains(self, fs: Sequence[MorphismTriple]) -> bool:
        """``∃ f in hom(E_1, E_|R|)`` with ``f p_i = f_i`` for every ``i``."""
        if self.carrier is None:
            return False
        if len(fs) != len(self.projections):
            raise CategoryError("tuple arity differs from the relation's")
        return any(
            all(compose(f, p) == fi for p, fi in zip(self.projections, fs))
            for f in hom(E1_OBJ, self.carrier)
        )


def represent_relation(hosts: Sequence[Digraph], r: Iterable[Sequence[int]]) -> RelationRep:
    hosts = tuple(hosts)
    rows = sorted({tuple(t) for t in r})
    for t in rows:
        if len(t) != len(hosts) or any(not 1 <= x <= h.n for x, h in zip(t, hosts)):
            raise CategoryError(f"tuple {t} does not fit the hosts")
    if not rows:
        return RelationRep(hosts, None, ())
    carrier = empty(len(rows))
    projections = tuple(
        MorphismTriple(carrier, tuple(t[i] for t in rows), h) for i, h in enumerate(hosts)
    )
    return RelationRep(hosts, carrier, projections)


def so_not_weakly_connected(g: Digraph, exhaustive: bool = False) -> bool:
    """Evaluate ``∃H⊆G (∃v,w (v∈H ∧ w∉H) ∧ ∀x,y (x→y ⇒ (x,y∈H ∨ x,y∉H)))``
    with ``H`` ranging over subset representations and every membership and
    edge test done through hom-sets."""
    points = [point(g, v) for v in g.vertices]
    edge = {(x, y): edge_holds(g, points[x - 1], points[y - 1]) for x in g.vertices for y in g.vertices}
    for rep in subset_reps(g, exhaustive):
        inside = {v: rep.contains(points[v - 1]) for v in g.vertices}
        if not (any(inside.values()) and not all(inside.values())):
            continue
        if all(inside[x] == inside[y] for (x, y), e in edge.items() if e):
            return True
    return False


# -- objects as anchored digraphs -----------------------------------------------


@dataclass(frozen=True)
class ObjectEncoding:
    plain: Digraph
    order: tuple[int, ...]
    encoded: Digraph

    @property
    def n(self) -> int:
        return self.plain.n

    @property
    def cd_object(self) -> Digraph:
        """The object on ``[n]``: label ``i`` is the vertex anchored by cycle ``i``."""
        perm = [0] * self.n
        for i, v in enumerate(self.order):
            perm[v - 1] = i + 1
        return self.plain.relabel(perm)


def encode_object(g: Digraph, order: Sequence[int] | None = None) -> ObjectEncoding:
    order = tuple(order) if order is not None else tuple(g.vertices)
    return ObjectEncoding(g, order, anchor(g, order))


def object_for(a: Digraph) -> ObjectEncoding:
    """Encoding whose ``cd_object`` is exactly ``a``."""
    return encode_object(a, tuple(a.vertices))


def _star_order_from_total(total: int) -> int | None:
    n = 1
    while n + star_size(n) < total:
        n += 1
    return n if n + star_size(n) == total else None


def _sccs(x: Digraph) -> list[tuple[int, ...]]:
    """Strongly connected components (iterative Tarjan), vertex tuples sorted."""
    index: dict[int, int] = {}
    low: dict[int, int] = {}
    on_stack: set[int] = set()
    stack: list[int] = []
    out: list[tuple[int, ...]] = []
    counter = 0
    for root in x.vertices:
        if root in index:
            continue
        work = [(root, iter(x.successors(root)))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(x.successors(w))))
                    advanced = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                low[work[-1][0]] = min(low[work[-1][0]], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == v:
                        break
                out.append(tuple(sorted(comp)))
    return out


def decode_object(x: Digraph) -> ObjectEncoding:
    n = _star_order_from_total(x.n)
    if n is None:
        raise ShapeError(f"{x.n} vertices is not n + n^2 + n(n+1)/2 for any n")
    big = [c for c in _sccs(x) if len(c) > n]
    lengths = sorted(len(c) for c in big)
    if lengths != list(range(n + 1, 2 * n + 1)):
        raise ShapeError(f"expected one strong cycle of each length {n + 1}..{2 * n}, found lengths {lengths}")
    star_vertices = {v for c in big for v in c}
    plain_vertices = [v for v in x.vertices if v not in star_vertices]
    targets: dict[int, int] = {}
    for c in big:
        cs = set(c)
        anchors = []
        for v in c:
            inner = [w for w in x.successors(v) if w in cs]
            outer = [w for w in x.successors(v) if w not in cs]
            if len(inner) != 1 or v in inner:
                raise ShapeError(f"strong component of length {len(c)} is not a simple cycle")
            if [w for w in x.predecessors(v) if w not in cs]:
                raise ShapeError(f"cycle of length {len(c)} receives an edge from outside")
            if outer:
                anchors.append((v, outer))
        if len(anchors) != 1 or len(anchors[0][1]) != 1:
            raise ShapeError(f"cycle of length {len(c)} must have exactly one outgoing anchor edge")
        target = anchors[0][1][0]
        if target in star_vertices:
            raise ShapeError(f"anchor edge of the length-{len(c)} cycle does not land in the plain part")
        targets[len(c) - n] = target
    if sorted(targets.values()) != sorted(plain_vertices):
        raise ShapeError("anchor edges do not land bijectively on the plain part")
    relabel = {v: k + 1 for k, v in enumerate(plain_vertices)}
    plain = x.induced(plain_vertices)
    order = tuple(relabel[targets[i]] for i in range(1, n + 1))
    return ObjectEncoding(plain, order, x)


# -- morphisms as F_α gadgets ---------------------------------------------------


def encode_morphism(src: ObjectEncoding, alpha: Sequence[int], dst: ObjectEncoding) -> Digraph:
    """``F_α(n, m)`` for a homomorphism ``α`` between the two encoded objects."""
    alpha = tuple(alpha)
    if not is_homomorphism(src.cd_object, dst.cd_object, alpha):
        raise CategoryError("α is not a homomorphism between the encoded objects")
    return f_alpha(src.n, dst.n, alpha)


@lru_cache(maxsize=None)
def _embeds_cached(g: Digraph, h: Digraph) -> bool:
    return embeds(g, h)


def hom_conditions(x: Digraph, f: Digraph, y: Digraph, n: int, m: int) -> bool:
    """The three membership conditions for ``(X, F, Y)`` to encode a morphism,
    with ``X``, ``Y`` anchored over ``n`` and ``m`` vertices.

    Cycle lengths ``i`` of the source star run over ``n+1..2n``; the target
    lengths ``k, l`` run over every cycle length present in ``F``.
    """
    if f_family_member(f, n, m) is None:
        return False
    src_lengths = range(n + 1, 2 * n + 1)
    lengths = range(2, max(2 * n, 2 * m) + 1)
    arrow = {(i, k): _embeds_cached(cycle_to_cycle(i, k), f) for i in src_lengths for k in lengths}
    for i in src_lengths:
        for j in src_lengths:
            if not _embeds_cached(flag_to_flag(i, j), x):
                continue
            for k in lengths:
                if not arrow[(i, k)]:
                    continue
                for l in lengths:
                    if not arrow[(j, l)]:
                        continue
                    if k != l:
                        ok = _embeds_cached(flag_to_flag(k, l), y)
                    else:
                        ok = _embeds_cached(flag(k, looped=True), y)
                    if not ok:
                        return False
    for i in src_lengths:
        if not _embeds_cached(flag(i, looped=True), x):
            continue
        for k in lengths:
            if arrow[(i, k)] and not _embeds_cached(flag(k, looped=True), y):
                return False
    return True


def composition_conditions(x1: Digraph, x2: Digraph, x3: Digraph, n: int, m: int, l: int) -> bool:
    """Membership of ``(X1, X2, X3, E_n, E_m, E_l)`` in the composition relation:
    each ``X`` in its gadget family and arrows compose through cycle lengths."""
    if f_family_member(x1, n, m) is None or f_family_member(x2, m, l) is None:
        return False
    if f_family_member(x3, n, l) is None:
        return False
    top = 2 * max(n, m, l)
    lengths = range(2, top + 1)
    a1 = {(i, j) for i in lengths for j in lengths if _embeds_cached(cycle_to_cycle(i, j), x1)}
    a2 = {(j, k) for j in lengths for k in lengths if _embeds_cached(cycle_to_cycle(j, k), x2)}
    for i, j in a1:
        for j2, k in a2:
            if j == j2 and not _embeds_cached(cycle_to_cycle(i, k), x3):
                return False
    return True


def identity_conditions(x: Digraph, n: int) -> bool:
    """``X in ℱ(n, n)`` and ``O_{i->j} <= X`` only for ``i = j``."""
    if f_family_member(x, n, n) is None:
        return False
    lengths = range(2, 2 * n + 1)
    return all(
        i == j or not _embeds_cached(cycle_to_cycle(i, j), x) for i in lengths for j in lengths
    )


def anchor_label(n: int, i: int) -> int:
    """Vertex of an anchored digraph holding ``v_{i,1}``."""
    return n + star_anchor(n, i)


def weakly_connected_oracle(g: Digraph) -> bool:
    return len(component_vertex_sets(g)) == 1


__all__ = [
    "CategoryError", "E1_OBJ", "F1_MOR", "F2_MOR", "I2_OBJ", "MorphismTriple", "ObjectEncoding",
    "RelationRep", "ShapeError", "SubsetRep", "compose", "composition_conditions", "decode_object",
    "digraph_from_json", "digraph_json", "edge_holds", "encode_morphism", "encode_object", "hom",
    "hom_conditions", "hom_maps", "identity", "identity_conditions", "is_epi", "is_epi_categorical",
    "is_homomorphism", "is_mono", "is_mono_categorical", "object_for", "point", "reconstruct",
    "represent_relation", "represent_subset", "so_not_weakly_connected", "subset_reps",
    "weakly_connected_oracle",
]
