"""Checks of the two purely combinatorial lemmas: raising of weakly connected
components, and the loop-addition criterion for ``G = G'``.

Both work on explicit digraphs with at most three vertices; neither needs a
universe.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .. import gadgets as gd
from ..canon import canonicalize
from ..digraph import Digraph, component_vertex_sets, disjoint_union, saturate_loops, strip_loops
from ..embed import embeds, iter_embeddings
from ..universe import enumerate_types
from . import explicit as ex


def types_with(n: int) -> list[Digraph]:
    return [t.canonical for t in enumerate_types(n) if t.n == n]


def strip_key(g: Digraph) -> bytes:
    return canonicalize(strip_loops(g)).key


def equivalent_pairs(n: int, same_loops: bool = False) -> list[tuple[Digraph, Digraph]]:
    """Ordered pairs ``(G, G')`` on ``n`` vertices with ``M(G) = M(G')``."""
    groups: dict[bytes, list[Digraph]] = {}
    for g in types_with(n):
        groups.setdefault(strip_key(g), []).append(g)
    out = []
    for key in sorted(groups):
        for g in groups[key]:
            for h in groups[key]:
                if not same_loops or g.loop_count == h.loop_count:
                    out.append((g, h))
    return out


def path_length(g: Digraph) -> int | None:
    """``m`` when ``M(g)`` is the path ``I_m``, else ``None``."""
    return g.n if ex.iso(strip_loops(g), gd.path(g.n)) else None


# -- raising ----------------------------------------------------------------------


@dataclass
class RaisingResult:
    pairs: int
    embeddings: int
    raised: int
    violations: list[tuple[str, str, tuple[int, ...], str]]


def _component_of(sets: list[tuple[int, ...]]) -> dict[int, int]:
    return {v: k for k, comp in enumerate(sets) for v in comp}


def check_raising_pair(g: Digraph, g2: Digraph, n: int, limit: int | None = None):
    """Every embedding ``G -> G' ⊔ O_n^*``; count raised components and collect
    those landing in a ``G'`` component that is not ``≡ I_m``, or whose source
    is not ``≡ I_{m'}`` with ``m' < m``."""
    target = disjoint_union(g2, gd.star(n))
    src_sets = component_vertex_sets(g)
    dst_sets = component_vertex_sets(target)
    dst_of = _component_of(dst_sets)
    src_parts = [g.induced(list(c)) for c in src_sets]
    dst_parts = [target.induced(list(c)) for c in dst_sets]
    src_m = [strip_loops(p) for p in src_parts]
    dst_m = [strip_loops(p) for p in dst_parts]
    in_g2 = [all(v <= g2.n for v in c) for c in dst_sets]
    strict_cache: dict[tuple[int, int], bool] = {}

    def strictly_below(a: int, b: int) -> bool:
        key = (a, b)
        if key not in strict_cache:
            sa, sb = src_m[a], dst_m[b]
            strict_cache[key] = embeds(sa, sb) and canonicalize(sa).key != canonicalize(sb).key
        return strict_cache[key]

    embeddings = raised = 0
    bad = []
    for phi in iter_embeddings(g, target):
        embeddings += 1
        for k, comp in enumerate(src_sets):
            tgt = dst_of[phi[comp[0] - 1]]
            if not strictly_below(k, tgt):
                continue
            if not in_g2[tgt]:
                continue
            raised += 1
            m = path_length(dst_parts[tgt])
            m2 = path_length(src_parts[k])
            if m is None or m2 is None or not m2 < m:
                bad.append((canonicalize(g).hex, canonicalize(g2).hex, tuple(phi), f"component {k + 1}"))
        if limit is not None and embeddings >= limit:
            break
    return embeddings, raised, bad


def verify_raising(max_n: int = 3, samples: int | None = None, seed: int = 0) -> RaisingResult:
    """All qualifying pairs with ``n <= max_n``. ``samples`` caps the embeddings
    examined per pair (``None`` means all); pairs are then visited in a seeded
    random order."""
    rng = random.Random(seed)
    pairs = [(n, g, h) for n in range(1, max_n + 1) for g, h in equivalent_pairs(n)]
    if samples is not None:
        rng.shuffle(pairs)
    total = RaisingResult(0, 0, 0, [])
    for n, g, h in pairs:
        e, r, bad = check_raising_pair(g, h, n, limit=samples)
        if e == 0:
            continue
        total.pairs += 1
        total.embeddings += e
        total.raised += r
        total.violations.extend(bad)
    return total


# -- loop addition ------------------------------------------------------------------


@dataclass
class LoopPairResult:
    g: Digraph
    g2: Digraph
    distinct: bool
    criterion: bool  # right-hand side with ``Ḡ <= X``
    literal: bool  # right-hand side as a bare conjunction of the four clauses
    witness: Digraph | None


def _loop_targets(g2: Digraph, n: int, bound: Digraph) -> list[Digraph]:
    """``X`` with ``G' ⊔ O_n^* <= X``, ``X ≡ G' ⊔ O_n^*`` and ``X <= bound``.

    Such an ``X`` is ``G' ⊔ O_n^*`` plus loops. A loop on a cycle vertex is
    impossible: the looped cycle itself already fails to embed in ``bound``
    (checked, not assumed), and so does every digraph containing it."""
    star = gd.star(n)
    for k in range(n + 1, 2 * n + 1):
        if ex.leq(gd.cycle_loop(k), bound):
            raise AssertionError("a looped cycle embeds in the loop-saturated bound")
    base = disjoint_union(g2, star)
    return [
        x for x in (disjoint_union(h, star) for h in ex.loop_additions(g2))
        if ex.leq(base, x) and ex.leq(x, bound)
    ]


def check_loop_pair(g: Digraph, g2: Digraph, n: int) -> LoopPairResult:
    star = gd.star(n)
    bound = disjoint_union(saturate_loops(g), star)
    xs = _loop_targets(g2, n, bound)
    criterion = literal = False
    witness = None
    for gbar in ex.loop_additions(g):
        if not (ex.leq(g, gbar) and ex.same_strip(g, gbar)):
            continue
        same_count = [x for x in xs if x.loop_count == gbar.loop_count]
        if not same_count:
            literal = True
        if not any(ex.leq(gbar, x) for x in same_count):
            if not criterion:
                witness = gbar
            criterion = True
    return LoopPairResult(g, g2, not ex.iso(g, g2), criterion, literal, witness)


def qualifying_loop_pairs(n: int) -> list[tuple[Digraph, Digraph]]:
    star = gd.star(n)
    return [
        (g, h) for g, h in equivalent_pairs(n, same_loops=True) if embeds(g, disjoint_union(h, star))
    ]


def verify_loop_addition(n: int) -> list[LoopPairResult]:
    return [check_loop_pair(g, h, n) for g, h in qualifying_loop_pairs(n)]


# the standard non-isomorphic loop-addition pair: I_2 beside a looped
# point, against I_2 with its head looped beside a bare point
LOOP_PAIR_G = Digraph.from_edges(3, [(1, 2), (3, 3)])
LOOP_PAIR_G2 = Digraph.from_edges(3, [(1, 2), (2, 2)])
LOOP_PAIR_WITNESS = LOOP_PAIR_G.add_loops([1])


def loop_pair_preconditions() -> dict[str, bool]:
    g, g2, n = LOOP_PAIR_G, LOOP_PAIR_G2, 3
    return {
        "three vertices": g.n == g2.n == n,
        "same loop count": g.loop_count == g2.loop_count == 1,
        "equivalent": ex.same_strip(g, g2),
        "embeds beside O_3^*": embeds(g, disjoint_union(g2, gd.star(n))),
        "not isomorphic": not ex.iso(g, g2),
    }


def loop_pair_witness_works() -> bool:
    """No single loop added to ``G'`` lets the witness embed beside ``O_3^*``."""
    star = gd.star(3)
    return not any(
        embeds(LOOP_PAIR_WITNESS, disjoint_union(h, star)) for h in ex.loop_additions(LOOP_PAIR_G2, count=1)
    )
