"""Named digraph families, each built with a fixed vertex labeling.

Labeling conventions shared by every module:

* cycles ``O_n`` run ``1 -> 2 -> ... -> n -> 1``;
* the star ``O_n^*`` (cycles of lengths ``n+1 .. 2n``) is laid out cycle-major,
  the ``i``-th cycle occupying a consecutive block whose first label is its
  anchor ``v_{i,1}``; in the looped star the anchor carries the loop;
* anchored digraphs keep the plain digraph on ``1..n`` and put the star after it.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .canon import IsoClass, canonicalize
from .digraph import Digraph, disjoint_union, saturate_loops, strip_loops


class GadgetError(ValueError):
    pass


def _need(cond: bool, msg: str) -> None:
    if not cond:
        raise GadgetError(msg)


# -- basic families -------------------------------------------------------------


def empty(n: int) -> Digraph:
    _need(n >= 1, "E_n needs n >= 1")
    return Digraph.from_edges(n, ())


def full(n: int) -> Digraph:
    _need(n >= 1, "F_n needs n >= 1")
    return Digraph.from_edges(n, ((u, v) for u in range(1, n + 1) for v in range(1, n + 1)))


def path(n: int) -> Digraph:
    """``I_n``; ``I_1`` is the single vertex ``E_1``."""
    _need(n >= 1, "I_n needs n >= 1")
    return Digraph.from_edges(n, ((k, k + 1) for k in range(1, n)))


def cycle(n: int) -> Digraph:
    _need(n >= 2, "O_n needs n >= 2")
    return Digraph.from_edges(n, [(k, k % n + 1) for k in range(1, n + 1)])


def loops(n: int) -> Digraph:
    _need(n >= 1, "L_n needs n >= 1")
    return Digraph.from_edges(n, ((k, k) for k in range(1, n + 1)))


def basic(family: str, n: int) -> Digraph:
    builders = {"Empty": empty, "Full": full, "Path": path, "Cycle": cycle, "Loops": loops}
    if family not in builders:
        raise GadgetError(f"unknown basic family {family!r}")
    return builders[family](n)


# -- cycle variants -------------------------------------------------------------


def cycle_loop(n: int) -> Digraph:
    """``O_{n,L}``: the cycle with a loop on its first vertex."""
    return cycle(n).add_loops([1])


@lru_cache(maxsize=None)
def cycle_extensions(n: int) -> frozenset[IsoClass]:
    """Types obtained from ``O_n`` by adding one new non-loop edge."""
    base = cycle(n)
    out = set()
    for u in range(1, n + 1):
        for v in range(1, n + 1):
            if u != v and not base.has_edge(u, v):
                out.add(canonicalize(base.add_edges([(u, v)])))
    return frozenset(out)


def cycle_to_cycle(i: int, j: int) -> Digraph:
    """``O_{i->j}``: edge from the first vertex of ``O_i`` to the first of ``O_j``."""
    _need(i >= 2 and j >= 2, "O_{i->j} needs i, j >= 2")
    return disjoint_union(cycle(i), cycle(j)).add_edges([(1, i + 1)])


def cycle_pair(i: int) -> Digraph:
    """``O_{i,i}``."""
    return disjoint_union(cycle(i), cycle(i))


# -- flags ----------------------------------------------------------------------


def flag(n: int, looped: bool = False) -> Digraph:
    """``♂_n`` (cycle ``1..n`` plus pendant ``n -> n+1``), or ``♂_n^L`` with a
    loop on the pendant."""
    _need(n >= 2, "flags need n >= 2")
    g = Digraph.from_edges(n + 1, [*cycle(n).edges, (n, n + 1)])
    return g.add_loops([n + 1]) if looped else g


def flag_pendant(n: int) -> int:
    return n + 1


def flag_pair_loop(i: int, j: int) -> Digraph:
    """``♂_{i,j}^L``: two cycles both pointing at one looped vertex."""
    _need(i > 1 and j > 1 and i != j, "♂_{i,j}^L needs i, j > 1 and i != j")
    u = i + j + 1
    return Digraph.from_edges(u, [*disjoint_union(cycle(i), cycle(j)).edges, (1, u), (i + 1, u), (u, u)])


def flag_to_flag(i: int, j: int, looped: bool = False) -> Digraph:
    """``♂_i -> ♂_j`` (or the looped flags): pendant of the first points at the
    pendant of the second."""
    a, b = flag(i, looped), flag(j, looped)
    return disjoint_union(a, b).add_edges([(flag_pendant(i), a.n + flag_pendant(j))])


def flag_loop_arrow(i: int) -> Digraph:
    """``♂_i^{L->}``: the looped pendant of ``♂_i^L`` points at an extra looped vertex."""
    g = disjoint_union(flag(i, looped=True), loops(1))
    return g.add_edges([(flag_pendant(i), g.n)])


# -- stars and the function gadget ----------------------------------------------


def star_size(n: int) -> int:
    return n * n + n * (n + 1) // 2


def star_anchor(n: int, i: int) -> int:
    """Label of ``v_{i,1}`` inside ``O_n^*`` (``1 <= i <= n``)."""
    _need(1 <= i <= n, "star index out of range")
    return 1 + sum(n + k for k in range(1, i))


def star(n: int, looped: bool = False) -> Digraph:
    """``O_n^*`` or ``O_{n,L}^*``."""
    _need(n >= 1, "stars need n >= 1")
    parts = [cycle_loop(n + i) if looped else cycle(n + i) for i in range(1, n + 1)]
    return disjoint_union(*parts)


def stars(n: int, looped: bool) -> Digraph:
    return star(n, looped)


def _check_map(alpha: Sequence[int], n: int, m: int) -> tuple[int, ...]:
    alpha = tuple(alpha)
    _need(len(alpha) == n, f"map must list {n} images")
    _need(all(isinstance(a, int) and 1 <= a <= m for a in alpha), f"map values must lie in 1..{m}")
    return alpha


def f_alpha(n: int, m: int, alpha: Sequence[int]) -> Digraph:
    """``F_α(n,m)``: anchor of the ``i``-th cycle of ``O_n^*`` points at the looped
    anchor of the ``α(i)``-th cycle of ``O_{m,L}^*``."""
    _need(n >= 1 and m >= 1, "F_α needs n, m >= 1")
    alpha = _check_map(alpha, n, m)
    left = star(n)
    g = disjoint_union(left, star(m, looped=True))
    return g.add_edges((star_anchor(n, i + 1), left.n + star_anchor(m, a)) for i, a in enumerate(alpha))


def all_maps(n: int, m: int) -> list[tuple[int, ...]]:
    from itertools import product

    return list(product(range(1, m + 1), repeat=n))


def f_family(n: int, m: int) -> dict[bytes, tuple[int, ...]]:
    """Keys of ``ℱ(n,m)`` mapped to a map realising each."""
    return {canonicalize(f_alpha(n, m, a)).key: a for a in all_maps(n, m)}


_F_FAMILY_CACHE: dict[tuple[int, int], dict[bytes, tuple[int, ...]]] = {}


def f_family_member(x: Digraph, n: int, m: int) -> tuple[int, ...] | None:
    """A map ``α`` with ``x ≅ F_α(n,m)``, or ``None``."""
    if x.n != star_size(n) + star_size(m):
        return None
    fam = _F_FAMILY_CACHE.get((n, m))
    if fam is None:
        fam = _F_FAMILY_CACHE[(n, m)] = f_family(n, m)
    return fam.get(canonicalize(x).key)


def anchor(g: Digraph, order: Sequence[int]) -> Digraph:
    """``G <-^v O_n^*``: the ``i``-th star cycle points at vertex ``order[i-1]``."""
    n = g.n
    order = tuple(order)
    _need(sorted(order) == list(range(1, n + 1)), "anchor tuple must be a permutation of V(G)")
    out = disjoint_union(g, star(n))
    return out.add_edges((n + star_anchor(n, i + 1), v) for i, v in enumerate(order))


# -- small constants ------------------------------------------------------------

A = Digraph.from_edges(3, [(1, 3), (2, 3)])
A_T = Digraph.from_edges(3, [(3, 1), (3, 2)])
I_DOUBLE = Digraph.from_edges(2, [(1, 2), (1, 1), (2, 2)])
I_STAR = Digraph.from_edges(3, [(2, 2), (3, 3), (1, 2), (2, 3)])
E1 = empty(1)
I2 = path(2)
L1 = loops(1)
E2 = empty(2)


def full_plus_loop(j: int) -> Digraph:
    """``F_j^*``: loop-free full digraph plus one loop."""
    return strip_loops(full(j)).add_loops([1])


def small_constants(which: str, j: int | None = None) -> Digraph:
    table = {"A": A, "ATranspose": A_T, "IDouble": I_DOUBLE, "IStar": I_STAR}
    if which == "FStar":
        _need(j is not None and j >= 1, "FStar needs j >= 1")
        return full_plus_loop(j)
    if which not in table:
        raise GadgetError(f"unknown constant {which!r}")
    return table[which]


# -- gadget ids and the compact spec grammar ------------------------------------


class Family(enum.Enum):
    Empty = "E"
    Full = "F"
    Path = "I"
    Cycle = "O"
    Loops = "L"
    CycleLoop = "OL"
    CycleExtraEdgeSet = "Oarrow"
    Flag = "male"
    FlagLoop = "male_L"
    FlagPairLoop = "male_L_pair"
    FlagToFlag = "male_to"
    FlagLoopToFlagLoop = "male_L_to"
    FlagLoopArrow = "male_L_arrow"
    CycleToCycle = "Oto"
    CyclePair = "Opair"
    Star = "Ostar"
    StarLoop = "OLstar"
    FAlpha = "Falpha"
    Anchored = "anchor"
    ConstA = "A"
    ConstATranspose = "AT"
    ConstI = "Idouble"
    ConstIStar = "Istar"
    FullPlusLoop = "Fstar"


_ARITY = {
    Family.Empty: 1, Family.Full: 1, Family.Path: 1, Family.Cycle: 1, Family.Loops: 1,
    Family.CycleLoop: 1, Family.CycleExtraEdgeSet: 1, Family.Flag: 1, Family.FlagLoop: 1,
    Family.FlagPairLoop: 2, Family.FlagToFlag: 2, Family.FlagLoopToFlagLoop: 2,
    Family.FlagLoopArrow: 1, Family.CycleToCycle: 2, Family.CyclePair: 1, Family.Star: 1,
    Family.StarLoop: 1, Family.FAlpha: 2, Family.Anchored: 0, Family.ConstA: 0,
    Family.ConstATranspose: 0, Family.ConstI: 0, Family.ConstIStar: 0, Family.FullPlusLoop: 1,
}


@dataclass(frozen=True)
class GadgetId:
    family: Family
    params: tuple[int, ...] = ()
    alpha: tuple[int, ...] | None = None
    vertices: tuple[int, ...] | None = None  # Anchored: the anchor permutation

    def __str__(self) -> str:
        s = self.family.value
        if self.params:
            s += ":" + ",".join(map(str, self.params))
        if self.alpha is not None:
            s += ":[" + ",".join(map(str, self.alpha)) + "]"
        return s


_SPEC_RE = re.compile(r"^(?P<name>[A-Za-z_]+)(?::(?P<params>[0-9, ]*))?(?::\[(?P<alpha>[0-9, ]*)\])?$")


def parse_gadget(spec: str) -> GadgetId:
    """Parse e.g. ``O:5``, ``Ostar:3``, ``Falpha:2,3:[1,3]``, ``male_L:4``, ``A``."""
    m = _SPEC_RE.match(spec.strip())
    if not m:
        raise GadgetError(f"cannot parse gadget spec {spec!r}")
    try:
        family = Family(m.group("name"))
    except ValueError:
        names = ", ".join(f.value for f in Family)
        raise GadgetError(f"unknown gadget {m.group('name')!r}; known: {names}") from None
    if family is Family.Anchored:
        raise GadgetError("anchored digraphs are built with the 'encode' command")
    raw = m.group("params")
    params = tuple(int(p) for p in raw.split(",") if p.strip()) if raw else ()
    if len(params) != _ARITY[family]:
        raise GadgetError(f"{family.value} takes {_ARITY[family]} parameter(s), got {len(params)}")
    alpha = None
    if m.group("alpha") is not None:
        alpha = tuple(int(p) for p in m.group("alpha").split(",") if p.strip())
    if (family is Family.FAlpha) != (alpha is not None):
        raise GadgetError("only Falpha takes a map, and it requires one")
    return GadgetId(family, params, alpha)


def build(gid: GadgetId) -> Digraph:
    f, p = gid.family, gid.params
    if f is Family.CycleExtraEdgeSet:
        raise GadgetError("Oarrow is a set of types; use cycle_extensions")
    table = {
        Family.Empty: lambda: empty(p[0]),
        Family.Full: lambda: full(p[0]),
        Family.Path: lambda: path(p[0]),
        Family.Cycle: lambda: cycle(p[0]),
        Family.Loops: lambda: loops(p[0]),
        Family.CycleLoop: lambda: cycle_loop(p[0]),
        Family.Flag: lambda: flag(p[0]),
        Family.FlagLoop: lambda: flag(p[0], looped=True),
        Family.FlagPairLoop: lambda: flag_pair_loop(*p),
        Family.FlagToFlag: lambda: flag_to_flag(*p),
        Family.FlagLoopToFlagLoop: lambda: flag_to_flag(*p, looped=True),
        Family.FlagLoopArrow: lambda: flag_loop_arrow(p[0]),
        Family.CycleToCycle: lambda: cycle_to_cycle(*p),
        Family.CyclePair: lambda: cycle_pair(p[0]),
        Family.Star: lambda: star(p[0]),
        Family.StarLoop: lambda: star(p[0], looped=True),
        Family.FAlpha: lambda: f_alpha(p[0], p[1], gid.alpha),
        Family.ConstA: lambda: A,
        Family.ConstATranspose: lambda: A_T,
        Family.ConstI: lambda: I_DOUBLE,
        Family.ConstIStar: lambda: I_STAR,
        Family.FullPlusLoop: lambda: full_plus_loop(p[0]),
    }
    if f is Family.Anchored:
        raise GadgetError("use anchor(G, order) for anchored digraphs")
    return table[f]()


def make(spec: str) -> Digraph:
    return build(parse_gadget(spec))


__all__ = [
    "A", "A_T", "E1", "E2", "I2", "I_DOUBLE", "I_STAR", "L1", "Family", "GadgetError", "GadgetId",
    "all_maps", "anchor", "basic", "build", "cycle", "cycle_extensions", "cycle_loop", "cycle_pair",
    "cycle_to_cycle", "empty", "f_alpha", "f_family", "f_family_member", "flag", "flag_loop_arrow",
    "flag_pair_loop", "flag_pendant", "flag_to_flag", "full", "full_plus_loop", "loops", "make",
    "parse_gadget", "path", "saturate_loops", "small_constants", "star", "star_anchor", "star_size",
    "stars",
]
