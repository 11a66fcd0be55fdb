"""Formula-side evaluation over a truncated universe.

Everything here is computed from the order ``<=`` alone, plus the handful
of small digraphs that are taken as given constants. Nothing consults
vertex counts, loops or components of the represented digraphs; those live
on the oracle side.

Truncation rules used throughout (``U`` is all types with at most N vertices):

* ``U`` is down-closed: ``Z <= X`` with ``X`` in ``U`` forces ``Z`` in ``U``.
  So a statement "``Z <= X``" about a ``Z`` known to lie outside ``U`` is false,
  and "``Z ≰ X``" is true.
* A named element that the formulas single out (the next ``E``, an ``O_n``, a
  flag ...) but which is absent from ``U`` therefore lies outside ``U``.
* Maximal elements with N vertices could be beaten by witnesses outside ``U``;
  these are counted as caveats.
"""

from __future__ import annotations

from functools import cached_property
from typing import Callable, Iterable

from ..digraph import Digraph
from ..gadgets import A, A_T, E2, I2, I_DOUBLE, I_STAR, L1
from ..universe import ExtremalResult, Universe

LEMMA_CONSTANTS: dict[str, Digraph] = {
    "I2": I2,
    "L1": L1,
    "E2": E2,
    "A": A,
    "AT": A_T,
    "I": I_DOUBLE,
    "Istar": I_STAR,
}


def bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Caveats:
    """Distinct bound-touching extremal evaluations seen while evaluating a part."""

    def __init__(self):
        self._seen: dict[tuple, int] = {}

    def add(self, key: tuple, count: int) -> None:
        if count:
            self._seen[key] = count

    @property
    def total(self) -> int:
        return sum(self._seen.values())


class FormulaContext:
    def __init__(self, u: Universe, constants: dict[str, Digraph] | None = None):
        self.u = u
        self.N = u.N
        self.size = len(u)
        self.down = u.down
        self.up = u.up
        consts = LEMMA_CONSTANTS if constants is None else constants
        self._const = {name: u.find(g) for name, g in consts.items()}
        self._extremal_cache: dict[tuple[int, str], ExtremalResult] = {}
        self._upper_cache: dict[int, tuple[int, ...]] = {}
        self.all = u.all_mask

    # -- primitive order relations --

    def leq(self, i: int | None, j: int | None) -> bool:
        """``i <= j``; an element outside the universe (``None``) on the left is
        below nothing in it."""
        if i is None or j is None:
            if i is None and j is not None:
                return False
            raise ValueError("an element above the bound cannot be compared as the larger side")
        return bool(self.down[j] >> i & 1)

    def nleq(self, i: int | None, j: int) -> bool:
        return not self.leq(i, j)

    def lt(self, i: int, j: int) -> bool:
        return i != j and self.leq(i, j)

    def prec(self, i: int | None, j: int | None) -> bool:
        """Cover relation, derived from ``<=`` only."""
        if i is None or j is None:
            return False
        if i == j or not self.down[j] >> i & 1:
            return False
        return self.down[j] & self.up[i] == (1 << i) | (1 << j)

    def upper_covers(self, i: int) -> tuple[int, ...]:
        got = self._upper_cache.get(i)
        if got is None:
            above = self.up[i] & ~(1 << i)
            got = tuple(j for j in bits(above) if self.down[j] & above == 1 << j)
            self._upper_cache[i] = got
        return got

    def lower_covers(self, j: int) -> tuple[int, ...]:
        below = self.down[j] & ~(1 << j)
        return tuple(i for i in bits(below) if self.up[i] & below == 1 << i)

    def const(self, name: str) -> int | None:
        return self._const[name]

    def mask(self, pred: Callable[[int], bool], within: int | None = None) -> int:
        src = bits(within) if within is not None else range(self.size)
        return sum(1 << i for i in src if pred(i))

    def extremal(
        self, mask: int, mode: str, track: Caveats | None = None, bounded: bool = False
    ) -> tuple[int, ...]:
        """Extremal members of ``mask``. ``bounded`` marks candidate sets whose
        members all lie below a given element of the universe, so no witness
        outside it can compete and no caveat is due."""
        key = (mask, mode)
        res = self._extremal_cache.get(key)
        if res is None:
            res = self.u.extremal_with(mask, mode)
            self._extremal_cache[key] = res
        if track is not None and res.bound_touching and not bounded:
            track.add(("extremal", mode, mask), sum(1 for i in res.members if self.u.n_of[i] == self.N))
        return res.members

    def sole(self, items: Iterable[int]) -> int | None:
        items = list(items)
        return items[0] if len(items) == 1 else None

    # -- the empty and loop chains --

    @cached_property
    def e_set(self) -> int:
        """``{X : I_2 ≰ X and L_1 ≰ X}``."""
        i2, l1 = self.const("I2"), self.const("L1")
        return self.mask(lambda x: self.nleq(i2, x) and self.nleq(l1, x))

    @cached_property
    def e_chain(self) -> tuple[int, ...]:
        """``E_1, E_2, ...`` inside the universe: the least element of the set,
        then repeatedly the unique cover within the set."""
        lows = self.extremal(self.e_set, "minimal")
        if len(lows) != 1:
            return ()
        chain = [lows[0]]
        while True:
            nxt = [j for j in self.upper_covers(chain[-1]) if self.e_set >> j & 1]
            if len(nxt) != 1:
                break
            chain.append(nxt[0])
        return tuple(chain)

    def e(self, k: int) -> int | None:
        """``E_k``, or ``None`` when it lies above the bound."""
        return self.e_chain[k - 1] if 1 <= k <= len(self.e_chain) else None

    @cached_property
    def e_pos(self) -> dict[int, int]:
        return {x: k + 1 for k, x in enumerate(self.e_chain)}

    def in_e(self, x: int) -> bool:
        return bool(self.e_set >> x & 1)

    @cached_property
    def vcount(self) -> tuple[int, ...]:
        """``k`` with ``(G, E_k)`` in the vertex-count relation: ``E_k <= G`` and
        ``E_{k+1} ≰ G``; 0 if no ``k`` qualifies."""
        out = []
        for g in range(self.size):
            k_found = 0
            for k, ek in enumerate(self.e_chain, start=1):
                if self.leq(ek, g) and self.nleq(self.e(k + 1), g):
                    k_found = k
                    break
            out.append(k_found)
        return tuple(out)

    def frak_e(self, a: int, b: int) -> bool:
        return self.vcount[a] != 0 and self.vcount[a] == self.vcount[b]

    def l_set_with(self, track: Caveats | None = None) -> int:
        """``X`` maximal with ``E_i <= X``, ``E_{i+1} ≰ X``, ``I_2 ≰ X`` for some ``i``."""
        i2 = self.const("I2")
        out = 0
        for k, ek in enumerate(self.e_chain, start=1):
            nxt = self.e(k + 1)
            p = self.mask(lambda x: self.leq(ek, x) and self.nleq(nxt, x) and self.nleq(i2, x))
            for x in self.extremal(p, "maximal", track):
                out |= 1 << x
        return out

    @cached_property
    def l_set(self) -> int:
        return self.l_set_with()

    def le_pairs(self, track: Caveats | None = None) -> set[tuple[int, int]]:
        """``(X, Y)``: ``X`` in the loop set, ``Y`` maximal in the empty set below ``X``."""
        out = set()
        for x in bits(self.l_set_with(track)):
            for y in self.extremal(self.e_set & self.down[x], "maximal", track, bounded=True):
                out.add((x, y))
        return out

    @cached_property
    def l_chain(self) -> tuple[int, ...]:
        """``L_1, L_2, ...`` via the pairing with the empty chain."""
        by_e = {}
        for x, y in self.le_pairs():
            by_e.setdefault(self.e_pos[y], []).append(x)
        chain = []
        for k in range(1, len(self.e_chain) + 1):
            xs = by_e.get(k, [])
            if len(xs) != 1:
                break
            chain.append(xs[0])
        return tuple(chain)

    def l(self, k: int) -> int | None:
        return self.l_chain[k - 1] if 1 <= k <= len(self.l_chain) else None

    @cached_property
    def lcount(self) -> tuple[int, ...]:
        """``k`` with ``L_k <= G`` and ``L_{k+1} ≰ G``; 0 when ``L_1 ≰ G``."""
        out = []
        for g in range(self.size):
            k_found = 0
            for k, lk in enumerate(self.l_chain, start=1):
                if self.leq(lk, g) and self.nleq(self.l(k + 1), g):
                    k_found = k
                    break
            out.append(k_found)
        return tuple(out)

    def frak_l(self, a: int, b: int) -> bool:
        """Equal loop counts, loop-free pairs included (see ``lcount``)."""
        return self.lcount[a] == self.lcount[b]

    # -- unions of cycles --

    def h_set_with(self, track: Caveats | None = None) -> int:
        e2, a, at, l1 = (self.const(c) for c in ("E2", "A", "AT", "L1"))
        base = self.mask(
            lambda x: self.leq(e2, x) and self.nleq(a, x) and self.nleq(at, x) and self.nleq(l1, x)
        )
        out = 0
        for k in range(1, len(self.e_chain) + 1):
            p = self.mask(lambda x: self.vcount[x] == k, base)
            for x in self.extremal(p, "maximal", track):
                out |= 1 << x
        return out

    @cached_property
    def h_set(self) -> int:
        return self.h_set_with()

    @cached_property
    def o_set(self) -> int:
        """Members of the maximal set with no lower cover inside it."""
        h = self.h_set
        return self.mask(lambda x: not any(h >> y & 1 for y in self.lower_covers(x)), h)

    @cached_property
    def o_cup(self) -> int:
        return sum(1 << x for x in self.extremal(self.o_set, "minimal"))

    def o(self, k: int) -> int | None:
        """``O_k`` via ``(O_k, E_k)``; ``None`` when outside the universe."""
        return self.sole(x for x in bits(self.o_cup) if self.vcount[x] == k)

    @cached_property
    def f_set(self) -> int:
        """``X`` such that ``X < Y`` implies ``(X, Y)`` not in the vertex relation.
        Larger digraphs outside the universe contain ``E_{N+1}`` and so are never
        related to an element of it."""
        return self.mask(
            lambda x: not any(self.frak_e(x, y) for y in bits(self.up[x] & ~(1 << x)))
        )

    def f(self, k: int) -> int | None:
        return self.sole(x for x in bits(self.f_set) if self.vcount[x] == k)

    def m_of_with(self, x: int, track: Caveats | None = None) -> tuple[int, ...]:
        """Maximal ``Y`` with ``Y <= X`` and ``L_1 ≰ Y``."""
        l1 = self.const("L1")
        p = self.mask(lambda y: self.nleq(l1, y), self.down[x])
        return self.extremal(p, "maximal", track, bounded=True)

    @cached_property
    def m_of(self) -> tuple[tuple[int, ...], ...]:
        return tuple(self.m_of_with(x) for x in range(self.size))

    def frak_m(self, a: int, b: int) -> bool:
        return bool(set(self.m_of[a]) & set(self.m_of[b]))

    @cached_property
    def m_class(self) -> dict[int, int]:
        """Mask of each ``𝔐``-class, keyed by the unique ``M``-image."""
        classes: dict[int, int] = {}
        for x, ms in enumerate(self.m_of):
            if len(ms) == 1:
                classes[ms[0]] = classes.get(ms[0], 0) | 1 << x
        return classes

    def frak_m_mask(self, a: int) -> int:
        ms = self.m_of[a]
        if len(ms) == 1:
            return self.m_class[ms[0]]
        return self.mask(lambda b: self.frak_m(a, b))

    def l_of_with(self, x: int, track: Caveats | None = None) -> tuple[int, ...]:
        """Maximal ``Y`` with ``(X, Y)`` in ``𝔐``."""
        return self.extremal(self.frak_m_mask(x), "maximal", track)

    # -- arithmetic on the empty chain --

    def f_star(self, j: int) -> int | None:
        """``F_j^*``: the unique cover of ``M(F_j)`` that contains a loop."""
        fj = self.f(j)
        if fj is None:
            return None
        mf = self.sole(self.m_of[fj])
        if mf is None:
            return None
        l1 = self.const("L1")
        return self.sole(w for w in self.upper_covers(mf) if self.leq(l1, w))

    def e_plus_q(self, i: int, j: int, track: Caveats | None = None) -> tuple[int, ...]:
        """Minimal ``Q`` with ``L_i <= Q``, ``M(F_j) <= Q``, ``F_j^* ≰ Q``."""
        li, fj = self.l(i), self.f(j)
        if li is None or fj is None:
            return ()
        mf = self.sole(self.m_of[fj])
        fs = self.f_star(j)
        if mf is None or fs is None:
            return ()
        p = self.mask(lambda q: self.leq(li, q) and self.leq(mf, q) and self.nleq(fs, q))
        return self.extremal(p, "minimal", track)

    def e_plus_literal(self, x: int, y: int, track: Caveats | None = None) -> set[int]:
        """``Z`` completing ``(X, Y, Z)`` by the Q-construction for every ``j``."""
        if not (self.in_e(x) and self.in_e(y)):
            return set()
        qs = self.e_plus_q(self.e_pos[x], self.e_pos[y], track)
        return {z for q in qs for z in bits(self.e_set) if self.frak_e(z, q)}

    def e_plus(self, x: int, y: int, track: Caveats | None = None) -> set[int]:
        """As ``e_plus_literal`` but with ``Y = E_1`` handled by the unique cover of
        ``X`` in the empty set (the Q-construction is void there: ``F_1^* = L_1``)."""
        if not (self.in_e(x) and self.in_e(y)):
            return set()
        if self.e_pos[y] == 1:
            return {z for z in self.upper_covers(x) if self.in_e(z)}
        return self.e_plus_literal(x, y, track)

    def e_sum(self, x: int, y: int) -> int | None:
        """The unique ``Z`` of ``e_plus``; ``None`` if it lies above the bound."""
        return self.sole(self.e_plus(x, y))

    def interval_partners(self, x: int) -> tuple[int, ...]:
        """``Y`` in the empty set with ``X < Y <= E_{2n}`` for ``X = E_n``. When
        ``E_{2n}`` lies above the bound every larger chain element qualifies."""
        if not self.in_e(x):
            return ()
        top = self.e_sum(x, x)
        return tuple(
            y for y in bits(self.e_set) if self.lt(x, y) and (top is None or self.leq(y, top))
        )

    def interval_reaches_bound(self, x: int) -> bool:
        return self.in_e(x) and self.e_sum(x, x) is None

    # -- stars, arrows, flags --

    def ostar(self, y: int, track: Caveats | None = None) -> tuple[int, ...]:
        """``X`` with ``(X, Y)`` in the star relation, ``Y = E_n``."""
        if not self.in_e(y):
            return ()
        if self.interval_reaches_bound(y):
            # Some required cycle O_i lies above the bound, so it embeds in no X here.
            return ()
        cycles = [self.o(self.e_pos[z]) for z in self.interval_partners(y)]
        if any(c is None for c in cycles):
            return ()
        p = self.mask(lambda x: all(self.leq(c, x) for c in cycles), self.o_set)
        return self.extremal(p, "minimal", track)

    def oarrow(self, y: int) -> tuple[int, ...]:
        """``X`` in ``𝒪_n^→`` for ``Y = E_n``, ``n >= 2``."""
        if not (self.in_e(y) and self.leq(self.const("E2"), y)):
            return ()
        on = self.o(self.e_pos[y])
        if on is None:
            return ()
        l1 = self.const("L1")
        return tuple(
            x for x in self.upper_covers(on) if self.nleq(l1, x) and self.frak_e(x, on)
        )

    def flag(self, y: int) -> tuple[int, ...]:
        """``♂_n`` for ``Y = E_n``."""
        if not self.in_e(y):
            return ()
        n = self.e_pos[y]
        on, en1 = self.o(n), self.e(n + 1)
        if on is None or en1 is None:
            return ()
        l1, at = self.const("L1"), self.const("AT")
        arrows = self.oarrow(y)
        out = []
        for x in range(self.size):
            if not self.frak_e(en1, x) or self.leq(l1, x) or not self.leq(at, x):
                continue
            if any(self.leq(z, x) for z in arrows):
                continue
            if any(self.prec(z, x) for z in self.upper_covers(on)):
                out.append(x)
        return tuple(out)

    @cached_property
    def cycle_loop_set(self) -> int:
        """``X`` with ``O_n ≺ X`` for some ``O_n`` in ``𝒪_∪`` and ``L_1 <= X``."""
        l1 = self.const("L1")
        out = 0
        for on in bits(self.o_cup):
            for x in self.upper_covers(on):
                if self.leq(l1, x):
                    out |= 1 << x
        return out

    def cycle_loop(self, k: int) -> int | None:
        return self.sole(x for x in bits(self.cycle_loop_set) if self.vcount[x] == k)

    def flag_loop(self, y: int) -> tuple[int, ...]:
        """``♂_n^L`` for ``Y = E_n``: ``♂_n ≺ X``, ``L_1 <= X``, ``O_{n,L} ≰ X``."""
        if not self.in_e(y):
            return ()
        fl = self.sole(self.flag(y))
        if fl is None:
            return ()
        ol = self.cycle_loop(self.e_pos[y])
        l1 = self.const("L1")
        return tuple(
            x for x in self.upper_covers(fl) if self.leq(l1, x) and (ol is None or self.nleq(ol, x))
        )

    def star_loop(self, y: int, track: Caveats | None = None) -> tuple[int, ...]:
        """``O_{n,L}^*`` for ``Y = E_n`` by its five properties."""
        if not self.in_e(y):
            return ()
        star = self.sole(self.ostar(y, track))
        if star is None:
            return ()
        ln1 = self.l(self.e_pos[y] + 1)
        inside = [c for c in bits(self.o_cup) if self.leq(c, star)]
        checks = []
        for c in inside:
            k = self.vcount[c]
            ek = self.e(k)
            arrows = self.oarrow(ek) if ek is not None else ()
            fl = self.flag(ek) if ek is not None else ()
            ol = self.cycle_loop(k)
            checks.append((arrows, self.sole(fl), ol))
        out = []
        for x in range(self.size):
            if not (self.leq(star, x) and self.frak_e(x, star)):
                continue
            if ln1 is not None and self.leq(ln1, x):
                continue
            if all(self._star_loop_check(x, *c) for c in checks):
                out.append(x)
        return tuple(out)

    def _star_loop_check(self, x: int, arrows, fl, ol) -> bool:
        if any(self.leq(w, x) for w in arrows):
            return False
        # an absent flag lies above the bound and so embeds in nothing here
        if fl is not None and self.leq(fl, x):
            return False
        return ol is not None and self.leq(ol, x)

    def cycles_below(self, w: int) -> frozenset[int]:
        return frozenset(c for c in bits(self.o_cup) if self.leq(c, w))

    def arrow_pair(self, x: int, y: int, z: int) -> bool:
        """``(X, Y, Z)`` in the cycle-arrow relation (``Y = E_i``, ``Z = E_j``)."""
        e2 = self.const("E2")
        if not (self.in_e(y) and self.in_e(z) and self.leq(e2, y) and self.leq(e2, z)):
            return False
        top = self.e_sum(y, z)
        if top is None or not self.frak_e(x, top):
            return False
        oi, oj = self.o(self.e_pos[y]), self.o(self.e_pos[z])
        if oi is None or oj is None:
            return False
        flag_i = self.sole(self.flag(y))
        if flag_i is None or not self.leq(flag_i, x):
            return False
        want = frozenset({oi, oj})
        return any(
            self.o_set >> w & 1 and self.frak_e(w, x) and self.cycles_below(w) == want
            for w in self.lower_covers(x)
        )

    def double_cycle(self, y: int) -> tuple[int, ...]:
        """``O_{i,i}`` for ``Y = E_i``."""
        if not self.in_e(y):
            return ()
        top = self.e_sum(y, y)
        oi = self.o(self.e_pos[y])
        if top is None or oi is None:
            return ()
        return tuple(
            x for x in bits(self.o_set) if self.frak_e(x, top) and self.cycles_below(x) == {oi}
        )
