"""Universe-mode parts: the defining conditions evaluated over every tuple of a
truncated universe, compared with the structural oracles."""

from __future__ import annotations

from .. import gadgets as gd
from ..digraph import disjoint_union, strip_loops
from .context import Caveats, bits
from .entry import UNIVERSE, Env, Part, compare, compare_partition, compare_set, first_failed

DOWNSET = "the universe is down-closed, so named digraphs absent from it embed in none of its members"
MAXIMAL = "maximal members with N vertices may be beaten outside the universe: counted as caveats"


def _e_rel(env: Env, xs) -> set[tuple[int, int]]:
    """``(X, E_k)`` for ``X`` in ``xs`` with ``k`` its formula-side vertex count."""
    c = env.ctx
    return {(x, c.e(c.vcount[x])) for x in xs if c.vcount[x]}


def _n_caveats(env: Env, xs) -> int:
    return sum(1 for x in xs if env.u.n_of[x] == env.N)


# -- empty and loop digraphs ----------------------------------------------------


def e_set(env: Env):
    c = env.ctx
    i2, l1 = c.const("I2"), c.const("L1")

    def explain(t):
        x = t[0]
        return first_failed([lambda: c.nleq(i2, x), lambda: c.nleq(l1, x)])

    return compare_set(env, "E-set", c.e_set, env.oracle.e_set, explain=explain)


def l_set(env: Env):
    track = Caveats()
    f = env.ctx.l_set_with(track)
    return compare_set(env, "L-set", f, env.oracle.l_set, caveats=track, justification=MAXIMAL)


def le_rel(env: Env):
    track = Caveats()
    f = env.ctx.le_pairs(track)
    return compare(env, "LE-rel", 2, f, env.oracle.le_rel, caveats=track, justification=MAXIMAL)


def vertex_rel(env: Env):
    c = env.ctx
    f = {(g, c.e(c.vcount[g])) for g in range(c.size) if c.vcount[g]}
    return compare(env, "vertex-count", 2, f, env.oracle.vertex_rel, justification=DOWNSET)


def loop_rel(env: Env):
    c = env.ctx
    f = {(g, c.l(c.lcount[g])) for g in range(c.size) if c.lcount[g]}
    return compare(env, "loop-count", 2, f, env.oracle.loop_rel, justification=DOWNSET)


def frak_e(env: Env):
    c = env.ctx
    labels = [k or None for k in c.vcount]
    return compare_partition(env, "same-vertices", labels, env.oracle.vertex_classes())


def frak_l(env: Env):
    return compare_partition(env, "same-loops", env.ctx.lcount, env.oracle.loop_classes())


# -- cycles ----------------------------------------------------------------------


def h_set(env: Env):
    track = Caveats()
    f = env.ctx.h_set_with(track)
    return compare_set(env, "H-set", f, env.oracle.h_set, caveats=track, justification=MAXIMAL)


def o_set(env: Env):
    c = env.ctx

    def explain(t):
        x = t[0]
        return first_failed([
            lambda: bool(c.h_set >> x & 1),
            lambda: not any(c.h_set >> y & 1 for y in c.lower_covers(x)),
        ])

    track = Caveats()
    c.h_set_with(track)
    return compare_set(env, "O-set", c.o_set, env.oracle.o_set, caveats=track, explain=explain,
                       justification=MAXIMAL)


def o_cup(env: Env):
    return compare_set(env, "O-cup", env.ctx.o_cup, env.oracle.o_cup)


def o_rel(env: Env):
    return compare(env, "O-rel", 2, _e_rel(env, bits(env.ctx.o_cup)), env.oracle.o_rel)


def f_set(env: Env):
    c = env.ctx
    members = list(bits(c.f_set))
    return compare_set(env, "F-set", c.f_set, env.oracle.f_set, caveats=_n_caveats(env, members),
                       justification="larger Y outside the universe are not enumerated: members with N vertices are caveats")


def f_rel(env: Env):
    c = env.ctx
    members = list(bits(c.f_set))
    return compare(env, "F-rel", 2, _e_rel(env, members), env.oracle.f_rel,
                   caveats=_n_caveats(env, members))


def m_rel(env: Env):
    c = env.ctx
    track = Caveats()
    f = {(x, y) for x in range(c.size) for y in c.m_of_with(x, track)}
    return compare(env, "M-rel", 2, f, env.oracle.m_rel, caveats=track,
                   justification="Y <= X keeps every candidate inside the universe")


def frak_m(env: Env):
    c = env.ctx
    labels = [ms if len(ms) == 1 else None for ms in c.m_of]
    return compare_partition(env, "same-M", labels, env.oracle.m_classes())


def l_rel(env: Env):
    c = env.ctx
    track = Caveats()
    f = {(x, y) for x in range(c.size) for y in c.l_of_with(x, track)}
    return compare(env, "L-rel", 2, f, env.oracle.l_rel, caveats=track, justification=MAXIMAL)


# -- arithmetic ------------------------------------------------------------------


def e_plus(env: Env):
    c = env.ctx
    track = Caveats()
    f = {(x, y, z) for x in c.e_chain for y in c.e_chain for z in c.e_plus(x, y, track)}
    return compare(env, "E-plus", 3, f, env.oracle.e_plus, caveats=track,
                   justification="Y = E_1 uses the unique cover of X inside the empty set")


def e_plus_q(env: Env):
    c, o = env.ctx, env.oracle
    f = set()
    for i in range(1, len(c.e_chain) + 1):
        for j in range(2, len(c.e_chain) + 1):
            for q in c.e_plus_q(i, j):
                f.add((c.e(i), c.e(j), q))
    want = set()
    for i in range(1, env.N + 1):
        for j in range(2, env.N + 1 - i):
            q = o.fits(disjoint_union(gd.loops(i), strip_loops(gd.full(j))))
            want.add((o.empty(i), o.empty(j), q))
    return compare(env, "Q-witness", 3, f, want, justification="j >= 2; at j = 1 the construction is void")


def interval(env: Env):
    c = env.ctx
    f = {(x, y) for x in c.e_chain for y in c.interval_partners(x)}
    capped = sum(1 for x in c.e_chain if c.interval_reaches_bound(x))
    return compare(env, "interval", 2, f, env.oracle.interval, caveats=capped,
                   justification="when E_2n lies above the bound every larger chain element counts")


# -- stars, arrows, flags -------------------------------------------------------------


def ostar(env: Env):
    c = env.ctx
    track = Caveats()
    f = {(x, y) for y in c.e_chain for x in c.ostar(y, track)}
    return compare(env, "star-rel", 2, f, env.oracle.ostar_rel, caveats=track,
                   justification="a required cycle above the bound embeds in nothing: " + DOWNSET)


def oarrow(env: Env):
    c = env.ctx
    f = {(x, y) for y in c.e_chain for x in c.oarrow(y)}
    return compare(env, "arrow-rel", 2, f, env.oracle.oarrow_rel)


def flag(env: Env):
    c = env.ctx
    f = {(x, y) for y in c.e_chain for x in c.flag(y)}

    def explain(t):
        x, y = t
        n = c.e_pos.get(y)
        if n is None:
            return 0
        on, en1, l1, at = c.o(n), c.e(n + 1), c.const("L1"), c.const("AT")
        return first_failed([
            lambda: on is not None and any(c.prec(z, x) for z in c.upper_covers(on)),
            lambda: en1 is not None and c.frak_e(en1, x),
            lambda: c.nleq(l1, x),
            lambda: not any(c.leq(z, x) for z in c.oarrow(y)),
            lambda: c.leq(at, x),
        ])

    return compare(env, "flag-rel", 2, f, env.oracle.flag_rel, explain=explain,
                   justification="the E-count clause is read outside the existential over Z")


def flag_loop(env: Env):
    c = env.ctx
    f = {(x, y) for y in c.e_chain for x in c.flag_loop(y)}
    return compare(env, "flag-loop-rel", 2, f, env.oracle.flag_loop_rel)


def cycle_loop(env: Env):
    c = env.ctx
    f = _e_rel(env, bits(c.cycle_loop_set))
    return compare(env, "cycle-loop-rel", 2, f, env.oracle.cycle_loop_rel)


def star_loop(env: Env):
    c = env.ctx
    track = Caveats()
    f = {(x, y) for y in c.e_chain for x in c.star_loop(y, track)}
    return compare(env, "star-loop-rel", 2, f, env.oracle.star_loop_rel, caveats=track,
                   justification=DOWNSET)


def arrow_pair(env: Env):
    c = env.ctx
    f = set()
    for y in c.e_chain:
        for z in c.e_chain:
            for x in range(c.size):
                if c.arrow_pair(x, y, z):
                    f.add((x, y, z))
    return compare(env, "cycle-arrow-rel", 3, f, env.oracle.arrow_pair_rel)


def double_cycle(env: Env):
    c = env.ctx
    f = {(x, y) for y in c.e_chain for x in c.double_cycle(y)}
    return compare(env, "double-cycle-rel", 2, f, env.oracle.double_cycle_rel)


def part(name: str, min_n: int, fn, justification: str = "") -> Part:
    return Part(name, UNIVERSE, min_n, fn, justification)
