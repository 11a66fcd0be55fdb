"""Explicit-mode parts: lemmas whose gadgets do not fit in a desk-sized
universe. Each part names the finite family its quantified variables range
over and why that family suffices (the ``justification`` string)."""

from __future__ import annotations

from itertools import combinations, permutations, product
from typing import Iterable

from .. import gadgets as gd
from ..category import (
    composition_conditions,
    hom_conditions,
    identity_conditions,
    is_homomorphism,
    object_for,
    encode_object,
)
from ..digraph import Digraph, disjoint_union
from ..embed import embeds
from ..universe import enumerate_types
from . import explicit as ex
from .entry import EXPLICIT, Env, Part
from .oracles import is_cycle_union
from .report import Mismatch, PartOutcome, outcome


class Facts:
    """Accumulates explicit checks for one part."""

    def __init__(self):
        self.checked = 0
        self.mismatches: list[Mismatch] = []

    def check(self, ok: bool, what: Iterable[str], detail: str, side: str = "formula-only") -> bool:
        self.checked += 1
        if not ok:
            self.mismatches.append(Mismatch(list(what), side, None, detail))
        return ok

    def same(self, got: Iterable[Digraph], want: Iterable[Digraph], what: str) -> None:
        """Formula-side satisfying set against the constructed one, up to isomorphism."""
        g = {ex.label(x): x for x in got}
        w = {ex.label(x): x for x in want}
        self.checked += 1
        for k in sorted(set(g) - set(w)):
            self.mismatches.append(Mismatch([k], "formula-only", None, what))
        for k in sorted(set(w) - set(g)):
            self.mismatches.append(Mismatch([k], "oracle-only", None, what))

    def member(self, got: Iterable[Digraph], target: Digraph, what: str) -> None:
        """Soundness only: ``target`` is among the satisfying digraphs."""
        self.check(ex.label(target) in {ex.label(x) for x in got}, [ex.label(target)], what, "oracle-only")

    def done(self, name: str, caveats: int = 0, justification: str = "", note: str = "") -> PartOutcome:
        return outcome(name, EXPLICIT, self.checked, self.mismatches, caveats, justification, note)


def interval_lengths(n: int) -> list[int]:
    return list(range(n + 1, 2 * n + 1))


def star_cycles(n: int) -> list[int]:
    """Cycle lengths ``k`` with ``O_k <= O_n^*``, found by embedding."""
    return sorted(ex.cycles_below(gd.star(n), 2 * n + 1))


def _flag_or_none(k: int) -> Digraph | None:
    return gd.flag(k) if k >= 2 else None


# -- stars ---------------------------------------------------------------------------


def ostar_facts(env: Env) -> PartOutcome:
    f = Facts()
    for n in (1, 2, 3):
        star = gd.star(n)
        want = interval_lengths(n)
        f.check(star_cycles(n) == want, [f"Ostar:{n}"], f"cycles below O_{n}^* are {star_cycles(n)}")
        f.check(is_cycle_union(star), [f"Ostar:{n}"], "O_n^* is a union of cycles")
        # proper sub-unions of the cycles miss some required O_i
        for r in range(len(want)):
            for sub in combinations(want, r):
                w = ex.cycle_union(sub) if sub else gd.empty(1)
                f.check(not all(ex.leq(gd.cycle(i), w) for i in want), [f"Ostar:{n}", str(sub)],
                        "a proper sub-union satisfies the covering property")
    return f.done("star-facts", justification=(
        "a union of cycles containing every required O_i has those cycles as components, "
        "so minimality reduces to its sub-unions"))


def pair_loop_candidates(i: int, j: int) -> list[Digraph]:
    """``X`` three covers above ``O_i ⊔ O_j ⊔ E_1`` with equal vertex count that
    meet the remaining clauses for the looped flag pair."""
    base = disjoint_union(ex.cycle_union((i, j)), gd.empty(1))
    ol_i, ol_j = gd.cycle_loop(i), gd.cycle_loop(j)
    ml_i, ml_j = gd.flag(i, looped=True), gd.flag(j, looped=True)
    return ex.dedupe(
        x for x in ex.edge_additions(base, 3)
        if x.loop_count and not embeds(ol_i, x) and not embeds(ol_j, x) and embeds(ml_i, x) and embeds(ml_j, x)
    )


def male_pair_loop(env: Env) -> PartOutcome:
    f = Facts()
    for i, j in ((2, 3), (3, 2), (2, 4)):
        tag = f"male_L_pair:{i},{j}"
        # O_i ⊔ O_j: the union of cycles on i+j vertices containing both
        ws = [ex.cycle_union(p) for p in ex.cycle_partitions(i + j)]
        hits = [w for w in ws if ex.leq(gd.cycle(i), w) and ex.leq(gd.cycle(j), w)]
        f.same(hits, [ex.cycle_union((i, j))], f"{tag}: O_i ⊔ O_j")
        w = ex.cycle_union((i, j))
        grown = [x for x in ex.upper_covers(w) if not ex.same_vertices(x, w)]
        f.same(grown, [disjoint_union(w, gd.empty(1))], f"{tag}: O_i ⊔ O_j ⊔ E_1")
        f.member(pair_loop_candidates(i, j), gd.flag_pair_loop(i, j), f"{tag}: satisfying X")
    return f.done("male-pair-loop", justification=(
        "a chain of three covers above B with equal vertex counts means X is B plus three edges; "
        "the construction is checked to satisfy, other satisfying X are listed by the audits"))


def star_loop_explicit(env: Env) -> PartOutcome:
    f = Facts()
    for n in (2, 3):
        tag = f"OLstar:{n}"
        star = gd.star(n)
        ks = star_cycles(n)
        arrows = [t.canonical for k in ks for t in gd.cycle_extensions(k)]
        flags = [g for g in (_flag_or_none(k) for k in ks) if g is not None]
        lnext = gd.loops(n + 1)

        def downward_ok(x: Digraph) -> bool:
            return (all(ex.nleq(a, x) for a in arrows) and all(ex.nleq(m, x) for m in flags)
                    and ex.nleq(lnext, x))

        for x in ex.dedupe(star.add_edges([e]) for e in ex.missing_edges(star, loops=False)):
            f.check(not downward_ok(x), [tag, ex.label(x)], "a non-loop extension avoids the forbidden patterns")
        sat = []
        for x in (y for k in range(n + 2) for y in ex.loop_additions(star, count=k)):
            ok = (ex.leq(star, x) and ex.same_vertices(x, star) and downward_ok(x)
                  and all(ex.leq(gd.cycle_loop(k), x) for k in ks))
            if ok:
                sat.append(x)
        f.same(sat, [gd.star(n, looped=True)], f"{tag}: satisfying X")
    return f.done("star-loop-explicit", justification=(
        "the forbidden-pattern clauses are downward closed: a violating one-edge extension rules out all "
        "extensions containing it, and more than n+1 loops contain L_{n+1}"))


# -- cycle arrows ------------------------------------------------------------------------


def arrow_pair_soundness(env: Env) -> PartOutcome:
    f = Facts()
    for i, j in ((2, 3), (3, 2), (3, 3), (2, 4)):
        tag = f"Oto:{i},{j}"
        x = gd.cycle_to_cycle(i, j)
        f.check(x.n == i + j, [tag], "vertex count")
        witnesses = [
            w for w in ex.lower_covers(x)
            if ex.same_vertices(w, x) and is_cycle_union(w) and ex.cycles_below(w, i + j) == {i, j}
        ]
        f.check(bool(witnesses), [tag], "no covered union of exactly O_i and O_j")
        f.check(ex.leq(gd.flag(i), x), [tag], "male_i does not embed")
    return f.done("cycle-arrow-soundness", justification=(
        "soundness of the defining conditions on the constructed digraphs; completeness is examined by the audits"))


def double_cycle_explicit(env: Env) -> PartOutcome:
    f = Facts()
    for i in (3, 4):
        ws = [ex.cycle_union(p) for p in ex.cycle_partitions(2 * i)]
        hits = [w for w in ws if ex.cycles_below(w, 2 * i) == {i}]
        f.same(hits, [gd.cycle_pair(i)], f"Opair:{i}")
    return f.done("double-cycle-explicit", justification="unions of cycles on 2i vertices are its cycle partitions")


# -- G ⊔ O_n^* and anchored digraphs ---------------------------------------------------------


def _looped_star_covers(n: int) -> list[Digraph]:
    star = gd.star(n)
    return [z for z in ex.upper_covers(star) if ex.leq(gd.loops(1), z)]


def _w_ok(w: Digraph, x: Digraph, n: int) -> bool:
    return (ex.leq(ex.l_of(x), w) and ex.leq(gd.star(n), w)
            and not any(ex.leq(z, w) for z in _looped_star_covers(n)))


def _y_candidates(x: Digraph, w: Digraph, with_leq: bool) -> list[Digraph]:
    """``Y`` with ``Y ≡ W``, ``X <= Y``, same loops as ``X``, and no ``X̄`` defeating it."""
    out = []
    for y in ex.loop_additions(ex.m_of(w), count=x.loop_count):
        if not (ex.same_strip(y, w) and ex.leq(x, y) and ex.same_loops(x, y)):
            continue
        defeated = False
        for xbar in ex.loop_additions(x):
            zs = [z for z in ex.loop_additions(y) if ex.leq(z, w) and ex.same_loops(xbar, z)]
            if with_leq:
                zs = [z for z in zs if ex.leq(xbar, z)]
            if not zs:
                defeated = True
                break
        if not defeated:
            out.append(y)
    return out


def g_plus_star(env: Env) -> PartOutcome:
    f = Facts()
    caveats = 0
    for n in (1, 2):
        for x in (t.canonical for t in enumerate_types(n) if t.n == n):
            tag = f"G={ex.label(x)}"
            w = disjoint_union(ex.l_of(x), gd.star(n))
            f.check(_w_ok(w, x, n), [tag], "L(X) ⊔ O_n^* fails its defining conditions")
            f.check(not any(_w_ok(v, x, n) for v in ex.lower_covers(w)), [tag],
                    "L(X) ⊔ O_n^* is not minimal")
            caveats += 1  # other minimal W elsewhere in the order are not excluded
            want = [disjoint_union(x, gd.star(n))]
            f.same(_y_candidates(x, w, with_leq=True), want, f"{tag}: Y")
            f.same(_y_candidates(x, w, with_leq=False), want, f"{tag}: Y, bare clauses")
    return f.done("G-plus-star", caveats=caveats, justification=(
        "Y, X̄ and Z range over loop additions (the ≡ clauses fix everything else); W minimality via lower "
        "covers by convexity; uniqueness of the minimal W is assumed"))


def anchor_stage_ok(y: Digraph, x: Digraph, n: int) -> bool:
    """The clauses ``L(G) ⊔ O_n^*`` anchored must meet, minimality aside."""
    lx, star = ex.l_of(x), gd.star(n)
    top = disjoint_union(lx, star)
    if not (ex.leq(top, y) and ex.same_vertices(y, top)):
        return False
    if any(ex.leq(z, y) for z in ex.upper_covers(lx) if ex.same_vertices(z, lx)):
        return False
    if any(ex.leq(z, y) for z in ex.upper_covers(star) if ex.same_vertices(z, star)):
        return False
    ks = star_cycles(n)
    if not all(ex.leq(gd.flag(k, looped=True), y) for k in ks):
        return False
    return not any(ex.leq(gd.flag_pair_loop(a, b), y) for a in ks for b in ks if a != b)


def cross_edges(x: Digraph, n: int) -> list[tuple[int, int]]:
    """Edges between ``L(x)`` and the star in ``L(x) ⊔ O_n^*``, both directions."""
    total = x.n + gd.star(n).n
    plain, cyc = range(1, x.n + 1), range(x.n + 1, total + 1)
    return [(a, b) for a in plain for b in cyc] + [(b, a) for a in plain for b in cyc]


def spanning_below(y: Digraph, floor: Digraph) -> list[Digraph]:
    """Proper spanning subgraphs of ``y`` still above ``floor``: with equal vertex
    counts these are all ``Y' < y`` with ``floor <= Y'``."""
    spare = y.edge_count - floor.edge_count
    out = []
    for k in range(1, spare + 1):
        out.extend(y.remove_edges(c) for c in combinations(y.edges, k))
    return [z for z in ex.dedupe(out) if ex.leq(floor, z)]


def anchored(env: Env) -> PartOutcome:
    f = Facts()
    for n in (1, 2):
        star = gd.star(n)
        plain = range(1, n + 1)
        for x in (t.canonical for t in enumerate_types(n) if t.n == n):
            tag = f"G={ex.label(x)}"
            lx = ex.l_of(x)
            top = disjoint_union(lx, star)
            want = ex.dedupe(gd.anchor(lx, p) for p in permutations(plain))
            for a in want:
                f.check(anchor_stage_ok(a, x, n), [tag, ex.label(a)], "anchored L(G) fails the clauses", "oracle-only")
                f.check(not any(anchor_stage_ok(z, x, n) for z in spanning_below(a, top)), [tag, ex.label(a)],
                        "anchored L(G) is not minimal", "oracle-only")
            if n == 1:
                cross = cross_edges(lx, n)
                sat = ex.dedupe(
                    y for k in range(len(cross) + 1) for c in combinations(cross, k)
                    if anchor_stage_ok(y := top.add_edges(c), x, n)
                )
                labels = {ex.label(y) for y in sat}
                minimal = [y for y in sat if not any(ex.label(z) in labels for z in spanning_below(y, top))]
                f.same(minimal, want, f"{tag}: minimal Y")
            final = []
            for a in want:
                for y in ex.loop_additions(ex.m_of(a), count=x.loop_count):
                    if (ex.same_strip(a, y) and ex.leq(disjoint_union(x, star), y) and ex.leq(y, a)
                            and ex.same_loops(x, y)):
                        final.append(y)
            f.same(final, [gd.anchor(x, p) for p in permutations(plain)], f"{tag}: G anchored")
    return f.done("anchored", justification=(
        "Y has the vertex count of L(G) ⊔ O_n^*, so Y' below it are spanning subgraphs; for n = 1 every "
        "cross-edge set is enumerated (extensions inside either part violate the cover clauses), for n = 2 the "
        "construction is checked to satisfy and be minimal, other minimal Y are listed by the audits"))


# -- looped flags and arrows -------------------------------------------------------------------


def side_by_side_candidates(i: int, j: int) -> list[Digraph]:
    b3 = disjoint_union(ex.cycle_union((i, j)), gd.loops(2))
    ml_i, ml_j = gd.flag(i, looped=True), gd.flag(j, looped=True)
    return [w for w in ex.two_step_covers(b3)
            if ex.leq(ml_i, w) and ex.leq(ml_j, w) and ex.nleq(gd.flag_pair_loop(i, j), w)]


def arrow_candidates(i: int, j: int) -> list[Digraph]:
    pair = disjoint_union(gd.flag(i, looped=True), gd.flag(j, looped=True))
    return [w for w in ex.upper_covers(pair) if ex.leq(gd.I_DOUBLE, w)]


def loop_arrow_candidates(i: int) -> list[Digraph]:
    ml1 = disjoint_union(gd.flag(i, looped=True), gd.loops(1))
    return [w for w in ex.upper_covers(ml1) if ex.leq(gd.I_STAR, w)]


def flag_arrow(env: Env) -> PartOutcome:
    f = Facts()
    for i, j in ((2, 3), (3, 2)):
        tag = f"male_L_arrow:{i},{j}"
        b1 = disjoint_union(ex.cycle_union((i, j)), gd.empty(1))
        b2 = disjoint_union(ex.cycle_union((i, j)), gd.empty(2))
        f.same([w for w in ex.upper_covers(b1) if not ex.same_vertices(w, b1)], [b2], f"{tag}: +E_2")
        b3 = disjoint_union(ex.cycle_union((i, j)), gd.loops(2))
        ol_i, ol_j = gd.cycle_loop(i), gd.cycle_loop(j)
        got = [w for w in ex.two_step_covers(b2)
               if ex.leq(gd.loops(2), w) and ex.nleq(ol_i, w) and ex.nleq(ol_j, w)]
        f.same(got, [b3], f"{tag}: +L_2")
        ml_i, ml_j = gd.flag(i, looped=True), gd.flag(j, looped=True)
        pair = disjoint_union(ml_i, ml_j)
        f.member(side_by_side_candidates(i, j), pair, f"{tag}: looped flags side by side")
        both = [gd.flag_to_flag(i, j, looped=True), gd.flag_to_flag(j, i, looped=True)]
        covers = arrow_candidates(i, j)
        for b in both:
            f.member(covers, b, f"{tag}: arrow among the covers containing I")
        me = disjoint_union(ml_i, gd.empty(1))
        ml1 = disjoint_union(ml_i, gd.loops(1))
        vs = [v for v in ex.upper_covers(ml_i) if ex.leq(gd.loops(2), v)]
        got = [w for w in ex.upper_covers(me)
               if ex.leq(gd.loops(2), w) and not any(ex.leq(v, w) for v in vs)]
        f.same(got, [ml1], f"{tag}: male_i^L ⊔ L_1")
        arrow = gd.flag_loop_arrow(i)
        f.member(loop_arrow_candidates(i), arrow, f"{tag}: male_i^L->")
        f.check(ex.leq(arrow, both[0]), [tag], "male_i^L-> misses the i->j arrow")
        f.check(ex.nleq(arrow, both[1]), [tag], "male_i^L-> embeds in the j->i arrow")
        f.check(ex.iso(ex.m_of(both[0]), gd.flag_to_flag(i, j)), [tag], "M of the looped arrow")
    return f.done("flag-arrow-facts", justification=(
        "every step is a cover or two-cover family, enumerated exactly; steps whose family holds more than "
        "the construction are checked for membership and their other members are listed by the audits"))


# -- unions of stars -----------------------------------------------------------------------------


def star_pair(env: Env) -> PartOutcome:
    f = Facts()
    for i, j in ((2, 2), (2, 3), (3, 2)):
        tag = f"Ostar:{i}+OLstar:{j}"
        si, sj = gd.star(i), gd.star(j)
        ci, cj = set(star_cycles(i)), set(star_cycles(j))
        total = si.n + sj.n
        top = 2 * max(i, j)
        ws = []
        for p in ex.cycle_partitions(total):
            if max(p) > top + 1:
                continue
            w = ex.cycle_union(p)
            below = ex.cycles_below(w, top)
            if not (ci | cj) <= below:
                continue
            if not all(ex.leq(gd.cycle_pair(k), w) for k in ci & cj):
                continue
            ws.append(w)
        # partitions using a part longer than 2*max(i,j)+1 contain no larger required
        # cycle and are handled by the same cycle test:
        for p in ex.cycle_partitions(total):
            if max(p) > top + 1:
                w = ex.cycle_union(p)
                ok = (ci | cj) <= ex.cycles_below(w, top) and all(
                    ex.leq(gd.cycle_pair(k), w) for k in ci & cj)
                if ok:
                    ws.append(w)
        both = disjoint_union(si, sj)
        f.same(ws, [both], f"{tag}: O_i^* ⊔ O_j^*")
        target = gd.star(j, looped=True)
        k = target.loop_count
        sat = []
        for x in ex.loop_additions(both, count=k):
            if ex.leq(both, x) and ex.leq(x, ex.l_of(both)) and ex.leq(target, x):
                sat.append(x)
        f.same(sat, [disjoint_union(si, target)], f"{tag}: X")
    return f.done("star-pair-facts", justification=(
        "W ranges over unions of cycles with the right vertex count; a minimal X keeps only the loops of one "
        "embedded O_{j,L}^*, so exactly that many loops are added"))


# -- function gadgets -----------------------------------------------------------------------------


def _f_base(n: int, m: int) -> Digraph:
    return disjoint_union(gd.star(n), gd.star(m, looped=True))


def f_conditions(x: Digraph, n: int, m: int, literal: bool = False) -> bool:
    """The function-gadget clauses. The one-cover clause ranges over covers of
    ``male_i`` with its vertex count, or over every cover when ``literal``."""
    base = _f_base(n, m)
    if not (ex.leq(base, x) and ex.same_vertices(base, x) and ex.same_loops(base, x)):
        return False
    src = star_cycles(n)
    allc = sorted(ex.cycles_below(base, 2 * max(n, m) + 1))
    if not all(ex.leq(gd.flag(i, looped=True), x) for i in src):
        return False
    for i in allc:
        if any(ex.leq(t.canonical, x) for t in gd.cycle_extensions(i)):
            return False
    for i in src:
        fl = gd.flag(i)
        if not ex.leq(fl, x):
            continue
        for v in ex.upper_covers(fl):
            if (literal or ex.same_vertices(v, fl)) and ex.leq(v, x) and ex.nleq(gd.flag(i, looped=True), v):
                return False
    for i in src:
        for v in ex.upper_covers(gd.flag(i, looped=True)):
            if ex.leq(v, x) and ex.leq(gd.loops(2), v):
                return False
    return True


def f_alpha_facts(env: Env) -> PartOutcome:
    f = Facts()
    caveats = 0
    for n, m in product((1, 2), repeat=2):
        members = {}
        for alpha in gd.all_maps(n, m):
            tag = f"Falpha:{n},{m}:{list(alpha)}"
            x = gd.f_alpha(n, m, alpha)
            f.check(f_conditions(x, n, m), [tag], "F_α fails the defining conditions")
            smaller = [x.remove_edges([e]) for e in x.edges if e[0] != e[1]]
            f.check(not any(f_conditions(y, n, m) for y in ex.dedupe(smaller)), [tag], "F_α is not minimal")
            members.setdefault(ex.label(x), []).append(alpha)
        f.check(all(len(v) == 1 for v in members.values()), [f"F:{n},{m}"], "two maps give isomorphic F_α")
        caveats += 1  # other minimal X outside the family are not enumerated
    return f.done("F-alpha-facts", caveats=caveats, justification=(
        "the one-edge-cover clause is read over same-vertex-count covers of male_i; minimality via non-loop "
        "edge deletions (loop or vertex deletions break the count clauses)"))


def identity_maps(env: Env) -> PartOutcome:
    f = Facts()
    for n in (1, 2):
        for alpha in gd.all_maps(n, n):
            x = gd.f_alpha(n, n, alpha)
            want = alpha == tuple(range(1, n + 1))
            f.check(identity_conditions(x, n) == want, [f"Falpha:{n},{n}:{list(alpha)}"],
                    f"identity conditions give {not want}", "formula-only" if not want else "oracle-only")
    return f.done("identity", justification="every map [n] -> [n], n <= 2")


def compose_maps(env: Env) -> PartOutcome:
    f = Facts()
    for n, m, l in product((1, 2), repeat=3):
        fa = {a: gd.f_alpha(n, m, a) for a in gd.all_maps(n, m)}
        fb = {b: gd.f_alpha(m, l, b) for b in gd.all_maps(m, l)}
        fc = {c: gd.f_alpha(n, l, c) for c in gd.all_maps(n, l)}
        for a, xa in fa.items():
            for b, xb in fb.items():
                ba = tuple(b[a[k] - 1] for k in range(n))
                for c, xc in fc.items():
                    got = composition_conditions(xa, xb, xc, n, m, l)
                    f.check(got == (c == ba), [f"{list(a)}", f"{list(b)}", f"{list(c)}"],
                            f"n,m,l={n},{m},{l}", "formula-only" if got else "oracle-only")
    return f.done("compose", justification="every α, β, γ with n, m, l <= 2")


def hom_transport(env: Env) -> PartOutcome:
    f = Facts()
    for n, m in product((1, 2), repeat=2):
        gs = [t.canonical for t in enumerate_types(n) if t.n == n]
        hs = [t.canonical for t in enumerate_types(m) if t.n == m]
        for g in gs:
            for order in permutations(range(1, n + 1)):
                src = encode_object(g, order)
                for h in hs:
                    dst = object_for(h)
                    for alpha in gd.all_maps(n, m):
                        want = is_homomorphism(src.cd_object, dst.cd_object, alpha)
                        got = hom_conditions(src.encoded, gd.f_alpha(n, m, alpha), dst.encoded, n, m)
                        f.check(got == want, [ex.label(src.encoded), f"{list(alpha)}", ex.label(dst.encoded)],
                                f"n,m={n},{m}", "formula-only" if got else "oracle-only")
    return f.done("hom", justification="every object pair and map with n, m <= 2, every source anchor order")


def part(name: str, fn, justification: str = "") -> Part:
    return Part(name, EXPLICIT, 0, fn, justification)
