"""Audits: concrete digraphs on which a defining condition, read literally,
admits more (or fewer) digraphs than the intended construction.

Each finding carries witnesses as canonical keys so it can be re-checked with
``embed check`` and ``gadget make``. The registry checks the constructions
themselves; these findings describe the rest of each satisfying family.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field

from .. import gadgets as gd
from ..digraph import Digraph, disjoint_union
from ..universe import Universe
from . import explicit as ex
from .context import FormulaContext
from .lemmas_explicit import (
    anchor_stage_ok,
    arrow_candidates,
    f_conditions,
    loop_arrow_candidates,
    pair_loop_candidates,
    side_by_side_candidates,
    spanning_below,
)
from .oracles import is_cycle_union
from .properties import verify_loop_addition


@dataclass
class Finding:
    id: str
    claim: str
    confirmed: bool
    witnesses: list[str] = field(default_factory=list)
    note: str = ""


def _extras(found: list[Digraph], intended: list[Digraph]) -> list[str]:
    want = {ex.label(g) for g in intended}
    return sorted(ex.label(g) for g in found if ex.label(g) not in want)


def eplus_void_at_one(u: Universe) -> Finding:
    """The Q-construction yields no sum with ``E_1``: ``F_1^*`` is just ``L_1``."""
    c = FormulaContext(u)
    e1 = c.e(1)
    pairs = [x for x in c.e_chain if c.e_plus_literal(x, e1)]
    return Finding(
        "eplus-void-at-one",
        "the literal sum construction relates no (E_i, E_1, Z)",
        not pairs and bool(c.e_chain),
        [u.types[x].hex for x in pairs],
        f"checked on U({u.N})",
    )


def cycle_arrow_reverse_chord() -> Finding:
    """``O_2 ⊔ (O_3`` plus a reversed chord``)`` meets the cycle-arrow clauses for (2, 3)."""
    c3 = gd.cycle(3)
    x = disjoint_union(gd.cycle(2), c3.add_edges([(2, 1)]))
    i, j = 2, 3
    covered = any(
        ex.same_vertices(w, x) and is_cycle_union(w) and ex.cycles_below(w, i + j) == {i, j}
        for w in ex.lower_covers(x)
    )
    ok = x.n == i + j and covered and ex.leq(gd.flag(i), x) and not ex.iso(x, gd.cycle_to_cycle(i, j))
    return Finding("cycle-arrow-reverse-chord", "a second digraph meets the O_{2->3} clauses", ok, [ex.label(x)])


def pair_loop_chords() -> Finding:
    wit: list[str] = []
    for i, j in ((2, 3), (3, 2), (2, 4)):
        wit += _extras(pair_loop_candidates(i, j), [gd.flag_pair_loop(i, j)])
    return Finding("pair-loop-chords", "the looped flag pair clauses admit digraphs with a chord", bool(wit),
                   sorted(set(wit)))


def side_by_side_chords() -> Finding:
    wit: list[str] = []
    for i, j in ((2, 3), (3, 2)):
        pair = disjoint_union(gd.flag(i, looped=True), gd.flag(j, looped=True))
        wit += _extras(side_by_side_candidates(i, j), [pair])
    return Finding("side-by-side-chords", "two looped flags side by side are not the only two-step cover",
                   bool(wit), sorted(set(wit)))


def arrow_extra_covers() -> Finding:
    wit: list[str] = []
    for i, j in ((2, 3), (3, 2)):
        both = [gd.flag_to_flag(i, j, looped=True), gd.flag_to_flag(j, i, looped=True)]
        wit += _extras(arrow_candidates(i, j), both)
    return Finding("arrow-extra-covers", "covers containing I hold more than the two looped arrows", bool(wit),
                   sorted(set(wit)))


def loop_arrow_extra() -> Finding:
    wit: list[str] = []
    for i in (2, 3):
        wit += _extras(loop_arrow_candidates(i), [gd.flag_loop_arrow(i)])
    return Finding("loop-arrow-extra", "a loop on the flag's cycle vertex also creates I^*", bool(wit),
                   sorted(set(wit)))


# found by searching L_2 ⊔ O_3 ⊔ O_4 plus three cross edges: the O_4 is routed
# through a looped vertex, so no cycle of the star points at the second one
ANCHOR_BORROW = ((1, 3), (5, 1), (3, 2))


def anchored_borrowed_cycle() -> Finding:
    x = gd.empty(2)
    n = 2
    top = disjoint_union(ex.l_of(x), gd.star(n))
    y = top.add_edges(ANCHOR_BORROW)
    anchor = gd.anchor(ex.l_of(x), (1, 2))
    minimal = not any(anchor_stage_ok(z, x, n) for z in spanning_below(y, top))
    ok = anchor_stage_ok(y, x, n) and minimal and not ex.leq(anchor, y)
    return Finding("anchored-borrowed-cycle", "a minimal Y for G = E_2 does not contain the anchored digraph", ok,
                   [ex.label(y)])


def falpha_literal_bullet() -> Finding:
    """Read with every cover ``V`` of ``male_i``, ``V = male_i ⊔ E_1`` always
    embeds and never contains ``male_i^L``, so no F_α qualifies."""
    bad: list[str] = []
    for n in (1, 2):
        for m in (1, 2):
            for alpha in gd.all_maps(n, m):
                x = gd.f_alpha(n, m, alpha)
                lit = f_conditions(x, n, m, literal=True)
                if not lit:
                    bad.append(ex.label(x))
    total = sum(len(gd.all_maps(n, m)) for n in (1, 2) for m in (1, 2))
    return Finding("falpha-literal-bullet", "the literal one-cover clause rejects every F_α",
                   len(bad) == total, sorted(set(bad)))


def loop_addition_literal() -> Finding:
    wit = []
    for n in (2, 3):
        for r in verify_loop_addition(n):
            if r.literal != r.distinct:
                wit.append(f"{ex.label(r.g)}|{ex.label(r.g2)}")
    return Finding("loop-addition-literal", "without Ḡ <= X the criterion misjudges some pairs", bool(wit), wit)


def arrow_family_sizes() -> Finding:
    sizes = {k: len(gd.cycle_extensions(k)) for k in (2, 3)}
    return Finding("arrow-family-sizes", "no one-edge extension of O_2 avoids loops; O_3 has exactly one",
                   sizes == {2: 0, 3: 1}, [f"O_{k}: {v}" for k, v in sizes.items()])


AUDITS = (
    cycle_arrow_reverse_chord, pair_loop_chords, side_by_side_chords, arrow_extra_covers, loop_arrow_extra,
    anchored_borrowed_cycle, falpha_literal_bullet, loop_addition_literal, arrow_family_sizes,
)


def run_audits(u: Universe | None = None) -> list[Finding]:
    out = [a() for a in AUDITS]
    if u is not None:
        out.insert(0, eplus_void_at_one(u))
    return out


def render_audits(findings: list[Finding]) -> str:
    lines = []
    for f in findings:
        mark = "CONFIRMED" if f.confirmed else "NOT-CONFIRMED"
        lines.append(f"{f.id:28s} {mark:14s} {f.claim}")
        for w in f.witnesses[:6]:
            lines.append(f"    {w}")
        if len(f.witnesses) > 6:
            lines.append(f"    ... {len(f.witnesses) - 6} more")
    return "\n".join(lines) + "\n"


def audits_json(findings: list[Finding]) -> str:
    return json.dumps([asdict(f) for f in findings], indent=2, ensure_ascii=False) + "\n"
