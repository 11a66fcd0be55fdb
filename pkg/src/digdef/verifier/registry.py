"""The lemma registry and the two entry points ``verify`` and ``verify_all``."""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor

from ..universe import Universe
from . import explicit as ex
from . import lemmas_explicit as lx
from . import lemmas_universe as lu
from .entry import PROPERTY, Env, LemmaEntry, Part
from .properties import loop_pair_preconditions, loop_pair_witness_works, verify_loop_addition, verify_raising
from .report import Mismatch, VerificationReport, outcome, skipped


class RegistryError(ValueError):
    pass


# -- property parts ---------------------------------------------------------------


def raising(env: Env):
    r = verify_raising(3)
    mism = [Mismatch([g, h], "oracle-only", None, f"{comp} at {list(phi)}") for g, h, phi, comp in r.violations]
    return outcome("raising", PROPERTY, r.embeddings, mism,
                   justification="every embedding of every qualifying pair with at most three vertices",
                   note=f"pairs={r.pairs} raised={r.raised}")


def loop_addition(env: Env):
    mism = []
    checked = 0
    distinct = 0
    for n in (1, 2, 3):
        for r in verify_loop_addition(n):
            checked += 1
            distinct += r.distinct
            if r.criterion != r.distinct:
                side = "formula-only" if r.criterion else "oracle-only"
                mism.append(Mismatch([ex.label(r.g), ex.label(r.g2)], side, None, f"n={n}"))
    for what, ok in loop_pair_preconditions().items():
        checked += 1
        if not ok:
            mism.append(Mismatch(["loop-pair"], "oracle-only", None, f"precondition failed: {what}"))
    checked += 1
    if not loop_pair_witness_works():
        mism.append(Mismatch(["loop-pair"], "oracle-only", None, "witness does not work"))
    return outcome("loop-addition", PROPERTY, checked, mism,
                   justification="all qualifying pairs with n <= 3; Ḡ and X range over loop additions",
                   note=f"distinct pairs={distinct}; the criterion is read with Ḡ <= X")


def _p(name: str, fn, justification: str = "") -> Part:
    return Part(name, PROPERTY, 0, fn, justification)


u, x = lu.part, lx.part

REGISTRY: tuple[LemmaEntry, ...] = (
    LemmaEntry("L4.2-E-set", 1, "edgeless digraphs", (u("E-set", 1, lu.e_set),)),
    LemmaEntry("L4.2-L-set", 1, "fully looped edgeless digraphs", (u("L-set", 1, lu.l_set),)),
    LemmaEntry("L4.2-LE-rel", 2, "loop and vertex counts", (
        u("LE-rel", 1, lu.le_rel), u("vertex-count", 1, lu.vertex_rel), u("loop-count", 1, lu.loop_rel),
        u("same-vertices", 1, lu.frak_e), u("same-loops", 1, lu.frak_l))),
    LemmaEntry("L4.3-O-set", 1, "disjoint unions of cycles", (u("H-set", 2, lu.h_set), u("O-set", 2, lu.o_set))),
    LemmaEntry("L4.4-bundle", 2, "single cycles, full digraphs, loop stripping and saturation", (
        u("O-cup", 2, lu.o_cup), u("O-rel", 2, lu.o_rel), u("F-set", 1, lu.f_set), u("F-rel", 1, lu.f_rel),
        u("M-rel", 1, lu.m_rel), u("same-M", 1, lu.frak_m), u("L-rel", 1, lu.l_rel))),
    LemmaEntry("L4.5-Eplus", 3, "addition of vertex counts", (
        u("E-plus", 2, lu.e_plus), u("Q-witness", 3, lu.e_plus_q))),
    LemmaEntry("L4.7-interval", 2, "n < m <= 2n", (u("interval", 1, lu.interval),)),
    LemmaEntry("L4.8-Ostar", 2, "the cycle star", (u("star-rel", 2, lu.ostar), x("star-facts", lx.ostar_facts))),
    LemmaEntry("L4.9-Oarrow", 2, "one-edge extensions of a cycle", (u("arrow-rel", 2, lu.oarrow),)),
    LemmaEntry("L4.11-bundle", 3, "flags, looped flags and looped stars", (
        u("flag-rel", 3, lu.flag), u("flag-loop-rel", 3, lu.flag_loop), u("cycle-loop-rel", 2, lu.cycle_loop),
        u("star-loop-rel", 2, lu.star_loop), x("male-pair-loop", lx.male_pair_loop),
        x("star-loop-explicit", lx.star_loop_explicit))),
    LemmaEntry("L4.13-Oij", 3, "an arrow between two cycles", (
        u("cycle-arrow-rel", 4, lu.arrow_pair), x("cycle-arrow-soundness", lx.arrow_pair_soundness))),
    LemmaEntry("L4.14-raising", 0, "raising of components", (_p("raising", raising),)),
    LemmaEntry("L4.15-loops", 0, "the loop-addition criterion", (_p("loop-addition", loop_addition),)),
    LemmaEntry("L4.16-GplusOstar", 2, "a digraph beside the cycle star", (x("G-plus-star", lx.g_plus_star),)),
    LemmaEntry("L4.18-anchored", 2, "a digraph anchored by the cycle star", (x("anchored", lx.anchored),)),
    LemmaEntry("L4.19-flag-arrow", 3, "an arrow between two flags", (x("flag-arrow-facts", lx.flag_arrow),)),
    LemmaEntry("L4.22-Oii", 2, "two equal cycles", (
        u("double-cycle-rel", 4, lu.double_cycle), x("double-cycle-explicit", lx.double_cycle_explicit))),
    LemmaEntry("L4.23-starpair", 3, "a star beside a looped star", (x("star-pair-facts", lx.star_pair),)),
    LemmaEntry("L4.25-Falpha", 3, "the function gadgets", (x("F-alpha-facts", lx.f_alpha_facts),)),
    LemmaEntry("L4.26-identity", 3, "identity maps", (x("identity", lx.identity_maps),)),
    LemmaEntry("L4.26b-compose", 6, "composition of maps", (x("compose", lx.compose_maps),)),
    LemmaEntry("L4.27-hom", 3, "homomorphisms", (x("hom", lx.hom_transport),)),
)

_BY_ID = {e.id: e for e in REGISTRY}


def ids() -> list[str]:
    return [e.id for e in REGISTRY]


def entry(lemma_id: str) -> LemmaEntry:
    try:
        return _BY_ID[lemma_id]
    except KeyError:
        raise RegistryError(f"unknown lemma id {lemma_id!r}") from None


def _run(e: LemmaEntry, env: Env) -> VerificationReport:
    start = time.perf_counter()
    parts = []
    for p in e.parts:
        if p.min_n and env.N < p.min_n:
            parts.append(skipped(p.name, p.mode, f"needs N >= {p.min_n}"))
        else:
            parts.append(p.run(env))
    millis = round((time.perf_counter() - start) * 1000)
    return VerificationReport.aggregate(e.id, env.N, parts, millis)


def verify(lemma_id: str, u: Universe, seed: int = 0) -> VerificationReport:
    e = entry(lemma_id)
    if u.N < e.min_n:
        raise RegistryError(f"N below minimum: {lemma_id} needs N >= {e.min_n}, got {u.N}")
    return _run(e, Env(u, seed))


def verify_all(u: Universe, threads: int = 1, seed: int = 0) -> list[VerificationReport]:
    """Every entry, in registry order; entries whose bound exceeds ``u.N`` are skipped."""
    env = Env(u, seed)
    # build shared state before workers touch it
    _ = env.ctx, env.oracle

    def one(e: LemmaEntry) -> VerificationReport:
        if u.N < e.min_n:
            parts = [skipped(p.name, p.mode, f"needs N >= {e.min_n}") for p in e.parts]
            return VerificationReport.aggregate(e.id, u.N, parts, 0)
        return _run(e, env)

    if threads <= 1:
        return [one(e) for e in REGISTRY]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(one, REGISTRY))
