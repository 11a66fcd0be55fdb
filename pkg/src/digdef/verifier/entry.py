"""Registry entry types and the comparison helpers shared by all entries."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from ..universe import Universe
from .context import Caveats, FormulaContext, bits
from .oracles import Oracle
from .report import Mismatch, PartOutcome, outcome

UNIVERSE = "universe"
EXPLICIT = "explicit"
PROPERTY = "property"


@dataclass
class Env:
    u: Universe
    seed: int = 0
    _ctx: FormulaContext | None = field(default=None, repr=False)
    _oracle: Oracle | None = field(default=None, repr=False)

    @property
    def N(self) -> int:
        return self.u.N

    @property
    def ctx(self) -> FormulaContext:
        if self._ctx is None:
            self._ctx = FormulaContext(self.u)
        return self._ctx

    @property
    def oracle(self) -> Oracle:
        if self._oracle is None:
            self._oracle = Oracle(self.u)
        return self._oracle


@dataclass(frozen=True)
class Part:
    name: str
    mode: str
    min_n: int  # 0: independent of the universe
    run: Callable[[Env], PartOutcome]
    justification: str = ""


@dataclass(frozen=True)
class LemmaEntry:
    id: str
    arity: int
    summary: str
    parts: tuple[Part, ...]

    @property
    def min_n(self) -> int:
        return min(p.min_n for p in self.parts)

    @property
    def modes(self) -> tuple[str, ...]:
        return tuple(sorted({p.mode for p in self.parts}))


def keyed(u: Universe, tup: Sequence[int]) -> list[str]:
    return [u.types[i].hex for i in tup]


def compare(
    env: Env,
    name: str,
    arity: int,
    formula: Iterable[tuple[int, ...]],
    oracle: Iterable[tuple[int, ...]],
    caveats: int | Caveats = 0,
    justification: str = "",
    explain: Callable[[tuple[int, ...]], int | None] | None = None,
) -> PartOutcome:
    """Universe-mode comparison of two tuple sets over ``U^arity``."""
    u = env.u
    f, o = set(formula), set(oracle)
    if None in {x for t in o for x in t}:
        raise AssertionError(f"{name}: oracle names a digraph outside the universe")
    mism = [
        Mismatch(keyed(u, t), "formula-only", explain(t) if explain else None) for t in sorted(f - o)
    ] + [
        Mismatch(keyed(u, t), "oracle-only", explain(t) if explain else None) for t in sorted(o - f)
    ]
    cav = caveats.total if isinstance(caveats, Caveats) else caveats
    return outcome(name, UNIVERSE, len(u) ** arity, mism, cav, justification)


def compare_set(env: Env, name: str, formula_mask_or_set, oracle: Iterable[int], **kw) -> PartOutcome:
    if isinstance(formula_mask_or_set, int):
        f = {(i,) for i in bits(formula_mask_or_set)}
    else:
        f = {(i,) for i in formula_mask_or_set}
    return compare(env, name, 1, f, {(i,) for i in oracle}, **kw)


def compare_partition(
    env: Env,
    name: str,
    formula_label: Sequence,
    oracle_label: Sequence,
    caveats: int = 0,
    justification: str = "",
) -> PartOutcome:
    """Compare two equivalence relations on ``U`` given by class labels
    (``None``: related to nothing). Checked counts all ``|U|^2`` pairs."""
    u = env.u

    def classes(labels):
        out: dict = {}
        for i, lab in enumerate(labels):
            if lab is not None:
                out.setdefault(lab, []).append(i)
        return {i: frozenset(members) for members in out.values() for i in members}

    fc, oc = classes(formula_label), classes(oracle_label)
    mism = []
    for a in range(len(u)):
        fa, oa = fc.get(a, frozenset()), oc.get(a, frozenset())
        if fa == oa:
            continue
        for b in sorted(fa - oa):
            mism.append(Mismatch(keyed(u, (a, b)), "formula-only"))
        for b in sorted(oa - fa):
            mism.append(Mismatch(keyed(u, (a, b)), "oracle-only"))
    return outcome(name, UNIVERSE, len(u) ** 2, mism, caveats, justification)


def first_failed(clauses: Sequence[Callable[[], bool]]) -> int | None:
    """1-based index of the first false clause."""
    for k, c in enumerate(clauses, start=1):
        if not c():
            return k
    return None
