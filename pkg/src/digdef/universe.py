"""The truncated poset: every isomorphism type with at most N vertices.

Types are enumerated from all labeled adjacency codes (a numpy lookup table
maps each code to its canonical code). The order is built from the two
elementary reductions, deleting one edge or one isolated vertex: ``G <= H``
iff ``G`` is reached from ``H`` by such steps, and since each step lowers
``|V| + |E|`` by exactly one, the covers are precisely the single steps.
``method="embed"`` instead calls the embedding search on every pair.

Down-sets are Python ints used as bitsets over type indices.
"""

from __future__ import annotations

import os
import struct
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from itertools import permutations
from pathlib import Path
from typing import Callable, Iterable, Sequence

import numpy as np

from .canon import IsoClass, _pack, canonicalize
from .digraph import Digraph, saturate_loops, strip_loops, transpose
from .embed import embeds

MAX_N = 4
CACHE_MAGIC = b"DGDU"
CACHE_VERSION = 1


class UniverseError(ValueError):
    pass


# -- labeled codes --------------------------------------------------------------


def code_to_digraph(n: int, code: int) -> Digraph:
    """Inverse of the row-major code (first bit most significant)."""
    rows = []
    for i in range(n):
        chunk = code >> (n * (n - 1 - i)) & ((1 << n) - 1)
        rows.append(sum(1 << j for j in range(n) if chunk >> (n - 1 - j) & 1))
    return Digraph(n, tuple(rows))


def digraph_code(g: Digraph) -> int:
    return code_from_rows(g.n, g.rows)


def code_from_rows(n: int, rows: Sequence[int]) -> int:
    code = 0
    for r in rows:
        code = code << n | sum(1 << (n - 1 - j) for j in range(n) if r >> j & 1)
    return code


@lru_cache(maxsize=None)
def canonical_code_table(n: int) -> np.ndarray:
    """``table[c]`` is the canonical code of the digraph with labeled code ``c``."""
    if n > MAX_N:
        raise UniverseError(f"lookup tables exist only for n <= {MAX_N}")
    nb = n * n
    codes = np.arange(1 << nb, dtype=np.int64)
    bits = (codes[:, None] >> np.arange(nb - 1, -1, -1, dtype=np.int64)) & 1
    weights = (1 << np.arange(nb - 1, -1, -1, dtype=np.int64)).astype(np.int64)
    best = np.full(len(codes), np.iinfo(np.int64).max, dtype=np.int64)
    for order in permutations(range(n)):
        idx = np.array([order[k] * n + order[l] for k in range(n) for l in range(n)])
        best = np.minimum(best, bits[:, idx] @ weights)
    return best


def _remove_vertex_code(n: int, code: int, v: int) -> int:
    g = code_to_digraph(n, code)
    keep = [u for u in range(1, n + 1) if u != v + 1]
    return digraph_code(g.induced(keep))


# -- universe -------------------------------------------------------------------


@dataclass(frozen=True)
class ExtremalResult:
    members: tuple[int, ...]
    bound_touching: bool


@dataclass
class Universe:
    N: int
    types: tuple[IsoClass, ...]
    down: tuple[int, ...]  # bit i of down[j]  <=>  types[i] <= types[j]
    lower: tuple[tuple[int, ...], ...]  # lower covers of each type
    method: str = "closure"
    _index: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self._index = {t.key: i for i, t in enumerate(self.types)}

    # -- sizes and lookup --

    def __len__(self) -> int:
        return len(self.types)

    @cached_property
    def n_of(self) -> tuple[int, ...]:
        return tuple(t.n for t in self.types)

    @cached_property
    def edges_of(self) -> tuple[int, ...]:
        return tuple(t.canonical.edge_count for t in self.types)

    @cached_property
    def loops_of(self) -> tuple[int, ...]:
        return tuple(t.canonical.loop_count for t in self.types)

    def count_by_n(self) -> dict[int, int]:
        out = {n: 0 for n in range(1, self.N + 1)}
        for n in self.n_of:
            out[n] += 1
        return out

    def graph(self, i: int) -> Digraph:
        return self.types[i].canonical

    def index_of(self, g: Digraph | IsoClass) -> int:
        key = g.key if isinstance(g, IsoClass) else canonicalize(g).key
        try:
            return self._index[key]
        except KeyError:
            raise UniverseError("digraph is not in this universe") from None

    def find(self, g: Digraph) -> int | None:
        if g.n > self.N:
            return None
        return self._index.get(canonicalize(g).key)

    def contains(self, g: Digraph) -> bool:
        return self.find(g) is not None

    @property
    def all_mask(self) -> int:
        return (1 << len(self.types)) - 1

    # -- order --

    def leq(self, i: int, j: int) -> bool:
        return bool(self.down[j] >> i & 1)

    def lt(self, i: int, j: int) -> bool:
        return i != j and self.leq(i, j)

    @cached_property
    def up(self) -> tuple[int, ...]:
        up = [0] * len(self.types)
        for j, d in enumerate(self.down):
            for i in _bits(d):
                up[i] |= 1 << j
        return tuple(up)

    @cached_property
    def upper(self) -> tuple[tuple[int, ...], ...]:
        out: list[list[int]] = [[] for _ in self.types]
        for j, lows in enumerate(self.lower):
            for i in lows:
                out[i].append(j)
        return tuple(tuple(sorted(x)) for x in out)

    def covers(self, i: int, j: int) -> bool:
        """``types[i] ≺ types[j]``."""
        return i in self.lower[j]

    def covers_of(self, g: int | Digraph) -> tuple[int, ...]:
        """Upper covers; exact for covers whose top has at most N vertices."""
        i = g if isinstance(g, int) else self.index_of(g)
        return self.upper[i]

    def covers_matrix(self) -> list[int]:
        """Row masks: bit j of row i iff ``types[i] ≺ types[j]``."""
        return [sum(1 << j for j in ups) for ups in self.upper]

    # -- structural maps (used by oracles, never by formula evaluation) --

    @cached_property
    def transpose_map(self) -> tuple[int, ...]:
        return tuple(self.index_of(transpose(t.canonical)) for t in self.types)

    @cached_property
    def strip_map(self) -> tuple[int, ...]:
        return tuple(self.index_of(strip_loops(t.canonical)) for t in self.types)

    @cached_property
    def saturate_map(self) -> tuple[int, ...]:
        return tuple(self.index_of(saturate_loops(t.canonical)) for t in self.types)

    # -- extremal elements --

    def extremal_with(
        self, pred: Callable[[int], bool] | int, mode: str = "maximal", within: int | None = None
    ) -> ExtremalResult:
        """Elements satisfying ``pred`` with no strictly larger (``maximal``) or
        smaller (``minimal``) element that also satisfies it. ``pred`` may be a
        bitmask of satisfying indices. A maximal element with N vertices sets the
        bound-touching flag: a larger witness could exist outside the universe."""
        sat = pred if isinstance(pred, int) else self.mask(pred, within)
        if within is not None:
            sat &= within
        if mode not in ("maximal", "minimal"):
            raise ValueError("mode must be 'maximal' or 'minimal'")
        rel = self.up if mode == "maximal" else self.down
        members = tuple(i for i in _bits(sat) if (rel[i] & sat) == 1 << i)
        touching = mode == "maximal" and any(self.n_of[i] == self.N for i in members)
        return ExtremalResult(members, touching)

    def mask(self, pred: Callable[[int], bool], within: int | None = None) -> int:
        source = _bits(within) if within is not None else range(len(self.types))
        return sum(1 << i for i in source if pred(i))

    # -- persistence --

    def save(self, path: str | os.PathLike) -> None:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_bytes(self.to_bytes())

    def to_bytes(self) -> bytes:
        count = len(self.types)
        out = [CACHE_MAGIC, struct.pack(">HHI", CACHE_VERSION, self.N, count)]
        for t in self.types:
            out.append(struct.pack(">H", len(t.key)) + t.key)
        out.append(_pack_matrix(self.down, count, transpose_rows=True))
        out.append(_pack_matrix(self.covers_matrix(), count))
        return b"".join(out)

    @classmethod
    def load(cls, path: str | os.PathLike) -> "Universe":
        return cls.from_bytes(Path(path).read_bytes())

    @classmethod
    def from_bytes(cls, data: bytes) -> "Universe":
        if data[:4] != CACHE_MAGIC or len(data) < 12:
            raise UniverseError("not a universe cache file")
        version, n_max, count = struct.unpack_from(">HHI", data, 4)
        if version != CACHE_VERSION:
            raise UniverseError(f"cache version {version} != {CACHE_VERSION}")
        pos = 12
        types = []
        for _ in range(count):
            if pos + 2 > len(data):
                raise UniverseError("cache file is truncated")
            (klen,) = struct.unpack_from(">H", data, pos)
            key = data[pos + 2 : pos + 2 + klen]
            pos += 2 + klen
            n = int.from_bytes(key[:2], "big")
            code = int.from_bytes(key[2:], "big") >> (8 * (len(key) - 2) - n * n)
            types.append(IsoClass(code_to_digraph(n, code), key))
        nbytes = (count * count + 7) // 8
        if len(data) != pos + 2 * nbytes:
            raise UniverseError("cache file is truncated or has trailing data")
        leq_rows = _unpack_matrix(data[pos : pos + nbytes], count)
        cov_rows = _unpack_matrix(data[pos + nbytes : pos + 2 * nbytes], count)
        down = [0] * count
        for i, row in enumerate(leq_rows):
            for j in _bits(row):
                down[j] |= 1 << i
        lower: list[list[int]] = [[] for _ in range(count)]
        for i, row in enumerate(cov_rows):
            for j in _bits(row):
                lower[j].append(i)
        return cls(n_max, tuple(types), tuple(down), tuple(tuple(sorted(x)) for x in lower))


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _pack_matrix(rows: Sequence[int], count: int, transpose_rows: bool = False) -> bytes:
    """Row-major bit matrix; with ``transpose_rows`` the input masks are columns."""
    mat = np.zeros((count, count), dtype=bool)
    for r, mask in enumerate(rows):
        idx = list(_bits(mask))
        if transpose_rows:
            mat[idx, r] = True
        else:
            mat[r, idx] = True
    return np.packbits(mat.ravel()).tobytes()


def _unpack_matrix(data: bytes, count: int) -> list[int]:
    flat = np.unpackbits(np.frombuffer(data, dtype=np.uint8))[: count * count]
    mat = flat.reshape(count, count)
    return [sum(1 << int(j) for j in np.flatnonzero(row)) for row in mat]


# -- construction ---------------------------------------------------------------


def enumerate_types(N: int) -> list[IsoClass]:
    """All types with 1..N vertices, ordered by vertex count then key."""
    types = []
    for n in range(1, N + 1):
        for code in np.unique(canonical_code_table(n)):
            code = int(code)
            types.append(IsoClass(code_to_digraph(n, code), _pack(n, code)))
    return types


def _closure_order(types: list[IsoClass]) -> tuple[list[int], list[tuple[int, ...]]]:
    index = {(t.n, int.from_bytes(t.key[2:], "big") >> (8 * (len(t.key) - 2) - t.n * t.n)): i
             for i, t in enumerate(types)}
    tables = {n: canonical_code_table(n) for n in {t.n for t in types}}
    lower: list[tuple[int, ...]] = []
    for t in types:
        n, g = t.n, t.canonical
        code = digraph_code(g)
        reds = set()
        for u, v in g.edges:
            bit = n * n - 1 - ((u - 1) * n + (v - 1))
            reds.add(index[(n, int(tables[n][code & ~(1 << bit)]))])
        if n > 1:
            for v in range(n):
                if not g.rows[v] and not g.cols[v]:
                    sub = _remove_vertex_code(n, code, v)
                    reds.add(index[(n - 1, int(tables[n - 1][sub]))])
        lower.append(tuple(sorted(reds)))
    rank = [t.n + t.canonical.edge_count for t in types]
    down = [0] * len(types)
    for j in sorted(range(len(types)), key=lambda k: rank[k]):
        d = 1 << j
        for i in lower[j]:
            d |= down[i]
        down[j] = d
    return down, lower


def _embed_order(types: list[IsoClass], threads: int = 1) -> tuple[list[int], list[tuple[int, ...]]]:
    count = len(types)

    def column(j: int) -> int:
        h = types[j].canonical
        return sum(1 << i for i in range(count) if embeds(types[i].canonical, h))

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            down = list(pool.map(column, range(count)))
    else:
        down = [column(j) for j in range(count)]
    lower = []
    for j in range(count):
        below = down[j] & ~(1 << j)
        lows = []
        for i in _bits(below):
            if not any(down[k] >> i & 1 for k in _bits(below & ~(1 << i))):
                lows.append(i)
        lower.append(tuple(lows))
    return down, lower


def enumerate_universe(N: int, method: str = "closure", threads: int = 1) -> Universe:
    if not 1 <= N <= MAX_N:
        raise UniverseError(f"N must lie in 1..{MAX_N}")
    types = enumerate_types(N)
    if method == "closure":
        down, lower = _closure_order(types)
    elif method == "embed":
        down, lower = _embed_order(types, threads)
    else:
        raise UniverseError(f"unknown method {method!r}")
    return Universe(N, tuple(types), tuple(down), tuple(lower), method)


def default_cache_dir() -> Path:
    return Path(os.environ.get("DIGDEF_CACHE", ".digdef-cache"))


def cache_path(N: int, directory: str | os.PathLike | None = None) -> Path:
    base = Path(directory) if directory is not None else default_cache_dir()
    return base / f"universe-N{N}-v{CACHE_VERSION}.bin"


_MEMO: dict[int, Universe] = {}


def get_universe(N: int, cache_dir: str | os.PathLike | None = None, use_disk: bool = False) -> Universe:
    """Memoised universe; with ``use_disk`` read or write the cache file."""
    if use_disk:
        path = cache_path(N, cache_dir)
        if N in _MEMO:
            if not path.exists():
                _MEMO[N].save(path)
            return _MEMO[N]
        if path.exists():
            u = Universe.load(path)
            if u.N == N:
                _MEMO[N] = u
                return u
        u = enumerate_universe(N)
        u.save(path)
    elif N in _MEMO:
        return _MEMO[N]
    else:
        u = enumerate_universe(N)
    _MEMO[N] = u
    return u


# -- derived relations (arithmetic side) ----------------------------------------


@dataclass(frozen=True)
class DerivedRelations:
    vertex_count: tuple[int, ...]
    loop_count: tuple[int, ...]
    strip_class: tuple[int, ...]

    def vertex_pairs(self, u: Universe) -> set[tuple[int, int]]:
        """Pairs ``(G, E_n)`` with ``n`` the vertex count of ``G``."""
        return {(i, u.index_of(_empty(self.vertex_count[i]))) for i in range(len(u))}

    def loop_pairs(self, u: Universe) -> set[tuple[int, int]]:
        """Pairs ``(G, L_n)`` with ``n = loop_count(G) >= 1``."""
        out = set()
        for i in range(len(u)):
            k = self.loop_count[i]
            if k >= 1 and k <= u.N:
                out.add((i, u.index_of(_loops(k))))
        return out

    def same_vertices(self, i: int, j: int) -> bool:
        return self.vertex_count[i] == self.vertex_count[j]

    def same_loops(self, i: int, j: int) -> bool:
        return self.loop_count[i] == self.loop_count[j]

    def same_strip(self, i: int, j: int) -> bool:
        return self.strip_class[i] == self.strip_class[j]


def _empty(n: int) -> Digraph:
    return Digraph(n, (0,) * n)


def _loops(n: int) -> Digraph:
    return Digraph(n, tuple(1 << i for i in range(n)))


def count_relations(u: Universe) -> DerivedRelations:
    return DerivedRelations(u.n_of, u.loops_of, u.strip_map)


def frak_e_plus(u: Universe) -> set[tuple[int, int, int]]:
    """``(E_n, E_m, E_{n+m})`` with ``n + m <= N``."""
    out = set()
    for n in range(1, u.N):
        for m in range(1, u.N - n + 1):
            out.add((u.index_of(_empty(n)), u.index_of(_empty(m)), u.index_of(_empty(n + m))))
    return out


def interval_relation(u: Universe) -> set[tuple[int, int]]:
    """``(E_n, E_m)`` with ``1 <= n < m <= 2n`` and ``m <= N``."""
    return {
        (u.index_of(_empty(n)), u.index_of(_empty(m)))
        for n in range(1, u.N + 1)
        for m in range(n + 1, min(2 * n, u.N) + 1)
    }


# -- Hasse export ---------------------------------------------------------------


def hasse_edges(u: Universe, subset: Iterable[int]) -> list[tuple[int, int]]:
    """Cover pairs of the sub-poset induced on ``subset``."""
    idx = sorted(set(subset))
    mask = sum(1 << i for i in idx)
    out = []
    for j in idx:
        below = u.down[j] & mask & ~(1 << j)
        for i in _bits(below):
            between = below & u.up[i] & ~(1 << i)
            if not between:
                out.append((i, j))
    return out


def hasse_dot(u: Universe, subset: Iterable[int] | None = None, name: str = "hasse") -> str:
    idx = list(range(len(u))) if subset is None else sorted(set(subset))
    lines = [f'digraph "{name}" {{', "  rankdir=BT;", "  node [shape=box fontsize=10];"]
    for i in idx:
        t = u.types[i]
        edges = " ".join(f"{a}>{b}" for a, b in t.canonical.edges) or "-"
        color = ' style=filled fillcolor="#f4a261"' if u.loops_of[i] else ""
        lines.append(f'  t{i} [label="{t.hex}\\n{edges}"{color}];')
    for i, j in hasse_edges(u, idx):
        lines.append(f"  t{i} -> t{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"
