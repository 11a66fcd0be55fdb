"""Command-line front end.

    digdef universe build --n 3 [--out u3.bin] [--threads T]
    digdef universe info --universe u3.bin
    digdef embed check g.dg h.dg [--json out.json]
    digdef gadget make SPEC [--out g.dg] [--dot]
    digdef encode g.dg --order 2,1 [--out x.dg]
    digdef decode x.dg
    digdef verify (ID | all | audits | list) [--universe F | --n N] [--json out.json] [--threads T] [--seed S]
    digdef export (dot FILE | hasse | json) [--universe F | --n N] [--max-vertices K] [--out F]

Results go to stdout, diagnostics to stderr. Exit codes: 2 for usage or input
errors, 1 when a verification FAILs, 0 otherwise.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from . import gadgets as gd
from .canon import canonicalize
from .category import ShapeError, decode_object, encode_object
from .digraph import Digraph, DigraphFormatError, format_digraph, parse_digraph, to_dot
from .embed import find_embedding
from .universe import Universe, UniverseError, cache_path, enumerate_universe, get_universe, hasse_dot


class UsageError(Exception):
    pass


def _write(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _read_digraph(path: str) -> Digraph:
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise UsageError(f"{path}: {e.strerror}") from None
    try:
        return parse_digraph(text)
    except DigraphFormatError as e:
        raise UsageError(f"{path}: {e}") from None


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return v


def _load_universe(args) -> Universe:
    if args.universe and args.n:
        raise UsageError("give either --universe or --n, not both")
    if args.universe:
        try:
            return Universe.load(args.universe)
        except OSError as e:
            raise UsageError(f"{args.universe}: {e.strerror}") from None
        except UniverseError as e:
            raise UsageError(f"{args.universe}: {e}") from None
    if args.n:
        if args.n > 4:
            raise UsageError("--n above 4 is not supported")
        return get_universe(args.n, use_disk=True)
    raise UsageError("this command needs --universe FILE or --n N")


# -- verbs ---------------------------------------------------------------------------


def cmd_universe(args) -> int:
    if args.action == "build":
        if args.n is None:
            raise UsageError("universe build needs --n")
        if args.n > 4:
            raise UsageError("--n above 4 is not supported")
        u = enumerate_universe(args.n, threads=args.threads)
        out = Path(args.out) if args.out else cache_path(args.n)
        u.save(out)
        print(f"types={len(u)}")
        print(f"wrote {out}", file=sys.stderr)
        return 0
    u = _load_universe(args)
    counts = [sum(1 for k in u.n_of if k == n) for n in range(1, u.N + 1)]
    print(f"N={u.N} types={len(u)} per_vertex={','.join(map(str, counts))}")
    return 0


def cmd_embed(args) -> int:
    if args.action != "check" or len(args.files) != 2:
        raise UsageError("usage: embed check G_FILE H_FILE")
    g, h = (_read_digraph(f) for f in args.files)
    e = find_embedding(g, h)
    if args.json:
        Path(args.json).write_text(json.dumps({"embeddable": e is not None, "map": list(e.map) if e else None}) + "\n")
    if e is None:
        print("NOT-EMBEDDABLE")
    else:
        print(" ".join(f"{u}->{v}" for u, v in enumerate(e.map, start=1)))
    return 0


def cmd_gadget(args) -> int:
    if args.action != "make" or len(args.files) != 1:
        raise UsageError("usage: gadget make SPEC")
    spec = args.files[0]
    try:
        gid = gd.parse_gadget(spec)
        if gid.family is gd.Family.CycleExtraEdgeSet:
            members = [t.canonical for t in sorted(gd.cycle_extensions(gid.params[0]), key=lambda t: t.key)]
        else:
            members = [gd.build(gid)]
    except gd.GadgetError as e:
        raise UsageError(str(e)) from None
    if args.dot:
        text = "".join(to_dot(g, f"{spec}#{k}" if len(members) > 1 else spec) for k, g in enumerate(members, 1))
    else:
        text = "".join(format_digraph(g, f"{spec} key={canonicalize(g).hex}") for g in members)
    _write(text, args.out)
    return 0


def _parse_order(text: str | None, n: int) -> tuple[int, ...] | None:
    if text is None:
        return None
    try:
        order = tuple(int(p) for p in text.split(","))
    except ValueError:
        raise UsageError(f"--order must be comma-separated integers, got {text!r}") from None
    if sorted(order) != list(range(1, n + 1)):
        raise UsageError(f"--order must be a permutation of 1..{n}")
    return order


def cmd_encode(args) -> int:
    if len(args.files) != 1:
        raise UsageError("usage: encode G_FILE [--order 2,1,...]")
    g = _read_digraph(args.files[0])
    enc = encode_object(g, _parse_order(args.order, g.n))
    _write(format_digraph(enc.encoded, f"anchored order={','.join(map(str, enc.order))}"), args.out)
    return 0


def cmd_decode(args) -> int:
    if len(args.files) != 1:
        raise UsageError("usage: decode X_FILE")
    x = _read_digraph(args.files[0])
    try:
        enc = decode_object(x)
    except ShapeError as e:
        print(f"shape error: {e}", file=sys.stderr)
        return 2
    text = format_digraph(enc.plain, f"order={','.join(map(str, enc.order))}")
    _write(text, args.out)
    return 0


def cmd_verify(args) -> int:
    from .verifier import audits, registry
    from .verifier.report import FAIL, render, summary_line

    if len(args.files) != 1:
        raise UsageError("usage: verify (ID | all | audits | list)")
    what = args.files[0]
    if what == "list":
        for e in registry.REGISTRY:
            print(f"{e.id:<18} min_N={e.min_n} modes={','.join(e.modes)}  {e.summary}")
        return 0
    if what == "audits":
        u = _load_universe(args) if (args.universe or args.n) else None
        found = audits.run_audits(u)
        sys.stdout.write(audits.render_audits(found))
        if args.json:
            Path(args.json).write_text(audits.audits_json(found))
        return 0
    u = _load_universe(args)
    try:
        reports = (registry.verify_all(u, threads=args.threads, seed=args.seed) if what == "all"
                   else [registry.verify(what, u, seed=args.seed)])
    except registry.RegistryError as e:
        raise UsageError(str(e)) from None
    for r in reports:
        print(summary_line(r))
    if args.json:
        Path(args.json).write_text(render(reports))
    return 1 if any(r.status == FAIL for r in reports) else 0


def cmd_export(args) -> int:
    if not args.files:
        raise UsageError("usage: export (dot FILE | hasse | json)")
    kind, rest = args.files[0], args.files[1:]
    if kind == "dot":
        if len(rest) != 1:
            raise UsageError("usage: export dot FILE")
        g = _read_digraph(rest[0])
        _write(to_dot(g, Path(rest[0]).stem), args.out)
        return 0
    if kind not in ("hasse", "json"):
        raise UsageError(f"unknown export kind {kind!r}")
    u = _load_universe(args)
    k = args.max_vertices or u.N
    subset = [i for i in range(len(u)) if u.n_of[i] <= k]
    if kind == "hasse":
        _write(hasse_dot(u, subset), args.out)
        return 0
    rows = []
    keep = set(subset)
    for i in subset:
        t = u.types[i]
        rows.append({
            "index": i, "key": t.hex, "n": t.n, "edges": [list(e) for e in t.canonical.edges],
            "covers": [j for j in u.covers_of(i) if j in keep],
        })
    _write(json.dumps({"N": u.N, "types": rows}, indent=1) + "\n", args.out)
    return 0


VERBS = {
    "universe": cmd_universe, "embed": cmd_embed, "gadget": cmd_gadget, "encode": cmd_encode,
    "decode": cmd_decode, "verify": cmd_verify, "export": cmd_export,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="digdef", description="Embeddability order of finite digraphs and definability checks.")
    p.add_argument("verb", choices=sorted(VERBS))
    p.add_argument("action", nargs="?", help="sub-action or first operand")
    p.add_argument("files", nargs="*", help="operands")
    p.add_argument("--n", type=_positive)
    p.add_argument("--out")
    p.add_argument("--universe")
    p.add_argument("--json")
    p.add_argument("--dot", action="store_true")
    p.add_argument("--threads", type=_positive, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--order")
    p.add_argument("--max-vertices", type=_positive)
    return p


# verbs whose first positional is an operand rather than a sub-action
_NO_ACTION = {"encode", "decode", "verify", "export"}


def run(argv: Sequence[str]) -> int:
    try:
        args = build_parser().parse_args(list(argv))
        if args.verb in _NO_ACTION and args.action is not None:
            args.files = [args.action, *args.files]
            args.action = None
        if args.verb == "universe" and args.action not in ("build", "info"):
            raise UsageError("usage: universe (build | info)")
        return VERBS[args.verb](args)
    except UsageError as e:
        print(f"digdef: {e}", file=sys.stderr)
        return 2


def main(argv: Sequence[str] | None = None) -> int:
    return run(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())
