"""Command-line front end: `dendroscope <noun> <verb> [flags]`.

Exit codes: 0 success, 1 domain error (the error name appears verbatim in the
report), 2 usage or parse error.  Machine-readable output (`--format records`)
is line-delimited JSON with a versioned schema field and is byte-stable for
fixed inputs and seeds; timing goes to stderr only.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from pathlib import Path

from . import acceptance, cohomology, coloring, dendrite, kgroup, permgroup
from .errors import DendroscopeError, ParseError

SCHEMA = "dendroscope/1"


class _Reporter:
    def __init__(self, args):
        self.fmt = getattr(args, "format", "human")
        self.command = list(getattr(args, "_argv", []))
        self.inputs: dict[str, str] = {}

    def digest(self, path: str, text: str) -> None:
        self.inputs[path] = hashlib.sha256(text.encode()).hexdigest()

    def emit(self, payload: dict, human_lines: list[str]) -> None:
        if self.fmt == "records":
            record = {
                "schema": SCHEMA,
                "command": self.command,
                "inputs": self.inputs,
                "result": payload,
            }
            print(json.dumps(record, sort_keys=True))
        else:
            for line in human_lines:
                print(line)

    def emit_error(self, name: str, message: str) -> None:
        if self.fmt == "records":
            record = {
                "schema": SCHEMA,
                "command": self.command,
                "inputs": self.inputs,
                "error": {"name": name, "message": message},
            }
            print(json.dumps(record, sort_keys=True))
        else:
            print(f"error: {name}: {message}", file=sys.stderr)


def _read_file(path: str, reporter: _Reporter) -> str:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    reporter.digest(path, text)
    return text


def _load_group(spec: str, n: int | None, reporter: _Reporter) -> permgroup.PermGroup:
    """Resolve --group: a file path, `trivial`, `sym`, or `cat:NAME`."""
    if spec == "trivial":
        if n is None:
            raise ParseError("--group trivial needs -n")
        return permgroup.trivial_group(n)
    if spec == "sym":
        if n is None:
            raise ParseError("--group sym needs -n")
        return permgroup.symmetric_group(n)
    if spec.startswith("cat:"):
        if n is None:
            raise ParseError("--group cat:NAME needs -n")
        catalog = permgroup.group_catalog(n)
        name = spec[4:]
        if name not in catalog:
            raise ParseError(f"no catalog group {name!r} for n={n}; have {sorted(catalog)}")
        return catalog[name]
    return permgroup.parse_group(_read_file(spec, reporter))


def _load_model(args, reporter: _Reporter) -> dendrite.DendriteModel:
    if getattr(args, "model", None):
        return dendrite.parse_model(_read_file(args.model, reporter))
    if getattr(args, "n", None) and getattr(args, "depth", None):
        return dendrite.build_model(args.n, args.depth)
    raise ParseError("need --model FILE or both -n and -d")


def _load_coloring(args, model, reporter: _Reporter) -> coloring.Coloring:
    if getattr(args, "coloring", None):
        return coloring.parse_coloring(model, _read_file(args.coloring, reporter))
    if getattr(args, "seed", None) is not None:
        return coloring.random_coloring(model, args.seed)
    if getattr(args, "uniform", False):
        return coloring.uniform_coloring(model)
    raise ParseError("need --coloring FILE, --seed N, or --uniform")


def _write_output(args, text: str) -> None:
    if getattr(args, "output", None):
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)


def _cmd_gamma_analyze(args, reporter):
    group = _load_group(args.group, args.n, reporter)
    prim = permgroup.is_primitive(group)
    orbit_counts = {
        str(k): permgroup.count_orbits_on_tuples(group, k, distinct=True)
        for k in (1, 2)
    }
    payload = {
        "degree": group.degree,
        "order": permgroup.order(group),
        "transitive": permgroup.is_transitive(group),
        "primitive": bool(prim),
        "primitive_reason": prim.reason,
        "generous": permgroup.is_generously_transitive(group),
        "semi_generous": permgroup.is_semi_generous(group),
        "orbits": [list(b) for b in permgroup.orbits_on_points(group)],
        "distinct_tuple_orbits": orbit_counts,
    }
    yn = lambda b: "yes" if b else "no"
    human = [
        f"degree         {group.degree}",
        f"order          {payload['order']}",
        f"transitive     {yn(payload['transitive'])}",
        f"primitive      {yn(payload['primitive'])}"
        + (f" ({prim.reason})" if prim.reason else ""),
        f"generous       {yn(payload['generous'])}",
        f"semi-generous  {yn(payload['semi_generous'])}",
        f"point orbits   {payload['orbits']}",
        f"orbits on distinct k-tuples  k=1: {orbit_counts['1']}  k=2: {orbit_counts['2']}",
    ]
    reporter.emit(payload, human)
    return 0


def _cmd_model_build(args, reporter):
    model = dendrite.build_model(args.n, args.depth)
    _write_output(args, dendrite.format_model(model))
    return 0


def _cmd_model_stats(args, reporter):
    model = dendrite.parse_model(_read_file(args.file, reporter))
    payload = {
        "n": model.n,
        "depth": model.depth,
        "vertices": model.vertex_count,
        "branch_vertices": len(model.branch_vertices()),
        "stubs": len(model.stub_vertices()),
        "edges": model.edge_count,
    }
    reporter.emit(payload, [f"{k:16} {v}" for k, v in payload.items()])
    return 0


def _cmd_color_random(args, reporter):
    model = _load_model(args, reporter)
    col = coloring.random_coloring(model, args.seed)
    _write_output(args, coloring.format_coloring(col))
    return 0


def _cmd_color_audit(args, reporter):
    model = _load_model(args, reporter)
    col = _load_coloring(args, model, reporter)
    report = coloring.kaleidoscopic_defects(model, col, args.min_sep)
    payload = {
        "defects": report.defect_count,
        "pairs_checked": report.pairs_checked,
        "min_separation": report.witness_budget,
        "entries": [list(e) for e in report.entries[: args.limit]],
    }
    human = [
        f"pairs checked   {report.pairs_checked}",
        f"defects         {report.defect_count}",
    ] + [f"  missing x={x} y={y} i={i} j={j}" for x, y, i, j in report.entries[: args.limit]]
    reporter.emit(payload, human)
    return 0


def _cmd_color_recolor(args, reporter):
    model = _load_model(args, reporter)
    col = _load_coloring(args, model, reporter)
    group = _load_group(args.group, model.n, reporter)
    result = coloring.recolor_doubly_transitive(model, col, group)
    _write_output(args, coloring.format_coloring(result.coloring))
    print(
        f"rewrites: {len(result.gammas)}  shortfalls: {len(result.shortfalls)}",
        file=sys.stderr,
    )
    return 0


def _cmd_k_local_action(args, reporter):
    model = _load_model(args, reporter)
    col = _load_coloring(args, model, reporter)
    auto = kgroup.parse_automorphism(model, _read_file(args.auto, reporter))
    profile = kgroup.local_action_profile(model, col, auto)
    payload = {str(x): list(p.images) for x, p in profile.items()}
    reporter.emit(payload, [f"{x}: {p}" for x, p in profile.items()])
    return 0


def _cmd_k_member(args, reporter):
    model = _load_model(args, reporter)
    col = _load_coloring(args, model, reporter)
    group = _load_group(args.group, model.n, reporter)
    auto = kgroup.parse_automorphism(model, _read_file(args.auto, reporter))
    result = kgroup.is_member(model, col, group, auto)
    payload = {
        "member": result.member,
        "witness_vertex": result.vertex,
        "witness_action": list(result.action.images) if result.action else None,
    }
    human = ["member" if result.member else f"not a member: vertex {result.vertex} acts by {result.action}"]
    reporter.emit(payload, human)
    return 0


def _cmd_k_split(args, reporter):
    model = _load_model(args, reporter)
    col = _load_coloring(args, model, reporter)
    group = _load_group(args.group, model.n, reporter)
    gamma = permgroup.parse_perm(args.gamma, model.n)
    vertex = args.vertex if args.vertex is not None else coloring.root_vertex(model)
    auto = kgroup.split_gamma(model, col, group, vertex, gamma)
    _write_output(args, kgroup.format_automorphism(auto))
    return 0


def _cmd_k_extend(args, reporter):
    model = _load_model(args, reporter)
    col = _load_coloring(args, model, reporter)
    group = _load_group(args.group, model.n, reporter)
    pairs = []
    for part in args.map.split(","):
        a, _, b = part.partition("->")
        try:
            pairs.append((int(a), int(b)))
        except ValueError as exc:
            raise ParseError(f"bad map entry {part!r}; want `a->b,c->d`") from exc
    auto = kgroup.extend_partial(model, col, group, kgroup.PartialMap(pairs))
    if auto is None:
        reporter.emit({"extends": False}, ["no extension"])
        return 0
    _write_output(args, kgroup.format_automorphism(auto))
    return 0


def _cmd_k_orbits(args, reporter):
    model = _load_model(args, reporter)
    col = _load_coloring(args, model, reporter)
    group = _load_group(args.group, model.n, reporter)
    if args.tuple:
        tuples = []
        for part in args.tuple.split(";"):
            tuples.append(tuple(int(v) for v in part.split(",")))
        if len(tuples) != 2:
            raise ParseError("--tuple wants two tuples `a,b;c,d`")
        same = kgroup.same_orbit(model, col, group, tuples[0], tuples[1])
        reporter.emit({"same_orbit": same}, ["same orbit" if same else "different orbits"])
        return 0
    count = kgroup.count_orbits(model, col, group, args.k, budget=args.budget)
    reporter.emit({"k": args.k, "orbit_classes": count}, [f"orbit classes (k={args.k}): {count}"])
    return 0


def _cmd_coh_rank(args, reporter):
    group = _load_group(args.group, args.n, reporter)
    rank = cohomology.cocycle_space_rank(args.n, group)
    reporter.emit({"n": args.n, "rank": rank}, [f"rank of invariant alternating 2-cocycles: {rank}"])
    return 0


def _cmd_coh_generosity(args, reporter):
    group = _load_group(args.group, args.n, reporter)
    result = cohomology.generosity_coboundary(group)
    if result is None:
        reporter.emit(
            {"obstruction": None},
            ["no obstruction: the group is generous or semi-generous"],
        )
        return 0
    delta, witness = result
    pairing = {f"{i},{j}": v for (i, j), v in sorted(delta.values.items())}
    payload = {"obstruction": {"pairing": pairing, "witness": list(witness)}}
    human = [f"witness triple: {witness}"] + [
        f"  delta({i},{j}) = {v}" for (i, j), v in sorted(delta.values.items())
    ]
    reporter.emit(payload, human)
    return 0


def _cmd_coh_omega_verify(args, reporter):
    model = _load_model(args, reporter)
    col = _load_coloring(args, model, reporter)
    omega = cohomology.parse_cochain2(_read_file(args.cochain, reporter))
    check = cohomology.verify_omega(model, col, omega, budget=args.budget)
    payload = {"ok": check.ok, "witness": list(check.witness) if check.witness else None, "kind": check.kind}
    human = ["cocycle verified on all stub quadruples" if check.ok else f"violation ({check.kind}) at {check.witness}"]
    reporter.emit(payload, human)
    return 0


def _cmd_verify(args, reporter):
    results = acceptance.run_suite(args.level)
    failed = [r for r in results if not r.ok]
    for r in results:
        status = "PASS" if r.ok else "FAIL"
        print(f"[{status}] {r.name}: {r.detail} ({r.seconds:.2f}s)")
    print(f"{len(results) - len(failed)}/{len(results)} criteria passed")
    return 0 if not failed else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dendroscope")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["human", "records"], default="human")
    common.add_argument(
        "--jobs", type=int, default=None, help="worker hint for parallelizable operations"
    )
    sub = parser.add_subparsers(dest="noun", required=True)

    def common_model(p, need_coloring=True):
        p.add_argument("-n", type=int, default=None)
        p.add_argument("-d", "--depth", type=int, default=None)
        p.add_argument("--model", default=None)
        if need_coloring:
            p.add_argument("--coloring", default=None)
            p.add_argument("--seed", type=int, default=None)
            p.add_argument("--uniform", action="store_true")

    gamma = sub.add_parser("gamma").add_subparsers(dest="verb", required=True)
    g = gamma.add_parser("analyze", parents=[common])
    g.add_argument("--group", required=True)
    g.add_argument("-n", type=int, default=None)
    g.set_defaults(func=_cmd_gamma_analyze)

    model = sub.add_parser("model").add_subparsers(dest="verb", required=True)
    mb = model.add_parser("build", parents=[common])
    mb.add_argument("-n", type=int, required=True)
    mb.add_argument("-d", "--depth", type=int, required=True)
    mb.add_argument("-o", "--output", default=None)
    mb.set_defaults(func=_cmd_model_build)
    ms = model.add_parser("stats", parents=[common])
    ms.add_argument("file")
    ms.set_defaults(func=_cmd_model_stats)

    color = sub.add_parser("color").add_subparsers(dest="verb", required=True)
    cr = color.add_parser("random", parents=[common])
    common_model(cr, need_coloring=False)
    cr.add_argument("--seed", type=int, required=True)
    cr.add_argument("-o", "--output", default=None)
    cr.set_defaults(func=_cmd_color_random)
    ca = color.add_parser("audit", parents=[common])
    common_model(ca)
    ca.add_argument("--min-sep", type=int, default=3)
    ca.add_argument("--limit", type=int, default=20)
    ca.set_defaults(func=_cmd_color_audit)
    cc = color.add_parser("recolor", parents=[common])
    common_model(cc)
    cc.add_argument("--group", required=True)
    cc.add_argument("-o", "--output", default=None)
    cc.set_defaults(func=_cmd_color_recolor)

    k = sub.add_parser("k").add_subparsers(dest="verb", required=True)
    kl = k.add_parser("local-action", parents=[common])
    common_model(kl)
    kl.add_argument("--auto", required=True)
    kl.set_defaults(func=_cmd_k_local_action)
    km = k.add_parser("member", parents=[common])
    common_model(km)
    km.add_argument("--group", required=True)
    km.add_argument("--auto", required=True)
    km.set_defaults(func=_cmd_k_member)
    ks = k.add_parser("split", parents=[common])
    common_model(ks)
    ks.add_argument("--group", required=True)
    ks.add_argument("--gamma", required=True)
    ks.add_argument("--vertex", type=int, default=None)
    ks.add_argument("-o", "--output", default=None)
    ks.set_defaults(func=_cmd_k_split)
    ke = k.add_parser("extend", parents=[common])
    common_model(ke)
    ke.add_argument("--group", required=True)
    ke.add_argument("--map", required=True, help="partial map `a->b,c->d`")
    ke.add_argument("-o", "--output", default=None)
    ke.set_defaults(func=_cmd_k_extend)
    ko = k.add_parser("orbits", parents=[common])
    common_model(ko)
    ko.add_argument("--group", required=True)
    ko.add_argument("-k", type=int, default=1, dest="k")
    ko.add_argument("--tuple", default=None, help="two tuples `a,b;c,d` to compare")
    ko.add_argument("--budget", type=int, default=kgroup.DEFAULT_TUPLE_BUDGET)
    ko.set_defaults(func=_cmd_k_orbits)

    coh = sub.add_parser("coh").add_subparsers(dest="verb", required=True)
    chr_ = coh.add_parser("rank", parents=[common])
    chr_.add_argument("-n", type=int, required=True)
    chr_.add_argument("--group", required=True)
    chr_.set_defaults(func=_cmd_coh_rank)
    chg = coh.add_parser("generosity", parents=[common])
    chg.add_argument("-n", type=int, default=None)
    chg.add_argument("--group", required=True)
    chg.set_defaults(func=_cmd_coh_generosity)
    cho = coh.add_parser("omega-verify", parents=[common])
    common_model(cho)
    cho.add_argument("--cochain", required=True)
    cho.add_argument("--budget", type=int, default=cohomology.DEFAULT_QUAD_BUDGET)
    cho.set_defaults(func=_cmd_coh_omega_verify)

    ver = sub.add_parser("verify", parents=[common])
    ver.add_argument("level", choices=["quick", "full"])
    ver.set_defaults(func=_cmd_verify)

    return parser


def run(argv: list[str]) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    args._argv = argv
    reporter = _Reporter(args)
    start = time.monotonic()
    try:
        code = args.func(args, reporter)
    except ParseError as exc:
        reporter.emit_error(exc.name, str(exc))
        return 2
    except DendroscopeError as exc:
        reporter.emit_error(exc.name, str(exc))
        return 1
    finally:
        print(f"elapsed: {time.monotonic() - start:.3f}s", file=sys.stderr)
    return code


def entry() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    entry()
