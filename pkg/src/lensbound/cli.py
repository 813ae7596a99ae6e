"""Command line entry point: ``lensbound <subcommand> ...``.

Exit status: 0 when the query was answered (yes or no), 1 on invalid input,
2 when an internal cross-check or a theorem sweep finds a counterexample.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from lensbound import farey, filling, homology, surgery, tight
from lensbound.errors import InputError, InvariantError
from lensbound.rational import ConnectedSum, LensSpace, neg_cf


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


def dumps(obj) -> str:
    """Canonical JSON: sorted keys, fixed indentation, strings only for numbers."""
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False)


def _lens(token: str) -> LensSpace:
    return LensSpace.parse(token)


def _read_matrix(path: str | None) -> homology.IntMatrix:
    if path in (None, "-"):
        text = sys.stdin.read()
    else:
        try:
            text = Path(path).read_text()
        except OSError as exc:
            raise InputError(f"cannot read matrix file: {exc}") from None
    return homology.IntMatrix.from_text(text)


def _emit(args, payload: dict, lines: list[str]) -> None:
    if args.json:
        print(dumps(payload))
    else:
        print("\n".join(lines))


def _verdict_lines(v: filling.Verdict) -> list[str]:
    lines = [f"answer: {v.word}"]
    for w in v.witnesses:
        lines.append("witness: " + " ".join(f"{k}={x}" for k, x in w.items()))
    lines += [f"  - {s.text}  [{s.ref}]" for s in v.derivation]
    if v.bounds:
        lines.append("bounds: " + " ".join(f"{k}={x}" for k, x in v.bounds.items()))
    return lines


def cmd_tight(args):
    lens = _lens(args.lens)
    found = tight.enumerate_tight(lens)
    ut = [t for t in found if tight.is_universally_tight(t)]
    payload = {
        "p": str(lens.p),
        "q": str(lens.q),
        "count": str(len(found)),
        "formula": str(tight.count_tight_formula(lens)),
        "universally_tight": str(len(ut)),
        "structures": [t.to_json() for t in found],
    }
    lines = [t.summary() for t in found]
    lines.append(f"{lens}: {len(found)} tight structures, {len(ut)} universally tight")
    _emit(args, payload, lines)
    return 0


def cmd_path(args):
    lens = _lens(args.lens)
    path = farey.minimal_path(lens)
    payload = {"p": str(lens.p), "q": str(lens.q), "path": farey.path_to_json(path),
               "neg_cf": [str(a) for a in neg_cf(lens.p, lens.q)]}
    lines = [" -> ".join(map(str, path))]
    if args.verify_bfs:
        oracle = farey.bfs_minimal_path(lens)
        if oracle != path:
            raise InvariantError(f"greedy path and breadth-first oracle differ for {lens}")
        payload["bfs_verified"] = "true"
        lines.append("breadth-first oracle: identical")
    _emit(args, payload, lines)
    return 0


def cmd_menke(args):
    lens = _lens(args.lens)
    t = tight.from_signs(lens, args.signs)
    if args.exhaustive:
        vertices = tight.possible_mixed_vertices(t)
    else:
        vertices = tight.mixed_vertices(t, args.signs)
    out, lines = [], []
    for v in vertices:
        cands = tight.menke_slopes(t, exhaustive=True)[v.r2] if args.exhaustive else tight.menke_candidates(t, v, args.signs)
        out.append({**v.to_json(), "candidates": [str(c) for c in cands]})
        lines.append(f"mixed at r2={v.r2} (r1={v.r1}, r3={v.r3}): {', '.join(map(str, cands))}")
    if not vertices:
        lines.append(f"{lens} signs={args.signs or '(none)'}: universally tight, no mixed torus")
    payload = {"p": str(lens.p), "q": str(lens.q), "signs": args.signs, "mixed": out,
               "exhaustive": "true" if args.exhaustive else "false",
               "universally_tight": "true" if tight.is_universally_tight(t) else "false"}
    _emit(args, payload, lines)
    return 0


def _verdict_cmd(args, v: filling.Verdict):
    _emit(args, v.to_json(), _verdict_lines(v))
    return 0


def cmd_lisca(args):
    return _verdict_cmd(args, filling.lisca_qhb_filling(_lens(args.lens)))


def cmd_sum_qhb(args):
    return _verdict_cmd(args, filling.sum_qhb_filling(args.p, args.q))


def cmd_embed_s4(args):
    return _verdict_cmd(args, filling.embeds_s4_pair(_lens(args.a), _lens(args.b)))


def cmd_donald(args):
    s = ConnectedSum.parse(args.sum)
    return _verdict_cmd(args, filling.embeds_s4_sum(s, strict_odd=not args.allow_even))


def cmd_punctured(args):
    return _verdict_cmd(args, filling.punctured_verdict(_lens(args.lens)))


def cmd_h1(args):
    m = _read_matrix(args.matrix)
    g = homology.h1_of_surgery(m)
    payload = {**g.to_json(), "det": str(m.det()), "homology_sphere": "true" if g.is_trivial else "false"}
    _emit(args, payload, [f"H1 = {g}", f"|det| = {abs(m.det())}"])
    return 0


def cmd_snf(args):
    m = _read_matrix(args.matrix)
    U, D, V = homology.smith_normal_form(m)
    homology.check_snf(m, U, D, V)
    g = homology.cokernel(m)
    rows = lambda x: [[str(e) for e in r] for r in x.rows]  # noqa: E731
    payload = {"U": rows(U), "D": rows(D), "V": rows(V), "det": str(m.det()), **g.to_json()}
    diag = [D[i, i] for i in range(m.n)]
    lines = [f"diagonal: {' '.join(map(str, diag))}",
             f"invariant factors: {list(g.invariant_factors)}  free rank: {g.free_rank}",
             f"|det| = {abs(m.det())}"]
    _emit(args, payload, lines)
    return 0


def cmd_cert(args):
    kind = args.kind
    if kind == "slice":
        certs = [surgery.slice_surgery_certificate(args.m)]
    elif kind == "fickle":
        certs = [surgery.fickle_certificate(args.s, args.sign, args.ambient)]
    elif kind == "stein":
        certs = [surgery.stein_contractible_verdict(args.m)]
    elif kind == "fs":
        certs = [surgery.fs_conjecture_coefficient(args.k, args.s, args.sign)]
    else:
        certs = list(surgery.plumbing_certificate(args.m1, args.m2, args.sign, args.slice_class))
    for c in certs:
        if not c.homology_check:
            raise InvariantError(f"certificate {c.coefficient} does not present a homology sphere")
    lines = []
    for c in certs:
        lines.append(f"coefficient {c.coefficient}: {c.conclusion} ({c.status}), homology sphere check passed")
        lines += [f"  assumes: {n}" for n, _ in c.hypotheses]
        lines += [f"  note: {n}" for n in c.notes]
    payload = certs[0].to_json() if len(certs) == 1 else {"certificates": [c.to_json() for c in certs]}
    _emit(args, payload, lines)
    return 0


def cmd_sweep(args):
    from lensbound.sweep import SWEEPS, default_jobs, sweep

    if args.sub not in SWEEPS:
        raise InputError(f"unknown sweep {args.sub!r}; choose from {', '.join(SWEEPS)}")
    if args.pmax < 2:
        raise InputError("--pmax must be >= 2")
    jobs = args.jobs if args.jobs is not None else default_jobs()
    if jobs < 1:
        raise InputError("--jobs must be >= 1")
    report = sweep(args.sub, args.pmax, jobs)
    if args.out_dir:
        from lensbound.plotting import plot_sweep

        out = Path(args.out_dir)
        out.mkdir(parents=True, exist_ok=True)
        (out / f"sweep_{args.sub}.tsv").write_text(report.to_tsv())
        plot_sweep(report, out / f"sweep_{args.sub}.svg")
    _emit(args, report.to_json(), [report.summary()])
    if report.counterexamples or report.violations:
        first = report.counterexamples[0] if report.counterexamples else None
        print(f"error: invariant: sweep {args.sub} found a counterexample at {first}", file=sys.stderr)
        return 2
    return 0


def cmd_plot_path(args):
    from lensbound.plotting import plot_farey_path

    lens = _lens(args.lens)
    path = farey.minimal_path(lens)
    if args.signs is not None:
        tight.from_signs(lens, args.signs)
    plot_farey_path(path, args.out, signs=args.signs, title=f"{lens}: {' '.join(map(str, path))}")
    _emit(args, {"out": str(args.out), "path": farey.path_to_json(path)}, [f"wrote {args.out}"])
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit canonical JSON")

    parser = _Parser(prog="lensbound", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help):
        p = sub.add_parser(name, parents=[common], help=help)
        p.set_defaults(func=func)
        return p

    p = add("tight", cmd_tight, "enumerate tight contact structures on L(p,q)")
    p.add_argument("lens", metavar="p,q")
    p = add("path", cmd_path, "minimal Farey path from -p/q to 0")
    p.add_argument("lens", metavar="p,q")
    p.add_argument("--verify-bfs", action="store_true")
    p = add("menke", cmd_menke, "meridional slope candidates for a signed path")
    p.add_argument("lens", metavar="p,q")
    p.add_argument("--signs", required=True, help="signs of the interior edges in path order, e.g. +-")
    p.add_argument("--exhaustive", action="store_true", help="every vertex that is mixed in some arrangement within blocks")
    p = add("lisca", cmd_lisca, "rational ball filling of (L(p,q), xi_std)")
    p.add_argument("lens", metavar="p,q")
    p = add("sum-qhb", cmd_sum_qhb, "rational ball filling of L(p,q) # L(p,p-q)")
    p.add_argument("p", type=int)
    p.add_argument("q", type=int)
    p = add("embed-s4", cmd_embed_s4, "does L(p,q) # L(p,q') embed in S^4")
    p.add_argument("a", metavar="p,q")
    p.add_argument("b", metavar="p,q'")
    p = add("donald", cmd_donald, "does a sum of lens spaces embed in R^4 (Y # -Y test)")
    p.add_argument("sum", metavar="p1,q1#p2,q2#...")
    p.add_argument("--allow-even", action="store_true", help="drop the odd-p requirement")
    p = add("punctured", cmd_punctured, "does punctured L(p,q) embed in R^4")
    p.add_argument("lens", metavar="p,q")
    for name, func, help in (("h1", cmd_h1, "first homology of a surgery presentation"),
                             ("snf", cmd_snf, "Smith normal form of an integer matrix")):
        p = add(name, func, help)
        p.add_argument("--matrix", default=None, help="matrix file ('-' or omitted: stdin)")

    p = add("cert", cmd_cert, "surgery certificates")
    kinds = p.add_subparsers(dest="kind", required=True, parser_class=_Parser)
    c = kinds.add_parser("slice", parents=[common])
    c.add_argument("--m", type=int, required=True)
    c = kinds.add_parser("fickle", parents=[common])
    c.add_argument("--s", type=int, required=True)
    c.add_argument("--sign", type=int, required=True, choices=(1, -1))
    c.add_argument("--ambient", default="acyclic", choices=sorted(surgery.AMBIENTS))
    c = kinds.add_parser("stein", parents=[common])
    c.add_argument("--m", type=int, required=True)
    c = kinds.add_parser("fs", parents=[common])
    c.add_argument("--k", type=int, required=True)
    c.add_argument("--s", type=int, required=True)
    c.add_argument("--sign", type=int, required=True, choices=(1, -1))
    c = kinds.add_parser("plumbing", parents=[common])
    c.add_argument("--m1", type=int, required=True)
    c.add_argument("--m2", type=int, required=True)
    c.add_argument("--sign", type=int, required=True, choices=(1, -1))
    c.add_argument("--slice-class", default="rationally_acyclic", choices=sorted(surgery.AMBIENTS))

    p = add("sweep", cmd_sweep, "exhaustive sweep over coprime (p,q)")
    p.add_argument("sub", metavar="SUBCMD")
    p.add_argument("--pmax", type=int, required=True)
    p.add_argument("--jobs", type=int, default=None, help="worker processes (default $LENSBOUND_JOBS or 1)")
    p.add_argument("--out-dir", default=None, help="also write a per-p TSV table and an SVG figure here")

    p = add("plot-path", cmd_plot_path, "draw the Farey path of L(p,q) as SVG")
    p.add_argument("lens", metavar="p,q")
    p.add_argument("--out", required=True)
    p.add_argument("--signs", default=None)
    return parser


def run(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except InputError as exc:
        print(f"error: input: {exc}", file=sys.stderr)
        return 1
    except InvariantError as exc:
        print(f"error: invariant: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
