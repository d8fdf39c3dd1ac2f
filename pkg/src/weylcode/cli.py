"""Command line front end.

Results go to ``--out`` (default stdout) as CSV, JSON or the plain text
formats of :mod:`weylcode.formats`; diagnostics go to stderr.  Failures exit
with status 1 and print ``error: code=<code> message=<text>`` on stderr.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from pathlib import Path

import numpy as np
from scipy import stats

from . import formats, rankcode
from .errors import InsufficientDataError, ParseError, WeylCodeError
from .graphtransfer import (
    FactorialTree,
    YoungGraph,
    jdt_promotion,
    paths_as_tableau,
    tableau_to_path,
    transfer_path,
    tree_path_vertices,
)
from .permtree import path_from_code, simplex_word
from .tableaux import (
    all_standard_tableaux,
    distinguishability_experiment,
    partitions,
    plancherel_probability,
    plancherel_samples,
    rsk,
    Tableau,
)

TRIALS_ENV = "WEYLCODE_TRIALS"
DEFAULT_TRIALS = 1000


def default_trials() -> int:
    value = os.environ.get(TRIALS_ENV)
    if value is None:
        return DEFAULT_TRIALS
    try:
        return int(value)
    except ValueError:
        raise ParseError(f"{TRIALS_ENV}={value!r} is not an integer") from None


def _n_list(text: str) -> list[int]:
    out = []
    for part in text.split(","):
        if "-" in part:
            lo, hi = part.split("-")
            out.extend(range(int(lo), int(hi) + 1))
        else:
            out.append(int(part))
    return out


# -- input -----------------------------------------------------------------


def _input_lines(args) -> list[tuple[int | None, str]]:
    if args.input is not None:
        try:
            text = Path(args.input).read_text()
        except OSError as exc:
            raise ParseError(f"cannot read {args.input}: {exc.strerror}") from None
        return list(formats.iter_lines(text))
    if args.values is not None:
        return [(None, args.values)]
    return []


# -- output ----------------------------------------------------------------


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _emit(args, text: str) -> None:
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def _note(message: str) -> None:
    print(f"note: {message}", file=sys.stderr)


# -- subcommands -----------------------------------------------------------


def cmd_encode(args) -> str:
    prefixes = [(None, formats.parse_reals(line, n)) for n, line in _input_lines(args)]
    seed = None
    if not prefixes:
        seed = args.seed
        prefixes = [(seed, rankcode.sample_prefix(args.law, args.n, seed))]
    records = []
    for s, x in prefixes:
        t = rankcode.encode(x)
        prof = rankcode.special_profile(t)
        records.append(
            {
                "seed": s,
                "law": args.law if s is not None else None,
                "x": x.tolist(),
                "code": t.tolist(),
                "word": list(simplex_word(x)),
                "special": [int(v) for v in prof.special],
                "d": prof.d.tolist(),
            }
        )
    if args.format == "json":
        return _json(records if len(records) > 1 else records[0])
    if args.format == "text":
        return "".join(formats.format_code(r["code"]) + "\n" for r in records)
    rows = [
        [
            "" if r["seed"] is None else r["seed"],
            formats.format_reals(r["x"]),
            formats.format_code(r["code"]),
            formats.format_word(r["word"]),
            formats.format_ints(r["special"]),
            formats.format_ints(r["d"]),
        ]
        for r in records
    ]
    return _csv(["seed", "x", "code", "word", "special", "d"], rows)


def cmd_transfer(args) -> str:
    lines = _input_lines(args)
    if not lines:
        raise ParseError("transfer needs a code (positional or --input)")
    results = []
    for lineno, line in lines:
        t = formats.parse_code(line, lineno)
        if args.iterations >= t.size:
            raise InsufficientDataError(
                f"{args.iterations} transfers need a code longer than {t.size}"
            )
        iterates = []
        for _ in range(args.iterations):
            t = rankcode.transfer(t)
            iterates.append(t.tolist())
        results.append((line, iterates))
    if args.format == "json":
        return _json([{"input": [int(v) for v in line.split(",")], "iterates": it} for line, it in results])
    if args.format == "text":
        return "".join(formats.format_code(c) + "\n" for _, it in results for c in it)
    rows = [[k, formats.format_code(c)] for _, it in results for k, c in enumerate(it, start=1)]
    return _csv(["iteration", "code"], rows)


def cmd_reconstruct(args) -> str:
    lines = _input_lines(args)
    x = None
    if lines:
        if len(lines) != 1:
            raise ParseError("reconstruct takes a single code", lines[1][0])
        lineno, line = lines[0]
        t = formats.parse_code(line, lineno)
    else:
        x = rankcode.sample_prefix(args.law, args.n, args.seed)
        t = rankcode.encode(x)
    est = rankcode.reconstruct_prefix(t, args.m)
    truth = rankcode.law_cdf(args.law, x[: args.m]) if x is not None else None
    records = []
    for j in range(args.m):
        rec = {"j": j + 1, "estimate": float(est[j]), "true": None, "abs_error": None}
        if truth is not None:
            rec["true"] = float(truth[j])
            rec["abs_error"] = abs(float(est[j]) - float(truth[j]))
        records.append(rec)
    if args.format == "json":
        meta = {"n": int(t.size), "m": args.m, "seed": args.seed if x is not None else None,
                "law": args.law if x is not None else None}
        return _json({**meta, "rows": records})
    rows = [[r["j"], repr(r["estimate"]), "" if r["true"] is None else repr(r["true"]),
             "" if r["abs_error"] is None else repr(r["abs_error"])] for r in records]
    return _csv(["j", "estimate", "true", "abs_error"], rows)


def cmd_rsk(args) -> str:
    lines = _input_lines(args)
    if not lines:
        raise ParseError("rsk needs values (positional or --input)")
    out = []
    for lineno, line in lines:
        p, q = rsk(formats.parse_numbers(line, lineno))
        out.append((p, q))
    if args.format == "json":
        objs = [{"P": p.tolist(), "Q": q.tolist(), "shape": list(p.shape)} for p, q in out]
        return _json(objs if len(objs) > 1 else objs[0])
    if args.format == "text":
        return "\n".join(f"P\n{formats.format_tableau(p)}\nQ\n{formats.format_tableau(q)}\n" for p, q in out)
    rows = []
    for item, (p, q) in enumerate(out, start=1):
        for name, tab in (("P", p), ("Q", q)):
            for r, row in enumerate(tab.rows, start=1):
                rows.append([item, name, r, formats.format_tableau(Tableau((row,)))])
    return _csv(["item", "tableau", "row", "entries"], rows)


def cmd_jdt(args) -> str:
    if args.input is not None:
        try:
            text = Path(args.input).read_text()
        except OSError as exc:
            raise ParseError(f"cannot read {args.input}: {exc.strerror}") from None
    elif args.values is not None:
        text = args.values
    else:
        raise ParseError("jdt needs a tableau (positional literal or --input)")
    t = formats.parse_tableau(text)
    if args.iterations >= t.size:
        raise InsufficientDataError(f"{args.iterations} promotions need more than {t.size} cells")
    iterates = []
    for _ in range(args.iterations):
        t = jdt_promotion(t)
        iterates.append(t)
    if args.format == "json":
        return _json({"iterates": [s.tolist() for s in iterates]})
    if args.format == "text":
        return "".join(formats.tableau_literal(s) + "\n" for s in iterates)
    rows = [[k, formats.tableau_literal(s), formats.format_young_path(tableau_to_path(s))]
            for k, s in enumerate(iterates, start=1)]
    return _csv(["iteration", "tableau", "path"], rows)


# -- experiments -----------------------------------------------------------


def exp_reconstruct(args) -> str:
    trials = args.trials if args.trials is not None else default_trials()
    rows = []
    for n in _n_list(args.n_values or "10000,100000"):
        err = rankcode.reconstruction_errors(n, trials, args.m, args.law, args.seed)
        for j in range(args.m):
            rows.append([n, j + 1, trials, args.seed, args.law,
                         repr(float(np.median(err[:, j]))), repr(float(np.mean(err[:, j])))])
    header = ["n", "j", "trials", "seed", "law", "median_abs_error", "mean_abs_error"]
    if args.format == "json":
        return _json([dict(zip(header, r)) for r in rows])
    return _csv(header, rows)


def exp_plancherel(args) -> str:
    trials = args.trials if args.trials is not None else default_trials()
    out = []
    for n in _n_list(args.n_values or "4"):
        counts: dict = {}
        for shape in plancherel_samples(n, trials, np.random.SeedSequence([args.seed, n])):
            counts[shape] = counts.get(shape, 0) + 1
        shapes = list(partitions(n))
        obs = np.array([counts.get(s, 0) for s in shapes])
        exp = np.array([plancherel_probability(s) for s in shapes])
        pvalue = float(stats.chisquare(obs, exp * trials).pvalue) if len(shapes) > 1 else 1.0
        for s, o, e in zip(shapes, obs, exp):
            out.append({"n": n, "shape": formats.format_ints(s), "count": int(o),
                        "frequency": float(o / trials), "expected": float(e), "chi2_pvalue": pvalue})
    if args.format == "json":
        return _json({"seed": args.seed, "trials": trials, "rows": out})
    header = ["n", "shape", "count", "frequency", "expected", "chi2_pvalue"]
    return _csv(header, [[r[h] if not isinstance(r[h], float) else repr(r[h]) for h in header] for r in out])


def exp_distinguish(args) -> str:
    trials = args.trials if args.trials is not None else default_trials()
    report = distinguishability_experiment(_n_list(args.n_values or "1-10"), trials, args.band, args.seed)
    _note(report.note)
    rows = [[r.n, r.trials, repr(r.acceptance_rate), repr(r.iqr_x1)] for r in report.rows]
    if args.format == "json":
        return _json({"seed": args.seed, "band": args.band, "note": report.note,
                      "rows": [{"n": r.n, "trials": r.trials, "accepted": r.accepted,
                                "acceptance_rate": r.acceptance_rate,
                                "iqr_x1": None if np.isnan(r.iqr_x1) else r.iqr_x1} for r in report.rows]})
    return _csv(["n", "trials", "acceptance_rate", "iqr_x1"], rows)


def jdt_equivalence_counts(n: int) -> dict:
    """Exhaustive mismatch counts for the Young and factorial-tree transfers at size ``n``."""
    tableaux = jdt_bad = orders = tree_bad = 0
    if n >= 2:
        young = YoungGraph()
        for t in all_standard_tableaux(n):
            tableaux += 1
            if paths_as_tableau(transfer_path(young, tableau_to_path(t))) != jdt_promotion(t):
                jdt_bad += 1
        tree = FactorialTree()
        for t in rankcode.all_codes(n):
            orders += 1
            moved = transfer_path(tree, tree_path_vertices(path_from_code(t)))
            if list(moved.vertices[1:]) != path_from_code(rankcode.transfer(t)):
                tree_bad += 1
    return {"n": n, "tableaux": tableaux, "jdt_mismatches": jdt_bad,
            "order_types": orders, "tree_mismatches": tree_bad}


def exp_jdt_equiv(args) -> str:
    sizes = _n_list(args.n_values or "2-8")
    rows = [jdt_equivalence_counts(n) for n in sizes]
    if args.format == "json":
        return _json(rows)
    header = ["n", "tableaux", "jdt_mismatches", "order_types", "tree_mismatches"]
    return _csv(header, [[r[h] for h in header] for r in rows])


EXPERIMENTS = {
    "reconstruct": exp_reconstruct,
    "plancherel": exp_plancherel,
    "distinguish": exp_distinguish,
    "jdt-equiv": exp_jdt_equiv,
}


def cmd_experiment(args) -> str:
    return EXPERIMENTS[args.kind](args)


# -- parser ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="master seed (default 0)")
    common.add_argument("--format", choices=("csv", "json", "text"), default="csv")
    common.add_argument("--out", help="write results here instead of stdout")
    common.add_argument("--law", choices=rankcode.LAWS, default="uniform")

    parser = argparse.ArgumentParser(prog="weylcode", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def with_input(p):
        p.add_argument("values", nargs="?", help="comma-separated values")
        p.add_argument("--input", help="file with one item per line")
        return p

    p = with_input(sub.add_parser("encode", parents=[common], help="rank code and simplex word of a prefix"))
    p.add_argument("--n", type=int, default=10, help="sample length when no input is given")
    p.set_defaults(func=cmd_encode)

    p = with_input(sub.add_parser("transfer", parents=[common], help="iterate the transfer on a code"))
    p.add_argument("--iterations", type=int, default=1)
    p.set_defaults(func=cmd_transfer)

    p = with_input(sub.add_parser("reconstruct", parents=[common], help="estimate leading coordinates"))
    p.add_argument("--n", type=int, default=100_000)
    p.add_argument("--m", type=int, default=1)
    p.set_defaults(func=cmd_reconstruct)

    p = with_input(sub.add_parser("rsk", parents=[common], help="RSK pair of a word or real prefix"))
    p.set_defaults(func=cmd_rsk)

    p = with_input(sub.add_parser("jdt", parents=[common], help="jeu de taquin promotion of a tableau"))
    p.add_argument("--iterations", type=int, default=1)
    p.set_defaults(func=cmd_jdt)

    p = sub.add_parser("experiment", parents=[common], help="Monte-Carlo and exhaustive experiments")
    p.add_argument("kind", choices=sorted(EXPERIMENTS))
    p.add_argument("--n", dest="n_values", help="sizes, e.g. 4 or 1-10 or 10000,100000")
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--trials", type=int, default=None, help=f"default from ${TRIALS_ENV} or {DEFAULT_TRIALS}")
    p.add_argument("--band", type=float, default=0.5, help="central quantile band for the spread")
    p.set_defaults(func=cmd_experiment)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        text = args.func(args)
    except WeylCodeError as exc:
        print(f"error: code={exc.code} message={exc}", file=sys.stderr)
        return 1
    _emit(args, text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
