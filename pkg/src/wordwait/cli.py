"""Command-line front end reproducing the reference tables and figure datasets.

Subcommands: table1..table8, fig1..fig4, scan, approx3, headline, selftest.
Every emitted file starts with header comments carrying the seed and the
full resolved parameter set, and two runs with the same flags and seed are
byte-identical regardless of --threads.

Exit codes: 0 success, 1 usage, 2 numerical/self-test failure, 3 step-cap
overflow.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import population, reference, words
from .markov import condition_on_hitting, expected_hitting_time, hitting_probability
from .mutation import build_match_chain, chain_summary
from .population import (
    PopulationParams,
    fixed_locus_waiting_time,
    killed_fixation_chain_sim,
    mixture_mean_years,
    segment_kill_probabilities,
    triple_mutation_shortcut,
)
from .segment import SimConfig, StepCapExceeded, simulate_segment_waiting
from .words import expected_almost_matches, index_to_word, scan_all_words

DEFAULT_SEED = 12345
SEGMENT_L = 1024   # segment-statistics default
POPULATION_L = 1000  # population default

_CONFIG_KEYS = {
    "N": int, "mu": float, "L": int, "W": int, "reps": int, "seed": int,
    "bin": int, "lambda": float, "threads": int, "generation_years": float,
    "format": str, "out": str, "word": str, "words": str, "step_cap": int,
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # exit 1 on bad flags, not argparse's default 2
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _add_common(p: _Parser) -> None:
    p.add_argument("--N", type=int, default=None, help="diploid population size")
    p.add_argument("--mu", type=float, default=None, help="mutation probability per nucleotide per generation")
    p.add_argument("--L", type=int, default=None, help="segment length")
    p.add_argument("--W", type=int, default=None, help="word length")
    p.add_argument("--reps", type=int, default=None, help="Monte Carlo replications")
    p.add_argument("--seed", type=int, default=None, help="master seed")
    p.add_argument("--bin", type=int, default=None, help="histogram bin width")
    p.add_argument("--lambda", dest="lam", type=float, default=None, help="expected occurrence count")
    p.add_argument("--word", type=str, default=None, help="target word")
    p.add_argument("--words", type=str, default=None,
                   help="comma-separated word list for the table commands")
    p.add_argument("--out", type=str, default=None, help="output path (default stdout)")
    p.add_argument("--format", choices=("csv", "json"), default=None, help="output format")
    p.add_argument("--threads", type=int, default=None, help="worker thread cap")
    p.add_argument("--generation-years", dest="generation_years", type=float,
                   default=None, help="years per generation")
    p.add_argument("--step-cap", dest="step_cap", type=int, default=None,
                   help="per-replication substitution cap")
    p.add_argument("--config", type=str, default=None, help="key=value defaults file")


def build_parser() -> _Parser:
    parser = _Parser(prog="wordwait", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in [
        ("table1", "waiting-time summaries of the match chain"),
        ("table2", "overlap categories and initial-count bound terms"),
        ("table3", "total-variation bounds for the exhibit words"),
        ("table4", "segment waiting times: simulation vs clump prediction"),
        ("table5", "killed fixation chain death times"),
        ("table6", "hitting probabilities of the match chain"),
        ("table7", "expected hitting times of the match chain"),
        ("table8", "conditioned hitting times of the match chain"),
        ("fig1", "segment waiting-time histogram (first exhibit word)"),
        ("fig2", "segment waiting-time histogram (worst exhibit word)"),
        ("fig3", "killed-chain histogram (best word)"),
        ("fig4", "killed-chain histogram (worst word)"),
        ("scan", "Chen-Stein bounds for every word of one length"),
        ("approx3", "fixed-locus stop-rule waiting time"),
        ("headline", "headline year estimates"),
        ("selftest", "fast analytic checks; nonzero exit on failure"),
    ]:
        _add_common(sub.add_parser(name, help=help_text))
    return parser


def _load_config(path: str) -> dict:
    values = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{lineno}: expected key=value")
            key, _, val = line.partition("=")
            key = key.strip()
            if key not in _CONFIG_KEYS:
                raise UsageError(f"{path}:{lineno}: unknown key {key!r}")
            try:
                values[key] = _CONFIG_KEYS[key](val.strip())
            except ValueError as exc:
                raise UsageError(f"{path}:{lineno}: bad value for {key}: {exc}")
    return values


_DEFAULTS = {
    "N": 10_000, "mu": 1e-8, "reps": 100_000, "seed": DEFAULT_SEED,
    "threads": 1, "generation_years": 25.0, "format": "csv", "lam": 1.0,
    "step_cap": 10**9,
}
_PER_COMMAND = {
    "table2": {"W": 6},
    "table7": {"W": 8},
    "table8": {"W": 8},
    "scan": {"W": 6, "L": SEGMENT_L},
    "table3": {"L": SEGMENT_L},
    "table4": {"L": SEGMENT_L},
    "table5": {"L": POPULATION_L},
    "fig1": {"word": "AACCGT", "bin": 100, "L": SEGMENT_L},
    "fig2": {"word": "ACACAC", "bin": 100, "L": SEGMENT_L},
    "fig3": {"word": "ACAGCTGT", "bin": 10, "L": POPULATION_L},
    "fig4": {"word": "ACACACAC", "bin": 10, "L": POPULATION_L},
    "approx3": {"W": 8},
    "headline": {"L": POPULATION_L, "reps": 20_000},
}


def _resolve(args: argparse.Namespace) -> dict:
    """Merge explicit flags > config file > per-command defaults > globals."""
    config = _load_config(args.config) if args.config else {}
    if "lambda" in config:
        config["lam"] = config.pop("lambda")
    out = {"command": args.command}
    per = _PER_COMMAND.get(args.command, {})
    for key in ("N", "mu", "L", "W", "reps", "seed", "bin", "lam", "word",
                "words", "out", "format", "threads", "generation_years",
                "step_cap"):
        flag = getattr(args, key, None)
        if flag is not None:
            out[key] = flag
        elif key in config:
            out[key] = config[key]
        elif key in per:
            out[key] = per[key]
        else:
            out[key] = _DEFAULTS.get(key)
    if out["threads"] is not None and out["threads"] < 1:
        raise UsageError("--threads must be >= 1")
    return out


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, (bool, np.bool_)):
        return str(bool(v)).lower()
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    return str(v)


def _emit(params: dict, columns: list, rows: list, opts: dict,
          summary: dict | None = None) -> None:
    if opts["format"] == "json":
        payload = {"params": params}
        if summary:
            payload["summary"] = summary
        payload["columns"] = columns
        payload["rows"] = [
            [None if v is None else (v if isinstance(v, str) else
             (int(v) if isinstance(v, (int, np.integer)) else float(v)))
             for v in row]
            for row in rows
        ]
        text = json.dumps(payload, indent=2) + "\n"
    else:
        lines = ["# " + " ".join(f"{k}={_fmt(v)}" for k, v in params.items())]
        if summary:
            lines.append("# " + " ".join(f"{k}={_fmt(v)}" for k, v in summary.items()))
        lines.append(",".join(columns))
        lines.extend(",".join(_fmt(v) for v in row) for row in rows)
        text = "\n".join(lines) + "\n"
    if opts["out"]:
        with open(opts["out"], "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _params(opts: dict, command: str, *keys: str) -> dict:
    out = {"command": opts.get("command", command)}
    for k in keys:
        out[k] = opts[k]
    return out


def _word_lengths(opts: dict) -> list[int]:
    """Lengths a multi-W table covers; also fixes the header echo."""
    lengths = [opts["W"]] if opts["W"] is not None else [6, 8]
    opts["W"] = "+".join(str(w) for w in lengths)
    return lengths


def _word_rows(opts: dict, table: dict) -> list[str]:
    """Word list for a table command: --words override or the exhibit set."""
    if opts["words"]:
        out = [w.strip().upper() for w in opts["words"].split(",") if w.strip()]
    else:
        lengths = [opts["W"]] if opts["W"] is not None else sorted(table)
        out = [row[0] for w in lengths for row in table[w]]
    opts["W"] = "+".join(str(w) for w in sorted({len(w) for w in out}))
    return out


# --------------------------------------------------------------------------
# subcommands
# --------------------------------------------------------------------------

def _cmd_table1(opts):
    rows = []
    for W in _word_lengths(opts):
        s = chain_summary(W)
        rows.append([W, s.mean_stationary, s.mean_from_zero,
                     s.clump_mean_formula, s.return_probability])
    return (_params(opts, "table1", "W"),
            ["W", "mean_stationary", "mean_from_zero", "clump_formula", "return_probability"],
            rows, None)

def _cmd_table2(opts):
    W = opts["W"]
    census = words.overlap_class_census(W)
    codes_const = set("ACGT")
    rows = []
    for shifts, (count, example) in census.items():
        if example[0] * W == example and example[0] in codes_const:
            continue  # constant class
        rep = words.initial_condition_bounds(example, opts["L"] or SEGMENT_L)
        rows.append(["+".join(map(str, shifts)) or "none", example, count,
                     rep.b2 / rep.lam])
    rows.sort(key=lambda r: -r[3])
    return (_params(opts, "table2", "W", "L"),
            ["shifts", "example", "n_words", "b2_over_gamma"], rows, None)

def _cmd_table3(opts):
    rows = []
    for word in _word_rows(opts, reference.TABLE3_WORDS):
        rep = words.time_T_bounds(word, opts["L"], opts["lam"])
        rows.append([word, rep.b1, rep.b2, rep.tv_bound])
    return (_params(opts, "table3", "W", "L", "lam"),
            ["word", "b1", "b2", "tv_bound"], rows, None)

def _cmd_table4(opts):
    rows = []
    for word in _word_rows(opts, reference.TABLE4_WORDS):
        W = len(word)
        c = words.clump_size(word)
        cfg = SimConfig(word=word, L=opts["L"], replications=opts["reps"],
                        master_seed=opts["seed"], step_cap=opts["step_cap"])
        res = simulate_segment_waiting(cfg, threads=opts["threads"])
        rows.append([word, res.atom_at_zero, res.conditional_mean,
                     (4.0**W / W) * c, c])
    return (_params(opts, "table4", "W", "L", "reps", "seed"),
            ["word", "atom_at_zero", "sim_conditional_mean",
             "naive_times_clump", "clump_size"], rows, None)

def _cmd_table5(opts):
    word_list = (
        [w.strip().upper() for w in opts["words"].split(",") if w.strip()]
        if opts["words"] else [row[0] for row in reference.TABLE5_WORDS]
    )
    rows = []
    for word in word_list:
        params = PopulationParams(N=opts["N"], mu=opts["mu"], W=len(word),
                                  L=opts["L"],
                                  generation_years=opts["generation_years"])
        res = killed_fixation_chain_sim(word, params, opts["reps"], opts["seed"],
                                        threads=opts["threads"],
                                        step_cap=opts["step_cap"])
        rows.append([word, res.atom_at_zero, res.conditional_mean, res.mean_years])
    return (_params(opts, "table5", "N", "mu", "L", "reps", "seed",
                    "generation_years"),
            ["word", "atom_at_zero", "conditional_mean", "mean_years"], rows, None)

def _cmd_table6(opts):
    rows = []
    for W in _word_lengths(opts):
        h = hitting_probability(build_match_chain(W), 0, W)
        rows.extend([W, x, h[x]] for x in range(1, W))
    return (_params(opts, "table6", "W"), ["W", "x", "h"], rows, None)

def _cmd_table7(opts):
    W = opts["W"]
    chain = build_match_chain(W)
    targets = list(range(W, 0, -1))
    u = {y: expected_hitting_time(chain, y) for y in targets}
    rows = []
    for x in range(0, W):
        rows.append([x] + [u[y][x] if y > x else None for y in targets])
    return (_params(opts, "table7", "W"),
            ["x"] + [f"to_{y}" for y in targets], rows, None)

def _cmd_table8(opts):
    W = opts["W"]
    chain = build_match_chain(W)
    up = expected_hitting_time(condition_on_hitting(chain, W, 0), W)
    down = expected_hitting_time(condition_on_hitting(chain, 0, W), 0)
    rows = [[x, up[x], down[x]] for x in range(W, -1, -1)]
    return (_params(opts, "table8", "W"),
            ["x", "to_top_given_top_first", "to_bottom_given_bottom_first"],
            rows, None)

def _fig_segment(opts):
    cfg = SimConfig(word=opts["word"], L=opts["L"], replications=opts["reps"],
                    master_seed=opts["seed"], bin_width=opts["bin"],
                    step_cap=opts["step_cap"])
    res = simulate_segment_waiting(cfg, threads=opts["threads"])
    rows = [[s, c] for s, c in res.histogram]
    summary = {"atom_at_zero": res.atom_at_zero,
               "conditional_mean": res.conditional_mean}
    return (_params(opts, "fig", "word", "L", "reps", "seed", "bin"),
            ["bin_start", "count"], rows, summary)

def _fig_killed(opts):
    params = PopulationParams(N=opts["N"], mu=opts["mu"],
                              W=len(opts["word"]), L=opts["L"],
                              generation_years=opts["generation_years"])
    res = killed_fixation_chain_sim(opts["word"], params, opts["reps"],
                                    opts["seed"], threads=opts["threads"],
                                    step_cap=opts["step_cap"])
    positive = res.samples[res.samples > 0]
    width = opts["bin"]
    starts, counts = np.unique((positive // width) * width, return_counts=True)
    rows = [[int(s), int(c)] for s, c in zip(starts, counts)]
    summary = {"atom_at_zero": res.atom_at_zero,
               "conditional_mean": res.conditional_mean,
               "mean_years": res.mean_years}
    return (_params(opts, "fig", "word", "N", "mu", "L", "reps", "seed", "bin"),
            ["bin_start", "count"], rows, summary)

def _cmd_scan(opts):
    W = opts["W"]
    sc = scan_all_words(W, opts["L"], opts["lam"])
    rows = [
        [index_to_word(i, W), sc.b1, sc.b2[i], sc.tv[i], sc.clump[i]]
        for i in range(4**W)
    ]
    summary = {"best_word": sc.best_word, "worst_word": sc.worst_word,
               "n_nonconstant": int((~sc.is_constant).sum())}
    return (_params(opts, "scan", "W", "L", "lam"),
            ["word", "b1", "b2", "tv_bound", "clump_size"], rows, summary)

def _cmd_approx3(opts):
    params = PopulationParams(N=opts["N"], mu=opts["mu"], W=opts["W"],
                              L=opts["L"] or POPULATION_L,
                              generation_years=opts["generation_years"])
    lw = fixed_locus_waiting_time(params)
    rounded = round(lw.stop_rule_steps)
    display_years = rounded / (params.W * params.mu) * params.generation_years
    rows = [[params.W, lw.stop_rule_steps, lw.shortcut_probability,
             lw.generations, lw.years]]
    summary = {
        "steps_rounded": rounded,
        "years_from_rounded_steps": display_years,
        "years_billion": f"{display_years / 1e9:.3g}",
    }
    return (_params(opts, "approx3", "N", "mu", "W", "generation_years"),
            ["W", "stop_rule_steps", "shortcut_probability", "generations", "years"],
            rows, summary)

def _cmd_headline(opts):
    params = PopulationParams(N=opts["N"], mu=opts["mu"], W=8, L=opts["L"],
                              generation_years=opts["generation_years"])
    base_years = params.generation_years * 3.0 / (2.0 * params.N * params.mu)
    em1_6 = expected_almost_matches(6, SEGMENT_L, 1)
    em2_8 = expected_almost_matches(8, SEGMENT_L, 2)
    eq9 = mixture_mean_years(base_years, round(em1_6, 2), 1)
    eq10 = mixture_mean_years(base_years, round(em2_8, 2), 2)
    kp = segment_kill_probabilities(params)
    rho = population.double_mutation_shortcut(params)
    triple = triple_mutation_shortcut(params)
    best = scan_all_words(8, SEGMENT_L, 1.0).best_word
    killed = killed_fixation_chain_sim(best, params, opts["reps"], opts["seed"],
                                       threads=opts["threads"])
    em1_8 = expected_almost_matches(8, SEGMENT_L, 1)
    rows = [
        ["mean_years_W6_anywhere", eq9,
         "exact-match wait, W=6, mixture over near-match counts"],
        ["mean_years_W8_one_mismatch_present", base_years,
         "single near-match upgraded by one mutation"],
        ["mean_years_W8_no_near_match", killed.mean_years,
         f"killed-chain simulation of {best}, {opts['reps']} replications"],
        ["mean_years_W8_near_match_suffices", eq10,
         "two-off windows suffice, mixture over their counts"],
        ["p_no_near_match_W8", float(np.exp(-em1_8)),
         "chance the initial consensus has no near match"],
        ["shortcut_probability_W8", rho, "double mutation beats fixation"],
        ["kill_prob_match_minus_1", kp.match_minus_1, "near-match stop chance"],
        ["kill_prob_match_minus_2", kp.match_minus_2, "two-off kill coin"],
        ["triple_mutation_total", triple.total, "expected good triple mutations"],
    ]
    return (_params(opts, "headline", "N", "mu", "L", "reps", "seed",
                    "generation_years"),
            ["estimate", "value", "note"], rows, None)


_COMMANDS = {
    "table1": _cmd_table1, "table2": _cmd_table2, "table3": _cmd_table3,
    "table4": _cmd_table4, "table5": _cmd_table5, "table6": _cmd_table6,
    "table7": _cmd_table7, "table8": _cmd_table8,
    "fig1": _fig_segment, "fig2": _fig_segment,
    "fig3": _fig_killed, "fig4": _fig_killed,
    "scan": _cmd_scan, "approx3": _cmd_approx3, "headline": _cmd_headline,
}


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "selftest":
            return 0 if reference.run_selftest() else 2
        opts = _resolve(args)
        params, columns, rows, summary = _COMMANDS[args.command](opts)
        _emit(params, columns, rows, opts, summary)
        return 0
    except UsageError as exc:
        print(f"wordwait: error: {exc}", file=sys.stderr)
        return 1
    except StepCapExceeded as exc:
        print(f"wordwait: step cap exceeded in replication "
              f"{exc.replication_index}", file=sys.stderr)
        return 3
    except (ValueError, OSError) as exc:
        print(f"wordwait: error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
