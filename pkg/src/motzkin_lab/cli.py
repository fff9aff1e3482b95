"""Command-line front end: ``motzkin-lab <command> [options]``.

Commands: ``enumerate``, ``predict``, ``converge``, ``sample``, ``scheme-check``.
Results go to stdout (or ``-o FILE``), diagnostics to stderr.  Exit status is
0 on success, 1 on an internal or numerical failure (including a failed
scheme check) and 2 on invalid usage or input.

``--config FILE`` reads ``key = value`` lines (``#`` starts a comment) whose
keys are option names such as ``weights``, ``n`` or ``format``.  Options given
on the command line take precedence over the file.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import re
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .convergence import CSV_VERSION_LINE, convergence_report
from .gf import base_series, gf_pmf, model_for
from .laws import SchemeInstance, builtin_scheme, check_scheme, predict_law
from .parallel import worker_count
from .paths import PathFamily, Statistic, pmf_exact
from .sampler import SampleConfig, empirical_pmf, goodness_of_fit
from .steps import StepWeights

log = logging.getLogger("motzkin_lab")


class UsageError(Exception):
    """Bad flags or input; reported on stderr with exit status 2."""


STAT_ALIASES = {
    "returns": Statistic.RETURNS,
    "returns_to_zero": Statistic.RETURNS,
    "signs": Statistic.SIGNS,
    "sign_changes": Statistic.SIGNS,
    "height": Statistic.HEIGHT,
    "altitude": Statistic.FINAL_ALTITUDE,
    "final_altitude": Statistic.FINAL_ALTITUDE,
}

_RATIONAL = re.compile(r"^\s*[+-]?\d+(\s*/\s*\d+)?\s*$")


def parse_weights(text: str) -> StepWeights:
    parts = [p.strip() for p in str(text).split(",")]
    if len(parts) != 3:
        raise UsageError(f"weights need three comma-separated values, got {text!r}")
    vals = []
    for p in parts:
        if not _RATIONAL.match(p):
            raise UsageError(f"weight {p!r} is not an integer or a/b rational (floats are rejected)")
        try:
            vals.append(Fraction(p.replace(" ", "")))
        except (ValueError, ZeroDivisionError):
            raise UsageError(f"weight {p!r} is not a valid rational") from None
    try:
        return StepWeights(*vals)
    except ValueError as e:
        raise UsageError(str(e)) from None


def parse_stat(text: str) -> Statistic:
    try:
        return STAT_ALIASES[str(text).strip().lower()]
    except KeyError:
        raise UsageError(f"unknown statistic {text!r} (choose from {', '.join(STAT_ALIASES)})") from None


def parse_family(text: str) -> PathFamily:
    try:
        return PathFamily(str(text).strip().lower())
    except ValueError:
        raise UsageError(f"unknown family {text!r}") from None


def parse_int(text, name="value", minimum=0) -> int:
    try:
        v = int(str(text).strip())
    except ValueError:
        raise UsageError(f"{name} must be an integer, got {text!r}") from None
    if v < minimum:
        raise UsageError(f"{name} must be >= {minimum}")
    return v


def parse_int_list(text) -> list:
    return [parse_int(t, "n", 1) for t in str(text).split(",") if t.strip()]


def parse_format(text) -> str:
    t = str(text).strip().lower()
    if t not in ("csv", "json"):
        raise UsageError(f"format must be csv or json, got {text!r}")
    return t


def parse_float(text, name="value") -> float:
    try:
        return float(text)
    except ValueError:
        raise UsageError(f"{name} must be a number, got {text!r}") from None


# option name -> (converter, built-in default) per command
OPTIONS = {
    "enumerate": {
        "weights": (parse_weights, None), "n": (lambda t: parse_int(t, "n"), None),
        "stat": (parse_stat, Statistic.FINAL_ALTITUDE), "family": (parse_family, PathFamily.WALK),
    },
    "predict": {
        "weights": (parse_weights, None), "stat": (parse_stat, None),
        "family": (parse_family, PathFamily.WALK),
    },
    "converge": {
        "weights": (parse_weights, None), "stat": (parse_stat, None),
        "family": (parse_family, PathFamily.WALK), "n": (parse_int_list, [400, 1600]),
        "convention": (str, "mid"),
    },
    "sample": {
        "weights": (parse_weights, None), "n": (lambda t: parse_int(t, "n"), None),
        "reps": (lambda t: parse_int(t, "reps", 1), 100_000),
        "seed": (lambda t: parse_int(t, "seed"), 0), "stat": (parse_stat, None),
        "family": (parse_family, PathFamily.WALK),
    },
    "scheme-check": {
        "weights": (parse_weights, None), "builtin": (str, None), "instance": (str, None),
        "tol": (lambda t: parse_float(t, "tol"), 1e-9),
    },
}
COMMON = {"format": (parse_format, "csv"), "output": (str, None)}


def read_config(path: str) -> dict:
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise UsageError(f"cannot read config file: {e}") from None
    out = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected key=value")
        key, value = (s.strip() for s in line.split("=", 1))
        out[key.replace("-", "_")] = value
    return out


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key=value file with option overrides")
    common.add_argument("--format", help="csv (default) or json")
    common.add_argument("-o", "--output", help="write to FILE instead of stdout")

    p = argparse.ArgumentParser(prog="motzkin-lab", description=__doc__.split("\n\n")[0])
    p.add_argument("--version", action="version", version=f"motzkin-lab {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def weights_arg(sp):
        sp.add_argument("-w", "--weights", help="p_minus,p_zero,p_plus as integers or a/b")

    e = sub.add_parser("enumerate", parents=[common], help="exact distribution by dynamic programming")
    weights_arg(e)
    e.add_argument("-n", help="path length")
    e.add_argument("--stat", help="returns | signs | height | altitude (default)")
    e.add_argument("--family", help="walk (default) | bridge | meander | excursion")

    pr = sub.add_parser("predict", parents=[common], help="limit law as JSON")
    weights_arg(pr)
    pr.add_argument("--stat")
    pr.add_argument("--family")

    c = sub.add_parser("converge", parents=[common], help="distances to the limit law")
    weights_arg(c)
    c.add_argument("--stat")
    c.add_argument("--family")
    c.add_argument("-n", help="comma-separated lengths (default 400,1600)")
    c.add_argument("--convention", help="mid (default) or raw CDF comparison points")

    s = sub.add_parser("sample", parents=[common], help="Monte Carlo histogram vs exact")
    weights_arg(s)
    s.add_argument("-n")
    s.add_argument("--reps")
    s.add_argument("--seed")
    s.add_argument("--stat")
    s.add_argument("--family", help="walk (default) or bridge (rejection sampling)")

    k = sub.add_parser("scheme-check", parents=[common], help="half-normal scheme conditions")
    weights_arg(k)
    k.add_argument("--builtin", help="name of a built-in instance (returns)")
    k.add_argument("--instance", help="JSON file with rho, g, g_z, g_u, g_uu, h, h_u")
    k.add_argument("--tol")
    return p


def resolve(args, config: dict) -> dict:
    table = dict(OPTIONS[args.command], **COMMON)
    unknown = set(config) - set(table)
    if unknown:
        raise UsageError(f"unknown config keys for {args.command}: {', '.join(sorted(unknown))}")
    out = {}
    for name, (conv, default) in table.items():
        raw = getattr(args, name, None)
        if raw is None:
            raw = config.get(name)
        out[name] = conv(raw) if raw is not None else default
    return out


def require(opts, *names):
    for n in names:
        if opts.get(n) is None:
            raise UsageError(f"missing required option --{n}")


def _exact_str(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else str(x)


def _rows_to_csv(header, rows, comments=()) -> str:
    buf = io.StringIO()
    buf.write(CSV_VERSION_LINE + "\n")
    for c in comments:
        buf.write(f"# {c}\n")
    wr = csv.writer(buf, lineterminator="\n")
    wr.writerow(header)
    wr.writerows(rows)
    return buf.getvalue()


def cmd_enumerate(o) -> str:
    require(o, "weights", "n")
    try:
        pmf = pmf_exact(o["weights"], o["n"], o["stat"], o["family"])
    except ValueError as e:
        raise UsageError(str(e)) from None
    rows = [(k, _exact_str(v), float(v / pmf.total)) for k, v in pmf.weights.items()]
    if o["format"] == "json":
        return json.dumps({
            "n": pmf.n, "stat": pmf.stat.value, "family": pmf.family.value,
            "weights": o["weights"].label(), "total": _exact_str(pmf.total),
            "rows": [{"k": k, "count": c, "probability": p} for k, c, p in rows],
        }, indent=2)
    return _rows_to_csv(["k", "count", "probability"], rows,
                        [f"n={pmf.n} stat={pmf.stat.value} family={pmf.family.value} "
                         f"total={_exact_str(pmf.total)}"])


def cmd_predict(o) -> str:
    require(o, "weights", "stat")
    try:
        law = predict_law(o["weights"], o["stat"], o["family"])
    except ValueError as e:
        raise UsageError(str(e)) from None
    return json.dumps(law.describe())


def cmd_converge(o) -> str:
    require(o, "weights", "stat")
    if o["convention"] not in ("mid", "raw"):
        raise UsageError("convention must be mid or raw")
    try:
        model_for(o["stat"], o["family"])
    except ValueError as e:
        raise UsageError(str(e)) from None
    report = convergence_report(o["weights"], o["stat"], o["family"], o["n"],
                                convention=o["convention"])
    return report.to_json() if o["format"] == "json" else report.to_csv()


EXACT_SAMPLE_N = 200  # above this the reference pmf comes from float series


def cmd_sample(o) -> str:
    require(o, "weights", "n", "stat")
    if o["family"] not in (PathFamily.WALK, PathFamily.BRIDGE):
        raise UsageError("sampling supports walk and bridge only")
    cfg = SampleConfig(o["weights"], o["n"], o["reps"], o["seed"])
    emp = empirical_pmf(cfg, o["stat"], o["family"])
    if o["n"] <= EXACT_SAMPLE_N:
        exact = pmf_exact(o["weights"], o["n"], o["stat"], o["family"])
    else:
        try:
            model = model_for(o["stat"], o["family"])
        except ValueError:
            raise UsageError(f"n > {EXACT_SAMPLE_N} needs a generating-function model "
                             "(returns, signs or height)") from None
        exact = gf_pmf(model, base_series(o["weights"], o["n"], numeric=True), o["n"])
    fit = goodness_of_fit(emp, exact)
    ex_p = {k: float(v / exact.total) for k, v in exact.weights.items()}
    em_p = {k: v / emp.total for k, v in emp.weights.items()} if emp.total else {}
    keys = sorted(set(ex_p) | set(em_p))
    summary = {
        "reps": cfg.reps, "accepted": int(emp.total), "acceptance_rate": emp.total / cfg.reps,
        "tv": fit.tv, "chi2_pvalue": fit.pvalue,
    }
    if o["family"] is PathFamily.BRIDGE:
        summary["exact_acceptance_rate"] = float(exact.total / o["weights"].p_one ** o["n"]) \
            if isinstance(exact.total, Fraction) else float(exact.total)
    rows = [(k, em_p.get(k, 0.0), ex_p.get(k, 0.0)) for k in keys]
    if o["format"] == "json":
        return json.dumps({**summary, "pmf": [{"k": k, "empirical": a, "exact": b}
                                              for k, a, b in rows]}, indent=2)
    return _rows_to_csv(["k", "empirical", "exact"], rows,
                        [" ".join(f"{k}={v}" for k, v in summary.items())])


def cmd_scheme_check(o):
    if (o["builtin"] is None) == (o["instance"] is None):
        raise UsageError("give exactly one of --builtin or --instance")
    if o["builtin"] is not None:
        require(o, "weights")
        try:
            inst = builtin_scheme(o["builtin"], o["weights"])
        except ValueError as e:
            raise UsageError(str(e)) from None
    else:
        try:
            data = json.loads(Path(o["instance"]).read_text())
            if not isinstance(data, dict):
                raise ValueError("instance file must hold a JSON object")
            inst = SchemeInstance.from_mapping(data)
        except (OSError, ValueError, ZeroDivisionError) as e:
            raise UsageError(f"bad instance file: {e}") from None
    try:
        report = check_scheme(inst, tol=o["tol"])
    except ValueError as e:
        raise UsageError(str(e)) from None
    return json.dumps(report.to_dict(), indent=2), (0 if report.passed else 1)


COMMANDS = {
    "enumerate": cmd_enumerate,
    "predict": cmd_predict,
    "converge": cmd_converge,
    "sample": cmd_sample,
    "scheme-check": cmd_scheme_check,
}


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, stream=sys.stderr,
                        format="motzkin-lab: %(levelname)s: %(message)s")
    parser = build_parser()
    args = parser.parse_args(argv)  # argparse itself exits with status 2
    try:
        try:
            worker_count()
        except ValueError as e:
            raise UsageError(str(e)) from None
        config = read_config(args.config) if args.config else {}
        opts = resolve(args, config)
        result = COMMANDS[args.command](opts)
        text, status = result if isinstance(result, tuple) else (result, 0)
        if opts["output"]:
            Path(opts["output"]).write_text(text if text.endswith("\n") else text + "\n")
        else:
            sys.stdout.write(text if text.endswith("\n") else text + "\n")
        return status
    except UsageError as e:
        print(f"motzkin-lab: error: {e}", file=sys.stderr)
        return 2
    except Exception as e:  # noqa: BLE001 - report, don't traceback, on the CLI
        log.error("%s: %s", type(e).__name__, e)
        return 1


if __name__ == "__main__":
    sys.exit(main())
