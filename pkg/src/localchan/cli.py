"""Command-line entry point.

Exit codes: 0 success, 1 usage or I/O error, 2 when a proven bound is
violated beyond slack (which indicates a software defect).
"""
import argparse
import csv
import io
import json
import math
import sys

from . import explorer
from .bounds import classify, proven_bound_violated
from .channels import epsilon_of_channel
from .serialization import FormatError, channel_from_json, load_json, state_from_json
from .states import InvalidStateError, check_density, random_mixed, random_separable, rng_from
from .witness import concurrence, witness_value

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VIOLATION = 2

CSV_COLUMNS = ["trial", "class", "distance", "sep_bound", "ent_bound", "violates_sep",
               "violates_ent"]


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _norm_order(text):
    if text.lower() in ("inf", "infinity"):
        return math.inf
    try:
        p = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid norm order {text!r}")
    if p < 1:
        raise argparse.ArgumentTypeError("norm order must be >= 1")
    return int(p) if p.is_integer() else p


def _positive_float(text):
    try:
        x = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid number {text!r}")
    if not x > 0 or not math.isfinite(x):
        raise argparse.ArgumentTypeError("value must be a positive finite number")
    return x


def _positive_int(text):
    try:
        x = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid integer {text!r}")
    if x < 1:
        raise argparse.ArgumentTypeError("value must be >= 1")
    return x


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--d1", type=_positive_int, default=2)
    common.add_argument("--d2", type=_positive_int, default=2)
    common.add_argument("--p", type=_norm_order, default=2)
    common.add_argument("--epsilon", type=_positive_float, default=0.01)
    common.add_argument("--trials", type=_positive_int, default=10_000)
    common.add_argument("--seed", type=int, default=42)
    common.add_argument("--channel", choices=explorer.CHANNEL_KINDS, default="contraction")
    common.add_argument("--channel-file", help="JSON channel used on both subsystems")
    common.add_argument("--out", help="write output here instead of standard output")
    common.add_argument("--format", choices=("json", "csv"), default="json")

    parser = _Parser(prog="localchan", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("verify-bounds", parents=[common],
                   help="random separable and general states against both bounds")
    sub.add_parser("bell-example", parents=[common], help="two contractions on the singlet")
    ghz = sub.add_parser("ghz-decay", parents=[common], help="dephased GHZ states")
    ghz.add_argument("--n", type=_positive_int, default=4)
    sub.add_parser("saturate", parents=[common], help="separable-bound saturation on |00>")
    wit = sub.add_parser("witness", parents=[common], help="witness function of a 4x4 state")
    wit.add_argument("--input", required=True, help="JSON matrix file")
    search = sub.add_parser("search", parents=[common], help="maximize distance over pure states")
    search.add_argument("--restarts", type=_positive_int, default=8)
    search.add_argument("--separable-only", action="store_true")
    return parser


def _config(args, **extra):
    try:
        return explorer.ExperimentConfig(seed=args.seed, trials=args.trials, d1=args.d1,
                                         d2=args.d2, p=args.p, epsilon=args.epsilon,
                                         channel=args.channel, **extra)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _load_channel(args):
    if not args.channel_file:
        return None
    ch = channel_from_json(load_json(args.channel_file))
    if ch.dim != args.d1 or ch.dim != args.d2:
        raise UsageError(f"channel dimension {ch.dim} does not match --d1/--d2")
    return ch


def _reports_text(reports, fmt):
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for i, r in enumerate(reports):
            w.writerow([i, r.state_class, repr(r.measured_distance), repr(r.separable_bound),
                        repr(r.entangled_bound), r.violates_separable, r.violates_entangled])
        return buf.getvalue()
    return "".join(json.dumps(r.to_dict()) + "\n" for r in reports)


def _emit(text, out):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _json(obj):
    return json.dumps(obj, indent=1) + "\n"


def _with_channel(cfg, ch, states):
    """Sweep with a user-supplied channel on both sides."""
    cert = epsilon_of_channel(ch, cfg.p, seed=cfg.seed)
    reports = []
    for i, (rho, cls) in enumerate(states):
        d = explorer.measure(ch, ch, rho, cfg.p)
        reports.append(classify(d, cfg.d1, cfg.d2, cfg.p, cert.epsilon, cls))
    return reports


def cmd_verify_bounds(args):
    cfg = _config(args)
    ch = _load_channel(args)
    if ch is None:
        sep = explorer.separable_sweep(cfg)
        gen = explorer.universal_sweep(cfg)
    else:
        sep = _with_channel(cfg, ch, (
            (random_separable(cfg.d1, cfg.d2, 2, rng_from(cfg.seed, i)), "separable")
            for i in range(cfg.trials)))
        gen = _with_channel(cfg, ch, (
            (random_mixed(cfg.d1 * cfg.d2, None, rng_from(cfg.seed, i, 9)), "unknown")
            for i in range(cfg.trials)))
    reports = sep + gen
    summary = {"separable_sweep": explorer.summarize(sep),
               "universal_sweep": explorer.summarize(gen)}
    if args.out:
        _emit(_reports_text(reports, args.format), args.out)
        sys.stdout.write(_json(summary))
    else:
        _emit(_json(summary), None)
    return reports


def cmd_bell_example(args):
    res = explorer.bell_example(args.epsilon)
    _emit(_json(res.to_dict()) if args.format == "json" else _reports_text([res.report], "csv"),
          args.out)
    return [res.report]


def cmd_ghz_decay(args):
    if args.n > 12:
        raise UsageError("--n must be at most 12")
    res = explorer.ghz_decay(args.n, args.epsilon)
    if args.format == "csv":
        text = "n,exact,closed_form,first_order\n" + ",".join(
            map(repr, (args.n, res.exact, res.closed_form, res.first_order))) + "\n"
    else:
        text = _json({"n": args.n, "epsilon": args.epsilon, **res.to_dict()})
    _emit(text, args.out)
    return []


def cmd_saturate(args):
    res = explorer.saturation_experiment(args.d1, args.d2, args.p, args.epsilon)
    _emit(_json(res.to_dict()) if args.format == "json" else _reports_text([res.report], "csv"),
          args.out)
    return [res.report]


def cmd_witness(args):
    rho, dims = state_from_json(load_json(args.input))
    if rho.shape != (4, 4) or (dims is not None and list(dims) != [2, 2]):
        raise UsageError("witness needs a 4x4 two-qubit state")
    try:
        rho = check_density(rho)
    except InvalidStateError as exc:
        raise UsageError(f"{args.input}: {exc}") from exc
    f = witness_value(rho)
    out = {"F": f, "concurrence": concurrence(rho), "violates_separable_bound": f > 1e-9}
    if args.format == "csv":
        text = "F,concurrence,violates_separable_bound\n" + ",".join(
            map(str, out.values())) + "\n"
    else:
        text = _json(out)
    _emit(text, args.out)
    return []


def cmd_search(args):
    space = "separable" if args.separable_only else "entangled"
    cfg = _config(args, restarts=args.restarts, search_space=space)
    ch = _load_channel(args)
    res = explorer.violation_search(cfg, ch, ch)
    _emit(_json(res.to_dict()) if args.format == "json" else _reports_text([res.report], "csv"),
          args.out)
    return [res.report]


COMMANDS = {
    "verify-bounds": cmd_verify_bounds,
    "bell-example": cmd_bell_example,
    "ghz-decay": cmd_ghz_decay,
    "saturate": cmd_saturate,
    "witness": cmd_witness,
    "search": cmd_search,
}


def run(argv=None):
    """Parse ``argv`` and run one subcommand; returns the exit code."""
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        reports = COMMANDS[args.command](args)
    except (UsageError, FormatError, OSError, ValueError) as exc:
        print(f"localchan: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if any(proven_bound_violated(r) for r in reports):
        print("localchan: a proven bound was violated beyond slack", file=sys.stderr)
        return EXIT_VIOLATION
    return EXIT_OK


def main(argv=None):
    try:
        code = run(argv)
    except SystemExit as exc:  # argparse usage errors and --help
        code = exc.code if isinstance(exc.code, int) else EXIT_USAGE
    sys.exit(code)


if __name__ == "__main__":
    main()
