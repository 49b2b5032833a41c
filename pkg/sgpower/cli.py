"""Command-line entry point of sgpower"""

# License: MIT

import argparse
import logging
import sys

import numpy as np

from . import __version__
from .groups import (ConstructionSpec, format_subgroup, read_subgroup,
                     write_subgroup)
from .inference import (maxt, single_test_pvalue, exact_reference,
                        monte_carlo_reference)
from .power import (relative_efficiency, oracle_power, oracle_power_limit,
                    fullgroup_power_approx)
from .simulation import (Scenario, load_scenario, estimate, read_data_csv,
                         reproduce_figure, write_results, FIGURE_IDS, DESK,
                         FULL, SUBGROUP)
from .utils import substream, resolve_n_jobs
from .utils.exceptions import DomainError

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_DOMAIN = 3


def _fmt(value):
    if isinstance(value, (bool, np.bool_)):
        return str(bool(value)).lower()
    if isinstance(value, (float, np.floating)):
        return f"{value:.6g}"
    return str(value)


def _header(out, config):
    for key, value in config.items():
        out.write(f"# {key}={_fmt(value)}\n")


def _records(out, names, rows):
    out.write(",".join(names) + "\n")
    for row in rows:
        out.write(",".join(_fmt(v) for v in row) + "\n")


def _add_reference_args(parser):
    group = parser.add_mutually_exclusive_group(required=True)
    group.add_argument("--subgroup", metavar="FILE",
                       help="Subgroup file written by 'construct'")
    group.add_argument("--mc", type=int, metavar="M",
                       help="Monte Carlo reference with M elements")
    group.add_argument("--full", action="store_true",
                       help="Enumerate all 2^n sign-flips (small n)")


def _reference(args, n):
    if args.subgroup is not None:
        return exact_reference(read_subgroup(args.subgroup))
    if args.full:
        return exact_reference(n)
    return monte_carlo_reference(n, args.mc, substream(args.seed))


def _reference_config(args):
    if args.subgroup is not None:
        return {"reference": args.subgroup}
    if args.full:
        return {"reference": "full"}
    return {"reference": "monte_carlo", "n_draws": args.mc}


def cmd_construct(args, out):
    spec = ConstructionSpec(args.n, args.size, args.strategy,
                            pool_size=args.pool_size)
    subgroup = spec.build(random_state=substream(args.seed),
                          n_jobs=args.n_jobs)
    _header(out, {"command": "construct", "n": spec.n, "size":
                  spec.target_size, "strategy": spec.strategy,
                  "pool_size": spec.pool_size, "seed": args.seed,
                  "threads": args.n_jobs})
    if args.out is None:
        out.write(format_subgroup(subgroup))
    else:
        write_subgroup(subgroup, args.out)
        out.write(f"# class={subgroup.kind}\n")
        out.write(f"# max_leak={_fmt(subgroup.max_leak)}\n")
    return EXIT_OK


def cmd_test(args, out):
    X = read_data_csv(args.data)
    n, p = X.shape
    reference = _reference(args, n)
    _header(out, {"command": "test", "data": args.data, "n": n, "p": p,
                  "alpha": args.alpha, **_reference_config(args),
                  "seed": args.seed})
    rows = []
    for j in range(p):
        p_value = single_test_pvalue(X[:, j], reference)
        rows.append((j, float(X[:, j].sum() / np.sqrt(n)), p_value,
                     p_value <= args.alpha))
    _records(out, ("hypothesis", "t", "p_value", "reject"), rows)
    return EXIT_OK


def cmd_maxt(args, out):
    X = read_data_csv(args.data)
    n, p = X.shape
    reference = _reference(args, n)
    outcome = maxt(X, reference, args.alpha, n_jobs=args.n_jobs)
    _header(out, {"command": "maxt", "data": args.data, "n": n, "p": p,
                  "alpha": args.alpha, **_reference_config(args),
                  "seed": args.seed, "critical_value":
                  outcome.critical_value, "rejections": outcome.n_rejected})
    rows = zip(range(p), outcome.statistics, outcome.p_values,
               outcome.rejected)
    _records(out, ("hypothesis", "t", "p_value", "reject"), rows)
    return EXIT_OK


def _scenario_from_args(args):
    if args.config is not None:
        scenario = load_scenario(args.config)
        if args.seed_given:
            config = scenario.to_dict()
            config["seed"] = args.seed
            scenario = Scenario.from_dict(config)
        return scenario
    missing = [flag for flag, value in (("--n", args.n), ("--p", args.p),
                                        ("--mu", args.mu))
               if value is None]
    if missing:
        raise ValueError(f"power needs --config or {', '.join(missing)}")
    config = {"n": args.n, "p": args.p, "mu_value": args.mu,
              "prop_false": args.prop_false, "alpha": args.alpha,
              "reps": args.reps, "seed": args.seed}
    if args.size is not None:
        config.update(method=SUBGROUP, strategy=args.strategy,
                      size=args.size, pool_size=args.pool_size)
    else:
        config.update(method="monte_carlo", n_draws=args.n_draws)
    return Scenario.from_dict(config)


def cmd_power(args, out):
    scenario = _scenario_from_args(args)
    _header(out, {"command": "power", **scenario.to_dict(),
                  "threads": args.n_jobs})
    result = estimate(scenario, n_jobs=args.n_jobs, verbose=args.verbose)
    values = {"power": result.power, "se_power": result.se_power,
              "fwer": result.fwer, "se_fwer": result.se_fwer}
    if not args.omit_runtime:
        values["runtime_s"] = result.runtime

    if args.analytic and scenario.k > 0:
        rng = substream(scenario.seed)
        n, p, mu, alpha = (scenario.n, scenario.p, scenario.mu_value,
                           scenario.alpha)
        if scenario.method == SUBGROUP:
            if scenario.construction.strategy == "sylvester":
                values["analytic_oracle"], values["analytic_oracle_se"] = \
                    oracle_power(n, p, scenario.k, mu,
                                 scenario.reference_size, alpha,
                                 scenario.reps, rng)
        else:
            values["analytic_fullgroup"], values["analytic_fullgroup_se"] = \
                fullgroup_power_approx(n, p, mu, alpha, scenario.reps, rng)
        values["oracle_limit"] = oracle_power_limit(n, p, mu, alpha)

    for key, value in values.items():
        out.write(f"{key}={_fmt(value)}\n")
    return EXIT_OK


def cmd_releff(args, out):
    _header(out, {"command": "releff", "n": args.n, "p": args.p,
                  "alpha": args.alpha, "seed": args.seed})
    signals = relative_efficiency(args.n, args.p, args.alpha)
    for key in ("mu_os", "mu_h", "a", "b", "c", "lhs", "rhs"):
        out.write(f"{key}={_fmt(getattr(signals, key))}\n")
    favours = "oracle_subgroup" if signals.oracle_favoured else "full_group"
    out.write(f"favours={favours}\n")
    return EXIT_OK


def cmd_figure(args, out):
    _header(out, {"command": "figure", "id": args.id, "scale": args.scale,
                  "seed": args.seed, "threads": args.n_jobs})
    table = reproduce_figure(args.id, scale=args.scale, seed=args.seed,
                             n_jobs=args.n_jobs, verbose=args.verbose)
    write_results(table, out if args.out is None else args.out,
                  omit_runtime=args.omit_runtime)
    return EXIT_OK


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None,
                        help="Base seed (default 0)")
    common.add_argument("--threads", type=int, default=None,
                        help="Worker count, else $SUBGROUP_POWER_THREADS, "
                             "else 1")
    common.add_argument("-v", "--verbose", action="store_true",
                        help="Log progress to stderr")
    common.add_argument("--omit-runtime", action="store_true",
                        help="Write runtimes as 0 for reproducible output")

    parser = argparse.ArgumentParser(
        prog="sgpower",
        description="Strategic subgroup sign-flip tests and their power.",
    )
    parser.add_argument("--version", action="version",
                        version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", parents=[common],
                       help="Build a sign-flip subgroup")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--size", type=int, required=True)
    p.add_argument("--strategy", default="nested",
                   help="sylvester, nonpositive, nested or greedy")
    p.add_argument("--pool-size", type=int, default=512)
    p.add_argument("--out", default=None, help="Subgroup file (stdout)")
    p.set_defaults(func=cmd_construct)

    for name, func, text in (
            ("test", cmd_test, "Single-hypothesis p-values per column"),
            ("maxt", cmd_maxt, "maxT multiple testing of every column")):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("--data", required=True,
                       help="Headerless CSV, rows are observations")
        _add_reference_args(p)
        p.add_argument("--alpha", type=float, default=0.05)
        p.set_defaults(func=func)

    p = sub.add_parser("power", parents=[common],
                       help="Simulate power and FWER of a scenario")
    p.add_argument("--config", default=None, help="TOML or JSON scenario")
    p.add_argument("--n", type=int)
    p.add_argument("--p", type=int)
    p.add_argument("--mu", type=float)
    p.add_argument("--prop-false", type=float, default=1.0)
    p.add_argument("--alpha", type=float, default=0.05)
    p.add_argument("--reps", type=int, default=1000)
    p.add_argument("--n-draws", type=int, default=1000)
    p.add_argument("--size", type=int, default=None,
                   help="Subgroup size; Monte Carlo if omitted")
    p.add_argument("--strategy", default="nested")
    p.add_argument("--pool-size", type=int, default=512)
    p.add_argument("--analytic", action="store_true",
                   help="Also print the semi-analytic power")
    p.set_defaults(func=cmd_power)

    p = sub.add_parser("releff", parents=[common],
                       help="Signals giving power 1/2 and their crossover")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--alpha", type=float, default=0.05)
    p.set_defaults(func=cmd_releff)

    p = sub.add_parser("figure", parents=[common],
                       help="Reproduce the points of a power figure")
    p.add_argument("--id", type=int, required=True, choices=FIGURE_IDS)
    p.add_argument("--scale", default=DESK, choices=(DESK, FULL))
    p.add_argument("--out", default=None, help="Result CSV (stdout)")
    p.set_defaults(func=cmd_figure)

    return parser


def main(argv=None, out=None):
    """
    Runs the command line.

    Parameters
    ----------
    argv : list of str, optional
        Arguments without the program name. Defaults to ``sys.argv[1:]``.

    out : file-like, optional
        Where results are written. Defaults to ``sys.stdout``.

    Returns
    -------
    code : int
        0 on success, 2 on configuration errors, 3 on numeric domain
        errors.
    """
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_CONFIG

    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(asctime)s %(name)s %(levelname)s: %(message)s",
    )
    args.seed_given = args.seed is not None
    if args.seed is None:
        args.seed = 0
    try:
        args.n_jobs = resolve_n_jobs(args.threads)
        return args.func(args, out)
    except DomainError as exc:
        logger.error("%s", exc)
        return EXIT_DOMAIN
    except (ValueError, TypeError, OSError) as exc:
        logger.error("%s", exc)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
