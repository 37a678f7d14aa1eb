""" Implements the command for fitting empirical convergence rates to trace files """
import json
import sys

from lpprox.evaluator import DEFAULT_CONFIDENCE, MIN_ROWS, fit_rate
from lpprox.logger import logger as log
from lpprox.method import read_trace_csv

from . import command


@command.argument("traces", nargs="+", help="Trace CSV files written by the solve command")
@command.argument("--window_start", help="First iteration of the fit window", type=int, default=None)
@command.argument("--window_end", help="Last iteration of the fit window", type=int, default=None)
@command.argument("--f_star", help="The optimal value, if the trace does not record it", type=float, default=None)
@command.argument("--confidence", help="Confidence level of the slope interval", type=float, default=DEFAULT_CONFIDENCE)
@command.command
def ratefit(args):
    """
    Fits the slope of log(f(y_T) - f*) against log T for each trace and prints the fitted exponents
    with their confidence intervals
    """
    if not 0.0 < args.confidence < 1.0:
        log.critical("provided confidence must lie in (0, 1)")
        sys.exit(1)

    results = []
    for path in args.traces:
        try:
            with open(path, "r") as trace_file:
                table = read_trace_csv(trace_file.read())
        except (OSError, ValueError) as e:
            log.critical("could not read trace", trace=path, error=str(e))
            sys.exit(1)

        f_star = args.f_star if args.f_star is not None else table.meta_float("f_star")
        if f_star is None:
            log.critical("trace does not record f_star; pass --f_star", trace=path)
            sys.exit(1)

        ks = table.columns["k"]
        lo = args.window_start if args.window_start is not None else (int(ks.min()) if ks.size else 0)
        hi = args.window_end if args.window_end is not None else (int(ks.max()) if ks.size else 0)
        try:
            fit = fit_rate(ks, table.columns["f_y"] - f_star, (lo, hi), args.confidence, MIN_ROWS)
        except ValueError as e:
            log.critical("could not fit a rate", trace=path, error=str(e))
            sys.exit(1)

        log.info("fitted rate", trace=path, slope=fit.slope, half_width=fit.half_width)
        results.append({"trace": path, "method": table.meta.get("method"), "p": table.meta.get("p"), **fit.summary()})

    print(json.dumps(results[0] if len(results) == 1 else results, indent=4, sort_keys=True))
