#!/usr/bin/env python3
"""Exact-vs-asymptotic residual curves for highly excited states.

Produces a CSV table (stdout) and optionally an SVG with the relative
residuals of the moment, Shannon, and Renyi-norm asymptotics along an n_r
ladder at fixed D and l = 0.
"""

import argparse
import csv
import math
import sys

from dho import asymptotics, infomeasures, moments, oracle, svgplot
from dho.states import HyperState, OscillatorSpec


def residual_rows(D: int, ladder):
    rows = []
    for nr in ladder:
        st = HyperState(OscillatorSpec(1.0, D), nr, tuple([0] * (D - 1)))
        row = {"nr": nr}
        for k in (1.0, 2.0, 4.0):
            exact = moments.radial_moment(st, k)
            approx = asymptotics.rydberg_moment(k, nr).value
            row[f"moment_k{k:g}_residual"] = abs(exact - approx) / abs(exact)
        if nr <= 800:
            s_exact = infomeasures.shannon_hyperspherical(st, tol=1e-9).value
            s_asym = asymptotics.rydberg_shannon(st).value
            row["shannon_residual"] = abs(s_exact - s_asym)
            norm = oracle.weighted_Lq_norm(nr, 0, D, 2.0)
            approx, _ = asymptotics.rydberg_norm_asymptotic(nr, 0, D, 2.0)
            row["renyi_norm_ratio"] = norm / approx
        rows.append(row)
    return rows


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--dim", type=int, default=3)
    ap.add_argument("--ladder", type=int, nargs="*",
                    default=[50, 100, 200, 400, 800])
    ap.add_argument("--svg", default=None, help="write residual curves here")
    args = ap.parse_args()

    rows = residual_rows(args.dim, args.ladder)
    fields = sorted({k for row in rows for k in row}, key=lambda s: (s != "nr", s))
    writer = csv.DictWriter(sys.stdout, fieldnames=fields, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(row)

    if args.svg:
        xs = [math.log10(r["nr"]) for r in rows]
        series = []
        for key in fields:
            if key == "nr" or any(r.get(key) is None for r in rows):
                continue
            ys = [math.log10(max(abs(r[key]), 1e-18)) for r in rows
                  if key in r]
            series.append((key, xs[:len(ys)], ys))
        svgplot.line_plot(series, "log10 nr", "log10 residual", args.svg,
                          title=f"Rydberg asymptotics residuals, D={args.dim}")
        print(f"wrote {args.svg}", file=sys.stderr)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
