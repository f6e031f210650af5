"""Command-line front end: ``cbwave simulate | analyze | image``.

Exit status is 0 on success, 1 on runtime or I/O failure and 2 on usage errors.
"""

import argparse
import re
import sys

from . import fringes, imaging, scenario_io, timesim
from .errors import CBWError, NoModulation

EPILOG = """\
Scenario files are JSON documents with keys wavelength_nm, input_intensity,
sample_rate_hz, t_start_s, t_end_s, chain and events (see the README).
simulate writes CSV: header t,I_A,I_B,I_C,I_D, values with 9 significant
digits. image writes binary PGM (P5, maxval 65535, 16-bit big-endian).
"""


def _add_source(p):
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--scenario", metavar="FILE", help="JSON scenario document")
    src.add_argument("--preset", choices=scenario_io.PRESETS, help="built-in scenario")
    p.add_argument("--n", type=int, help="block count for the cascade preset")
    p.add_argument("--df", type=float, help="frequency offset in Hz for presets (default 1)")


def build_parser():
    parser = argparse.ArgumentParser(prog="cbwave", description=__doc__.splitlines()[0],
                                     epilog=EPILOG, formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="sample detector intensities to CSV")
    _add_source(p)
    p.add_argument("--out", required=True, metavar="FILE.csv")

    p = sub.add_parser("analyze", help="period, visibility and tone amplitude of a CSV channel")
    p.add_argument("--in", dest="infile", required=True, metavar="FILE.csv")
    p.add_argument("--channel", required=True)
    p.add_argument("--component", type=float, metavar="F_HZ")

    p = sub.add_parser("image", help="render a fringe frame to PGM")
    _add_source(p)
    p.add_argument("--mode", choices=("bar", "rings"), required=True)
    p.add_argument("--channel", required=True, choices=("I_A", "I_B", "I_C", "I_D"))
    p.add_argument("--t", type=float, required=True, metavar="SEC")
    p.add_argument("--size", required=True, metavar="WxH")
    shape = p.add_mutually_exclusive_group()
    shape.add_argument("--period-px", type=float, help="bar fringe period (default: image width)")
    shape.add_argument("--kappa", type=float, help="ring curvature, rad/px^2 (default 0.002)")
    p.add_argument("--out", required=True, metavar="FILE.pgm")
    return parser


def _load(args, parser):
    if args.preset:
        if args.preset == "cascade" and args.n is None:
            parser.error("--preset cascade requires --n")
        return scenario_io.preset(args.preset, n=args.n, df_hz=args.df)
    with open(args.scenario, encoding="utf-8") as fh:
        return scenario_io.parse_scenario(fh.read())


def cmd_simulate(args, parser):
    s = _load(args, parser)
    for t, what in timesim.event_timeline(s):
        print(f"t={t:g}s {what}", file=sys.stderr)
    ts = timesim.simulate(s)
    with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(scenario_io.write_csv(ts))
    return 0


def cmd_analyze(args, parser):
    with open(args.infile, encoding="utf-8") as fh:
        ts = scenario_io.read_csv(fh.read())
    if args.channel not in ts.channels:
        print(f"error: no column {args.channel!r} in {args.infile}", file=sys.stderr)
        return 1
    try:
        est = fringes.estimate_period(ts, args.channel)
        print(f"period_s={est.period_s:.6f}")
        print(f"period_uncertainty_s={est.uncertainty_s:.6f}")
        print(f"crossings_used={est.crossings_used}")
    except NoModulation:
        print("period_s=none (no modulation)")
    print(f"visibility={fringes.visibility(ts, args.channel):.9f}")
    if args.component is not None:
        amp = fringes.frequency_component(ts, args.channel, args.component)
        print(f"component_hz={args.component:g}")
        print(f"component_amplitude={amp:.9e}")
    return 0


def cmd_image(args, parser):
    m = re.fullmatch(r"(\d+)x(\d+)", args.size)
    if not m or int(m.group(1)) < 1 or int(m.group(2)) < 1:
        parser.error(f"--size must look like 256x256, got {args.size!r}")
    if args.mode == "bar" and args.kappa is not None:
        parser.error("--kappa applies to --mode rings")
    if args.mode == "rings" and args.period_px is not None:
        parser.error("--period-px applies to --mode bar")
    width, height = int(m.group(1)), int(m.group(2))
    s = _load(args, parser)
    if args.mode == "bar":
        period = width if args.period_px is None else args.period_px
        img = imaging.bar_fringe_image(s, args.channel, args.t, width, height, period)
    else:
        kappa = 0.002 if args.kappa is None else args.kappa
        img = imaging.newton_ring_image(s, args.channel, args.t, width, height, kappa)
    with open(args.out, "wb") as fh:
        fh.write(imaging.pgm_encode(img))
    return 0


COMMANDS = {"simulate": cmd_simulate, "analyze": cmd_analyze, "image": cmd_image}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args, parser)
    except (OSError, CBWError) as exc:
        for line in getattr(exc, "errors", None) or [str(exc)]:
            print(f"error: {line}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
