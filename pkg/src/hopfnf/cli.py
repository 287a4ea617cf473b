"""Command line interface.

Subcommands: normalize (full reduction + report), check (first level +
genericity), pages (level/dimension table), verify (normalize and replay
the transform log against the input).

Exit codes: 0 success, 2 input errors, 3 NotGeneric / NoParametricDimension
when the requested reduction needs them, 4 replay verification mismatch.
"""

import argparse
import sys as _sys

from .engine import (
    AUTO,
    MODE_FULL,
    MODE_STATE_PARAM,
    MODE_STATE_TIME,
    MODES,
    STYLE_DISTORTED,
    STYLE_SPECTRAL,
    NormalizationConfig,
    _orbital_reserved,
    detect_parametric_dimension,
    distorted_normalize,
    genericity,
    hypernormalize,
    level_one,
    nonparametric_normalize,
)
from .errors import (
    DegenerateInput,
    DimensionMismatch,
    HopfnfError,
    LinearPartError,
    NoParametricDimension,
    NotGeneric,
    SystemSyntaxError,
    TruncationOverflow,
    UndeclaredParameter,
)
from .oracle import replay
from .rational import rat_str
from .report import RunResult, render_report
from .system import check_degree_fit, parse_system, realify
from .terms import Grading

_INPUT_ERRORS = (
    SystemSyntaxError,
    LinearPartError,
    UndeclaredParameter,
    TruncationOverflow,
    DimensionMismatch,
    DegenerateInput,
    OSError,
)
_GENERICITY_ERRORS = (NotGeneric, NoParametricDimension)


def _read_system(path):
    with open(path, "r", encoding="utf-8") as fh:
        return parse_system(fh.read())


def _detect(sys_obj, degree=None):
    probe_degree = degree if degree is not None else 4 * sys_obj.max_total_degree() + 2
    probe = realify(sys_obj, Grading(1), probe_degree)
    return detect_parametric_dimension(probe, probe_degree)


def _resolve_run(args, sys_obj):
    """Parse flags into (field, cfg, n0, alpha, degree)."""
    n0 = _detect(sys_obj, args.degree)
    if args.alpha == AUTO:
        if n0 is None:
            raise NoParametricDimension(
                "cannot detect the parametric dimension within the degree; "
                "give --alpha and --degree explicitly"
            )
        alpha = 2 * n0 + 1
    else:
        alpha = args.alpha
    degree = args.degree if args.degree is not None else 4 * (n0 or 1) + 2 * alpha
    g = Grading(alpha)
    check_degree_fit(sys_obj, g, degree)
    v = realify(sys_obj, g, degree)
    return v, n0, alpha, degree


def _run(args, sys_obj):
    v, n0, alpha, degree = _resolve_run(args, sys_obj)
    mode = args.mode
    if sys_obj.m == 0:
        if mode in (MODE_FULL, MODE_STATE_PARAM):
            print(
                "note: no parameters declared; running mode 'state+time'",
                file=_sys.stderr,
            )
            mode = MODE_STATE_TIME
        cfg = NormalizationConfig(
            degree=degree, mode=mode, alpha=alpha, alt_orbital=args.alt_orbital
        )
        out, log, pages = nonparametric_normalize(v, cfg)
        generic = None
    elif mode == MODE_FULL and args.style == STYLE_DISTORTED:
        cfg = NormalizationConfig(
            degree=degree, mode=MODE_FULL, style=STYLE_DISTORTED, alpha=alpha
        )
        out, log, pages = distorted_normalize(v, cfg)
        generic = True
    elif mode == MODE_STATE_TIME:
        out, log, pages = _orbital_reserved(
            v, degree
        )  # reserved-time costyle: the parametric orbital form
        generic = None
    else:
        cfg = NormalizationConfig(
            degree=degree, mode=mode, style=STYLE_SPECTRAL, alpha=alpha
        )
        out, log, pages = hypernormalize(v, cfg)
        generic = log.linear_reparam is not None
    res = RunResult(
        normal_form=out,
        log=log,
        pages=pages,
        mode=mode,
        style=args.style if mode == MODE_FULL else STYLE_SPECTRAL,
        alpha=alpha,
        degree=degree,
        n0=n0,
        generic=generic,
        param_names=sys_obj.param_names,
    )
    return v, res


def cmd_normalize(args):
    sys_obj = _read_system(args.file)
    v, res = _run(args, sys_obj)
    code = 0
    if args.verify:
        res.verified = replay(v, res.log, res.degree) == res.normal_form
        if not res.verified:
            code = 4
    _sys.stdout.write(render_report(res, args.format, args.show_transforms))
    return code


def cmd_check(args):
    sys_obj = _read_system(args.file)
    n0 = _detect(sys_obj, args.degree)
    if sys_obj.m == 0:
        if n0 is None:
            _sys.stdout.write("N0: undetected within degree\n")
        else:
            _sys.stdout.write(f"N0: {n0}, m=0: parametric checks skipped\n")
        return 0
    if n0 is None:
        raise NoParametricDimension("no parametric dimension within the degree")
    alpha = 2 * n0 + 1 if args.alpha == AUTO else args.alpha
    degree = args.degree if args.degree is not None else 4 * n0 + 2 * alpha
    g = Grading(alpha)
    check_degree_fit(sys_obj, g, degree)
    v = realify(sys_obj, g, degree)
    cfg = NormalizationConfig(degree=degree, mode=MODE_FULL, alpha=alpha, max_level=1)
    v1, _ = level_one(v, cfg)
    rep = genericity(v1, n0)
    _sys.stdout.write(f"N0: {rep.n0}\n")
    _sys.stdout.write(f"rank: {rep.rank} (of {rep.n0} needed, m = {rep.m})\n")
    _sys.stdout.write(f"generic: {'true' if rep.generic else 'false'}\n")
    if rep.sigma:
        _sys.stdout.write(
            "sigma: " + " ".join(f"{i+1}->{s}" for i, s in enumerate(rep.sigma)) + "\n"
        )
    _sys.stdout.write("A1:\n")
    for row in rep.a1_matrix:
        _sys.stdout.write("  [" + ", ".join(rat_str(x) for x in row) + "]\n")
    return 0


def cmd_pages(args):
    sys_obj = _read_system(args.file)
    _, res = _run(args, sys_obj)
    pages = res.pages
    _sys.stdout.write(f"collapse level: {pages.collapse_level()}\n")
    _sys.stdout.write("grade: dimension by level\n")
    for n, dims in pages.rows():
        _sys.stdout.write(f"  {n:2d}: " + " ".join(str(d) for d in dims) + "\n")
    return 0


def cmd_verify(args):
    args.verify = True
    sys_obj = _read_system(args.file)
    v, res = _run(args, sys_obj)
    res.verified = replay(v, res.log, res.degree) == res.normal_form
    _sys.stdout.write(
        "replay verification: " + ("PASS" if res.verified else "FAIL") + "\n"
    )
    return 0 if res.verified else 4


def _add_common(p, with_style=True):
    p.add_argument("file", help="input system file")
    p.add_argument("--degree", type=int, default=None, help="truncation degree")
    p.add_argument(
        "--alpha",
        default=AUTO,
        type=lambda s: s if s == AUTO else int(s),
        help="parameter weight (default: auto = 2*N0+1)",
    )
    p.add_argument(
        "--mode",
        choices=MODES,
        default=MODE_FULL,
        help="which transformations to use",
    )
    if with_style:
        p.add_argument(
            "--style",
            choices=(STYLE_SPECTRAL, STYLE_DISTORTED),
            default=STYLE_DISTORTED,
            help="full-mode elimination scheme (default: distorted)",
        )
    p.add_argument(
        "--alt-orbital",
        action="store_true",
        help="m=0 orbital variant keeping one phase term instead of the "
        "higher amplitude term",
    )


def build_parser():
    ap = argparse.ArgumentParser(
        prog="hopfnf",
        description="Exact parametric normal forms of planar generalized "
        "Hopf systems",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("normalize", help="compute the normal form and report")
    _add_common(p)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--show-transforms", action="store_true")
    p.add_argument("--verify", action="store_true", help="replay the log and compare")
    p.set_defaults(func=cmd_normalize)

    p = sub.add_parser("check", help="first level + genericity analysis")
    p.add_argument("file")
    p.add_argument("--degree", type=int, default=None)
    p.add_argument(
        "--alpha", default=AUTO, type=lambda s: s if s == AUTO else int(s)
    )
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("pages", help="level/dimension table and collapse level")
    _add_common(p)
    p.set_defaults(func=cmd_pages)

    p = sub.add_parser("verify", help="normalize and replay the transform log")
    _add_common(p)
    p.set_defaults(func=cmd_verify)

    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _INPUT_ERRORS as exc:
        print(f"error: {exc}", file=_sys.stderr)
        return 2
    except _GENERICITY_ERRORS as exc:
        print(f"error: {exc}", file=_sys.stderr)
        return 3
    except HopfnfError as exc:  # internal assertion failures
        print(f"internal error: {exc}", file=_sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
