"""Command line front end.

Exit codes: 0 all checks pass, 1 a verification check failed, 2 usage error.
"""

from __future__ import annotations

import argparse
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path

from . import bounds as B
from . import io as pio
from .curves import MIN_GENUS, CurveSystem, Family
from .digraph import exact_length_cover, from_matrix, primitivity_exponent, self_loop_census
from .report import charpoly_diagnostic, genus_row, resolve_conventions
from .spectral import (
    DEFAULT_TOL,
    IntPolynomial,
    as_fraction,
    expected_char_poly,
    max_root_modulus,
    perron_root,
    perron_root_by_bisection,
)
from .twists import phi_matrix
from .verify import all_hard_pass, run_verification

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
GENUS_CEILING = 10**6


class UsageError(Exception):
    pass


def parse_genus(text: str) -> tuple[int, int]:
    try:
        if ".." in text:
            a, b = text.split("..", 1)
            lo, hi = int(a), int(b)
        else:
            lo = hi = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"genus must look like 9 or 5..12, got {text!r}") from None
    if lo > hi:
        raise argparse.ArgumentTypeError(f"empty genus range {text}")
    if lo < 2 or hi > GENUS_CEILING:
        raise argparse.ArgumentTypeError(f"genus range must lie within [2, {GENUS_CEILING}]")
    return lo, hi


def parse_tol(text: str) -> Fraction:
    try:
        tol = as_fraction(float(text)) if any(c in text for c in "eE.") else Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"bad tolerance {text!r}") from None
    if tol <= 0:
        raise argparse.ArgumentTypeError("tolerance must be positive")
    return tol


def _construction_genera(args) -> range:
    lo, hi = args.genus
    if lo < MIN_GENUS:
        raise UsageError(f"construction requires g >= {MIN_GENUS} (got {lo})")
    return range(lo, hi + 1)


def _single_genus(args) -> int:
    gs = _construction_genera(args)
    if len(gs) != 1:
        raise UsageError(f"{args.command} takes a single genus")
    return gs[0]


def _require_format(args, allowed: tuple[str, ...]) -> str:
    fmt = args.format or allowed[0]
    if fmt not in allowed:
        raise UsageError(f"{args.command} supports --format {'|'.join(allowed)}")
    return fmt


def _emit(args, text: str) -> None:
    if args.out:
        try:
            Path(args.out).write_text(text)
        except OSError as exc:
            raise UsageError(f"cannot write {args.out}: {exc}") from None
    else:
        sys.stdout.write(text)


def _conventions(args):
    return resolve_conventions(args.rotation, args.orientation)


# --- subcommands ------------------------------------------------------------


def cmd_matrix(args) -> int:
    g = _single_genus(args)
    fmt = _require_format(args, ("json", "text"))
    conv = _conventions(args)
    m = phi_matrix(g, conv.rotation)
    if fmt == "json":
        _emit(args, pio.dumps({"genus": g, "conventions": conv.as_dict(), "matrix": m}))
    else:
        labels = [str(b) for b in m.labels]
        width = max(len(s) for s in labels) + 1
        lines = [" " * width + "".join(f"{s:>{width}}" for s in labels)]
        for lab, r in zip(labels, m.rows):
            lines.append(f"{lab:>{width}}" + "".join(f"{x:>{width}}" for x in r))
        _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_charpoly(args) -> int:
    fmt = _require_format(args, ("text", "json"))
    conv = _conventions(args)
    diags = [charpoly_diagnostic(g, conv.rotation) for g in _construction_genera(args)]
    if fmt == "json":
        _emit(args, pio.dumps({"conventions": conv.as_dict(), "genera": diags}))
    else:
        out = []
        for d in diags:
            out.append(f"g={d['genus']}")
            out.append(f"  computed    : {d['computed']}")
            out.append(f"  closed form : {d['closed_form']}")
            out.append(f"  match       : {d['matches_closed_form']}")
            if d["cyclic_square_divides"]:
                out.append(f"  computed = (x^{d['genus'] - 1} - 1)^2 * ({d['cofactor']})")
        _emit(args, "\n".join(out) + "\n")
    return EXIT_OK


def cmd_spectrum(args) -> int:
    fmt = _require_format(args, ("text", "json"))
    conv = _conventions(args)
    records = []
    for g in _construction_genera(args):
        m = phi_matrix(g, conv.rotation)
        enc = perron_root(m, args.tol)
        cross = perron_root_by_bisection(m, args.tol)
        closed_mod, err = max_root_modulus(expected_char_poly(g))
        records.append({
            "genus": g,
            "perron_root": enc,
            "log_perron_root": B.log_enclosure(enc),
            "bisection_cross_check": cross,
            "enclosures_overlap": enc.lower <= cross.upper and cross.lower <= enc.upper,
            "closed_form_max_root_modulus": closed_mod,
            "closed_form_root_error": err,
        })
    if fmt == "json":
        _emit(args, pio.dumps({"conventions": conv.as_dict(), "genera": records}))
    else:
        lines = []
        for r in records:
            lo, hi = r["perron_root"].floats()
            lines.append(f"g={r['genus']}: lambda in [{lo:.15g}, {hi:.15g}] "
                         f"(width {float(r['perron_root'].width):.2g}), log lambda in "
                         f"[{r['log_perron_root'].lo:.15g}, {r['log_perron_root'].hi:.15g}]; "
                         f"bisection agrees: {r['enclosures_overlap']}; closed-form max |root| {r['closed_form_max_root_modulus']:.15g}")
        _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_digraph(args) -> int:
    g = _single_genus(args)
    fmt = _require_format(args, ("text", "json"))
    conv = _conventions(args)
    d = from_matrix(phi_matrix(g, conv.rotation), conv.orientation)
    if fmt == "text":
        _emit(args, d.to_edge_list())
    else:
        edges = [[str(u), str(d.vertices[j]), k] for i, u in enumerate(d.vertices)
                 for j, k in enumerate(d.adjacency[i]) if k]
        _emit(args, pio.dumps({"genus": g, "conventions": conv.as_dict(), "vertices": d.vertices,
                               "edges": edges, "self_loops": self_loop_census(d)}))
    return EXIT_OK


def cmd_mixing(args) -> int:
    fmt = _require_format(args, ("text", "json"))
    conv = _conventions(args)
    records = []
    for g in _construction_genera(args):
        m = phi_matrix(g, conv.rotation)
        d = from_matrix(m, conv.orientation)
        a1 = CurveSystem(g, conv.rotation).curve(Family.A, 1)
        full = [k for k in range(g - 1, 2 * g) if len(exact_length_cover(d, a1, k)) == d.size]
        records.append({"genus": g, "primitivity_exponent": primitivity_exponent(m, 4 * g), "claimed_mixing_number": 2 * g - 1,
                        "a1_full_cover_lengths": full, "a1_covers_all_of_g_minus_1_to_2g_minus_1": len(full) == g + 1,
                        "certificate": "matrix level: all entries of M^r positive"})
    if fmt == "json":
        _emit(args, pio.dumps({"conventions": conv.as_dict(), "genera": records}))
    else:
        _emit(args, "".join(f"g={r['genus']}: primitivity exponent {r['primitivity_exponent']} <= {r['claimed_mixing_number']}; "
                            f"a1 covers every vertex for all k in [g-1, 2g-1]: {r['a1_covers_all_of_g_minus_1_to_2g_minus_1']}\n"
                            for r in records))
    return EXIT_OK


def cmd_bounds(args) -> int:
    fmt = _require_format(args, ("text", "json", "csv"))
    lo, hi = args.genus
    reps = [B.closed_form_bounds(g) for g in range(lo, hi + 1)]
    if fmt == "json":
        _emit(args, pio.dumps({"genera": reps}))
    elif fmt == "csv":
        cols = ("genus", "dil_lower", "dil_upper", "dil_upper_sharp", "ellC_lower", "kappa_upper", "filling_floor", "in_lemma_range")
        rows = [{c: pio.to_jsonable(getattr(r, c)) for c in cols} for r in reps]
        text = ",".join(cols) + "\n" + "".join(",".join(pio._cell(row[c]) for c in cols) + "\n" for row in rows)
        _emit(args, text)
    else:
        lines = []
        for r in reps:
            parts = [f"g={r.genus}", f"kappa_upper={r.kappa_upper!r}", f"ellC_lower={r.ellC_lower}", f"filling_floor={r.filling_floor}"]
            if r.dil_lower is not None:
                parts += [f"dil_lower={r.dil_lower!r}", f"dil_upper={r.dil_upper!r}", f"dil_upper_sharp={r.dil_upper_sharp!r}"]
            parts += r.notes
            lines.append("  ".join(parts))
        _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK


def _sweep_one(job):
    g, conv, tol = job
    return pio.sweep_record(genus_row(g, conv, tol))


def cmd_sweep(args) -> int:
    fmt = _require_format(args, ("csv", "json"))
    genera = _construction_genera(args)
    conv = _conventions(args)
    jobs = [(g, conv, args.tol) for g in genera]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            records = list(pool.map(_sweep_one, jobs))
    else:
        records = [_sweep_one(j) for j in jobs]
    if fmt == "csv":
        _emit(args, pio.sweep_csv(records))
    else:
        _emit(args, pio.dumps({"metadata": {"columns": list(pio.SWEEP_COLUMNS), "conventions": conv.as_dict(),
                                            "tolerance": args.tol}, "rows": records}))
    return EXIT_OK


def _corrupted_closed_form(g: int) -> IntPolynomial:
    # negative control for verify: perturb the constant term
    p = expected_char_poly(g)
    return IntPolynomial((p.coefficients[0] + 1,) + p.coefficients[1:])


def cmd_verify(args) -> int:
    fmt = _require_format(args, ("text", "json"))
    genera = _construction_genera(args)
    conv = _conventions(args)
    expected = _corrupted_closed_form if args.inject_fault == "charpoly" else expected_char_poly
    results = run_verification(genera, conv, expected=expected)
    ok = all_hard_pass(results)
    if fmt == "json":
        _emit(args, pio.dumps({"conventions": conv.as_dict(), "passed": ok, "checks": [r.as_dict() for r in results]}))
    else:
        lines = [r.line() for r in results]
        failed = sorted({f"C{r.criterion} {r.name}" for r in results if r.hard and not r.passed})
        lines.append(f"conventions: rotation={conv.as_dict()['rotation']} ({conv.rotation_source}); "
                     f"orientation={conv.orientation.value} ({conv.orientation_source})")
        lines.append("RESULT: " + ("all checks pass" if ok else "FAILED: " + ", ".join(failed)))
        _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK if ok else EXIT_FAIL


COMMANDS = {
    "matrix": (cmd_matrix, "transition matrix of the monodromy (column u = image of u)"),
    "charpoly": (cmd_charpoly, "exact characteristic polynomial vs the closed form"),
    "spectrum": (cmd_spectrum, "certified Perron root enclosures"),
    "digraph": (cmd_digraph, "digraph as a 'u v multiplicity' edge list"),
    "mixing": (cmd_mixing, "primitivity exponents and exact-length reachability from a1"),
    "bounds": (cmd_bounds, "closed-form dilatation and kappa bounds (g >= 2)"),
    "sweep": (cmd_sweep, "one row per genus with every computed quantity"),
    "verify": (cmd_verify, "run the acceptance checks; exit 1 on any failure"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pafamily", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--genus", type=parse_genus, required=True, metavar="A[..B]")
        p.add_argument("--tol", type=parse_tol, default=DEFAULT_TOL, help="enclosure width (default 1e-10)")
        p.add_argument("--orientation", choices=("auto", "columns", "rows"), default="auto")
        p.add_argument("--rotation", choices=("auto", "plus", "minus"), default="auto")
        p.add_argument("--format", choices=("json", "csv", "text"))
        p.add_argument("--out", help="write here instead of stdout")
        if name == "sweep":
            p.add_argument("--jobs", type=int, default=1, help="worker processes")
        if name == "verify":
            p.add_argument("--inject-fault", choices=("charpoly",), help=argparse.SUPPRESS)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command][0](args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"{parser.prog} {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
