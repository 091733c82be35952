"""Command-line entry point.

Exit codes: 0 success, 1 a mathematical precondition failed, 2 usage error
(including malformed scalars, which are reported with their position).
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

from .conics import ConicError, reconstruct_configuration
from .degenerate import DegenerateError, degenerate_divisor
from .grassmann import GrassmannError, fiber_solve
from .phi import PhiError, phi_sextic
from .plotting import PlotError, plot_configuration, plot_roots, plot_timings
from .polyforms import BinaryForm, PolyError, is_stable, multiple_root_profile, root_profile
from .projective import (GeometryError, Plane, build_configuration, canonical_form, classify_plane,
                         configs_isomorphic)
from .scalars import ScalarError, parse_scalar
from .serialize import configuration_to_dict, dumps, scalar_out

MATH_ERRORS = (GeometryError, PhiError, DegenerateError, GrassmannError, PolyError, ConicError,
               PlotError, ScalarError, ZeroDivisionError)


class UsageError(Exception):
    pass


def parse_vector(text: str, n: int, flag: str):
    parts = text.split(",")
    if len(parts) != n:
        raise UsageError(f"{flag}: expected {n} comma-separated scalars, got {len(parts)}")
    out, col = [], 1
    for k, tok in enumerate(parts, 1):
        try:
            out.append(parse_scalar(tok))
        except ScalarError:
            raise UsageError(f"{flag}: invalid scalar {tok.strip()!r} at position {k} (column {col})")
        col += len(tok) + 1
    return out


def _plane(text, flag="--plane") -> Plane:
    alpha = parse_vector(text, 4, flag)
    if all(a == 0 for a in alpha):
        raise UsageError(f"{flag}: alpha = 0 does not define a plane")
    return Plane(alpha)


def _sextic(text) -> BinaryForm:
    f = BinaryForm(parse_vector(text, 7, "--sextic"))
    if f.is_zero():
        raise UsageError("--sextic: the zero form is not a sextic")
    return f


def _emit(args, text, obj):
    print(dumps(obj) if getattr(args, "json", False) else text)


# ---------------------------------------------------------------------------
# subcommands


def cmd_classify(args):
    P = _plane(args.plane)
    pc = classify_plane(P)
    obj = {"plane": [scalar_out(a) for a in P.alpha], "class": pc.kind,
           "special": ["S" + "".join(map(str, s)) for s in pc.special], "kind": pc.degenerate_kind}
    text = pc.to_text()
    if pc.kind == "degenerate":
        d = degenerate_divisor(P)
        text += "; " + d.to_text()
        obj["divisor"] = {"variant": d.variant, "text": d.to_text(), "semistable": d.semistable,
                          "point": None if d.point is None else [scalar_out(x) for x in d.point.coords],
                          "line": None if d.line is None else [scalar_out(x) for x in d.line]}
    _emit(args, text, obj)


def cmd_config(args):
    # structured output is always JSON so it can be read back
    print(dumps(configuration_to_dict(build_configuration(_plane(args.plane)))))


def cmd_phi(args):
    s = phi_sextic(_plane(args.plane))
    d = s.to_dict()
    text = "\n".join([f"sextic: {d['text']}", f"field: {d['field']}", f"stable: {str(d['stable']).lower()}",
                      f"double roots: {d['double_roots']}", "invariants: " + ", ".join(d["invariants"])])
    _emit(args, text, d)


def cmd_stable(args):
    f = _sextic(args.sextic)
    st = is_stable(f)
    prof = multiple_root_profile(f)
    obj = {"stable": st, "multiple_roots": prof.to_text(), "roots": root_profile(f).to_text()}
    _emit(args, f"{'stable' if st else 'unstable'}; multiple roots: {prof.to_text()}", obj)


def cmd_fiber(args):
    sol = fiber_solve(_sextic(args.sextic))
    lines = [f"total multiplicity {sol.total_multiplicity}" + (" (uncertain)" if sol.uncertain else "")]
    for p, m, r in sol.pencils:
        lines.append(f"  x{m} residual {r:.1e} {p.to_text()}")
    _emit(args, "\n".join(lines), sol.to_dict())


def cmd_iso(args):
    sigma = configs_isomorphic(_plane(args.plane), _plane(args.plane2, "--plane2"))
    text = "none" if sigma is None else str(sigma)
    _emit(args, text, {"permutation": None if sigma is None else str(sigma)})


def cmd_canon(args):
    c = canonical_form(_plane(args.plane))
    _emit(args, c.to_text(), {"canonical": [scalar_out(a) for a in c.alpha]})


def cmd_plot(args):
    P = _plane(args.plane)
    cfg = build_configuration(P)
    plot_configuration(cfg, args.out, title=f"alpha = ({P.to_text()})")
    print(args.out)


def _report(results, out_dir: Path, corrected: bool):
    from . import verification as V
    out_dir.mkdir(parents=True, exist_ok=True)
    with open(out_dir / "verify.tsv", "w", newline="") as fh:
        w = csv.writer(fh, delimiter="\t", lineterminator="\n")
        w.writerow(["criterion", "check", "role", "printed_data", "passed", "seconds", "limit", "note"])
        for r in results:
            for c in r.checks:
                w.writerow([r.number, c.name, c.role, int(c.printed), int(c.passed),
                            f"{r.seconds:.3f}", f"{r.limit:.0f}", c.note])
    ok = (lambda r: r.corrected_passed) if corrected else (lambda r: r.passed)
    plot_timings([(f"C{r.number}", ok(r), r.seconds) for r in results], out_dir / "timings.svg")
    plot_roots({"j0": root_profile(V.jacobian_pencil(*[V._q(x) for x in V.EX52["p1"]])),
                "j1": root_profile(V.J1), "j3": root_profile(V.J3), "j5": root_profile(V.J5)},
               out_dir / "sextic_roots.svg", title="roots t1/t0 of the example sextics")
    written = ["verify.tsv", "timings.svg", "sextic_roots.svg"]
    cfg = build_configuration(Plane([1, 2, 3, 4]))
    plot_configuration(cfg, out_dir / "config_1_2_3_4.svg", title="alpha = (1,2,3,4)")
    written.append("config_1_2_3_4.svg")
    try:
        rec = reconstruct_configuration(*[V._q(x) for x in V.EX53_PENCIL2])
        plot_configuration(rec, out_dir / "config_j1_reconstruction.svg", title="reconstruction over j1")
        written.append("config_j1_reconstruction.svg")
    except PlotError:
        pass  # complex reconstruction: nothing to draw
    return written


def cmd_verify(args):
    from . import verification as V
    scale = 0.1 if args.quick else 1.0
    results = V.run_all(scale, progress=lambda r: print(r.line(), flush=True))
    ok = all(r.corrected_passed if args.corrected else r.passed for r in results)
    total = sum(r.seconds for r in results)
    c11 = ok and total < 600
    print(f"criterion 11 {'PASS' if c11 else 'FAIL'} {total:7.2f}s/600s  aggregate of criteria 1-10"
          + (" (corrected data)" if args.corrected else ""))
    if args.report:
        for name in _report(results, Path(args.report), args.corrected):
            print(f"wrote {Path(args.report) / name}")
    return 0 if c11 else 1


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="desargues", description="Desargues configurations and binary sextics")
    sub = ap.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name, fn, help_, plane=False, sextic=False, json_flag=True):
        p = sub.add_parser(name, help=help_)
        if plane:
            p.add_argument("--plane", required=True, help="a1,a2,a3,a4 (p/q, u+v*sqrt(d) or a+bi)")
        if sextic:
            p.add_argument("--sextic", required=True, help="c0,...,c6 (coefficient of t0^(6-k) t1^k)")
        if json_flag:
            p.add_argument("--json", action="store_true", help="JSON output")
        p.set_defaults(func=fn)
        return p

    add("classify", cmd_classify, "plane class and degenerate divisor", plane=True)
    add("config", cmd_config, "the configuration as JSON", plane=True, json_flag=False)
    add("phi", cmd_phi, "the sextic of a plane", plane=True)
    add("stable", cmd_stable, "stability and multiple roots of a sextic", sextic=True)
    add("fiber", cmd_fiber, "pencils with a given Jacobian", sextic=True)
    p = add("iso", cmd_iso, "permutation relating two planes", plane=True)
    p.add_argument("--plane2", required=True)
    add("canon", cmd_canon, "canonical representative of the S5 orbit", plane=True)
    p = add("verify-paper", cmd_verify, "run the acceptance suite", json_flag=False)
    p.add_argument("--report", metavar="DIR", help="write verify.tsv and SVG figures to DIR")
    p.add_argument("--corrected", action="store_true",
                   help="judge checks on printed example data by their recomputed counterparts")
    p.add_argument("--quick", action="store_true", help="10%% sample sizes")
    p = add("plot", cmd_plot, "SVG drawing of the configuration", plane=True, json_flag=False)
    p.add_argument("--out", required=True, metavar="FILE")
    return ap


VECTOR_FLAGS = ("--plane", "--plane2", "--sextic")


def _attach_values(argv):
    """``--plane -1,2,3,4`` -> ``--plane=-1,2,3,4`` so argparse does not read a flag."""
    out, it = [], iter(argv)
    for tok in it:
        if tok in VECTOR_FLAGS:
            nxt = next(it, None)
            if nxt is not None and nxt.startswith("-") and not nxt.startswith("--"):
                out.append(f"{tok}={nxt}")
                continue
            out.append(tok)
            if nxt is not None:
                out.append(nxt)
            continue
        out.append(tok)
    return out


def run(argv=None) -> int:
    ap = build_parser()
    argv = _attach_values(sys.argv[1:] if argv is None else list(argv))
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        rc = args.func(args)
    except UsageError as exc:
        print(f"desargues {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except MATH_ERRORS as exc:
        print(f"desargues {args.command}: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"desargues {args.command}: {exc}", file=sys.stderr)
        return 1
    return int(rc or 0)


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
