"""Command-line interface and output formats (text, LaTeX, JSON).

Exit codes: 0 success, 1 usage error, 2 internal mathematical inconsistency,
3 verification mismatch.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .engine import (
    CoefficientQuery,
    CombinedResult,
    SplitResult,
    coefficient_combined,
    coefficient_split,
    combine_sum,
    constant_term_identity,
    equivalent,
)
from .errors import InternalInconsistency, UsageError
from .exactalg import Atom, QPoly, RationalQZ, ZqMonomial, ZqPoly
from .latticepoints import best_shift, enumerate_evaluation_set
from .oracle import (
    SweepConfig,
    VerificationReport,
    default_jobs,
    sweep,
    verify_query,
)
from .qpochhammer import q_multinomial_numeric
from .symforms import AffineForm

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INCONSISTENT = 2
EXIT_MISMATCH = 3


# ---------------------------------------------------------------- rendering


def _mono_str(qexp: int, zexp: Sequence[int], latex: bool) -> str:
    factors = []
    if qexp:
        if latex:
            factors.append("q" if qexp == 1 else f"q^{{{qexp}}}")
        else:
            factors.append("q" if qexp == 1 else f"q^{qexp}")
    for i, e in enumerate(zexp):
        if not e:
            continue
        if latex:
            base = f"z_{{{i + 1}}}"
            factors.append(base if e == 1 else f"{base}^{{{e}}}")
        else:
            base = f"z{i + 1}"
            factors.append(base if e == 1 else f"{base}^{e}")
    if not factors:
        return "1"
    return (" " if latex else "*").join(factors)


def _zqpoly_str(poly: ZqPoly, latex: bool) -> str:
    if poly.is_zero():
        return "0"
    parts = []
    for (qe, ze), c in poly.items():
        mono = _mono_str(qe, ze, latex)
        if mono == "1":
            body = str(abs(c))
        elif abs(c) == 1:
            body = mono
        else:
            body = f"{abs(c)}{' ' if latex else '*'}{mono}"
        parts.append(("- " if c < 0 else "+ ") + body)
    out = " ".join(parts)
    return out[2:] if out.startswith("+ ") else "-" + out[2:]


def _atom_str(atom: Atom, mult: int, latex: bool) -> str:
    body = f"1 - {_mono_str(atom.qexp, atom.zexp, latex)}"
    if latex:
        return f"\\left({body}\\right)" + (f"^{{{mult}}}" if mult > 1 else "")
    return f"({body})" + (f"^{mult}" if mult > 1 else "")


def render_rational(r: RationalQZ, latex: bool = False) -> str:
    """Human-readable sign * unit * numer / atoms form."""
    if r.is_zero():
        return "0"
    sign = "-" if r.sign < 0 else ""
    unit = _mono_str(r.unit.qexp, r.unit.zexp, latex)
    numer = _zqpoly_str(r.numer, latex)
    num_parts = []
    if unit != "1":
        num_parts.append(unit)
    if numer != "1" or not num_parts:
        num_parts.append(numer if len(numer.split()) == 1 else f"({numer})")
    num = (" " if latex else " * ").join(num_parts)
    if not r.denom:
        return f"{sign}{num}"
    den = " ".join(_atom_str(a, m, latex) for a, m in r.denom)
    if latex:
        return f"{sign}\\frac{{{num}}}{{{den}}}"
    return f"{sign}{num} / ({den})"


def render_multinomial(n: int, latex: bool = False) -> str:
    names = [f"a{i + 1}" for i in range(n)]
    if latex:
        tot = "+".join(f"a_{{{i + 1}}}" for i in range(n))
        dens = " ".join(f"(q)_{{a_{{{i + 1}}}}}" for i in range(n))
        return f"\\frac{{(q)_{{{tot}}}}}{{{dens}}}"
    return f"qMultinomial({','.join(names)})"


def _affine_json(form: AffineForm) -> dict:
    return {"c0": form.constant, "a": list(form.coeffs)}


def formula_json(r: RationalQZ, meta: dict | None = None) -> dict:
    out = {
        "sign": r.sign,
        "unit": {"q": r.unit.qexp, "z": list(r.unit.zexp)},
        "numer": [
            {"q": qe, "z": list(ze), "c": c} for (qe, ze), c in r.numer.items()
        ],
        "denom": [
            {"q": atom.qexp, "z": list(atom.zexp), "mult": mult}
            for atom, mult in r.denom
        ],
    }
    if meta is not None:
        out["meta"] = meta
    return out


def formula_from_json(obj: dict) -> RationalQZ:
    n = len(obj["unit"]["z"])
    numer = ZqPoly(
        n,
        [((t["q"], tuple(t["z"])), t["c"]) for t in obj["numer"]],
    )
    denom = tuple(
        (Atom(t["q"], tuple(t["z"])), t["mult"]) for t in obj["denom"]
    )
    return RationalQZ(
        sign=obj["sign"],
        unit=ZqMonomial(obj["unit"]["q"], tuple(obj["unit"]["z"])),
        numer=numer,
        denom=denom,
    )


def dumps_canonical(obj: dict) -> str:
    return json.dumps(obj, separators=(",", ":")) + "\n"


def _qpoly_json(p: QPoly) -> list:
    return [[e, c] for e, c in p.items()]


def split_json(split: SplitResult) -> dict:
    return {
        "terms": [
            {
                "point": {
                    "pi": list(pt.pi),
                    "m": list(pt.m),
                    "alpha": [_affine_json(f) for f in pt.alpha],
                },
                "formula": formula_json(r),
            }
            for pt, r in split.terms
        ],
        "meta": {
            "delta": list(split.delta),
            "shift": list(split.shift_used),
            "points": len(split.terms),
        },
    }


def report_json(rep: VerificationReport) -> dict:
    return {
        "delta": list(rep.delta),
        "a": list(rep.a),
        "shift": list(rep.shift) if not isinstance(rep.shift, str) else rep.shift,
        "match": rep.match,
        "engine": {
            "num": _qpoly_json(rep.engine_numer),
            "den": _qpoly_json(rep.engine_denom),
        },
        "oracle": _qpoly_json(rep.oracle_coeff),
        "seconds": round(rep.seconds, 6),
        "error": rep.error,
    }


# ------------------------------------------------------------------ parsing


def parse_int_vector(text: str, name: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"--{name} must be a comma-separated integer list")


def parse_shift(text: str, n: int):
    if text in ("auto", "best"):
        return "best"
    if text == "zero":
        return "zero"
    vec = parse_int_vector(text, "shift")
    if len(vec) != n:
        raise UsageError(f"--shift vector must have length {n}")
    return vec


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # map argparse failures onto exit code 1
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qdyson", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, delta=False, fmt=True):
        if delta:
            p.add_argument("--delta", required=True, help="comma-separated integers")
        if fmt:
            p.add_argument(
                "--format", choices=("text", "latex", "json"), default="text"
            )
        p.add_argument("--out", default=None, help="write output to this path")

    p = sub.add_parser("coeff", help="compute the rational factor R for delta")
    add_common(p, delta=True)
    p.add_argument("--shift", default="auto", help="auto | zero | c1,c2,...")
    p.add_argument("--radius", type=int, default=None)
    p.add_argument("--split", action="store_true", help="one term per point")
    p.add_argument(
        "--cross-check-shifts",
        action="store_true",
        help="recompute under other shifts and require equivalence",
    )

    p = sub.add_parser("constant-term", help="the delta = 0 case; R must be 1")
    p.add_argument("--n", type=int, required=True)
    add_common(p)

    p = sub.add_parser("best-shift", help="minimize the evaluation-set size")
    add_common(p, delta=True)
    p.add_argument("--radius", type=int, default=None)

    p = sub.add_parser("verify", help="compare against the brute-force oracle")
    add_common(p, delta=True)
    p.add_argument("--a", required=True, help="comma-separated positive integers")
    p.add_argument("--shift", default="auto")

    p = sub.add_parser("sweep", help="exhaustive oracle comparison at desk scale")
    p.add_argument("--n", default="2,3", help="comma-separated variable counts")
    p.add_argument("--a-max", type=int, default=2)
    p.add_argument("--delta-budget", type=int, default=2)
    p.add_argument("--jobs", type=int, default=None)
    add_common(p)

    p = sub.add_parser("article", help="self-contained theorem + computation trace")
    add_common(p, delta=True)
    p.add_argument("--shift", default="auto")
    p.add_argument("--radius", type=int, default=None)
    return parser


# ----------------------------------------------------------------- commands


def _emit(body: str, out_path: str | None) -> None:
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(body)
    else:
        sys.stdout.write(body)


def _check_delta(delta: tuple[int, ...]) -> None:
    if len(delta) < 1:
        raise UsageError("--delta must be nonempty")


def _formula_text(result: CombinedResult, latex: bool) -> str:
    n = len(result.delta)
    lines = [
        f"delta: {list(result.delta)}",
        f"shift: {list(result.shift_used)}",
        f"points: {result.point_count}",
        f"R = {render_rational(result.rational, latex)}",
        f"coefficient = R * {render_multinomial(n, latex)}",
    ]
    return "\n".join(lines) + "\n"


def cmd_coeff(args) -> int:
    delta = parse_int_vector(args.delta, "delta")
    _check_delta(delta)
    n = len(delta)
    shift = parse_shift(args.shift, n)
    note = ""
    if sum(delta) != 0:
        note = "note: delta does not sum to zero; the coefficient is 0\n"
    query = CoefficientQuery(delta=delta, shift=shift, radius=args.radius)
    split = coefficient_split(query)
    result = CombinedResult(
        rational=combine_sum([r for _, r in split.terms], n),
        shift_used=split.shift_used,
        point_count=len(split.terms),
        delta=delta,
    )
    if args.cross_check_shifts and sum(delta) == 0:
        alternates = ["zero", "best", (1,) * n, (0,) + (1,) * (n - 1)]
        for alt in alternates:
            other = coefficient_combined(CoefficientQuery(delta=delta, shift=alt))
            if not equivalent(result.rational, other.rational):
                _emit(
                    f"shift cross-check failed under shift {alt}\n", args.out
                )
                return EXIT_MISMATCH
    meta = {
        "delta": list(delta),
        "shift": list(result.shift_used),
        "points": result.point_count,
    }
    if args.split:
        if args.format == "json":
            body = dumps_canonical(split_json(split))
        else:
            latex = args.format == "latex"
            lines = [f"delta: {list(delta)}", f"shift: {list(split.shift_used)}"]
            for k, (pt, r) in enumerate(split.terms):
                lines.append(
                    f"term {k + 1}: pi={list(pt.pi)} m={list(pt.m)} "
                    f"R_k = {render_rational(r, latex)}"
                )
            lines.append(f"total terms: {len(split.terms)}")
            body = note + "\n".join(lines) + "\n"
    elif args.format == "json":
        body = dumps_canonical(formula_json(result.rational, meta))
    else:
        body = note + _formula_text(result, latex=args.format == "latex")
    _emit(body, args.out)
    return EXIT_OK


def cmd_constant_term(args) -> int:
    if args.n < 1:
        raise UsageError("--n must be a positive integer")
    result = constant_term_identity(args.n)
    if args.format == "json":
        meta = {
            "delta": list(result.delta),
            "shift": list(result.shift_used),
            "points": result.point_count,
        }
        body = dumps_canonical(formula_json(result.rational, meta))
    else:
        body = _formula_text(result, latex=args.format == "latex")
    _emit(body, args.out)
    return EXIT_OK


def cmd_best_shift(args) -> int:
    delta = parse_int_vector(args.delta, "delta")
    _check_delta(delta)
    if sum(delta) != 0:
        raise UsageError("--delta must sum to zero for best-shift")
    shift, size = best_shift(delta, args.radius)
    if args.format == "json":
        body = dumps_canonical(
            {"delta": list(delta), "shift": list(shift), "size": size}
        )
    else:
        body = f"delta: {list(delta)}\nshift: {list(shift)}\nsize: {size}\n"
    _emit(body, args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    delta = parse_int_vector(args.delta, "delta")
    _check_delta(delta)
    a = parse_int_vector(args.a, "a")
    if len(a) != len(delta):
        raise UsageError("--a must have the same length as --delta")
    if any(x < 1 for x in a):
        raise UsageError("--a entries must be >= 1")
    shift = parse_shift(args.shift, len(delta))
    report = verify_query(delta, a, shift=shift)
    if args.format == "json":
        body = dumps_canonical(report_json(report))
    else:
        status = "match" if report.match else "MISMATCH"
        lines = [
            f"delta: {list(delta)}  a: {list(a)}  -> {status}",
            f"engine: ({report.engine_numer}) / ({report.engine_denom})",
            f"oracle: {report.oracle_coeff}",
        ]
        if report.error:
            lines.append(f"error: {report.error}")
        body = "\n".join(lines) + "\n"
    _emit(body, args.out)
    return EXIT_OK if report.match else EXIT_MISMATCH


def cmd_sweep(args) -> int:
    n_range = parse_int_vector(args.n, "n")
    jobs = args.jobs if args.jobs is not None else default_jobs()
    config = SweepConfig(
        n_range=n_range,
        a_max=args.a_max,
        delta_budget=args.delta_budget,
        jobs=jobs,
    )
    reports = sweep(config)
    failures = [r for r in reports if not r.match]
    if args.format == "json":
        body = dumps_canonical(
            {
                "total": len(reports),
                "failures": len(failures),
                "reports": [report_json(r) for r in reports],
            }
        )
    else:
        lines = [
            f"{'ok ' if r.match else 'FAIL'} delta={list(r.delta)} "
            f"a={list(r.a)} shift={r.shift}"
            for r in reports
        ]
        lines.append(f"total: {len(reports)}  failures: {len(failures)}")
        body = "\n".join(lines) + "\n"
    _emit(body, args.out)
    return EXIT_OK if not failures else EXIT_MISMATCH


def cmd_article(args) -> int:
    delta = parse_int_vector(args.delta, "delta")
    _check_delta(delta)
    n = len(delta)
    if sum(delta) != 0:
        raise UsageError("--delta must sum to zero for article output")
    shift = parse_shift(args.shift, n)
    latex = args.format == "latex"
    query = CoefficientQuery(delta=delta, shift=shift, radius=args.radius)
    split = coefficient_split(query)
    result = coefficient_combined(query)
    evalset = enumerate_evaluation_set(delta, split.shift_used)

    lines = []
    lines.append("Theorem.")
    lines.append(
        f"  The coefficient of "
        + " ".join(f"x{i + 1}^{d}" for i, d in enumerate(delta))
        + " in the q-Dyson product in "
        + f"{n} variables equals R * {render_multinomial(n, latex)}, where"
    )
    lines.append(f"  R = {render_rational(result.rational, latex)}")
    lines.append("")
    lines.append(f"Evaluation set (shift {list(split.shift_used)}):")
    for k, pt in enumerate(evalset.points):
        alpha = ", ".join(str(f) for f in pt.alpha)
        lines.append(f"  point {k + 1}: pi={list(pt.pi)} m={list(pt.m)} alpha=({alpha})")
    lines.append("")
    lines.append("Per-point rational summands:")
    for k, (pt, r) in enumerate(split.terms):
        lines.append(f"  R_{k + 1} = {render_rational(r, latex)}")
    lines.append("")
    lines.append("Verification appendix:")
    for sample in ((1,) * n, (2,) * n):
        rep = verify_query(delta, sample, shift=shift, rational=result.rational)
        status = "match" if rep.match else "MISMATCH"
        lines.append(
            f"  a = {list(sample)}: coefficient = {rep.oracle_coeff}  [{status}]"
        )
        if not rep.match:
            _emit("\n".join(lines) + "\n", args.out)
            return EXIT_MISMATCH
    body = "\n".join(lines) + "\n"
    _emit(body, args.out)
    return EXIT_OK


_COMMANDS = {
    "coeff": cmd_coeff,
    "constant-term": cmd_constant_term,
    "best-shift": cmd_best_shift,
    "verify": cmd_verify,
    "sweep": cmd_sweep,
    "article": cmd_article,
}


def run_command(argv: Sequence[str]) -> int:
    """Dispatch one CLI invocation; returns the exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args)
    except UsageError as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    except InternalInconsistency as exc:
        sys.stderr.write(f"internal inconsistency: {exc}\n")
        return EXIT_INCONSISTENT


def main() -> None:
    sys.exit(run_command(sys.argv[1:]))


if __name__ == "__main__":
    main()
