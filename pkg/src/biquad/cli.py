"""Command line: ``python -m biquad <command>``.

Exit codes: 0 success, 2 unreadable input or invalid parameters,
3 the form takes negative values (witness printed), 4 a pipeline stage
contradicted the expected outcome.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import asdict, dataclass, field, replace
from fractions import Fraction

import numpy as np

from .composites import (InvalidTranslationError, arithmetic_mean_bound, check_translation,
                         harmonic_mean_bound, loewner_leq, translation_bound)
from .extremality import decide_strong_extremal_3x3, decide_weak_extremal
from .family import (DegenerateFamilyError, bs_form, bs_validity, bs_zero_set, interpolation_problem,
                     reference_x_matrix)
from .forms import Biquadratic, evaluate, gradient, x_matrix
from .io import (ParseError, biquadratic_document, parse_biquadratic, parse_sextic, parse_two_phase,
                 write_json)
from .linalg import DEFAULT_TOL, Tolerances
from .numerics import NotNonnegativeError, min_on_spheres, sextic_zero_search, zero_search
from .sextics import (classify_singularity, decide_sextic_extremality, delta_sum, det_x_matrix,
                      hessian_rank_at)

EXIT_OK, EXIT_PARSE, EXIT_NEGATIVE, EXIT_FAIL = 0, 2, 3, 4
COUNTEREXAMPLE_GRID = 100_000


@dataclass
class RunReport:
    command: str
    inputs: dict
    verdicts: dict = field(default_factory=dict)
    grades: dict = field(default_factory=dict)
    tolerances: dict = field(default_factory=dict)
    wall_time: float = 0.0
    exit_code: int = EXIT_OK
    lines: list = field(default_factory=list)

    def to_json(self) -> str:
        d = asdict(self)
        d.pop("lines")
        return json.dumps(d, indent=2, default=str)

    def say(self, *parts):
        self.lines.append(" ".join(str(p) for p in parts))


def _tol_dict(tol: Tolerances) -> dict:
    return asdict(tol)


def _q(v) -> str:
    return str(Fraction(v)) if isinstance(v, (int, Fraction)) else f"{float(v):.6g}"


def _vec(v) -> str:
    return "(" + ", ".join(_q(c) for c in v) + ")"


def _negative(report: RunReport, exc: NotNonnegativeError) -> RunReport:
    report.exit_code = EXIT_NEGATIVE
    report.verdicts["nonnegative"] = False
    report.grades["nonnegative"] = "exact" if exc.exact else "numeric"
    if exc.witness is not None:
        wit = [[str(c) for c in part] for part in exc.witness] if isinstance(exc.witness[0], tuple) \
            else [str(c) for c in exc.witness]
        report.verdicts["negative_witness"] = wit
    report.verdicts["negative_value"] = exc.value
    report.say("form is NOT nonnegative; witness", report.verdicts.get("negative_witness"),
               "value", exc.value)
    return report


# analyze ------------------------------------------------------------------


def cmd_analyze(path, tol: Tolerances = DEFAULT_TOL) -> RunReport:
    report = RunReport("analyze", {"file": str(path)}, tolerances=_tol_dict(tol))
    F = parse_biquadratic(path)
    report.inputs.update(n=F.n, m=F.m)
    res = min_on_spheres(F, tol)
    if res.value < -tol.zero_tol * res.scale:
        return _negative(report, NotNonnegativeError("negative", res.negative_witness, res.value,
                                                     res.exact_negative))
    report.verdicts["nonnegative"] = True
    report.grades["nonnegative"] = "numeric"
    report.say(f"min on spheres  {res.value:.3e}  (scale {res.scale:g})")
    if F.is_zero():
        report.verdicts["weak_extremal"] = "not_weak_extremal"
        report.say("zero form: not extremal")
        return report
    try:
        search = zero_search(F, tol)
    except NotNonnegativeError as exc:
        return _negative(report, exc)
    report.verdicts["zeros"] = len(search.zeros)
    report.grades["zeros"] = sorted({z.grade for z in search.zeros})
    report.verdicts["zero_search"] = search.evidence.as_dict()
    report.say(f"zeros found     {len(search.zeros)}  exhaustive={search.evidence.exhaustive}")
    for z in search.zeros:
        report.say(f"  x={_vec(z.x)}  y={_vec(z.y)}  kernel dim {z.kernel_dim}  [{z.grade}]")
    weak = decide_weak_extremal(F, search.zeros, tol)
    report.verdicts["weak"] = weak.as_dict()
    report.verdicts["dim_LF"] = weak.dim
    report.grades["weak"] = weak.grade
    report.say(f"dim L_F         {weak.dim} / {F.n * F.m}  [{weak.lf.grade}]")
    report.say(f"weak            {weak.status}")
    if weak.witness_M is not None and weak.witness_alpha is not None:
        report.say(f"  witness M = {[[_q(v) for v in row] for row in weak.witness_M.tolist()]}")
        report.say(f"  alpha = {weak.witness_alpha}  min(F - alpha <x,My>^2) = {weak.witness_min:.3e}")
    if (F.n, F.m) == (3, 3):
        strong = decide_strong_extremal_3x3(F, search.zeros, tol)
        report.verdicts["strong"] = {"status": strong.status, "reason": strong.reason}
        report.grades["strong"] = weak.grade
        report.say(f"strong          {strong.status}  ({strong.reason})")
    for note in weak.notes:
        report.say("note:", note)
    return report


# family -------------------------------------------------------------------


def cmd_family(p, q, tol: Tolerances = DEFAULT_TOL, verify_paper_matrix: bool = False,
               output=None) -> RunReport:
    p, q = Fraction(p), Fraction(q)
    report = RunReport("family", {"p": str(p), "q": str(q), "verify_matrix": verify_paper_matrix},
                       tolerances=_tol_dict(tol))
    valid = bs_validity(p, q)
    report.verdicts["valid_parameters"] = valid
    report.grades["valid_parameters"] = "exact"
    report.say(f"parameters (p, q) = ({p}, {q})  valid: {valid}")
    prob = interpolation_problem(bs_zero_set(p, q))
    report.verdicts["nullspace_dim"] = len(prob.nullspace)
    report.grades["nullspace_dim"] = "exact"
    report.say(f"interpolation nullspace dimension {len(prob.nullspace)}")
    if not valid:
        report.exit_code = EXIT_PARSE
        report.say("parameters outside the validity region; no form emitted")
        return report
    try:
        F = bs_form(p, q, tol)
    except DegenerateFamilyError as exc:
        report.exit_code = EXIT_FAIL
        report.verdicts["error"] = str(exc)
        report.say("error:", exc)
        return report
    report.verdicts["form"] = biquadratic_document(F)
    report.say("form:", F)
    T = x_matrix(F)
    for a in range(3):
        report.say(f"  T[{a}] = " + ",  ".join(T.entries[a][b].to_string(["x0", "x1", "x2"]) for b in range(3)))
    if verify_paper_matrix:
        if (p, q) != (Fraction(1, 2), Fraction(3, 4)):
            report.verdicts["matrix_match"] = "not_applicable"
            report.say("reference matrix is only defined at (1/2, 3/4)")
        else:
            scale = T.equal_up_to_positive_scale(reference_x_matrix())
            report.verdicts["matrix_match"] = scale is not None
            report.verdicts["matrix_scale"] = None if scale is None else str(scale)
            report.grades["matrix_match"] = "exact"
            report.say(f"reference x-matrix match: {scale is not None}  (scale {scale})")
            if scale is None:
                report.exit_code = EXIT_FAIL
    if output:
        write_json(biquadratic_document(F), output)
        report.say("written to", output)
    return report


# counterexample -----------------------------------------------------------


def _stage(report: RunReport, name: str, ok: bool, detail: str, grade: str = "exact"):
    report.verdicts.setdefault("stages", []).append({"stage": name, "ok": ok, "detail": detail, "grade": grade})
    report.say(f"[{'ok' if ok else 'FAIL'}] {name}: {detail}")
    return ok


def _fail(report: RunReport) -> RunReport:
    report.verdicts["reproduction"] = "FAIL"
    report.exit_code = EXIT_FAIL
    report.say("reproduction FAIL")
    return report


def cmd_counterexample(tol: Tolerances = DEFAULT_TOL, perturb: int | None = None) -> RunReport:
    """Strong extremal F whose acoustic determinant is not extremal."""
    p, q = Fraction(1, 2), Fraction(3, 4)
    report = RunReport("counterexample", {"p": str(p), "q": str(q), "perturb": perturb},
                       tolerances=_tol_dict(tol))
    F = bs_form(p, q, tol, check_nonnegative=False)
    if perturb is not None:
        if not 0 <= perturb < len(F.coeffs):
            raise ParseError(f"--perturb must lie in [0, {len(F.coeffs)})")
        c = list(F.coeffs)
        c[perturb] += 1
        F = Biquadratic(F.n, F.m, tuple(c))
    S = bs_zero_set(p, q)

    res = min_on_spheres(F, tol)
    if not _stage(report, "nonnegativity", res.value >= -tol.zero_tol * res.scale,
                  f"min on spheres {res.value:.3e}", "numeric"):
        report.verdicts["negative_witness"] = [[str(c) for c in part] for part in res.negative_witness]
        return _fail(report)

    bad = [i for i, (x, y) in enumerate(S) if evaluate(F, x, y) != 0 or any(g != 0 for g in gradient(F, x, y))]
    if not _stage(report, "nine zeros", not bad,
                  "F = 0 and grad F = 0 at all 9 pairs" if not bad else f"fails at pairs {bad}"):
        return _fail(report)

    search = zero_search(F, tol, known=S)
    strong = decide_strong_extremal_3x3(F, search.zeros, tol)
    report.verdicts["strong"] = {"status": strong.status, "reason": strong.reason,
                                 "dim_LF": None if strong.weak is None else strong.weak.dim}
    dim = None if strong.weak is None else strong.weak.dim
    if not _stage(report, "strong extremality", strong.status == "strong_extremal",
                  f"{strong.status}, dim L_F = {dim}, zeros {len(search.zeros)}",
                  "exact" if strong.weak is not None and strong.weak.grade == "exact" else "numeric"):
        return _fail(report)

    f = det_x_matrix(F)
    xs = [x for x, _ in S]
    reports, detail = [], []
    for x in xs:
        if f(list(x)) != 0:
            _stage(report, "projected zeros", False, f"det T does not vanish at {_vec(x)}")
            return _fail(report)
        r = hessian_rank_at(f, x)
        rep = classify_singularity(f, x, tol)
        reports.append(rep)
        detail.append((r, rep.type))
    ok = all(r == 2 and t == "A1" for r, t in detail)
    report.verdicts["singularities"] = [r.as_dict() for r in reports]
    report.say("  det T(x) =", f.to_string(["x0", "x1", "x2"]))
    for x, (r, t) in zip(xs, detail):
        report.say(f"  {_vec(x):<22} Hessian rank {r}  {t}")
    if not _stage(report, "projected zeros", ok, "det T = 0, Hessian rank 2, A1 at all 9 x-projections"):
        return _fail(report)

    stol = tol if tol.grid_density != DEFAULT_TOL.grid_density else replace(tol, grid_density=COUNTEREXAMPLE_GRID)
    report.tolerances["sextic_grid_density"] = stol.grid_density
    ss = sextic_zero_search(f, stol, known=xs)
    ev = ss.evidence
    report.verdicts["tenth_zero_search"] = ev.as_dict()
    margin = ev.outside_min
    _stage(report, "tenth zero search", ev.exhaustive and ev.extra_zeros == 0,
           f"grid {ev.grid_density}, extra zeros {ev.extra_zeros}, normalized min outside "
           f"radius {ev.exclusion_radius}: {margin:.3e}", "numeric")

    verdict = decide_sextic_extremality(f, reports, ev)
    report.verdicts["sextic"] = verdict.as_dict()
    report.grades["sextic"] = "numeric"
    report.say(f"det T(x): {verdict.status} ({verdict.reason}), delta sum {verdict.delta_sum}")
    if verdict.status == "not_extremal":
        report.verdicts["reproduction"] = "PASS"
        report.say("reproduction PASS: F is strong extremal and det T(x) is not extremal")
    elif verdict.status == "inconclusive":
        report.verdicts["reproduction"] = "INCONCLUSIVE"
        report.say("reproduction INCONCLUSIVE: tenth-zero evidence too weak (raise --grid)")
    else:
        return _fail(report)
    return report


# sextic -------------------------------------------------------------------


def cmd_sextic(path, tol: Tolerances = DEFAULT_TOL, not_sos: str = "unknown") -> RunReport:
    report = RunReport("sextic", {"file": str(path), "not_sos": not_sos}, tolerances=_tol_dict(tol))
    f = parse_sextic(path)
    report.say("f =", f.to_string(["x", "y", "z"]))
    try:
        ss = sextic_zero_search(f, tol)
    except NotNonnegativeError as exc:
        return _negative(report, exc)
    reports = []
    for z, g in zip(ss.zeros, ss.grades):
        try:
            reports.append(classify_singularity(f, z, tol))
        except ValueError as exc:
            report.say(f"  could not classify {_vec(z)}: {exc}")
    if len(reports) != len(ss.zeros):
        report.exit_code = EXIT_FAIL
        report.verdicts["error"] = "some zeros could not be classified"
        return report
    report.verdicts["singularities"] = [r.as_dict() for r in reports]
    report.grades["singularities"] = [r.grade for r in reports]
    report.say(f"{'point':<34} rank  type        delta  grade")
    for r in reports:
        report.say(f"{_vec(r.point):<34} {r.hessian_rank:<5} {r.type:<11} {str(r.delta):<6} {r.grade}")
    report.verdicts["delta_sum"] = delta_sum(reports)
    report.verdicts["zero_search"] = ss.evidence.as_dict()
    v = decide_sextic_extremality(f, reports, ss.evidence, not_sos)
    report.verdicts["extremality"] = v.as_dict()
    report.grades["extremality"] = "numeric"
    report.say(f"delta sum {v.delta_sum};  verdict {v.status} ({v.reason})")
    return report


# bounds -------------------------------------------------------------------


def _fmt_matrix(A) -> list[list[str]]:
    return [[_q(v) for v in row] for row in np.asarray(A).tolist()]


def cmd_bounds(path, tol: Tolerances = DEFAULT_TOL) -> RunReport:
    report = RunReport("bounds", {"file": str(path)}, tolerances=_tol_dict(tol))
    tp, T = parse_two_phase(path)
    report.inputs.update(n=tp.n, theta1=str(tp.theta1), theta2=str(tp.theta2), translation=T is not None)
    grade = "exact" if tp.exact else "numeric"
    AM = arithmetic_mean_bound(tp)
    HM = harmonic_mean_bound(tp)
    report.verdicts["AM"] = _fmt_matrix(AM)
    report.verdicts["HM"] = _fmt_matrix(HM)
    report.verdicts["HM<=AM"] = loewner_leq(HM, AM)
    report.grades.update(AM=grade, HM=grade)
    report.say("AM =", report.verdicts["AM"])
    report.say("HM =", report.verdicts["HM"])
    report.say("HM <= AM:", report.verdicts["HM<=AM"])
    check = check_translation(tp, T, tol)
    report.verdicts["translation_check"] = check.as_dict()
    report.grades["translation_quasiconvex"] = check.quasiconvex_grade
    report.say(f"translation valid: {check.valid}  (C_i - T pd: {check.phases_pd}, quasiconvex: "
               f"{check.quasiconvex} [{check.quasiconvex_grade}])")
    for w in check.warnings:
        report.say("warning:", w)
    if check.valid:
        try:
            TB = translation_bound(tp, T, check=False)
        except InvalidTranslationError as exc:  # pragma: no cover
            report.say("error:", exc)
            report.exit_code = EXIT_FAIL
            return report
        report.verdicts["TB"] = _fmt_matrix(TB)
        report.verdicts["HM<=TB"] = loewner_leq(HM, TB)
        report.verdicts["TB<=AM"] = loewner_leq(TB, AM)
        report.grades["TB"] = "exact" if TB.dtype == object else "numeric"
        report.say("TB =", report.verdicts["TB"])
        report.say("HM <= TB:", report.verdicts["HM<=TB"], "  TB <= AM:", report.verdicts["TB<=AM"])
    return report


# entry point --------------------------------------------------------------


def _tolerances(args) -> Tolerances:
    kw = {}
    if args.tol is not None:
        kw["zero_tol"] = args.tol
    if args.grid is not None:
        kw["grid_density"] = args.grid
    if args.seed is not None:
        kw["seed"] = args.seed
    return replace(DEFAULT_TOL, **kw)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, help="zero tolerance, relative to the largest coefficient")
    common.add_argument("--grid", type=int, help="lattice points for sphere searches")
    common.add_argument("--seed", type=int)
    common.add_argument("--json", action="store_true", help="print the report as JSON")

    ap = argparse.ArgumentParser(prog="biquad", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)
    a = sub.add_parser("analyze", parents=[common], help="nonnegativity, zeros and extremality of a biquadratic")
    a.add_argument("file")
    f = sub.add_parser("family", parents=[common], help="nine-zero family member at rational (p, q)")
    f.add_argument("p")
    f.add_argument("q")
    f.add_argument("--verify-paper-matrix", action="store_true", dest="verify_matrix",
                   help="compare T(x) with the stored reference matrix at (1/2, 3/4)")
    f.add_argument("--output", "-o")
    c = sub.add_parser("counterexample", parents=[common], help="strong extremal F with non-extremal det T(x)")
    c.add_argument("--perturb", type=int, metavar="K", help="add 1 to coefficient K of F")
    s = sub.add_parser("sextic", parents=[common], help="singularities and extremality of a ternary sextic")
    s.add_argument("file")
    s.add_argument("--not-sos", action="store_true", help="assert the sextic is not a sum of squares")
    b = sub.add_parser("bounds", parents=[common], help="mean and translation bounds for a two-phase composite")
    b.add_argument("file")
    return ap


def run(argv=None) -> tuple[RunReport | None, int]:
    args = build_parser().parse_args(argv)
    t0 = time.perf_counter()
    try:
        tol = _tolerances(args)
        if args.command == "analyze":
            report = cmd_analyze(args.file, tol)
        elif args.command == "family":
            report = cmd_family(Fraction(args.p), Fraction(args.q), tol, args.verify_matrix, args.output)
        elif args.command == "counterexample":
            report = cmd_counterexample(tol, args.perturb)
        elif args.command == "sextic":
            report = cmd_sextic(args.file, tol, "asserted" if args.not_sos else "unknown")
        else:
            report = cmd_bounds(args.file, tol)
    except (ParseError, OSError, ValueError, ZeroDivisionError) as exc:
        print(f"biquad: error: {exc}", file=sys.stderr)
        return None, EXIT_PARSE
    report.wall_time = time.perf_counter() - t0
    if args.json:
        print(report.to_json())
    else:
        print(f"== {report.command} ==")
        for line in report.lines:
            print(line)
        print(f"-- {report.wall_time:.2f} s")
    return report, report.exit_code


def main(argv=None) -> int:
    return run(argv)[1]


if __name__ == "__main__":
    sys.exit(main())
