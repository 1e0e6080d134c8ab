"""
Command-line front end
모든 엔진 연산을 텍스트 표 / JSON / CSV 리포트로 출력합니다.

Exit status: 0 on success or pass, 1 on a failed verification, 2 on a usage error.
Reports go to stdout (or --output); logs go to stderr.
"""
import argparse
import csv
import io
import logging
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence

from pydantic import ValidationError

from config.logging import setup_logging
from config.settings import get_settings
from app.engine.alcove import (
    all_face_root_data,
    chamber_face_count,
    edge_weight_check,
    enumerate_faces,
    toric_cut_data,
    vertices_and_centrality,
    with_gamma,
)
from app.engine.implosion import (
    alcove_symmetries,
    centralizer_intersection_check,
    centralizer_table,
    integrality_triple_check,
    smoothness_check,
    strata_table,
    su_stabilizer_pattern_check,
    zeta_homomorphism,
)
from app.engine.moduli import (
    SurfaceData,
    dk_cross_validation,
    expected_dimensions,
    moment_equivariance_check,
    sample_flat_connection,
    sampler_report,
)
from app.engine.rootsys import RootDatum, build_root_system
from app.engine.spaces import MODEL_KINDS
from app.engine.verify import (
    DEFAULT_LEVELS,
    VerificationReport,
    axiom_residuals,
    cotangent_double_verify,
    gluing_verify,
    sphere_reduction_check,
    universal_embedding_verify,
    varpi_dual_check,
)
from app.spec.models import CommandConfig, FacesData, ReportEnvelope, WeightsData
from app.utils.serialize import (
    check_model,
    datum_model,
    dimension_model,
    dumps,
    edge_weight_model,
    face_model,
    face_root_data_model,
    flat_connection_model,
    jsonable,
    smoothness_model,
    stratum_model,
    symmetries_model,
    toric_model,
    verification_model,
    vertex_model,
    zeta_model,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2

GROUP_COMMANDS = (
    "faces",
    "strata",
    "weights",
    "smooth",
    "zeta",
    "symmetries",
    "check-centralizer",
    "check-integrality",
)


@dataclass
class CommandResult:
    """What a command hands back to the renderer"""

    group: Optional[str]
    status: str
    data: Any
    rows: List[dict] = field(default_factory=list)
    summary: List[str] = field(default_factory=list)
    failure: Optional[str] = None


def _datum(args) -> RootDatum:
    if args.type is None or args.rank is None:
        raise ValueError(f"'{args.command}' needs --type and --rank")
    return build_root_system(args.type, args.rank)


def _verdict(passed: bool) -> str:
    return "pass" if passed else "fail"


# ---------------------------------------------------------------------------
# Exact combinatorics
# ---------------------------------------------------------------------------

def cmd_faces(args) -> CommandResult:
    datum = _datum(args)
    poset = enumerate_faces(datum)
    data = all_face_root_data(datum)
    table = centralizer_table(datum)
    census = poset.dimension_census()
    payload = FacesData(
        faces=[face_model(f) for f in poset.faces],
        census={str(d): c for d, c in sorted(census.items())},
        chamberFaceCount=chamber_face_count(datum),
        vertices=[vertex_model(v) for v in vertices_and_centrality(datum)],
        centralizers=table,
        rootData=[face_root_data_model(with_gamma(datum, f)) for f in poset.faces],
    )
    rows = [
        {"face": row["face"], "label": row["label"], "dim": f.dim, "K_sigma": row["k_sigma"],
         "commutator": row["commutator"], "positive_roots": len(data[f.face_id].r_sigma_positive)}
        for row, f in zip(table, poset.faces)
    ]
    summary = [
        f"{datum.name}: {len(poset.faces)} alcove faces "
        f"({', '.join(f'dim {d}: {c}' for d, c in sorted(census.items()))}); "
        f"{chamber_face_count(datum)} Weyl chamber faces"
    ]
    return CommandResult(datum.name, "ok", {"datum": datum_model(datum), **payload.model_dump(mode="json")}, rows, summary)


def cmd_strata(args) -> CommandResult:
    datum = _datum(args)
    records = strata_table(datum)
    rows = [
        {"face": r.face_id, "label": r.label, "dim": r.stratum_dim, "commutator": stratum_model(r).commutatorType,
         "point": r.is_point, "removable": r.is_removable, "dual": r.dual_face_id}
        for r in records
    ]
    dims = ", ".join(str(r.stratum_dim) for r in records)
    points = sum(1 for r in records if r.is_point)
    summary = [f"{datum.name}: {len(records)} strata, dims [{dims}], {points} one-point strata"]
    return CommandResult(datum.name, "ok", {"strata": [stratum_model(r) for r in records]}, rows, summary)


def cmd_weights(args) -> CommandResult:
    datum = _datum(args)
    toric = toric_cut_data(datum)
    edges = edge_weight_check(datum)
    edges_ok = all(e.ok for e in edges)
    payload = WeightsData(
        toric=toric_model(toric),
        edgeWeights=[edge_weight_model(e) for e in edges],
        edgeWeightsOk=edges_ok,
    )
    rows = [
        {"node": i + 1, "m": m, "l": l}
        for i, (m, l) in enumerate(zip(toric.weights_m, toric.l_coefficients))
    ]
    summary = [
        " ".join(str(m) for m in toric.weights_m),
        f"lcm {toric.lcm_m}; l = {' '.join(str(l) for l in toric.l_coefficients)}; "
        f"standard projective space: {'yes' if toric.is_standard_projective else 'no'}",
    ]
    status = "ok" if edges_ok else "fail"
    failure = None if edges_ok else next(f"edge weight ({e.i}, {e.j})" for e in edges if not e.ok)
    return CommandResult(datum.name, status, payload, rows, summary, failure)


def cmd_smooth(args) -> CommandResult:
    datum = _datum(args)
    poset = enumerate_faces(datum)
    faces = [poset.by_id(args.face)] if args.face else list(poset.faces)
    verdicts = [smoothness_check(datum, f) for f in faces]
    rows = [
        {"face": v.face_id, "label": f.label, "removable": v.removable, "reasons": "; ".join(v.reasons)}
        for v, f in zip(verdicts, faces)
    ]
    removable = [f.label for v, f in zip(verdicts, faces) if v.removable]
    summary = [f"{datum.name}: removable {', '.join(removable) if removable else 'none'}"]
    return CommandResult(datum.name, "ok", {"verdicts": [smoothness_model(v) for v in verdicts]}, rows, summary)


def cmd_zeta(args) -> CommandResult:
    datum = _datum(args)
    report = zeta_homomorphism(datum)
    passed = report.is_homomorphism and report.is_injective
    rows = [{"generator": node, "word": " ".join(map(str, word))} for node, word in sorted(report.generator_words.items())]
    summary = [f"{datum.name}: homomorphism={report.is_homomorphism}, injective={report.is_injective}"]
    failure = None if passed else "zeta is not an injective homomorphism"
    return CommandResult(datum.name, _verdict(passed), zeta_model(report), rows, summary, failure)


def cmd_symmetries(args) -> CommandResult:
    datum = _datum(args)
    symmetries = alcove_symmetries(datum)
    passed = all(symmetries.checks.values())
    rows = [{"check": name, "ok": ok} for name, ok in sorted(symmetries.checks.items())]
    failed = [name for name, ok in symmetries.checks.items() if not ok]
    summary = [f"{datum.name}: {len(rows) - len(failed)}/{len(rows)} symmetry checks hold"]
    failure = f"failed checks: {', '.join(failed)}" if failed else None
    return CommandResult(datum.name, _verdict(passed), symmetries_model(symmetries), rows, summary, failure)


def _check_result(report, group: str) -> CommandResult:
    failed = [row for row in report.rows if not row.get("ok", True)]
    summary = [f"{report.name} {group}: {len(report.rows) - len(failed)}/{len(report.rows)} rows ok"]
    summary.extend(report.notes)
    failure = f"first failing row: {jsonable(failed[0])}" if failed else None
    return CommandResult(group, _verdict(report.passed), check_model(report), [jsonable(r) for r in report.rows], summary, failure)


def cmd_check_centralizer(args) -> CommandResult:
    datum = _datum(args)
    return _check_result(centralizer_intersection_check(datum), datum.name)


def cmd_check_integrality(args) -> CommandResult:
    datum = _datum(args)
    return _check_result(integrality_triple_check(datum), datum.name)


def cmd_su_embedding(args) -> CommandResult:
    report = su_stabilizer_pattern_check(args.n)
    return _check_result(report, report.group)


# ---------------------------------------------------------------------------
# Numeric verification
# ---------------------------------------------------------------------------

def _verification_result(report: VerificationReport) -> CommandResult:
    rows = [
        {"identity": i.name, "max_residual": f"{i.max_residual:.3e}", "tolerance": f"{i.tolerance:.1e}",
         "samples": i.samples, "worst_sample": i.worst_sample, "status": _verdict(i.passed)}
        for i in report.identities
    ]
    summary = [f"{report.model} n={report.n} seed={report.seed} samples={report.samples}: {report.verdict}"]
    worst = report.worst_failure()
    failure = None
    if worst is not None:
        failure = (
            f"worst offender {worst.name}: residual {worst.max_residual:.3e} > {worst.tolerance:.1e} "
            f"at sample {worst.worst_sample}"
        )
    return CommandResult(f"U({report.n})", report.verdict, verification_model(report), rows, summary, failure)


def cmd_verify_numeric(args) -> CommandResult:
    return _verification_result(axiom_residuals(args.model, args.samples, args.seed, n=args.n, tol=args.tol))


def cmd_verify_glue(args) -> CommandResult:
    return _verification_result(gluing_verify(args.n, args.samples, args.seed, tol=args.tol))


def cmd_verify_cotangent(args) -> CommandResult:
    return _verification_result(cotangent_double_verify(args.n, args.samples, args.seed, tol=args.tol))


def cmd_verify_sphere(args) -> CommandResult:
    levels = args.levels or DEFAULT_LEVELS
    return _verification_result(sphere_reduction_check(args.n, levels, args.samples, args.seed, tol=args.tol))


def cmd_verify_universal(args) -> CommandResult:
    return _verification_result(universal_embedding_verify(args.n, args.samples, args.seed, tol=args.tol))


def cmd_verify_varpi(args) -> CommandResult:
    return _verification_result(varpi_dual_check(args.n, args.samples, args.seed, tol=args.tol))


# ---------------------------------------------------------------------------
# Moduli
# ---------------------------------------------------------------------------

def cmd_sample_rep(args) -> CommandResult:
    surface = SurfaceData(args.g, args.n)
    point = sample_flat_connection(surface, args.size, args.seed)
    sampler = sampler_report(surface, args.size, args.samples, args.seed, tol=args.tol)
    equivariance = moment_equivariance_check(surface, point, args.samples, args.seed, tol=args.tol)
    passed = sampler.passed and equivariance.passed
    residuals = {i.name: i.max_residual for report in (sampler, equivariance) for i in report.identities}
    data = {
        "g": surface.genus,
        "n": surface.punctures,
        "size": args.size,
        "faces": [],
        "dims": {"dim_M_Sigma": surface.group_factors * (args.size ** 2 - 1)},
        "residuals": residuals,
        "point": flat_connection_model(point),
        "sampler": verification_model(sampler),
        "equivariance": verification_model(equivariance),
    }
    rows = [{"check": name, "max_residual": f"{value:.3e}"} for name, value in sorted(residuals.items())]
    summary = [
        f"g={surface.genus} n={surface.punctures} SU({args.size}): relation residual {point.residual:.3e}, "
        f"{args.samples} samples {_verdict(passed)}"
    ]
    failure = None
    for report in (sampler, equivariance):
        worst = report.worst_failure()
        if worst is not None and failure is None:
            failure = f"{worst.name}: residual {worst.max_residual:.3e} at sample {worst.worst_sample}"
    return CommandResult(f"SU({args.size})", _verdict(passed), data, rows, summary, failure)


def cmd_moduli_dim(args) -> CommandResult:
    datum = _datum(args)
    surface = SurfaceData(args.g, args.n)
    faces = [f.strip() for f in args.faces.split(",")] if args.faces else ["A"] * surface.punctures
    report = expected_dimensions(surface, datum, faces)
    dk = dk_cross_validation(datum)
    passed = report.consistent and dk.passed
    model = dimension_model(report)
    rows = [{"quantity": name, "value": value} for name, value in model.dims.items()]
    summary = [
        f"g={surface.genus} n={surface.punctures} {datum.name} faces ({', '.join(model.faces)})",
        f"note: {report.caveat}",
        f"DK cross-validation over {len(dk.rows)} faces: {_verdict(dk.passed)}",
    ]
    failure = None if passed else "dimension bookkeeping disagrees with the strata table"
    data = {**model.model_dump(mode="json"), "dkCrossValidation": check_model(dk)}
    return CommandResult(datum.name, _verdict(passed), data, rows, summary, failure)


COMMANDS: Dict[str, Callable[[argparse.Namespace], CommandResult]] = {
    "faces": cmd_faces,
    "strata": cmd_strata,
    "weights": cmd_weights,
    "smooth": cmd_smooth,
    "zeta": cmd_zeta,
    "symmetries": cmd_symmetries,
    "check-centralizer": cmd_check_centralizer,
    "check-integrality": cmd_check_integrality,
    "verify-numeric": cmd_verify_numeric,
    "verify-glue": cmd_verify_glue,
    "verify-cotangent": cmd_verify_cotangent,
    "verify-sphere": cmd_verify_sphere,
    "verify-universal": cmd_verify_universal,
    "verify-varpi": cmd_verify_varpi,
    "sample-rep": cmd_sample_rep,
    "moduli-dim": cmd_moduli_dim,
    "su-embedding-check": cmd_su_embedding,
}


# ---------------------------------------------------------------------------
# Rendering
# ---------------------------------------------------------------------------

def _cell(value: Any) -> str:
    if isinstance(value, bool):
        return "yes" if value else "no"
    return "" if value is None else str(value)


def render_text(result: CommandResult, seed: int) -> str:
    """Summary lines, the row table, then a trailing "seed: N" line"""
    lines = list(result.summary)
    if result.rows:
        columns = list(result.rows[0])
        widths = {c: max(len(c), *(len(_cell(r.get(c))) for r in result.rows)) for c in columns}
        lines.append("")
        lines.append("  ".join(c.ljust(widths[c]) for c in columns).rstrip())
        lines.append("  ".join("-" * widths[c] for c in columns))
        for row in result.rows:
            lines.append("  ".join(_cell(row.get(c)).ljust(widths[c]) for c in columns).rstrip())
    if result.failure:
        lines.append("")
        lines.append(f"FAIL: {result.failure}")
    lines.append("")
    lines.append(f"seed: {seed}")
    return "\n".join(lines) + "\n"


def render_csv(result: CommandResult, seed: int) -> str:
    """Row table with a trailing seed column (a single seed row when there are no rows)"""
    buffer = io.StringIO()
    columns = [c for c in (result.rows[0] if result.rows else {}) if c != "seed"] + ["seed"]
    writer = csv.DictWriter(buffer, fieldnames=columns, lineterminator="\n", extrasaction="ignore")
    writer.writeheader()
    for row in result.rows or [{}]:
        writer.writerow({**{c: _cell(row.get(c)) for c in columns}, "seed": seed})
    return buffer.getvalue()


def render_json(result: CommandResult, config: CommandConfig) -> str:
    envelope = ReportEnvelope(
        command=config.command,
        seed=config.seed,
        group=result.group,
        status=result.status,
        data=jsonable(result.data),
    )
    return dumps(envelope)


# ---------------------------------------------------------------------------
# Argument parsing
# ---------------------------------------------------------------------------

def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _non_negative_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text}")
    return value


def _positive_float(text: str) -> float:
    value = float(text)
    if not value > 0:
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    settings = get_settings()
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "csv"), default="text", help="Report format")
    common.add_argument("--output", type=Path, default=None, help="Write the report here instead of stdout")
    common.add_argument("--seed", type=_non_negative_int, default=settings.QHAM_SEED, help="Random seed (recorded in the report)")
    common.add_argument("--log-level", default=None, help="Override LOG_LEVEL for this run")

    group = argparse.ArgumentParser(add_help=False)
    group.add_argument("--type", help="Dynkin type letter (A-G)")
    group.add_argument("--rank", type=_positive_int, help="Rank of the root system")

    numeric = argparse.ArgumentParser(add_help=False)
    numeric.add_argument("--n", type=_positive_int, default=2, help="Matrix size of U(n)")
    numeric.add_argument("--samples", type=_positive_int, default=settings.QHAM_SAMPLES, help="Number of random samples")
    numeric.add_argument("--tol", type=_positive_float, default=None, help="Override every identity tolerance")

    parser = argparse.ArgumentParser(
        prog="qham",
        description="Quasi-Hamiltonian implosion engine: alcove combinatorics, implosion strata and numeric checks.",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    for name in GROUP_COMMANDS:
        cmd = sub.add_parser(name, parents=[common, group], help=f"{name} for a simple root system")
        if name == "smooth":
            cmd.add_argument("--face", default=None, help="Face id (w1.w2) or vertex label (01); default all faces")

    verify = sub.add_parser("verify-numeric", parents=[common, numeric], help="Axiom residuals for one model")
    verify.add_argument("model", choices=MODEL_KINDS)
    sub.add_parser("verify-glue", parents=[common, numeric], help="Disc-to-sphere gluing checks")
    sub.add_parser("verify-cotangent", parents=[common, numeric], help="Cotangent-bundle / double agreement")
    sphere = sub.add_parser("verify-sphere", parents=[common, numeric], help="Induced form on sphere level sets")
    sphere.add_argument("--levels", type=_positive_float, nargs="+", default=None, help="Level values a with 0 < a < 1/pi")
    sub.add_parser("verify-universal", parents=[common, numeric], help="Universal embedding pullback")
    sub.add_parser("verify-varpi", parents=[common, numeric], help="Dual formulas for the 2-form on the Lie algebra")

    sample = sub.add_parser("sample-rep", parents=[common], help="Sample flat connections on a bordered surface")
    sample.add_argument("--g", type=_non_negative_int, required=True, help="Genus")
    sample.add_argument("--n", type=_positive_int, required=True, help="Boundary components")
    sample.add_argument("--size", type=_positive_int, default=2, help="Matrix size of SU(size)")
    sample.add_argument("--samples", type=_positive_int, default=settings.QHAM_SAMPLES)
    sample.add_argument("--tol", type=_positive_float, default=None)

    moduli = sub.add_parser("moduli-dim", parents=[common, group], help="Expected dimensions of a master moduli piece")
    moduli.add_argument("--g", type=_non_negative_int, required=True, help="Genus")
    moduli.add_argument("--n", type=_positive_int, required=True, help="Boundary components")
    moduli.add_argument("--faces", default=None, help="Comma-separated face ids, one per boundary (default: open face)")

    su = sub.add_parser("su-embedding-check", parents=[common], help="Stabilizer pattern of the SU(n) embedding")
    su.add_argument("--n", type=_positive_int, required=True)
    return parser


def _config(args: argparse.Namespace) -> CommandConfig:
    return CommandConfig(
        command=args.command,
        groupType=getattr(args, "type", None),
        rank=getattr(args, "rank", None),
        tol=getattr(args, "tol", None),
        samples=getattr(args, "samples", None) or get_settings().QHAM_SAMPLES,
        seed=args.seed,
        format=args.format,
        output=str(args.output) if args.output else None,
    )


def run(args: argparse.Namespace) -> int:
    """
    Execute one parsed command and write its report

    Returns:
        int: 0 (ok / pass), 1 (verification failure), 2 (usage error)
    """
    config = _config(args)
    try:
        result = COMMANDS[config.command](args)
    except ValueError as e:
        print(f"[error] {e}", file=sys.stderr)
        return EXIT_USAGE
    except RuntimeError as e:
        logger.error(f"{config.command} failed: {e}")
        print(f"[error] {e}", file=sys.stderr)
        return EXIT_FAIL

    if config.format == "json":
        text = render_json(result, config)
    elif config.format == "csv":
        text = render_csv(result, config.seed)
    else:
        text = render_text(result, config.seed)

    if config.output:
        Path(config.output).write_text(text, encoding="utf-8")
        logger.info(f"Report written to {config.output}")
    else:
        sys.stdout.write(text)

    if result.status == "fail":
        print(f"[{config.command}] FAIL: {result.failure}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE

    settings = get_settings()
    setup_logging(
        log_dir=settings.LOG_DIR,
        log_level=args.log_level or settings.LOG_LEVEL,
        app_name="qham-cli",
        console_stream=sys.stderr,
        log_to_file=settings.LOG_TO_FILE,
    )
    try:
        return run(args)
    except ValidationError as e:
        print(f"[error] {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
