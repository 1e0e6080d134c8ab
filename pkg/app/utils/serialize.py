"""
Engine records to API models
엔진 dataclass 를 pydantic 모델로 변환하고 결정적(deterministic) JSON 으로 직렬화합니다.
"""
import json
import math
from typing import Any, Optional

import numpy as np

from app.engine.alcove import AlcoveFace, EdgeWeight, FaceRootData, ToricData, VertexInfo
from app.engine.implosion import (
    AlcoveSymmetries,
    CheckReport,
    SmoothnessVerdict,
    StratumRecord,
    ZetaReport,
)
from app.engine.moduli import DimensionReport, FlatConnectionPoint
from app.engine.rootsys import RootDatum, center_structure, extended_marks, format_type
from app.engine.verify import IdentityResult, VerificationReport
from app.spec.models import (
    CheckReportModel,
    DimensionReportModel,
    EdgeWeightModel,
    FaceContributionModel,
    FaceModel,
    FaceRootDataModel,
    FlatConnectionModel,
    IdentityResultModel,
    RootDatumModel,
    SmoothnessModel,
    StratumRecordModel,
    SymmetriesModel,
    ToricDataModel,
    VerificationReportModel,
    VertexModel,
    ZetaModel,
)
from app.utils.rational import fmt_rational, fmt_vector


def finite(value: float) -> Optional[float]:
    """JSON has no inf/nan; non-finite residuals become null"""
    value = float(value)
    return value if math.isfinite(value) else None


def _rows(vectors) -> list:
    return [fmt_vector(v) for v in vectors]


def datum_model(datum: RootDatum) -> RootDatumModel:
    return RootDatumModel(
        type=datum.type_label,
        rank=datum.rank,
        name=datum.name,
        ambientDim=datum.ambient_dim,
        groupDim=datum.group_dim,
        simpleRoots=_rows(datum.simple_roots),
        simpleCoroots=_rows(datum.simple_coroots),
        highestRoot=fmt_vector(datum.highest_root),
        highestRootCoefficients=list(datum.highest_root_coefficients),
        cartanMatrix=[list(row) for row in datum.cartan_matrix],
        positiveRootCount=len(datum.positive_roots),
        marks=list(extended_marks(datum)),
        centerOrder=center_structure(datum).order,
    )


def face_model(face: AlcoveFace) -> FaceModel:
    return FaceModel(
        faceId=face.face_id,
        label=face.label,
        walls=list(face.wall_set),
        dim=face.dim,
        vertexIds=list(face.vertex_ids),
        interiorPoint=fmt_vector(face.interior_point),
    )


def face_root_data_model(data: FaceRootData) -> FaceRootDataModel:
    return FaceRootDataModel(
        faceId=data.face_id,
        positiveRoots=_rows(data.r_sigma_positive),
        base=_rows(data.b_sigma),
        alphaValues=list(data.alpha_sigma_values),
        componentTypes=list(data.component_types),
        dimKSigma=data.dim_k_sigma,
        dimCommutator=data.dim_commutator,
        centralTorusDim=data.central_torus_dim,
        gammaOrder=data.gamma_order,
        gSigmaTrivial=data.g_sigma_trivial,
    )


def vertex_model(info: VertexInfo) -> VertexModel:
    return VertexModel(vertexId=info.vertex_id, coordinates=fmt_vector(info.coordinates), isCentral=info.is_central)


def toric_model(toric: ToricData) -> ToricDataModel:
    return ToricDataModel(
        weightsM=list(toric.weights_m),
        labels=list(toric.labels),
        lcmM=toric.lcm_m,
        lCoefficients=list(toric.l_coefficients),
        isStandardProjective=toric.is_standard_projective,
    )


def edge_weight_model(edge: EdgeWeight) -> EdgeWeightModel:
    return EdgeWeightModel(
        i=edge.i,
        j=edge.j,
        weight=fmt_vector(edge.weight),
        pairings=[fmt_rational(p) for p in edge.pairings],
        ok=edge.ok,
    )


def stratum_model(record: StratumRecord) -> StratumRecordModel:
    return StratumRecordModel(
        faceId=record.face_id,
        label=record.label,
        stratumDim=record.stratum_dim,
        commutatorType=format_type(record.commutator_type),
        isPoint=record.is_point,
        isRemovable=record.is_removable,
        orbitUnderCenter=list(record.orbit_under_center),
        dualFaceId=record.dual_face_id,
    )


def smoothness_model(verdict: SmoothnessVerdict) -> SmoothnessModel:
    return SmoothnessModel(
        faceId=verdict.face_id,
        removable=verdict.removable,
        allComponentsA1=verdict.all_components_a1,
        centralVertices=list(verdict.central_vertices),
        reasons=list(verdict.reasons),
    )


def zeta_model(report: ZetaReport) -> ZetaModel:
    return ZetaModel(
        generatorWords={str(node): list(word) for node, word in sorted(report.generator_words.items())},
        elementWords=[list(word) for word in report.element_words],
        isHomomorphism=report.is_homomorphism,
        isInjective=report.is_injective,
    )


def symmetries_model(symmetries: AlcoveSymmetries) -> SymmetriesModel:
    return SymmetriesModel(
        centerFacePermutations={
            str(node): dict(perm) for node, perm in sorted(symmetries.center_face_permutations.items())
        },
        dualityFacePermutation=dict(symmetries.duality_face_permutation),
        checks=dict(symmetries.checks),
    )


def check_model(report: CheckReport) -> CheckReportModel:
    return CheckReportModel(
        name=report.name,
        group=report.group,
        passed=report.passed,
        rows=[jsonable(row) for row in report.rows],
        notes=list(report.notes),
    )


def identity_model(identity: IdentityResult) -> IdentityResultModel:
    return IdentityResultModel(
        name=identity.name,
        maxResidual=finite(identity.max_residual),
        tolerance=identity.tolerance,
        samples=identity.samples,
        passed=identity.passed,
        worstSample=identity.worst_sample,
        details=jsonable(identity.details),
    )


def verification_model(report: VerificationReport) -> VerificationReportModel:
    worst = report.worst_failure()
    return VerificationReportModel(
        model=report.model,
        n=report.n,
        seed=report.seed,
        samples=report.samples,
        verdict=report.verdict,
        identities=[identity_model(i) for i in report.identities],
        worstFailure=identity_model(worst) if worst else None,
        details=jsonable(report.details),
    )


def flat_connection_model(point: FlatConnectionPoint) -> FlatConnectionModel:
    matrices = list(point.a) + list(point.b) + list(point.u) + list(point.v)
    eye = np.eye(point.size)
    unitary = max(np.linalg.norm(m @ m.conj().T - eye) for m in matrices)
    det = max(abs(np.linalg.det(m) - 1) for m in matrices)
    return FlatConnectionModel(
        g=len(point.a),
        n=len(point.u),
        size=point.size,
        residual=finite(point.residual),
        unitaryResidual=finite(unitary),
        detResidual=finite(det),
    )


def dimension_model(report: DimensionReport) -> DimensionReportModel:
    return DimensionReportModel(
        g=report.genus,
        n=report.punctures,
        group=report.group,
        faces=list(report.faces),
        dims={
            "dim_M_Sigma": report.dim_M_Sigma,
            "dim_master_open": report.dim_master_open,
            "dim_piece": report.dim_piece,
            "dim_piece_hat": report.dim_piece_hat,
            "dim_reduction_generic": report.dim_reduction_generic,
        },
        generic=report.generic,
        caveat=report.caveat,
        consistent=report.consistent,
        contributions=[
            FaceContributionModel(
                faceId=c.face_id,
                faceDim=c.face_dim,
                dimKSigma=c.dim_k_sigma,
                dimCommutator=c.dim_commutator,
                codim=c.codim,
            )
            for c in report.contributions
        ],
    )


def jsonable(value: Any) -> Any:
    """Fractions to "p/q", numpy scalars/arrays to Python, tuples to lists, non-finite floats to null"""
    if hasattr(value, "model_dump"):
        return value.model_dump(mode="json")
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return jsonable(value.tolist())
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return finite(value)
    if isinstance(value, complex):
        return [finite(value.real), finite(value.imag)]
    if value is None or isinstance(value, str):
        return value
    try:
        return fmt_rational(value)
    except (TypeError, ValueError):
        return str(value)


def dumps(payload: Any) -> str:
    """Deterministic JSON text (sorted keys, two-space indent, trailing newline)"""
    return json.dumps(jsonable(payload), sort_keys=True, indent=2, ensure_ascii=False) + "\n"
