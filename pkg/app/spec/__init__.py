"""
API Specification Models
"""
from app.spec.models import (
    RootDatumModel,
    FaceModel,
    FaceRootDataModel,
    VertexModel,
    ToricDataModel,
    EdgeWeightModel,
    FacesData,
    WeightsData,
    StratumRecordModel,
    SmoothnessModel,
    ZetaModel,
    SymmetriesModel,
    CheckReportModel,
    IdentityResultModel,
    VerificationReportModel,
    FlatConnectionModel,
    FaceContributionModel,
    DimensionReportModel,
    ReduceRequest,
    VerifyRequest,
    SampleRequest,
    DimensionRequest,
    CommandConfig,
    ReportEnvelope,
)

__all__ = [
    "RootDatumModel",
    "FaceModel",
    "FaceRootDataModel",
    "VertexModel",
    "ToricDataModel",
    "EdgeWeightModel",
    "FacesData",
    "WeightsData",
    "StratumRecordModel",
    "SmoothnessModel",
    "ZetaModel",
    "SymmetriesModel",
    "CheckReportModel",
    "IdentityResultModel",
    "VerificationReportModel",
    "FlatConnectionModel",
    "FaceContributionModel",
    "DimensionReportModel",
    "ReduceRequest",
    "VerifyRequest",
    "SampleRequest",
    "DimensionRequest",
    "CommandConfig",
    "ReportEnvelope",
]
