from pydantic import BaseModel, ConfigDict, Field
from typing import Any, Dict, List, Literal, Optional

# Rationals travel as "p/q" strings (integers as "p")
RationalStr = str


# Root system Models
class RootDatumModel(BaseModel):
    type: str
    rank: int
    name: str
    ambientDim: int
    groupDim: int
    simpleRoots: List[List[RationalStr]]
    simpleCoroots: List[List[RationalStr]]
    highestRoot: List[RationalStr]
    highestRootCoefficients: List[int]
    cartanMatrix: List[List[int]]
    positiveRootCount: int
    marks: List[int]  # 확장 marks (마지막 1 포함)
    centerOrder: int


# Alcove Models
class FaceModel(BaseModel):
    faceId: str
    label: str
    walls: List[int]
    dim: int
    vertexIds: List[int]
    interiorPoint: List[RationalStr]


class FaceRootDataModel(BaseModel):
    faceId: str
    positiveRoots: List[List[RationalStr]]
    base: List[List[RationalStr]]
    alphaValues: List[int]
    componentTypes: List[str]
    dimKSigma: int
    dimCommutator: int
    centralTorusDim: int
    gammaOrder: Optional[int] = None
    gSigmaTrivial: Optional[bool] = None


class VertexModel(BaseModel):
    vertexId: int
    coordinates: List[RationalStr]
    isCentral: bool


class ToricDataModel(BaseModel):
    weightsM: List[int]
    labels: List[int]
    lcmM: int
    lCoefficients: List[int]
    isStandardProjective: bool


class EdgeWeightModel(BaseModel):
    i: int
    j: int
    weight: List[RationalStr]
    pairings: List[RationalStr]
    ok: bool


class FacesData(BaseModel):
    faces: List[FaceModel]
    census: Dict[str, int]
    chamberFaceCount: int
    vertices: List[VertexModel]
    centralizers: List[Dict[str, str]]
    rootData: List[FaceRootDataModel]


class WeightsData(BaseModel):
    toric: ToricDataModel
    edgeWeights: List[EdgeWeightModel]
    edgeWeightsOk: bool


# Implosion Models
class StratumRecordModel(BaseModel):
    faceId: str
    label: str
    stratumDim: int
    commutatorType: str
    isPoint: bool
    isRemovable: bool
    orbitUnderCenter: List[str]
    dualFaceId: str


class SmoothnessModel(BaseModel):
    faceId: str
    removable: bool
    allComponentsA1: bool
    centralVertices: List[int]
    reasons: List[str]


class ZetaModel(BaseModel):
    generatorWords: Dict[str, List[int]]
    elementWords: List[List[int]]
    isHomomorphism: bool
    isInjective: bool


class SymmetriesModel(BaseModel):
    centerFacePermutations: Dict[str, Dict[str, str]]
    dualityFacePermutation: Dict[str, str]
    checks: Dict[str, bool]


class CheckReportModel(BaseModel):
    name: str
    group: Optional[str] = None
    passed: bool
    rows: List[Dict[str, Any]] = []
    notes: List[str] = []


# Numeric verification Models
class IdentityResultModel(BaseModel):
    name: str
    maxResidual: Optional[float]  # None 이면 non-finite 잔차
    tolerance: float
    samples: int
    passed: bool
    worstSample: Optional[int] = None
    details: Dict[str, Any] = {}


class VerificationReportModel(BaseModel):
    model: str
    n: int
    seed: int
    samples: int
    verdict: Literal["pass", "fail"]
    identities: List[IdentityResultModel]
    worstFailure: Optional[IdentityResultModel] = None
    details: Dict[str, Any] = {}


# Moduli Models
class FlatConnectionModel(BaseModel):
    g: int
    n: int
    size: int
    residual: Optional[float]
    unitaryResidual: Optional[float]
    detResidual: Optional[float]


class FaceContributionModel(BaseModel):
    faceId: str
    faceDim: int
    dimKSigma: int
    dimCommutator: int
    codim: int


class DimensionReportModel(BaseModel):
    g: int
    n: int
    group: str
    faces: List[str]
    dims: Dict[str, int]
    generic: bool
    caveat: str
    consistent: bool
    contributions: List[FaceContributionModel]


# Request Models
class ReduceRequest(BaseModel):
    point: List[RationalStr]  # "p/q" 좌표 (ambient 차원)


class VerifyRequest(BaseModel):
    n: int = Field(2, ge=1, le=6)
    samples: int = Field(100, ge=1, le=10000)
    seed: int = Field(0, ge=0)
    tol: Optional[float] = Field(None, gt=0)
    levels: Optional[List[float]] = None  # sphere 검증 전용


class SampleRequest(BaseModel):
    g: int = Field(..., ge=0)
    n: int = Field(..., ge=1)
    size: int = Field(2, ge=2, le=8)
    samples: int = Field(100, ge=1, le=10000)
    seed: int = Field(0, ge=0)
    tol: Optional[float] = Field(None, gt=0)


class DimensionRequest(BaseModel):
    g: int = Field(..., ge=0)
    n: int = Field(..., ge=1)
    type: str
    rank: int = Field(..., ge=1)
    faces: Optional[List[str]] = None  # 기본값: 모든 경계에서 열린 face "A"


# CLI Models
class CommandConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    command: str
    groupType: Optional[str] = None
    rank: Optional[int] = None
    tol: Optional[float] = None
    samples: int = 100
    seed: int = 0
    format: Literal["text", "json", "csv"] = "text"
    output: Optional[str] = None


class ReportEnvelope(BaseModel):
    command: str
    seed: int
    group: Optional[str] = None
    status: Literal["ok", "pass", "fail"]
    data: Any
