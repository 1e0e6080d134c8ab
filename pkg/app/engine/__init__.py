"""
Engine package
루트 시스템, alcove, implosion 층 분해, quasi-Hamiltonian 수치 검증, moduli 도구
"""
from app.engine.rootsys import RootDatum, build_root_system, center_structure, extended_marks
from app.engine.alcove import AlcoveFace, FacePoset, enumerate_faces, face_root_data, reduce_to_alcove, toric_cut_data
from app.engine.implosion import (
    CheckReport,
    alcove_symmetries,
    smoothness_check,
    strata_table,
    zeta_homomorphism,
)
from app.engine.spaces import MODEL_KINDS, ModelPoint, QHamSpace, build_model
from app.engine.verify import VerificationReport, axiom_residuals
from app.engine.moduli import SurfaceData, expected_dimensions, sample_flat_connection

__all__ = [
    "RootDatum",
    "build_root_system",
    "center_structure",
    "extended_marks",
    "AlcoveFace",
    "FacePoset",
    "enumerate_faces",
    "face_root_data",
    "reduce_to_alcove",
    "toric_cut_data",
    "CheckReport",
    "alcove_symmetries",
    "smoothness_check",
    "strata_table",
    "zeta_homomorphism",
    "MODEL_KINDS",
    "ModelPoint",
    "QHamSpace",
    "build_model",
    "VerificationReport",
    "axiom_residuals",
    "SurfaceData",
    "expected_dimensions",
    "sample_flat_connection",
]
