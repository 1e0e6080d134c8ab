"""
Verify Router
Residual-based numeric verification of the quasi-Hamiltonian models
"""
import logging

from fastapi import APIRouter, HTTPException

from app.engine.spaces import MODEL_KINDS
from app.engine.verify import (
    DEFAULT_LEVELS,
    FiniteDifferenceError,
    axiom_residuals,
    cotangent_double_verify,
    gluing_verify,
    sphere_reduction_check,
    universal_embedding_verify,
    varpi_dual_check,
)
from app.spec.models import VerifyRequest
from app.utils.serialize import verification_model

logger = logging.getLogger(__name__)

router = APIRouter(prefix="/api/verify", tags=["Verify"])

_CHECKS = {
    "glue": gluing_verify,
    "cotangent": cotangent_double_verify,
    "universal": universal_embedding_verify,
    "varpi": varpi_dual_check,
}


def _respond(report):
    return {"success": True, "data": verification_model(report)}


@router.get("/models")
async def list_models():
    return {"success": True, "data": list(MODEL_KINDS)}


# 샘플링은 CPU-bound 라서 sync 엔드포인트 (threadpool 에서 실행)
@router.post("/models/{model}")
def verify_model(model: str, request: VerifyRequest):
    """
    모델 axiom 잔차 검증 API

    Path Parameters:
    - model: disc | sphere | double | fused_double | exp_cotangent

    Request Body:
    - n, samples, seed, tol

    Response:
    - data: VerificationReport (identity 별 max residual, tolerance, verdict)
    """
    if model not in MODEL_KINDS:
        raise HTTPException(status_code=404, detail=f"Unknown model: {model}")
    try:
        return _respond(axiom_residuals(model, request.samples, request.seed, n=request.n, tol=request.tol))
    except ValueError as e:
        raise HTTPException(status_code=400, detail=str(e))
    except FiniteDifferenceError as e:
        logger.error(f"Finite differences failed for {model}: {e}")
        raise HTTPException(status_code=500, detail=f"Failed to verify {model}: {str(e)}")
    except Exception as e:
        raise HTTPException(status_code=500, detail=f"Failed to verify {model}: {str(e)}")


@router.post("/sphere")
def verify_sphere(request: VerifyRequest):
    try:
        levels = request.levels or DEFAULT_LEVELS
        return _respond(sphere_reduction_check(request.n, levels, request.samples, request.seed, tol=request.tol))
    except ValueError as e:
        raise HTTPException(status_code=400, detail=str(e))
    except Exception as e:
        raise HTTPException(status_code=500, detail=f"Failed to verify sphere reduction: {str(e)}")


@router.post("/{check}")
def verify_check(check: str, request: VerifyRequest):
    """
    Path Parameters:
    - check: glue | cotangent | universal | varpi
    """
    runner = _CHECKS.get(check)
    if runner is None:
        raise HTTPException(status_code=404, detail=f"Unknown check: {check}. Known: {', '.join(_CHECKS)}")
    try:
        return _respond(runner(request.n, request.samples, request.seed, tol=request.tol))
    except ValueError as e:
        raise HTTPException(status_code=400, detail=str(e))
    except Exception as e:
        raise HTTPException(status_code=500, detail=f"Failed to run {check} verification: {str(e)}")
