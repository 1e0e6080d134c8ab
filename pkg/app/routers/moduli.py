"""
Moduli Router
Flat-connection sampling and master moduli space dimension bookkeeping
"""
from fastapi import APIRouter, HTTPException

from app.engine.moduli import (
    SurfaceData,
    expected_dimensions,
    moment_equivariance_check,
    sample_flat_connection,
    sampler_report,
)
from app.engine.rootsys import build_root_system
from app.spec.models import DimensionRequest, SampleRequest
from app.utils.serialize import dimension_model, flat_connection_model, verification_model

router = APIRouter(prefix="/api/moduli", tags=["Moduli"])


@router.post("/sample")
def sample_representations(request: SampleRequest):
    """
    Hom 관계 Φ_{n+1} = I 를 만족하는 점 샘플링 및 잔차 리포트

    Response:
    - data.point: 첫 샘플의 잔차 요약
    - data.sampler / data.equivariance: VerificationReport
    """
    try:
        surface = SurfaceData(request.g, request.n)
        point = sample_flat_connection(surface, request.size, request.seed)
        sampler = sampler_report(surface, request.size, request.samples, request.seed, tol=request.tol)
        equivariance = moment_equivariance_check(surface, point, request.samples, request.seed, tol=request.tol)
        return {
            "success": True,
            "data": {
                "point": flat_connection_model(point),
                "sampler": verification_model(sampler),
                "equivariance": verification_model(equivariance),
            },
        }
    except ValueError as e:
        raise HTTPException(status_code=400, detail=str(e))
    except Exception as e:
        raise HTTPException(status_code=500, detail=f"Failed to sample flat connections: {str(e)}")


@router.post("/dimensions")
async def get_dimensions(request: DimensionRequest):
    try:
        datum = build_root_system(request.type, request.rank)
        surface = SurfaceData(request.g, request.n)
        faces = request.faces or ["A"] * surface.punctures
        return {"success": True, "data": dimension_model(expected_dimensions(surface, datum, faces))}
    except ValueError as e:
        raise HTTPException(status_code=400, detail=str(e))
    except Exception as e:
        raise HTTPException(status_code=500, detail=f"Failed to compute dimensions: {str(e)}")
