"""
Checks Router
Centralizer intersection, integrality triples and the SU(n) stabilizer pattern
"""
from fastapi import APIRouter, HTTPException

from app.engine.implosion import (
    centralizer_intersection_check,
    integrality_triple_check,
    su_stabilizer_pattern_check,
)
from app.engine.moduli import dk_cross_validation
from app.engine.rootsys import build_root_system
from app.utils.serialize import check_model

router = APIRouter(prefix="/api/checks", tags=["Checks"])

_GROUP_CHECKS = {
    "centralizer": centralizer_intersection_check,
    "integrality": integrality_triple_check,
    "dk-dimensions": dk_cross_validation,
}


@router.get("/su-embedding/{n}")
async def check_su_embedding(n: int):
    try:
        return {"success": True, "data": check_model(su_stabilizer_pattern_check(n))}
    except ValueError as e:
        raise HTTPException(status_code=400, detail=str(e))
    except Exception as e:
        raise HTTPException(status_code=500, detail=f"Failed to run SU embedding check: {str(e)}")


@router.get("/{check}/{type_label}/{rank}")
async def run_group_check(check: str, type_label: str, rank: int):
    """
    그룹 단위 검사 API

    Path Parameters:
    - check: centralizer | integrality | dk-dimensions
    - type_label, rank: 루트 시스템

    Response:
    - data: CheckReport (name, group, passed, rows, notes)
    """
    runner = _GROUP_CHECKS.get(check)
    if runner is None:
        raise HTTPException(status_code=404, detail=f"Unknown check: {check}. Known: {', '.join(_GROUP_CHECKS)}")
    try:
        datum = build_root_system(type_label, rank)
        return {"success": True, "data": check_model(runner(datum))}
    except ValueError as e:
        raise HTTPException(status_code=400, detail=str(e))
    except Exception as e:
        raise HTTPException(status_code=500, detail=f"Failed to run {check} check: {str(e)}")
