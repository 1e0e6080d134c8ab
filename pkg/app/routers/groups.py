"""
Groups Router
Exact root-system, alcove and implosion-strata data for one simple type
"""
from fastapi import APIRouter, HTTPException

from app.engine.alcove import (
    chamber_face_count,
    edge_weight_check,
    enumerate_faces,
    face_of_point,
    reduce_to_alcove,
    toric_cut_data,
    vertices_and_centrality,
    with_gamma,
)
from app.engine.implosion import (
    alcove_symmetries,
    centralizer_table,
    smoothness_check,
    strata_table,
    zeta_homomorphism,
)
from app.engine.rootsys import build_root_system
from app.spec.models import FacesData, ReduceRequest, WeightsData
from app.utils.rational import fmt_vector, parse_rational
from app.utils.serialize import (
    datum_model,
    edge_weight_model,
    face_model,
    face_root_data_model,
    smoothness_model,
    stratum_model,
    symmetries_model,
    toric_model,
    vertex_model,
    zeta_model,
)

router = APIRouter(prefix="/api/groups", tags=["Groups"])


def _fail(action: str, e: Exception) -> HTTPException:
    if isinstance(e, ValueError):
        return HTTPException(status_code=400, detail=str(e))
    return HTTPException(status_code=500, detail=f"Failed to {action}: {str(e)}")


@router.get("/{type_label}/{rank}")
async def get_root_datum(type_label: str, rank: int):
    """
    루트 시스템 조회 API

    Response:
    - success: Boolean
    - data: simple roots/coroots, highest root, Cartan matrix, marks, center order
    """
    try:
        datum = build_root_system(type_label, rank)
        return {"success": True, "data": datum_model(datum)}
    except Exception as e:
        raise _fail("build root system", e)


@router.get("/{type_label}/{rank}/faces")
async def get_faces(type_label: str, rank: int):
    """
    Alcove face 목록, 꼭짓점 centrality, 면별 centralizer 데이터
    """
    try:
        datum = build_root_system(type_label, rank)
        poset = enumerate_faces(datum)
        data = FacesData(
            faces=[face_model(f) for f in poset.faces],
            census={str(d): c for d, c in sorted(poset.dimension_census().items())},
            chamberFaceCount=chamber_face_count(datum),
            vertices=[vertex_model(v) for v in vertices_and_centrality(datum)],
            centralizers=centralizer_table(datum),
            rootData=[face_root_data_model(with_gamma(datum, f)) for f in poset.faces],
        )
        return {"success": True, "data": data}
    except Exception as e:
        raise _fail("enumerate faces", e)


@router.get("/{type_label}/{rank}/strata")
async def get_strata(type_label: str, rank: int):
    try:
        datum = build_root_system(type_label, rank)
        return {"success": True, "data": [stratum_model(r) for r in strata_table(datum)]}
    except Exception as e:
        raise _fail("compute strata", e)


@router.get("/{type_label}/{rank}/weights")
async def get_weights(type_label: str, rank: int):
    """Toric cut weights m_i, lcm, l-coefficients and the edge-weight sign check"""
    try:
        datum = build_root_system(type_label, rank)
        edges = edge_weight_check(datum)
        data = WeightsData(
            toric=toric_model(toric_cut_data(datum)),
            edgeWeights=[edge_weight_model(e) for e in edges],
            edgeWeightsOk=all(e.ok for e in edges),
        )
        return {"success": True, "data": data}
    except Exception as e:
        raise _fail("compute weights", e)


@router.get("/{type_label}/{rank}/smooth")
async def get_smoothness(type_label: str, rank: int, face: str = None):
    """
    특이점 제거 가능성 판정

    Query Parameters:
    - face: face id ("w1.w2") 또는 꼭짓점 라벨 ("01"); 생략하면 모든 face
    """
    try:
        datum = build_root_system(type_label, rank)
        poset = enumerate_faces(datum)
        faces = [poset.by_id(face)] if face else list(poset.faces)
        return {"success": True, "data": [smoothness_model(smoothness_check(datum, f)) for f in faces]}
    except Exception as e:
        raise _fail("check smoothness", e)


@router.get("/{type_label}/{rank}/zeta")
async def get_zeta(type_label: str, rank: int):
    try:
        datum = build_root_system(type_label, rank)
        return {"success": True, "data": zeta_model(zeta_homomorphism(datum))}
    except Exception as e:
        raise _fail("compute zeta", e)


@router.get("/{type_label}/{rank}/symmetries")
async def get_symmetries(type_label: str, rank: int):
    try:
        datum = build_root_system(type_label, rank)
        return {"success": True, "data": symmetries_model(alcove_symmetries(datum))}
    except Exception as e:
        raise _fail("compute alcove symmetries", e)


@router.post("/{type_label}/{rank}/reduce")
async def reduce_point_to_alcove(type_label: str, rank: int, request: ReduceRequest):
    """
    Affine Weyl 환원

    Request Body:
    - point: ambient 좌표 ("p/q" 문자열)

    Response:
    - data: reduced point, linear Weyl word, coroot translation γ, containing face
    """
    try:
        datum = build_root_system(type_label, rank)
        reduction = reduce_to_alcove(datum, [parse_rational(c) for c in request.point])
        face = face_of_point(datum, reduction.xi_reduced)
        return {
            "success": True,
            "data": {
                "reduced": fmt_vector(reduction.xi_reduced),
                "word": list(reduction.linear_word),
                "translation": fmt_vector(reduction.translation),
                "steps": reduction.steps,
                "face": face_model(face),
            },
        }
    except Exception as e:
        raise _fail("reduce point", e)
