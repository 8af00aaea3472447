from fastapi import APIRouter

from app import config
from app.core.group_core import GWord, bounded_equal, generator_parity
from app.core.index_state import classify_word, project_once, stable_projection
from app.core.reconstruction import annular_invariants, kernel_witness, reconstruct_axis
from app.routers import erros_de_dominio
from app.schemas import (
    ClassifyResponse,
    EqualRequest,
    EqualResponse,
    KernelResponse,
    LetterStatusSchema,
    ParityResponse,
    ProjectRequest,
    ProjectResponse,
    ReconstructRequest,
    ReconstructResponse,
    WordRequest,
)

router = APIRouter(prefix="/words", tags=["words"])


@router.post("/classify", response_model=ClassifyResponse)
def classificar(req: WordRequest):
    """Status (bom/mau) de cada letra lida a partir do estado inicial"""
    with erros_de_dominio():
        classified = classify_word(GWord.parse(req.word, req.n))
    letters = [
        LetterStatusSchema(position=t, letter=str(st.letter), status=str(st), central=st.central)
        for t, st in enumerate(classified.statuses)
    ]
    return ClassifyResponse(
        word=str(classified.word),
        realisable=classified.realisable,
        bad_positions=list(classified.bad_positions),
        letters=letters,
    )


@router.post("/project", response_model=ProjectResponse)
def projetar(req: ProjectRequest):
    with erros_de_dominio():
        w = GWord.parse(req.word, req.n)
        if req.stable:
            projected, passes = stable_projection(w)
        else:
            projected, passes = project_once(w), 1
        realisable = classify_word(projected).realisable
    return ProjectResponse(word=str(projected), passes=passes, realisable=realisable)


@router.post("/parity", response_model=ParityResponse)
def paridade(req: WordRequest):
    with erros_de_dominio():
        w = GWord.parse(req.word, req.n)
        parity = generator_parity(w)
    return ParityResponse(word=str(w), zero=parity.is_zero(), parity=parity.as_dict())


@router.post("/equal", response_model=EqualResponse)
def igualdade(req: EqualRequest):
    """Busca limitada; Unknown quando o orçamento acaba"""
    depth = config.BRAID_SEARCH_DEPTH if req.depth is None else req.depth
    max_len = config.BRAID_SEARCH_MAX_LEN if req.max_len is None else req.max_len
    with erros_de_dominio():
        verdict = bounded_equal(GWord.parse(req.w1, req.n), GWord.parse(req.w2, req.n), depth, max_len)
    return EqualResponse(
        verdict=verdict.kind.value,
        moves=[str(m) for m in verdict.path],
        witness=verdict.witness,
        explored=verdict.explored,
    )


def _linking_key(pair) -> str:
    return f"{pair[0]},{pair[1]}"


@router.post("/reconstruct", response_model=ReconstructResponse)
def reconstruir(req: ReconstructRequest):
    with erros_de_dominio():
        cyl = reconstruct_axis(GWord.parse(req.word, req.n), req.axis)
    inv = annular_invariants(cyl)
    cycles = "".join("(" + " ".join(map(str, c)) + ")" for c in inv.cycles()) or "()"
    return ReconstructResponse(
        axis=cyl.axis,
        cyl_word=str(cyl),
        final_order=list(cyl.final_order),
        identity=inv.is_identity(),
        permutation=cycles,
        linking={_linking_key(p): str(v) for p, v in inv.linking.items()},
    )


@router.post("/kernel", response_model=KernelResponse)
def nucleo(req: WordRequest):
    with erros_de_dominio():
        verdict = kernel_witness(GWord.parse(req.word, req.n))
    return KernelResponse(
        verdict=verdict.kind.value,
        axis=verdict.axis,
        pair=list(verdict.pair) if verdict.pair else None,
        detail=verdict.detail,
    )
