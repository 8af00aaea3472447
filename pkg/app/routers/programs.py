from fastapi import APIRouter, Query

from app.core.geometry import (
    compile_program,
    embed_at_infinity,
    full_twist_linear_program,
    full_twist_program,
    pure_braid_generator_program,
)
from app.core.index_state import classify_word
from app.routers import erros_de_dominio
from app.schemas import CompileResponse, ProgramSchema

router = APIRouter(prefix="/programs", tags=["programs"])


@router.post("/compile", response_model=CompileResponse)
def compilar(program: ProgramSchema):
    """Eventos de colinearidade do programa e a palavra correspondente"""
    with erros_de_dominio():
        out = compile_program(program.to_program())
        realisable = classify_word(out.word, out.initial_state).realisable
    return CompileResponse.from_output(out, realisable)


@router.post("/embed", response_model=ProgramSchema)
def mergulhar(program: ProgramSchema):
    """Acrescenta o fio n+1 parado no infinito"""
    with erros_de_dominio():
        embedded = embed_at_infinity(program.to_program())
    return ProgramSchema.from_program(embedded)


@router.get("/full-twist", response_model=ProgramSchema)
def torcao_completa(
    n: int = Query(..., ge=4, description="Número de fios"),
    turns: int = Query(1, description="Voltas (não nulo)"),
    linear: bool = Query(False, description="Só movimentos retilíneos; aceita o mergulho no infinito"),
):
    with erros_de_dominio():
        if linear:
            program = full_twist_linear_program(n).power(turns)
        else:
            program = full_twist_program(n, turns)
    return ProgramSchema.from_program(program)


@router.get("/pure-braid", response_model=ProgramSchema)
def gerador_puro(
    n: int = Query(..., ge=4, description="Número de fios"),
    i: int = Query(..., ge=1, description="Fio que dá a volta"),
    j: int = Query(..., ge=1, description="Fio contornado"),
    power: int = Query(1, description="Expoente k de A_ij^k"),
):
    with erros_de_dominio():
        program = pure_braid_generator_program(n, i, j).power(power)
    return ProgramSchema.from_program(program)
