from typing import Optional

from fastapi import APIRouter, HTTPException, Query

from app.core.index_state import CensusLemma, projection_coherence, relation_census
from app.routers import erros_de_dominio
from app.schemas import CensusResponse, CoherenceResponse

router = APIRouter(prefix="/census", tags=["census"])


@router.get("/coherence", response_model=CoherenceResponse)
def coerencia(
    n: int = Query(4, ge=4),
    trials: int = Query(200, ge=1, le=20000),
    max_len: int = Query(12, ge=0, le=24),
    seed: Optional[int] = Query(None),
):
    """Compara pr(w) com pr(w') para w' a um movimento de relação de w"""
    with erros_de_dominio():
        report = projection_coherence(n, trials, max_len, seed)
    return CoherenceResponse(
        n=n,
        checked=report.checked,
        skipped=report.skipped,
        violations=len(report.violations),
        by_kind={k.value: v for k, v in report.by_kind.items()},
        unstable=len(report.unstable),
    )


@router.get("/{lemma}", response_model=CensusResponse)
def censo(
    lemma: str,
    n: int = Query(4, ge=4),
    samples: Optional[int] = Query(None, ge=1),
    seed: Optional[int] = Query(None),
    violations_only: bool = Query(True, description="Lista apenas as linhas com violação"),
):
    try:
        lemma = CensusLemma(lemma)
    except ValueError:
        raise HTTPException(status_code=404, detail=f"Censo '{lemma}' não encontrado")
    with erros_de_dominio():
        report = relation_census(n, lemma, samples, seed)
    rows = report.violations if violations_only else report.rows
    return CensusResponse(
        lemma=lemma.value,
        n=n,
        mode=report.mode,
        cases=len(report.rows),
        violations=len(report.violations),
        summary=report.violation_summary(),
        rows=[r.line() for r in rows],
    )
