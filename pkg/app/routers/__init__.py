# Routers da API
from contextlib import contextmanager

from fastapi import HTTPException

from app.errors import BraidError, InputError


@contextmanager
def erros_de_dominio():
    """Traduz InputError para 400 e BraidError para 422"""
    try:
        yield
    except InputError as exc:
        raise HTTPException(status_code=400, detail=str(exc))
    except BraidError as exc:
        raise HTTPException(status_code=422, detail=f"{type(exc).__name__}: {exc}")
