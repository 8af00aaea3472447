"""
Script para executar a API FastAPI
"""
import uvicorn

from app import config

if __name__ == "__main__":
    print(f"Iniciando servidor em http://{config.API_HOST}:{config.API_PORT}")
    print(f"Documentação disponível em http://{config.API_HOST}:{config.API_PORT}/docs")

    uvicorn.run(
        "app.main:app",
        host=config.API_HOST,
        port=config.API_PORT,
        reload=config.API_DEBUG
    )
