import logging
import os
import sys

from dotenv import load_dotenv

load_dotenv()

# Limites da busca em largura (equal)
BRAID_SEARCH_DEPTH = int(os.getenv("BRAID_SEARCH_DEPTH", "1000"))
BRAID_SEARCH_MAX_LEN = int(os.getenv("BRAID_SEARCH_MAX_LEN", "8"))

# Censos amostrados (n >= 6) e experimentos aleatórios
CENSUS_SEED = int(os.getenv("CENSUS_SEED", "20240101"))
CENSUS_SAMPLES = int(os.getenv("CENSUS_SAMPLES", "4096"))

# Tentativas dos construtores de programas (gadgets e embedding)
GADGET_RETRIES = int(os.getenv("GADGET_RETRIES", "12"))
EMBED_RETRIES = int(os.getenv("EMBED_RETRIES", "16"))

LOG_LEVEL = os.getenv("LOG_LEVEL", "WARNING").upper()

# Configurações da API
API_HOST = os.getenv("API_HOST", "127.0.0.1")
API_PORT = int(os.getenv("API_PORT", "8000"))
API_DEBUG = os.getenv("API_DEBUG", "False").lower() == "true"


def configure_logging(level=None):
    """Instala um único handler em stderr; stdout fica livre para resultados"""
    root = logging.getLogger("app")
    if not root.handlers:
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(logging.Formatter("%(asctime)s %(levelname)s %(name)s: %(message)s"))
        root.addHandler(handler)
    root.setLevel((level or LOG_LEVEL).upper())
    return root
