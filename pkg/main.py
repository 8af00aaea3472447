"""
Ponto de entrada da linha de comando:
python main.py <subcomando> [opções]

Para a API HTTP use:
python run.py
"""
import sys

from app.cli import run

if __name__ == "__main__":
    sys.exit(run(sys.argv[1:]))
