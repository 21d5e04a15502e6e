"""
Punto de entrada de bddzip
Uso: python app.py {compress,decompress,stats,bench} ...
"""

import sys

from bddzip.cli import main

if __name__ == "__main__":
    sys.exit(main())
