# main.py
import sys

from interfaz.cli import main

if __name__ == "__main__":
    sys.exit(main())
