#!/usr/bin/env python3
"""
Run verification suites without installing the package.

Usage:
    python scripts/lab.py cube --n 4 --p 0.5 --seed 7
    python scripts/lab.py all --seed 42 --out report.json
"""

import sys
from pathlib import Path

# Add src to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from src.cli import main

if __name__ == "__main__":
    sys.exit(main())
