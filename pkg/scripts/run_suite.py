#!/usr/bin/env python3
"""Run every structural harness over freshly enumerated catalogs.

Example:
    python3 scripts/run_suite.py --size 5
"""

import sys

from dmm.cli import main

if __name__ == "__main__":
    args = sys.argv[1:] or ["--size", "5"]
    sys.exit(main(["suite", *args]))
