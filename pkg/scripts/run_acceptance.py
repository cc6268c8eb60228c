"""Run every acceptance criterion and print one line per criterion.

    python3 scripts/run_acceptance.py [--only 1,5] [--report out.json]
"""
import sys

from hopspan.cli import main

if __name__ == "__main__":
    sys.exit(main(["demo", *sys.argv[1:]]))
