#!/usr/bin/env python3
"""Recompute the headline constants table end to end.

Equivalent to `lipgrowth reproduce-abstract`; kept as a script so the whole
pipeline can be run and archived without remembering CLI flags.
"""
import sys

from lipgrowth.cli import main

if __name__ == "__main__":
    sys.exit(main(["reproduce-abstract", *sys.argv[1:]]))
