#!/usr/bin/env python3
"""Run the built-in experiment reproduction and exit nonzero on any mismatch."""

import sys

from schedsim.cli import main

if __name__ == "__main__":
    sys.exit(main(["reproduce", "all"]))
