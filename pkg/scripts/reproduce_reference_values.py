#!/usr/bin/env python3
"""Recompute every reference number and print the comparison table.

Usage: python scripts/reproduce_reference_values.py [--filter GROUP] [--json PATH]
"""
import sys

from spawit.cli import main

if __name__ == "__main__":
    sys.exit(main(["reproduce", *sys.argv[1:]]))
