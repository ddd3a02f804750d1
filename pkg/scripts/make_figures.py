#!/usr/bin/env python3
"""Regenerate the six figure CSV/SVG pairs into figures/ (or a given dir)."""

import sys

from kstruve.cli import main

if __name__ == "__main__":
    out_dir = sys.argv[1] if len(sys.argv) > 1 else "figures"
    import os

    os.makedirs(out_dir, exist_ok=True)
    raise SystemExit(main(["figures", "--out-dir", out_dir]))
