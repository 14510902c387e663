#!/usr/bin/env python3
"""Dump all Weil-lift matrices for a chosen prime to JSON.

    python3 scripts/dump_weil_matrices.py --p 5 --zeta 2 --out weil_p5.json
"""

import argparse
import sys

from heisweil.cli import run


def main() -> int:
    parser = argparse.ArgumentParser()
    parser.add_argument("--p", type=int, default=3)
    parser.add_argument("--zeta", type=int, default=1)
    parser.add_argument("--model", choices=["plus", "minus"], default="minus")
    parser.add_argument("--out", default=None)
    args = parser.parse_args()
    argv = [
        "weil", "dump", "--p", str(args.p), "--ell", "1",
        "--zeta", str(args.zeta), "--model", args.model,
    ]
    if args.out:
        argv += ["--out", args.out]
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())
