#!/usr/bin/env python3
"""
Write a seeded instance file.

Usage:
    python scripts/generate_instance.py pattern_set --param n=5 --param density=0.3 --seed 1
    python scripts/generate_instance.py measure --param size=16 --param dim=2 --seed 3 --out mu.txt
    python scripts/generate_instance.py process --param n=6 --param N=4 --seed 9
"""

import argparse
import json
import sys
from pathlib import Path

# Add src to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from loguru import logger

from src.core.errors import LabError
from src.instances import InstanceKind, generate_instance, parse_instance, write_instance


def parse_param(text: str) -> tuple:
    """key=value, value read as JSON when possible (numbers, true/false)"""
    if "=" not in text:
        raise argparse.ArgumentTypeError(f"expected key=value, got '{text}'")
    key, raw = text.split("=", 1)
    try:
        value = json.loads(raw)
    except json.JSONDecodeError:
        value = raw
    return key, value


def main() -> int:
    parser = argparse.ArgumentParser(description="Generate a seeded instance file")
    parser.add_argument("kind", choices=[k.value for k in InstanceKind], help="Instance kind")
    parser.add_argument(
        "--param",
        type=parse_param,
        action="append",
        default=[],
        help="Generator parameter as key=value (repeatable)",
    )
    parser.add_argument("--seed", type=int, required=True, help="Seed, 0 <= seed < 2^64")
    parser.add_argument("--out", type=Path, help="Output path (default: stdout)")
    args = parser.parse_args()

    try:
        text = generate_instance(args.kind, dict(args.param), args.seed)
        parse_instance(args.kind, text)
    except LabError as e:
        logger.error(f"✗ {e}")
        return 2

    if args.out is None:
        sys.stdout.write(text)
    else:
        write_instance(args.out, text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
