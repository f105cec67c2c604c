#!/usr/bin/env python3
"""Seed a store directory with the bundled cyclone-vessel example dataset."""

import argparse
import sys
from pathlib import Path

try:
    from viewfilter import fixture
except ImportError:
    sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))
    from viewfilter import fixture


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("root", nargs="?", default="store", help="store root directory (default: ./store)")
    args = parser.parse_args()

    root = Path(args.root)
    if (root / "model" / "CURRENT").exists():
        print(f"refusing to seed: {root} already holds a model", file=sys.stderr)
        return 1
    store = fixture.seed_store(root)
    print(f"seeded store at {root.resolve()}")
    print(f"  model version: {store.current_version()}")
    print(f"  actors:        {', '.join(a.id for a in store.list_actors())}")
    print(f"  viewpoints:    {', '.join(vp.id for vp in store.list_viewpoints())}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
