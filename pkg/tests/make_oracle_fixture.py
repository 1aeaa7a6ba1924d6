"""Regenerate data/residual_oracle.json from the brute-force oracle.

    python tests/make_oracle_fixture.py
"""
from __future__ import annotations

import json
from pathlib import Path

from oracle import residual_report

OUT = Path(__file__).parent / "data" / "residual_oracle.json"


def main():
    table = {}
    for m in range(1, 5):
        for n in range(1, 5):
            for k in range(m * n + 1):
                table[f"{m}-{n}-{k}"] = residual_report(m, n, k)
    OUT.write_text(json.dumps(table, indent=1, sort_keys=True) + "\n")
    print(f"wrote {len(table)} entries to {OUT}")


if __name__ == "__main__":
    main()
