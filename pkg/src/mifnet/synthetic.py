"""Seeded synthetic tables for demos and verification.

The planted table carries four blocks of five mutually dependent features
plus four independent noise features, so the expected backbone structure is
known by construction. Each block is built around a hub: a near-noiseless
copy of the block's latent variable whose edges to the four noisier members
(two continuous copies, a quartile band, a sign flag) dominate the
member-to-member edges, so blocks assemble as stars rather than fragmenting
into disjoint pairs during the significance sweep. The demo table adds
sprinkled nulls.
"""

from __future__ import annotations

import csv
from pathlib import Path

import numpy as np

N_BLOCKS = 4
BLOCK_SIZE = 5

_BAND_TOKENS = ("q1", "q2", "q3", "q4")
_HUB_NOISE = 0.05
_MEMBER_NOISE = 0.4


def planted_block_of(name: str) -> int | None:
    """Block index encoded in a planted feature name, None for noise."""
    if name.startswith("b") and "_" in name:
        return int(name[1 : name.index("_")])
    return None


def make_planted_rows(n_records: int = 1200, seed: int = 15):
    """Header plus string rows for the planted-structure table."""
    rng = np.random.default_rng(seed)
    header: list[str] = []
    columns: list[list[str]] = []

    def add(name, cells):
        header.append(name)
        columns.append(cells)

    for b in range(N_BLOCKS):
        latent = rng.standard_normal(n_records)

        def noisy(scale=_MEMBER_NOISE):
            return latent + scale * rng.standard_normal(n_records)

        add(f"b{b}_hub", [repr(float(v)) for v in noisy(_HUB_NOISE)])
        add(f"b{b}_val0", [repr(float(v)) for v in noisy()])
        add(f"b{b}_val1", [repr(float(v)) for v in noisy()])
        banded = noisy()
        quartiles = np.quantile(banded, [0.25, 0.5, 0.75])
        add(
            f"b{b}_band",
            [_BAND_TOKENS[int(np.searchsorted(quartiles, v))] for v in banded],
        )
        add(f"b{b}_flag", ["yes" if v > 0 else "no" for v in noisy()])

    add("noise_val0", [repr(float(v)) for v in rng.standard_normal(n_records)])
    add("noise_val1", [repr(float(v)) for v in rng.standard_normal(n_records)])
    add("noise_cat", [str(rng.choice(["a", "b", "c"])) for _ in range(n_records)])
    add("noise_flag", [str(rng.choice(["t", "f"])) for _ in range(n_records)])

    rows = [[col[r] for col in columns] for r in range(n_records)]
    return header, rows


def write_planted_csv(path, n_records: int = 1200, seed: int = 15):
    header, rows = make_planted_rows(n_records, seed)
    _write_csv(path, header, rows)


def write_demo_csv(path, n_records: int = 1200, seed: int = 15):
    """Planted table with ~2% nulls in a few columns, for smoke runs."""
    header, rows = make_planted_rows(n_records, seed)
    rng = np.random.default_rng(seed + 1)
    for col in ("b0_val0", "b2_band", "noise_cat"):
        idx = header.index(col)
        for r in range(n_records):
            if rng.random() < 0.02:
                rows[r][idx] = ""
    _write_csv(path, header, rows)


def _write_csv(path, header, rows):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)


if __name__ == "__main__":
    import sys

    target = Path(sys.argv[1]) if len(sys.argv) > 1 else Path("data/demo.csv")
    write_demo_csv(target)
    print(f"wrote {target}")
