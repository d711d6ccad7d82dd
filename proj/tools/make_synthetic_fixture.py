#!/usr/bin/env python3
"""Regenerate data/observations.csv: a synthetic 22-state x 31-indicator table.

Each indicator mixes a shared latent development factor with independent
noise and maps the result into a plausible raw range. The latent factor is
seeded from the published index values so the synthetic ranking looks
familiar, but none of the numbers are real observations.
"""

import csv
import math
import random
import sys
from pathlib import Path

STATES = {
    "Andhra Pradesh": 0.252, "Assam": 0.352, "Bihar": 0.260, "Chhattisgarh": 0.195,
    "Delhi": 0.853, "Gujarat": 0.321, "Haryana": 0.548, "Himachal Pradesh": 0.642,
    "J and K": 0.602, "Jharkhand": 0.282, "Karnataka": 0.360, "Kerala": 0.746,
    "Madhya Pradesh": 0.213, "Maharashtra": 0.513, "Odisha": 0.211, "Punjab": 0.522,
    "Rajasthan": 0.260, "Tamil Nadu": 0.450, "Telangana": 0.403, "Uttar Pradesh": 0.275,
    "Uttarakhand": 0.633, "West Bengal": 0.255,
}

# id -> (low, high, decimals) plausible raw range
RANGES = {
    "LIFE_EXP": (64.0, 76.0, 1), "ADB": (5.0, 60.0, 1), "UW": (15.0, 48.0, 1),
    "RUSCH": (40.0, 95.0, 1), "DRPOU": (5.0, 25.0, 1), "MEDU": (4.5, 10.5, 2),
    "GEPAR": (0.70, 1.35, 2), "CWSN": (10.0, 80.0, 1), "PUPMY": (15.0, 45.0, 1),
    "PUPUP": (12.0, 40.0, 1), "COMF": (2.0, 30.0, 1), "RUREL": (70.0, 100.0, 1),
    "INTFAC": (10.0, 60.0, 1), "ABUIN": (10.0, 60.0, 1), "OPCOM": (5.0, 40.0, 1),
    "VOCTR": (10.0, 120.0, 0), "UNPG": (5.0, 30.0, 1), "UNRUR": (10.0, 90.0, 0),
    "FERUR": (10.0, 45.0, 1), "SSB": (30.0, 75.0, 1), "HEAIN": (5.0, 70.0, 1),
    "CRST": (0.0, 15.0, 2), "CRSC": (2.0, 60.0, 1), "DISHIG": (1.0, 12.0, 2),
    "GERHC": (10.0, 35.0, 1), "GERHT": (5.0, 30.0, 1), "WORM": (20.0, 60.0, 1),
    "WPAIL": (30.0, 70.0, 1), "WJOCO": (45.0, 85.0, 1), "TAXPA": (1.0, 12.0, 2),
    "AVGWA": (800.0, 2500.0, 0),
}


def main(root: Path) -> None:
    rng = random.Random(20220531)
    with open(root / "data" / "indicators.csv", newline="") as f:
        meta = list(csv.DictReader(f))

    names = list(STATES)
    latent = [STATES[s] for s in names]
    mean = sum(latent) / len(latent)
    sd = math.sqrt(sum((v - mean) ** 2 for v in latent) / (len(latent) - 1))
    z = [(v - mean) / sd for v in latent]

    columns = []
    for row in meta:
        lo, hi, digits = RANGES[row["indicator_id"]]
        sign = 1.0 if row["direction"] == "positive" else -1.0
        rho = rng.uniform(0.25, 0.85)
        if rng.random() < 0.15:
            sign = -sign  # a few indicators run against the overall gradient
        col = []
        for zi in z:
            u = sign * rho * zi + math.sqrt(1.0 - rho * rho) * rng.gauss(0.0, 1.0)
            t = 0.5 + 0.5 * math.tanh(0.6 * u)
            col.append(round(lo + (hi - lo) * t, digits))
        columns.append(col)

    out = root / "data" / "observations.csv"
    with open(out, "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["state"] + [m["indicator_id"] for m in meta])
        for i, state in enumerate(names):
            w.writerow([state] + [f"{columns[c][i]:.{RANGES[meta[c]['indicator_id']][2]}f}"
                                  for c in range(len(meta))])
    print(f"wrote {out}")


if __name__ == "__main__":
    main(Path(sys.argv[1]) if len(sys.argv) > 1 else Path(__file__).resolve().parent.parent)
