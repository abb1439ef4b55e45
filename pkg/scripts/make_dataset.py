#!/usr/bin/env python3
"""Generate a deterministic multi-asset synthetic price CSV.

The default geometry (12 assets, 16,031 five-minute rows) yields 262
sliding windows per asset at the standard window=360 / step=60 settings.
"""

import argparse

from cecplane import make_synthetic_dataset, write_dataset


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--assets", type=int, default=12, help="number of assets")
    parser.add_argument("--length", type=int, default=16_031, help="rows per asset")
    parser.add_argument("--seed", type=int, default=2017)
    parser.add_argument("--spacing", type=int, default=300,
                        help="seconds between consecutive rows")
    parser.add_argument("--out", default="dataset.csv")
    args = parser.parse_args()

    labels = [f"S{i:02d}" for i in range(args.assets)]
    dataset = make_synthetic_dataset(labels, args.length, seed=args.seed,
                                     spacing=args.spacing)
    digest = write_dataset(dataset, args.out)
    print(f"wrote {args.out}: {args.assets} assets x {args.length} rows, sha256 {digest}")


if __name__ == "__main__":
    main()
