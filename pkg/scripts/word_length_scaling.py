"""Measure synthesized word length against the requested precision.

Synthesizes a batch of Haar-random single-qubit targets at a grid of
precisions and prints median/max word lengths plus achieved errors,
handy for eyeballing the poly(1/eps) growth of the ladder construction.

Usage: python scripts/word_length_scaling.py [--targets N] [--seed S]
       [--eps 0.1 0.05 0.025]
"""

import argparse
import json
import time

import numpy as np

from ftbasis import su2, synth, words


def haar_unitary(rng):
    z = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    q, r = np.linalg.qr(z)
    return q @ np.diag(r.diagonal() / np.abs(r.diagonal()))


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--targets", type=int, default=50)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument(
        "--eps", type=float, nargs="+", default=[0.1, 0.05, 0.025]
    )
    args = parser.parse_args()

    rng = np.random.default_rng(args.seed)
    targets = [haar_unitary(rng) for _ in range(args.targets)]
    rows = []
    for eps in args.eps:
        start = time.perf_counter()
        lengths, errors = [], []
        for target in targets:
            res = synth.approx_su2(target, eps)
            lengths.append(len(res.word))
            errors.append(res.achieved_error)
            assert su2.proj_distance(words.unitary(res.word), target) < eps
        rows.append(
            {
                "eps": eps,
                "medianLength": float(np.median(lengths)),
                "maxLength": int(np.max(lengths)),
                "medianError": float(np.median(errors)),
                "seconds": round(time.perf_counter() - start, 3),
            }
        )
    print(json.dumps({"targets": args.targets, "seed": args.seed, "rows": rows}, indent=2))


if __name__ == "__main__":
    main()
