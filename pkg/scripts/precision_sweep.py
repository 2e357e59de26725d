"""Stability of the Poisson evaluation as the working precision grows.

For a fixed random system on the corner-triangle supports, prints |Res| at
each precision and its relative distance to the highest-precision value.
"""

import argparse
import random
from dataclasses import dataclass

import mpmath

from sparseres import LaurentPolynomial, NumericOptions, eval_sparse_resultant
from sparseres.supports import SupportFamily

CORNER_TRIANGLES = SupportFamily.of(
    [[(0, 0), (-1, 0), (0, -1)], [(0, 0), (-1, 0), (0, -1)], [(0, 0), (1, 0), (0, 1), (0, 2)]]
)


@dataclass
class PrecisionConfig:
    precisions: tuple = (53, 80, 120, 200, 400)
    seed: int = 0


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--precisions", type=int, nargs="+", default=list(PrecisionConfig.precisions))
    args = parser.parse_args(argv)
    cfg = PrecisionConfig(tuple(sorted(args.precisions)), args.seed)
    rng = random.Random(cfg.seed)
    polys = [
        LaurentPolynomial(2, {p: mpmath.mpc(rng.uniform(-1, 1), rng.uniform(-1, 1)) for p in a})
        for a in CORNER_TRIANGLES.supports
    ]
    values = {}
    for prec in cfg.precisions:
        values[prec] = eval_sparse_resultant(CORNER_TRIANGLES, polys, NumericOptions(precision=prec)).value
    with mpmath.workprec(max(cfg.precisions) + 32):
        ref = values[max(cfg.precisions)]
        for prec, val in values.items():
            err = abs(val - ref) / abs(ref)
            print(f"{prec:5d} bits  |Res| = {mpmath.nstr(abs(val), 20)}  rel. diff {mpmath.nstr(err, 3)}")


if __name__ == "__main__":
    main()
