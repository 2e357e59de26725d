"""Reconstruct the bundled tiny resultants and check their height bounds."""

import argparse
import time
from dataclasses import dataclass
from importlib import resources

from sparseres.problem import load_problem
from sparseres.reconstruct import reconstruct, verify_height_bound
from sparseres.supports import analyze


@dataclass
class ReconstructConfig:
    precision: int = 256
    seed: int = 0


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--precision", type=int, default=ReconstructConfig.precision)
    parser.add_argument("--seed", type=int, default=ReconstructConfig.seed)
    args = parser.parse_args(argv)
    cfg = ReconstructConfig(args.precision, args.seed)
    root = resources.files("sparseres") / "fixtures"
    for entry in sorted(root.iterdir(), key=lambda p: p.name):
        if not entry.name.endswith(".json"):
            continue
        prob = load_problem(entry.read_text())
        if len(prob.supports) != prob.n + 1:
            continue
        fam = prob.family()
        if analyze(fam).resultant_trivial:
            continue
        start = time.perf_counter()
        p = reconstruct(fam, precision=cfg.precision, seed=cfg.seed)
        height, bound, ok = verify_height_bound(p, fam)
        print(f"{entry.name}: multidegree {p.multidegree}, {len(p)} terms, {time.perf_counter() - start:.2f}s")
        print(f"  height {height:.4f} <= {bound:.4f}: {ok}")
        text = p.to_text()
        print(f"  {text if len(text) < 400 else text[:400] + ' ...'}")


if __name__ == "__main__":
    main()
