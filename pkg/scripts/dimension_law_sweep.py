"""Sweep random field models inside M_n(k) and count a-tight corner maps.

Each model is the k-span of powers of a conjugated companion matrix of a
random irreducible polynomial, so dim_k F^ = n.  Only a = 1 and a = n can be
tight; any other hit is printed as an exception.
"""

import argparse
import time
from collections import Counter
from dataclasses import dataclass

from tightlab import zoo
from tightlab.scalars import FieldSpec
from tightlab.tightness import is_a_tight


@dataclass
class SweepConfig:
    count: int = 100
    degrees: tuple = (3, 4)
    field: str = "Q"
    first_seed: int = 0
    check: bool = False


def sweep(cfg: SweepConfig):
    field = FieldSpec.parse(cfg.field)
    hits = Counter()
    exceptions = []
    for t in range(cfg.count):
        seed = cfg.first_seed + t
        n = cfg.degrees[t % len(cfg.degrees)]
        M = zoo.random_field_model(seed, n, field=field, check=cfg.check)
        for a in range(1, n + 1):
            if is_a_tight(M, a).tight:
                hits[(n, a)] += 1
                if 1 < a < n:
                    exceptions.append((M.name, a))
    return hits, exceptions


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--count", type=int, default=SweepConfig.count)
    p.add_argument("--degrees", type=int, nargs="+", default=list(SweepConfig.degrees))
    p.add_argument("--field", default=SweepConfig.field, help="Q or GF(p)")
    p.add_argument("--first-seed", type=int, default=SweepConfig.first_seed)
    p.add_argument("--check", action="store_true", help="also validate each model (slow)")
    args = p.parse_args()
    cfg = SweepConfig(args.count, tuple(args.degrees), args.field, args.first_seed, args.check)
    start = time.perf_counter()
    hits, exceptions = sweep(cfg)
    elapsed = time.perf_counter() - start
    per_n = Counter(cfg.degrees[t % len(cfg.degrees)] for t in range(cfg.count))
    for (n, a), c in sorted(hits.items()):
        print(f"n={n} a={a}: {c}/{per_n[n]} tight")
    print(f"exceptions: {len(exceptions)}")
    for name, a in exceptions:
        print(f"  {name} is {a}-tight")
    print(f"{cfg.count} models in {elapsed:.2f}s")


if __name__ == "__main__":
    main()
