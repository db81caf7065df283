"""Dimension table and occupation statistics of the order-p Fock spaces.

For each (n, m, p) prints dim W_p and the number of states with total
occupation N = 0..p, which shows the order-p exclusion at work: a mode can
take a particle only while the others leave room below p.
"""
import argparse
from collections import Counter
from dataclasses import dataclass

from qfock.fockspace import FockParams, dim_formula, enumerate_basis


@dataclass
class TableConfig:
    max_n: int = 3
    max_m: int = 3
    max_p: int = 4


def occupation_profile(params: FockParams):
    counts = Counter(sum(r) for r in enumerate_basis(params))
    return [counts.get(k, 0) for k in range(params.p + 1)]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-n", type=int, default=3)
    ap.add_argument("--max-m", type=int, default=3)
    ap.add_argument("--max-p", type=int, default=4)
    a = ap.parse_args()
    cfg = TableConfig(a.max_n, a.max_m, a.max_p)
    print("dim W_p  (rows: (n,m), columns: p)")
    print("        " + "".join(f"{p:>7}" for p in range(cfg.max_p + 1)))
    for n in range(cfg.max_n + 1):
        for m in range(cfg.max_m + 1):
            if n + m == 0:
                continue
            dims = [dim_formula(FockParams(n, m, p)) for p in range(cfg.max_p + 1)]
            print(f"({n},{m})   " + "".join(f"{d:>7}" for d in dims))
    print()
    print("states by total occupation N for n = m = 2")
    for p in range(cfg.max_p + 1):
        print(f"p={p}: {occupation_profile(FockParams(2, 2, p))}")


if __name__ == "__main__":
    main()
