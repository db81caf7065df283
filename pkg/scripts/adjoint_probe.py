"""Compare the normalized a_i^+ against two candidate adjoints of a_i^-.

Plain transpose at the same q fails whenever a phase q^(r_1+...+r_{i-1})
is nontrivial; transposing a_i^- taken at 1/q reproduces a_i^+ exactly.
"""
import argparse
from dataclasses import dataclass

from qfock.fockspace import FockParams, enumerate_basis
from qfock.operators import build_normalized_numeric


@dataclass
class ProbeConfig:
    n: int = 2
    m: int = 1
    p: int = 2
    q: float = 0.7


def probe(cfg: ProbeConfig):
    basis = enumerate_basis(FockParams(cfg.n, cfg.m, cfg.p))
    out = []
    for i in basis.params.indices():
        plus = build_normalized_numeric(basis, i, 1, cfg.q)
        minus = build_normalized_numeric(basis, i, -1, cfg.q)
        twisted = build_normalized_numeric(basis, i, -1, 1 / cfg.q)
        keys = set(plus.entries) | {(c, r) for r, c in minus.entries}
        plain = max((abs(abs(plus[k]) - abs(minus[(k[1], k[0])])) for k in keys), default=0.0)
        tw = max((abs(plus[k] - twisted[(k[1], k[0])]) for k in keys), default=0.0)
        out.append((i, plain, tw))
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for name, default in (("n", 2), ("m", 1), ("p", 2)):
        ap.add_argument(f"--{name}", type=int, default=default)
    ap.add_argument("--q", type=float, default=0.7)
    a = ap.parse_args()
    cfg = ProbeConfig(a.n, a.m, a.p, a.q)
    print(f"(n,m,p)=({cfg.n},{cfg.m},{cfg.p}) q={cfg.q}")
    print(f"{'i':>3} {'max ||a+|-|a-^T||':>20} {'max |a+(q)-a-(1/q)^T|':>24}")
    for i, plain, tw in probe(cfg):
        print(f"{i:>3} {plain:>20.3e} {tw:>24.3e}")


if __name__ == "__main__":
    main()
