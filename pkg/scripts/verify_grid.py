"""Run every relation check over a parameter grid and tabulate the outcome.

    python scripts/verify_grid.py [--chevalley] [--json results/grid.json]
"""
import argparse
import json
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Tuple

from qfock.chevalley import DEFAULT_SAMPLES, verify_chevalley
from qfock.fockspace import FockParams
from qfock.operators import Generators
from qfock.relations import report_json, verify_all
from qfock.report import summarize


@dataclass
class GridConfig:
    cases: List[Tuple[int, int, int]] = field(default_factory=lambda: [
        (1, 1, 2), (2, 1, 2), (1, 2, 2), (2, 2, 3),
        (1, 0, 0), (1, 0, 1), (1, 0, 2), (0, 1, 1), (0, 2, 2),
    ])
    chevalley: bool = False
    numeric_q: float = 0.7
    tol: float = 1e-10


def run(cfg: GridConfig):
    rows, dumps = [], []
    for case in cfg.cases:
        params = FockParams(*case)
        t0 = time.perf_counter()
        g = Generators.exact(params)
        reports = verify_all(g)
        if cfg.chevalley and params.n + params.m >= 1:
            reports += verify_chevalley(params, DEFAULT_SAMPLES, g)
        t_exact = time.perf_counter() - t0
        numeric = summarize(verify_all(Generators.numeric(params, cfg.numeric_q), cfg.tol))
        s = summarize(reports)
        rows.append((case, g.basis.dim, s, numeric, t_exact))
        dumps.append(report_json(params, "exact", reports))
    return rows, dumps


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--chevalley", action="store_true")
    ap.add_argument("--json", type=Path)
    args = ap.parse_args()
    cfg = GridConfig(chevalley=args.chevalley)
    rows, dumps = run(cfg)
    print(f"{'(n,m,p)':>9} {'dim':>4} {'pass':>5} {'skip':>5} {'fail':>5} {'num fail':>8} {'time':>7}")
    for case, dim, s, num, t in rows:
        nf = "-" if num is None else str(num["failed"])
        print(f"{str(case):>9} {dim:>4} {s['passed']:>5} {s['skipped']:>5} {s['failed']:>5} {nf:>8} {t:>6.2f}s")
    if args.json:
        args.json.parent.mkdir(parents=True, exist_ok=True)
        args.json.write_text(json.dumps(dumps, indent=1))
    return 1 if any(s["failed"] for _, _, s, _, _ in rows) else 0


if __name__ == "__main__":
    raise SystemExit(main())
