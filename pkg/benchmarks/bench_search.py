"""Time the compiled and pure-Python search kernels on the same workloads.

    python3 benchmarks/bench_search.py [--repeat N] [--json]
"""

import argparse
import json
import statistics
import time

from amdfam import kernel, make_group
from amdfam.search import SearchSpec, search_family

WORKLOADS = {
    "sedf-z9-certify": lambda: SearchSpec.make(make_group(9), "SEDF", m=3, k=2, lam=1),
    "sedf-z3xz3-certify": lambda: SearchSpec.make(make_group(3, 3), "SEDF", m=3, k=2, lam=1),
    "ds-z21-all": lambda: SearchSpec.make(make_group(21), "DS", k=5, lam=1, mode="all"),
    "edf-z19-count": lambda: SearchSpec.make(make_group(19), "EDF", m=3, k=3, lam=3, mode="count"),
    "pedf-z13-count": lambda: SearchSpec.make(
        make_group(13), "PEDF", classes=[(2, 3), (1, 4), (3, 1)], lambdas=[5, 3, 3], mode="count"
    ),
}


def time_one(spec, backend, repeat):
    samples, cert = [], None
    for _ in range(repeat):
        t0 = time.perf_counter()
        cert = search_family(spec, backend=backend)
        samples.append(time.perf_counter() - t0)
    return statistics.median(samples), cert


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--only", help="substring filter on workload names")
    ap.add_argument("--json", action="store_true", help="emit machine-readable rows")
    args = ap.parse_args(argv)

    backends = [b for b in ("python", "cython") if b in kernel.BACKENDS]
    rows = []
    for name, make in WORKLOADS.items():
        if args.only and args.only not in name:
            continue
        spec = make()
        row = {"workload": name}
        certs = {}
        for b in backends:
            row[b], certs[b] = time_one(spec, b, args.repeat)
        row["nodes"] = certs[backends[0]].nodes
        row["agree"] = len({json.dumps(c.to_json(), sort_keys=True) for c in certs.values()}) == 1
        if "cython" in row:
            row["speedup"] = row["python"] / row["cython"] if row["cython"] else float("inf")
        rows.append(row)

    if args.json:
        print(json.dumps(rows, indent=2))
        return 0
    print(f"{'workload':<22}{'nodes':>10}{'python s':>12}{'cython s':>12}{'speedup':>10}  agree")
    for r in rows:
        cy = f"{r['cython']:.4f}" if "cython" in r else "-"
        sp = f"{r['speedup']:.1f}x" if "speedup" in r else "-"
        print(f"{r['workload']:<22}{r['nodes']:>10}{r['python']:>12.4f}{cy:>12}{sp:>10}  {r['agree']}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
