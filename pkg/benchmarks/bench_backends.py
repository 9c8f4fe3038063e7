"""Time the same exact computations on the FLINT and pure-Python polynomial backends.

Each backend runs in a fresh interpreter (the backend is fixed at import
time by QVIR_BACKEND), so memo caches never leak between runs.

    python3 benchmarks/bench_backends.py [--repeat 3] [--only kac3,recursion3]
"""
from __future__ import annotations

import argparse
import json
import os
import subprocess
import sys

WORKLOADS = {
    "kac3": "from qvir.verma import kac_check; kac_check(3)",
    "gram4_abstract": "from qvir.verma import gram; gram(4, 'abstract')",
    "recursion3": "from qvir.agt import recursion_F; recursion_F(3)",
    "nekrasov3": "from qvir.agt import nekrasov_F; nekrasov_F(3)",
    "macdonald_deg4": ("from qvir.symfunc import macdonald; from qvir.partitions import partitions_of; "
                       "[macdonald(l) for l in partitions_of(4)]"),
    "classical_kac4": "from qvir.classical import kac_prime_check; kac_prime_check(4)",
}

RUNNER = """
import json, time
t0 = time.perf_counter()
{setup}
print(json.dumps({{"seconds": time.perf_counter() - t0}}))
"""


def time_one(backend: str, code: str) -> float:
    env = dict(os.environ, QVIR_BACKEND=backend)
    out = subprocess.run([sys.executable, "-c", RUNNER.format(setup=code)], env=env,
                         capture_output=True, text=True, check=True)
    return json.loads(out.stdout.strip().splitlines()[-1])["seconds"]


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=1)
    ap.add_argument("--only", help="comma-separated workload names")
    args = ap.parse_args(argv)
    names = args.only.split(",") if args.only else list(WORKLOADS)
    print(f"{'workload':<18}{'flint (s)':>12}{'pure (s)':>12}{'ratio':>9}")
    for name in names:
        best = {}
        for backend in ("flint", "pure"):
            best[backend] = min(time_one(backend, WORKLOADS[name]) for _ in range(args.repeat))
        ratio = best["pure"] / best["flint"] if best["flint"] else float("inf")
        print(f"{name:<18}{best['flint']:>12.3f}{best['pure']:>12.3f}{ratio:>8.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
