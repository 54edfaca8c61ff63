"""Compare the compiled and pure-Python transport kernels.

    python benchmarks/bench_kernels.py [--cartan D4] [--lambda 0,1,0,0] [--repeat 3]

Each backend rebuilds the GGMS datum of every node of MV(lambda) from its
Lusztig datum (move transport over all reduced words of w0 followed by the
vertex accumulation).  Results are checked to agree before timing is reported.
"""
import argparse
import time

from mvcr import kernel
from mvcr.mvcrystal import context, crystal
from mvcr.rootdata import build_cartan


def run(backend, plan, data, lam):
    out = []
    for n in data:
        mu, bad = kernel.rebuild(plan, n, lam, backend=backend)
        assert bad == -1
        out.append(mu)
    return out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--cartan", default="D4")
    ap.add_argument("--lambda", dest="lam", default="0,1,0,0")
    ap.add_argument("--repeat", type=int, default=3)
    a = ap.parse_args()
    cd = build_cartan(a.cartan)
    lam = tuple(int(t) for t in a.lam.split(","))
    ctx = context(cd)
    B = crystal(cd, lam)
    plan = ctx.plan(ctx.base_word)
    data = [P.lusztig().n for P in B]
    print(f"{a.cartan} lambda={lam}: {len(B)} nodes, {plan.nwords} reduced words of w0")

    backends = ["python"] + (["cython"] if kernel._kernel_c is not None else [])
    results, times = {}, {}
    for b in backends:
        best = float("inf")
        for _ in range(a.repeat):
            t = time.perf_counter()
            results[b] = run(b, plan, data, lam)
            best = min(best, time.perf_counter() - t)
        times[b] = best
    if len(backends) == 2:
        assert results["python"] == results["cython"], "backends disagree"
    for b in backends:
        print(f"  {b:7s} {times[b] * 1e3:9.1f} ms  ({times[b] / len(data) * 1e3:.2f} ms/node)")
    if len(backends) == 2:
        print(f"  speedup {times['python'] / times['cython']:.1f}x")
    else:
        print("  compiled kernel not built; only the fallback was timed")


if __name__ == "__main__":
    main()
