#!/usr/bin/env python3
"""Benchmark the compiled search kernel against the pure-Python fallback.

Runs the same exhaustive countermodel searches through both backends and
prints wall times plus the speedup.  Usage:

    python benchmarks/bench_search.py [--quick]
"""

import argparse
import time

from plausible import _kernel_py
from plausible.search import compile_program
from plausible.syntax import atoms_of, parse

try:
    from plausible import _kernel
except ImportError:
    _kernel = None

CASES = [
    # (label, formula, class id, max worlds, atom count)
    ("K on constrained, 3 worlds", "[](p0 -> p1) -> []p0 -> []p1", _kernel_py.CLASS_CONSTRAINED, 3, 2),
    ("K on constrained, 4 worlds", "[](p0 -> p1) -> []p0 -> []p1", _kernel_py.CLASS_CONSTRAINED, 4, 2),
    ("T on raw, 2 worlds", "[]p0 -> p0", _kernel_py.CLASS_RAW, 2, 1),
    ("5 on all frames, 4 worlds", "<>p0 -> []<>p0", _kernel_py.CLASS_KRIPKE_ALL, 4, 1),
    ("5 on equivalence frames, 4 worlds", "<>p0 -> []<>p0", _kernel_py.CLASS_KRIPKE_EQUIV, 4, 1),
]

QUICK_SKIP = {"K on constrained, 4 worlds"}


def run_case(module, case):
    _, text, class_id, worlds, natoms = case
    f = parse(text)
    slots = {a: i for i, a in enumerate(sorted(atoms_of(f)))}
    prog = compile_program(f, slots)
    start = time.perf_counter()
    result = module.run_search(class_id, worlds, natoms, [prog])
    return time.perf_counter() - start, result


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--quick", action="store_true", help="skip the largest case")
    args = parser.parse_args()

    if _kernel is None:
        print("compiled kernel not built; run `pip install -e .` with Cython available")

    header = f"{'case':40} {'models':>9} {'python':>10} {'compiled':>10} {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for case in CASES:
        if args.quick and case[0] in QUICK_SKIP:
            continue
        py_time, py_result = run_case(_kernel_py, case)
        if _kernel is not None:
            cy_time, cy_result = run_case(_kernel, case)
            if py_result != cy_result:
                raise SystemExit(f"backend disagreement on {case[0]}: {py_result} vs {cy_result}")
            speed = f"{py_time / cy_time:7.1f}x"
            cy_text = f"{cy_time * 1e3:8.1f}ms"
        else:
            speed = "     n/a"
            cy_text = "       n/a"
        print(
            f"{case[0]:40} {py_result[1]:>9} {py_time * 1e3:8.1f}ms {cy_text} {speed}"
        )


if __name__ == "__main__":
    main()
