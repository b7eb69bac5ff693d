"""Acceptance criteria, each run at its stated tolerance and time budget.

Every test records a single PASS/FAIL line, printed in the pytest summary
(section "acceptance criteria") and also when this file is run directly.
"""

import json
import time

import numpy as np

from conftest import (ACCEPTANCE_LINES, BIJ_X, BIJ_Y, BIJ_Z, DN0_A, DN0_B, DN0_C, SPEC_X,
                      SPEC_Y, THREE_NODE_X, THREE_NODE_Y, TRACE_X, TRACE_Y)
from netdist import bounds, cli
from netdist import invariants as inv
from netdist.analysis import cluster_purity, distance_matrix, single_linkage
from netdist.core import Network, correspondence_masks, distortion
from netdist.cutmetric import XiKind, delta_box, xi_eval
from netdist.exact import dn_exact, dn_two_node_closed_form, dnhat_exact
from netdist.generators import (Environment, circle, circle_nesting_correspondence, n1, n2, nk,
                                simulate_hippocampus)

TITLES = {
    1: "reference values",
    2: "two-node closed form",
    3: "min-max matching oracle",
    4: "stability suite",
    5: "circle convergence",
    6: "cut-metric equivalence",
    7: "hippocampal clustering",
    8: "determinism",
}


def record(number, failures, elapsed, budget):
    if elapsed >= budget:
        failures = failures + [f"took {elapsed:.2f}s, budget {budget}s"]
    status = "PASS" if not failures else "FAIL"
    line = f"criterion {number} ({TITLES[number]}): {status} in {elapsed:.2f}s"
    if failures:
        line += " | " + "; ".join(failures)
    ACCEPTANCE_LINES[number] = line
    print(line)
    assert not failures, line


def close(a, b, tol=1e-12):
    return abs(a - b) <= tol


# criterion 1 --------------------------------------------------------------------

def test_criterion_1_reference_values():
    failures = []

    def check(name, got, want, budget=1.0):
        t = time.perf_counter()
        value = got()
        dt = time.perf_counter() - t
        if not close(value, want):
            failures.append(f"{name}: got {value!r}, expected {want!r}")
        if dt >= budget:
            failures.append(f"{name}: {dt:.2f}s")

    start = time.perf_counter()
    X3, Y3 = Network(THREE_NODE_X), Network(THREE_NODE_Y)
    check("three-node example dn_exact", lambda: dn_exact(X3, Y3), 0.0)
    check("three-node example dnhat_exact", lambda: dnhat_exact(X3, Y3), 0.5)
    check("N1(1) vs N1(2) dn_exact", lambda: dn_exact(n1(1), n1(2)), 0.5)
    check("N1(1) vs N1(2) local spectra", lambda: bounds.lb_local_spectra(n1(1), n1(2)),
          dn_exact(n1(1), n1(2)))
    check("trace bound", lambda: bounds.lb_hausdorff(Network(TRACE_X), Network(TRACE_Y), "trace"), 0.5)
    for k in range(1, 6):
        check(f"diam bound k={k}",
              lambda: bounds.lb_scalar(n2([[1, 5], [2, 4]]), nk(np.ones((k, k))), "diam"), 2.0)
    check("spec bound", lambda: bounds.lb_hausdorff(Network(SPEC_X), Network(SPEC_Y), "spec_global"), 0.5)
    A, B, C = Network(DN0_A), Network(DN0_B), Network(DN0_C)
    check("dn0nets (A,B)", lambda: dn_exact(A, B), 0.0)
    check("dn0nets (A,C)", lambda: dn_exact(A, C), 0.0)
    check("dn0nets (B,C)", lambda: dn_exact(B, C), 0.0)
    X, Y, Z = Network(BIJ_X), Network(BIJ_Y), Network(BIJ_Z)
    check("bijection dn(X,Y)", lambda: dn_exact(X, Y), 1.0)
    check("bijection dn(X,Z)", lambda: dn_exact(X, Z), 0.0)
    check("bijection dnhat(Y,Z)", lambda: dnhat_exact(Y, Z), 1.0)
    # each sub-item has its own 1 s budget; the overall budget is their sum
    record(1, failures, time.perf_counter() - start, 17.0)


# criterion 2 --------------------------------------------------------------------

def test_criterion_2_two_node_closed_form():
    rng = np.random.default_rng(2)
    start = time.perf_counter()
    worst = 0.0
    for _ in range(200):
        X, Y = Network(rng.uniform(-10, 10, (2, 2))), Network(rng.uniform(-10, 10, (2, 2)))
        worst = max(worst, abs(dn_two_node_closed_form(X, Y) - dn_exact(X, Y)))
    elapsed = time.perf_counter() - start
    failures = [] if worst <= 1e-12 else [f"max deviation {worst:.3e}"]
    record(2, failures, elapsed, 1.0)


# criterion 3 --------------------------------------------------------------------

def brute_minmax_many(Cs):
    n, m = Cs[0].shape
    flat = np.stack([C.ravel() for C in Cs])
    best = np.full(len(Cs), np.inf)
    for chunk in correspondence_masks(n, m, guard=n * m):
        for k, c in enumerate(flat):
            best[k] = min(best[k], np.where(chunk, c, -np.inf).max(axis=1).min())
    return best


def test_criterion_3_minmax_oracle():
    rng = np.random.default_rng(3)
    Cs = [rng.random((4, 5)) for _ in range(100)]
    oracle = brute_minmax_many(Cs)
    mismatches = sum(bounds.minmax_match(C) != o for C, o in zip(Cs, oracle))
    failures = [f"{mismatches} of 100 matrices disagree with brute force"] if mismatches else []
    big = rng.random((100, 100))
    start = time.perf_counter()
    bounds.minmax_match(big)
    elapsed = time.perf_counter() - start
    record(3, failures, elapsed, 5.0)


# criterion 4 --------------------------------------------------------------------

def test_criterion_4_stability():
    rng = np.random.default_rng(4)
    sizes = [(2, 2), (2, 3), (3, 3), (2, 4)]
    failures = []
    start = time.perf_counter()
    tol = 1e-12
    for trial in range(100):
        n, m = sizes[trial % len(sizes)]
        X, Y = Network(rng.uniform(-5, 5, (n, n))), Network(rng.uniform(-5, 5, (m, m)))
        d = dn_exact(X, Y)
        for method in bounds.BoundMethod:
            if bounds.lower_bound(X, Y, method) > d + tol:
                failures.append(f"trial {trial}: {method.value} bound exceeds dn")
        if abs(inv.diam(X) - inv.diam(Y)) > 2 * d + tol:
            failures.append(f"trial {trial}: diam")
        for f in (inv.trace_set, inv.out_set, inv.in_set, inv.spec_global):
            if inv.hausdorff_reals(f(X), f(Y)) > 2 * d + tol:
                failures.append(f"trial {trial}: {f.__name__}")
        for order in (1, 2):
            if inv.motif_distance(X, Y, order) > 2 * d + tol:
                failures.append(f"trial {trial}: motif order {order}")
    for trial in range(50):
        X, Y, Z = (Network(rng.uniform(-5, 5, (s, s))) for s in rng.integers(1, 4, size=3))
        if dn_exact(X, Z) > dn_exact(X, Y) + dn_exact(Y, Z) + tol:
            failures.append(f"triangle triple {trial}")
    record(4, failures[:5], time.perf_counter() - start, 30.0)


# criterion 5 --------------------------------------------------------------------

def test_criterion_5_circle_convergence():
    start = time.perf_counter()
    halves = []
    failures = []
    for n in (4, 8, 16, 32):
        R = circle_nesting_correspondence(n, 2 * n)
        half = 0.5 * distortion(R, circle(2 * n), circle(n))
        halves.append(half)
        if half > 2 * np.pi / n:
            failures.append(f"n={n}: {half:.4f} > 2pi/n = {2 * np.pi / n:.4f}")
    if not all(b < a for a, b in zip(halves, halves[1:])):
        failures.append("values " + ", ".join(f"{h:.4f}" for h in halves) + " are not strictly decreasing")
    record(5, failures, time.perf_counter() - start, 1.0)


# criterion 6 --------------------------------------------------------------------

def random_metric(rng, n):
    p = rng.random((n, 2))
    return np.linalg.norm(p[:, None] - p[None], axis=2)


def test_criterion_6_cut_metric():
    rng = np.random.default_rng(6)
    failures = []
    start = time.perf_counter()
    for trial in range(20):
        X, Y = Network(random_metric(rng, 3)), Network(random_metric(rng, 3))
        d = dn_exact(X, Y)
        for kind in XiKind:
            v = delta_box(X, Y, kind)
            if abs(v - d) > 1e-9:
                failures.append(f"pair {trial}, {kind.value}: {v} vs {d}")
    cells = [(i, j) for i in range(4) for j in range(4)]
    for trial in range(500):
        Dx, Dy = random_metric(rng, 4), random_metric(rng, 4)
        a, b = rng.integers(4, size=2)
        for kind in XiKind:
            if not (xi_eval(kind, Dx, [a], [b]) == Dx[a, b]):
                failures.append(f"condition 1, trial {trial}, {kind.value}")
        T = [cells[k] for k in rng.choice(16, size=rng.integers(1, 8), replace=False)]
        S = [cells[k] for k in rng.choice(16, size=rng.integers(1, 8), replace=False)]
        rhs = max(abs(Dx[t[0], s[0]] - Dy[t[1], s[1]]) for t in T for s in S)
        for kind in XiKind:
            lhs = abs(xi_eval(kind, Dx, [t[0] for t in T], [s[0] for s in S])
                      - xi_eval(kind, Dy, [t[1] for t in T], [s[1] for s in S]))
            if lhs > rhs + 1e-12:
                failures.append(f"condition 2, trial {trial}, {kind.value}")
    record(6, failures[:5], time.perf_counter() - start, 30.0)


# criterion 7 --------------------------------------------------------------------

ENVIRONMENTS = (("square", Environment.square()), ("one-hole", Environment.one_hole()))


def hippocampal_purity(family, cells=40, steps=1500, radius=0.2):
    nets, classes = [], []
    for env_index, (name, env) in enumerate(ENVIRONMENTS):
        for trial in range(5):
            X, _, _ = simulate_hippocampus(env, cells=cells, steps=steps, radius=radius * env.side,
                                           seed=[family, trial, env_index])
            nets.append(X)
            classes.append(name)
    D = distance_matrix(nets, "spec_local_both")
    return cluster_purity(single_linkage(D), classes, 2)


def test_criterion_7_hippocampus():
    start = time.perf_counter()
    purities = [hippocampal_purity(family) for family in range(5)]
    good = sum(p >= 0.7 for p in purities)
    failures = [] if good >= 4 else [
        f"purity >= 0.7 in {good} of 5 families (purities {', '.join(f'{p:.1f}' for p in purities)})"]
    record(7, failures, time.perf_counter() - start, 120.0)


# criterion 8 --------------------------------------------------------------------

def test_criterion_8_determinism(tmp_path, capsys):
    start = time.perf_counter()
    failures = []
    flags = ["sim-hippocampus", "--cells", "40", "--steps", "1500", "--radius", "0.2",
             "--env", "one-hole", "--seed", "8"]
    outputs = []
    for name in ("run1", "run2"):
        out = tmp_path / f"{name}.json"
        if cli.main(flags + ["-o", str(out)]) != 0:
            failures.append(f"{name} exited nonzero")
        outputs.append((out.read_bytes(), json.loads((tmp_path / f"{name}.meta.json").read_text())))
    if outputs[0][0] != outputs[1][0]:
        failures.append("simulation outputs differ")
    if outputs[0][1] != outputs[1][1]:
        failures.append("metadata differs")
    rng = np.random.default_rng(8)
    data = tmp_path / "data"
    data.mkdir()
    for k in range(8):
        (data / f"net{k}.json").write_text(
            json.dumps({"weights": rng.random((int(rng.integers(3, 9)),) * 2).tolist()}))
    serial, parallel = tmp_path / "serial.csv", tmp_path / "parallel.csv"
    cli.main(["matrix", "--glob", str(data / "*.json"), "-o", str(serial)])
    cli.main(["matrix", "--glob", str(data / "*.json"), "--workers", "4", "-o", str(parallel)])
    if serial.read_bytes() != parallel.read_bytes():
        failures.append("parallel matrix differs from serial")
    capsys.readouterr()
    record(8, failures, time.perf_counter() - start, float("inf"))


if __name__ == "__main__":
    import sys

    import pytest

    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
