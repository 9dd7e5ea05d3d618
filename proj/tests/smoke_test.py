#!/usr/bin/env python3
"""Smoke tests for the _uncert extension module."""

import json
import math
import os
import sys
import tempfile

import numpy as np

import _uncert as u

failures = []


def check(name, cond, detail=""):
    print(("ok   " if cond else "FAIL ") + name + (" " + detail if detail else ""))
    if not cond:
        failures.append(name)


# spectral engine
path3 = np.array([[1.0, -1.0, 0.0], [-1.0, 2.0, -1.0], [0.0, -1.0, 1.0]])
dec = u.eigendecompose(path3)
check("path-3 eigenvalues (0, 1, 3)",
      np.allclose(dec.eigenvalues, [0.0, 1.0, 3.0], atol=1e-12))
proj = u.spectral_projector(dec, 1.0)
check("half-open projector keeps only the kernel at lambda = 1",
      np.allclose(proj, np.full((3, 3), 1.0 / 3.0), atol=1e-12))
sq, kdim = u.pseudo_power(dec, 0.5)
check("pseudo square root kernel dimension", kdim == 1)

rng = np.random.default_rng(123)
p = rng.standard_normal((8, 8))
check("adjoint-norm identity",
      abs(u.norm_1_to_2(p) ** 2 - u.norm_1_to_inf(p.T @ p)) < 1e-12)
val, exact = u.norm_inf_to_1(np.array([[1.0, -1.0], [-1.0, 1.0]]))
check("inf->1 norm of the sign matrix", exact and abs(val - 4.0) < 1e-14)

# structures
cyc = u.build_cycle_torus(1, 4)
check("4-cycle distances", list(cyc.distance) == [0, 1, 2, 1])
lap = u.adjacency_laplacian(cyc)
check("cycle laplacian spectrum",
      np.allclose(np.linalg.eigvalsh(lap), [0.0, 2.0, 2.0, 4.0], atol=1e-12))
ball = u.build_tree_ball(3, 3)
check("tree ball vertex count", ball.vertex_count == 22)
check("strict ball volume", u.ball_volume(ball, 2.5) == 10)

# growth and constants
phi = u.GrowthFunction.power(2.0)
cert = u.check_admissibility(phi, 1.0, 0.01, 100.0)
check("admissibility constant 1/(d-alpha)",
      cert.verdict == "holds" and abs(cert.constant - 1.0) < 1e-6)
check("local constant closed form",
      abs(u.local_constant(0.5, 1.0, 2.0, 1.0) - (1 + 2 * math.sqrt(2))) < 1e-12)
D, K, Dgb = u.global_constants(1.0, 1.0, 1.0, 1.0, 2.0)
check("global constant at alpha=gamma=beta is 1+C", D == 3.0 and K == 1.0)
check("exp constant at gamma*delta = 1",
      abs(u.exp_constant(1.0, 1.0, 1.0) - math.e / (math.e - 1)) < 1e-10)

# oracles
check("lattice measure at r=2", abs(u.lattice_projector_measure(1, 2.0) - 0.5) < 1e-14)
check("tree gap", abs(u.tree_gap(3) - (3 - 2 * math.sqrt(2))) < 1e-14)
slope, resid = u.fit_exponent([(x, x * x) for x in (0.5, 1.0, 2.0, 4.0, 8.0)], 2.0)
check("exact power fit", abs(slope - 2.0) < 1e-12 and resid < 1e-12)

# semigroup sandwich on an eigenvector
lower, upper, tail = u.semigroup_sandwich(dec, 1.0, np.array([1.0, 0.0, 0.0]), 40)
check("semigroup sandwich", lower and upper and tail > 0.0)

# a tiny scenario run end to end through the binding
with tempfile.TemporaryDirectory() as tmp:
    cfg = {
        "schema_version": 1,
        "scenario": "cycle_compact",
        "structure": {"dims": 1, "side": 16},
        "exponents": {"gamma": 0.4, "delta": 0.5, "alpha": 1, "beta": 1},
        "output_dir": os.path.join(tmp, "out"),
    }
    cfg_path = os.path.join(tmp, "cfg.json")
    with open(cfg_path, "w") as f:
        json.dump(cfg, f)
    code, all_pass = u.run_scenario(cfg_path)
    check("cycle_compact scenario passes through the binding",
          code == 0 and all_pass)
    check("scenario artifacts written",
          os.path.exists(os.path.join(tmp, "out", "summary.json")))

if failures:
    print(f"{len(failures)} smoke check(s) failed: {failures}")
    sys.exit(1)
print("all python smoke checks passed")
