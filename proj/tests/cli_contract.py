#!/usr/bin/env python3
"""End-to-end contract tests for the uncert CLI: exit codes, artifact
determinism, oracle values and the admissibility subcommand."""

import json
import math
import os
import subprocess
import sys
import tempfile

CLI = sys.argv[1]

failures = []


def check(name, cond, detail=""):
    status = "ok" if cond else "FAIL"
    print(f"{status:4s} {name} {detail}")
    if not cond:
        failures.append(name)


def run(*args, env_extra=None):
    env = dict(os.environ)
    if env_extra:
        env.update(env_extra)
    return subprocess.run([CLI, *args], capture_output=True, text=True, env=env)


def lattice_config(out_dir, side=32, phi=None):
    doc = {
        "schema_version": 1,
        "scenario": "lattice",
        "structure": {"dims": 1, "side": side},
        "exponents": {"gamma": 0.4, "delta": 2, "alpha": 1, "beta": 1},
        "eta": 1.0,
        "seed": 42,
        "output_dir": out_dir,
    }
    if phi:
        doc["phi"] = phi
    return doc


with tempfile.TemporaryDirectory() as tmp:
    # passing run, artifacts, ratio column
    out1 = os.path.join(tmp, "run1")
    cfg1 = os.path.join(tmp, "lattice.json")
    with open(cfg1, "w") as f:
        json.dump(lattice_config(out1), f)
    res = run("verify", cfg1)
    check("verify exits 0 on a passing scenario", res.returncode == 0, res.stderr.strip())
    for name in ("local_report.csv", "global_report.csv", "summary.json",
                 "plot_ratio_vs_t.csv", "plot_constants_vs_t.csv",
                 "plot_volume_vs_phi.csv"):
        check(f"artifact {name} exists", os.path.exists(os.path.join(out1, name)))
    with open(os.path.join(out1, "local_report.csv")) as f:
        header = f.readline().strip()
        check("local report header",
              header == "t,vector_id,lhs,rhs,ratio,sharp_constant")
        ratios = [float(line.split(",")[4]) for line in f]
    check("ratio column stays below 1 + 1e-9 on a passing run",
          all(r <= 1 + 1e-9 for r in ratios), f"max={max(ratios):.6g}")
    with open(os.path.join(out1, "summary.json")) as f:
        summary = json.load(f)
    check("summary reports all_pass", summary["all_pass"] is True)

    # determinism: byte-identical artifacts across reruns
    out2 = os.path.join(tmp, "run2")
    cfg2 = os.path.join(tmp, "lattice2.json")
    with open(cfg2, "w") as f:
        json.dump(lattice_config(out2), f)
    run("verify", cfg2)
    identical = True
    for name in sorted(os.listdir(out1)):
        with open(os.path.join(out1, name), "rb") as a, \
             open(os.path.join(out2, name), "rb") as b:
            if a.read() != b.read():
                identical = False
    check("reruns produce byte-identical artifacts", identical)

    # env var override for the output directory
    out3 = os.path.join(tmp, "env_override")
    res = run("verify", cfg1, env_extra={"UNCERT_OUTPUT_DIR": out3})
    check("UNCERT_OUTPUT_DIR overrides the config",
          res.returncode == 0 and os.path.exists(os.path.join(out3, "summary.json")))

    # exit 4: malformed config
    bad = os.path.join(tmp, "bad.json")
    with open(bad, "w") as f:
        f.write("{ not json")
    check("malformed config exits 4", run("verify", bad).returncode == 4)
    missing_schema = os.path.join(tmp, "noschema.json")
    with open(missing_schema, "w") as f:
        json.dump({"scenario": "lattice"}, f)
    check("missing schema_version exits 4",
          run("verify", missing_schema).returncode == 4)

    # exit 3: capacity
    big = os.path.join(tmp, "big.json")
    doc = lattice_config(os.path.join(tmp, "big_out"))
    doc["structure"] = {"dims": 3, "side": 64}
    with open(big, "w") as f:
        json.dump(doc, f)
    check("size cap exits 3", run("verify", big).returncode == 3)

    # exit 2: hypothesis failure, with the violated inequality named
    hyp = os.path.join(tmp, "hyp.json")
    with open(hyp, "w") as f:
        json.dump(lattice_config(os.path.join(tmp, "hyp_out"),
                                 phi={"kind": "power", "params": [0.5, 1e-4]}), f)
    res = run("verify", hyp)
    check("hypothesis failure exits 2", res.returncode == 2, res.stderr.strip()[:72])
    check("violated inequality is named", "ip0" in res.stderr)

    # exit 5: unwritable output directory
    blocker = os.path.join(tmp, "blocker")
    with open(blocker, "w") as f:
        f.write("file, not a directory")
    res = run("verify", cfg1,
              env_extra={"UNCERT_OUTPUT_DIR": os.path.join(blocker, "sub")})
    check("unwritable output dir exits 5", res.returncode == 5, res.stderr.strip()[:60])

    # oracles
    res = run("oracle", "lattice", "--n", "1", "--r", "2")
    check("oracle lattice measure at r=2 is 1/2",
          res.returncode == 0 and abs(float(res.stdout) - 0.5) < 1e-14)
    res = run("oracle", "tree-gap", "--n", "3")
    check("oracle tree-gap n=3",
          res.returncode == 0 and abs(float(res.stdout) - (3 - 2 * math.sqrt(2))) < 1e-14)
    check("15 significant digits printed", len(res.stdout.strip()) >= 15)

    # admissibility subcommand
    res = run("admissible", "--phi", "power:2", "--alpha", "1",
              "--interval", "0.01", "100")
    doc = json.loads(res.stdout)
    check("admissible power:2 alpha 1 holds with constant 1",
          res.returncode == 0 and doc["verdict"] == "holds"
          and abs(doc["constant"] - 1.0) < 1e-6)
    res = run("admissible", "--phi", "power:1", "--alpha", "1",
              "--interval", "0.01", "100")
    doc = json.loads(res.stdout)
    check("admissible critical case is divergent_at_zero",
          res.returncode == 1 and doc["verdict"] == "divergent_at_zero")

if failures:
    print(f"{len(failures)} contract check(s) failed: {failures}")
    sys.exit(1)
print("all CLI contract checks passed")
