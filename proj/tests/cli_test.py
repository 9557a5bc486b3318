"""End-to-end checks of the nneig command-line tool."""

import json
import os
import subprocess
import sys
import tempfile

BIN = sys.argv[1]
failures = []


def run(*args):
    p = subprocess.run([BIN, *args], capture_output=True, text=True)
    return p.returncode, p.stdout


def check(name, cond):
    print(("ok    " if cond else "FAIL  ") + name)
    if not cond:
        failures.append(name)


with tempfile.TemporaryDirectory() as tmp:
    diag = os.path.join(tmp, "diag.json")
    with open(diag, "w") as f:
        json.dump({"n": 2, "entries": [[0.2, 0], [0, 0], [0, 0], [0.5, 0]]}, f)

    code, out = run("eig", "--in", diag, "--eps", "1e-3", "--kappa", "1", "--m", "1", "--oracle", "exact")
    doc = json.loads(out)
    lam = complex(*doc["eigenvalue"])
    check("eig returns an eigenvalue", code == 0 and min(abs(lam - 0.2), abs(lam - 0.5)) <= 1e-3)
    check("eig embeds the trace", len(doc["trace"]["levels"]) == 10)
    check("eig echoes the config", doc["config"]["eps"] == 1e-3 and doc["config"]["command"] == "eig")

    code, out = run("gap", "--in", diag, "--eps", "1e-3")
    check("gap is about 0.3", code == 0 and abs(json.loads(out)["gap"] - 0.3) <= 3e-3)

    code, out = run("roots", "--monic", "1,0,-0.25", "--eps", "1e-4")
    doc = json.loads(out)
    root = complex(*doc["root"])
    check("roots of x^2 - 0.25", code == 0 and min(abs(root - 0.5), abs(root + 0.5)) <= 1e-4 * doc["scale"])

    code, out = run("eig", "--in", diag, "--region", "right-half")
    check("region found", code == 0 and json.loads(out)["classification"] == "found")

    code, _ = run("eig", "--in", diag, "--no-such-flag")
    check("unknown flag is an error", code == 2)

    big = os.path.join(tmp, "big.json")
    with open(big, "w") as f:
        json.dump({"n": 1, "entries": [[2.0, 0]]}, f)
    code, out = run("eig", "--in", big)
    check("norm above one is an input error", code == 2 and json.loads(out)["error"]["category"] == "input")

    nilp = os.path.join(tmp, "nil.json")
    with open(nilp, "w") as f:
        json.dump({"n": 2, "entries": [[0.05, 0], [0.95, 0], [0, 0], [-0.05, 0]]}, f)
    code, out = run("eig", "--in", nilp, "--eps", "1e-3", "--kappa", "1")
    check("underestimated kappa is a bound violation", code == 3
          and json.loads(out)["error"]["category"] == "bound-violation")

    code, out = run("approx-sqrt", "--eta", "0.5", "--eps", "1e-14")
    check("unreachable tolerance exits 5", code == 5 and json.loads(out)["error"]["category"] == "approximation")

    code, out = run("eig", "--in", diag, "--oracle", "noisy", "--pfail", "0.1", "--eps", "0.03125", "--seed", "9")
    code2, out2 = run("eig", "--in", diag, "--oracle", "noisy", "--pfail", "0.1", "--eps", "0.03125", "--seed", "9")
    check("noisy runs are byte-identical", out == out2 and code == code2)

    gen_path = os.path.join(tmp, "gen.json")
    meta_path = os.path.join(tmp, "meta.json")
    code, out = run("gen", "--eigs", "0.3,-0.4+0.2i", "--blocks", "2,1", "--kappa", "3", "--seed", "1",
                    "--out", gen_path)
    with open(meta_path, "w") as f:
        f.write(out)
    check("gen writes a matrix", code == 0 and os.path.exists(gen_path))
    csv = os.path.join(tmp, "grid.csv")
    code, out = run("pspec", "--in", gen_path, "--resolution", "40", "--meta", meta_path, "--csv", csv)
    doc = json.loads(out)
    with open(csv) as f:
        header = f.readline().strip()
    check("pspec inclusions hold", code == 0 and doc["inclusions"]["ok"])
    check("pspec csv header", header == "re,im,sigma0" and os.path.exists(csv + ".json"))

    code, out = run("eigvec", "--in", diag, "--gap", "0.2")
    check("eigvec residual small", code == 0 and json.loads(out)["residual"] <= 1e-3)

    code, out = run("extreme", "--in", diag, "--which", "largest", "--eps", "1e-3")
    check("largest modulus", code == 0 and abs(json.loads(out)["modulus"] - 0.5) <= 1e-3)

print(f"{len(failures)} failure(s)")
sys.exit(1 if failures else 0)
