#!/usr/bin/env python3
"""End-to-end checks of the lgspdc executable: outputs, exit codes, schema."""

import csv
import io
import json
import subprocess
import sys
import tempfile
from pathlib import Path

import jsonschema

CLI = sys.argv[1]
SCHEMA = json.loads(Path(sys.argv[2]).read_text())
BBO = ["--wp-mm", "1", "--ws-mm", "1", "--wi-mm", "1",
       "--L-mm", "3", "--wavelength-nm", "532", "--n", "1.67"]

failures = []


def run(*args):
    return subprocess.run([CLI, *args], capture_output=True, text=True)


def check(name, ok, detail=""):
    print(f"{'ok  ' if ok else 'FAIL'} {name} {detail}")
    if not ok:
        failures.append(name)


def parse_csv(text):
    meta, body = {}, []
    for line in text.splitlines():
        if line.startswith("# "):
            key, _, value = line[2:].partition("=")
            meta[key] = value
        else:
            body.append(line)
    return meta, list(csv.DictReader(io.StringIO("\n".join(body))))


def validate(name, text):
    try:
        jsonschema.validate(json.loads(text), SCHEMA)
        check(name, True)
    except (jsonschema.ValidationError, json.JSONDecodeError) as e:
        check(name, False, str(e).splitlines()[0])


# spiral bandwidth at gamma = 1: P(0) = 5/13 on the default window
r = run("sb", "--gamma", "1", "1")
meta, rows = parse_csv(r.stdout)
check("sb exit 0", r.returncode == 0, r.stderr)
check("sb P(0) = 5/13", abs(float(rows[0]["l=0"]) - 5 / 13) <= 1e-7, rows[0]["l=0"])
check("sb window", meta["l_window"] == "[-20,20]" and "l=20" in rows[0])

# selection rule
r = run("amplitude", "--gamma", "1.3", "0.7", "--ls", "1", "--li", "1", "--ps", "2")
_, rows = parse_csv(r.stdout)
check("selection rule gives exact zero", float(rows[0]["abs"]) == 0.0)

# thick crystal: |C| agrees with the thin form
r = run("compare", *BBO)
meta, rows = parse_csv(r.stdout)
check("compare exit 0", r.returncode == 0, r.stderr)
check("compare cell count", len(rows) == 756 and meta["cells"] == "756")
check("compare |C| deviation <= 1e-3", float(meta["max_dev_crystal_modulus"]) <= 1e-3,
      meta["max_dev_crystal_modulus"])

# byte-identical reruns, also through --out
args = ["sb", "--sweep", "gamma-diff", "--values", "0.5", "1", "2", "--gamma-diff", "2",
        "--p", "2", "2", "--method", "collinear"]
with tempfile.TemporaryDirectory() as tmp:
    a, b = Path(tmp, "a.csv"), Path(tmp, "b.csv")
    ra, rb = run(*args, "--out", str(a)), run(*args, "--out", str(b))
    check("determinism", ra.returncode == 0 and a.read_bytes() == b.read_bytes())
    check("--out matches stdout", a.read_text() == run(*args).stdout)

# JSON output of every command validates
for args in (["amplitude", "--gamma", "1", "2", "--ls", "3", "--li", "-3"],
             ["sb", "--gamma", "0.8", "1.2", "--l-max", "4"],
             ["sb", "--sweep", "width-ratio", "--values", "0.5", "1", "--width-ratio", "2"],
             ["ppcorr", "--gamma", "1", "1", "--l", "2", "--p-max", "3", "--norm", "sum"],
             ["compare", *BBO, "--p-max", "1", "--l-max", "1", "--full"]):
    r = run(*args, "--format", "json")
    check(f"exit 0: {args[0]}", r.returncode == 0, r.stderr)
    validate(f"schema: {' '.join(args[:3])}", r.stdout)
    doc = json.loads(r.stdout)
    check(f"row width: {args[0]}", all(len(row) == len(doc["columns"]) for row in doc["rows"]))

# exit codes; errors are JSON on stderr
for name, args, code in (
        ("bad gamma", ["amplitude", "--gamma", "-1", "1"], 2),
        ("exclusive flags", ["amplitude", "--gamma", "1", "1", "--ws-mm", "1"], 2),
        ("unknown flag", ["amplitude", "--bogus"], 2),
        ("negative p", ["amplitude", "--gamma", "1", "1", "--ps", "-1"], 2),
        ("crystal without pump waist", ["amplitude", "--gamma", "1", "1", "--L-mm", "3",
                                        "--kp", "2e7"], 2),
        ("compare needs L", ["compare", "--gamma", "1", "1"], 2),
        ("budget exhausted", ["amplitude", "--wp-mm", "0.01", "--ws-mm", "0.01",
                              "--wi-mm", "0.01", "--L-mm", "50", "--kp", "1e7",
                              "--method", "crystal", "--max-evals", "42",
                              "--ls", "8", "--li", "-8", "--ps", "6", "--pi", "6"], 3)):
    r = run(*args)
    check(f"exit {code}: {name}", r.returncode == code, f"got {r.returncode}")
    validate(f"error schema: {name}", r.stderr.strip().splitlines()[-1])

r = run("selftest")
check("selftest", r.returncode == 0, r.stdout)

print(f"{len(failures)} failure(s)")
sys.exit(1 if failures else 0)
