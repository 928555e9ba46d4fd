"""Runs the esym binary, checks exit codes and validates every JSON report
against the schemas in schemas/. CSV output must parse as RFC 4180."""

import csv
import io
import json
import pathlib
import subprocess
import sys
import tempfile

from jsonschema import Draft202012Validator
from referencing import Registry, Resource

ESYM, SCHEMAS = sys.argv[1], pathlib.Path(sys.argv[2])

registry = Registry()
for path in SCHEMAS.glob("*.schema.json"):
    registry = registry.with_resource(path.name, Resource.from_contents(json.loads(path.read_text())))

failures = []


def run(*args, expect=0):
    proc = subprocess.run([ESYM, *args], capture_output=True, text=True)
    if proc.returncode != expect:
        failures.append(f"{' '.join(args)}: exit {proc.returncode}, wanted {expect}: {proc.stderr.strip()}")
    return proc.stdout


def validate(kind, *args):
    out = run(*args, "--format", "json")
    try:
        record = json.loads(out)
    except json.JSONDecodeError as e:
        failures.append(f"{' '.join(args)}: not JSON: {e}")
        return None
    schema = json.loads((SCHEMAS / f"{kind}.schema.json").read_text())
    for error in Draft202012Validator(schema, registry=registry).iter_errors(record):
        failures.append(f"{' '.join(args)}: {error.json_path}: {error.message}")
    return record


with tempfile.TemporaryDirectory() as tmp:
    tmp = pathlib.Path(tmp)
    for name in ["ben-or", "newton", "depth4", "monotone", "power-sum"]:
        validate("build", "build", name, "--n", "5", "--k", "3")

    rec = validate("build", "build", "monotone", "--n", "4", "--k", "2")
    if rec and not (rec["oracle_match"] and rec["properties"]["monotone"]):
        failures.append("build monotone 4 2: oracle or monotonicity failed")
    run("build", "newton", "--n", "2", "--k", "3", expect=2)
    run("build", "nope", expect=2)
    run("--n", "3", expect=2)
    run("--help", expect=0)

    ben_or = tmp / "ben_or.sexp"
    ben_or.write_text(json.loads(run("build", "ben-or", "--n", "4", "--k", "2", "--format", "json"))["formula"])
    rec = validate("verify", "verify", str(ben_or))
    if rec and not (rec["properties"]["multilinear"] and not rec["properties"]["homogeneous"]):
        failures.append("verify ben-or: expected multilinear and nonhomogeneous")
    run("decompose", "--mode", "balanced", str(ben_or), expect=2)

    monotone = tmp / "monotone.sexp"
    monotone.write_text(json.loads(run("build", "monotone", "--n", "8", "--k", "4", "--format", "json"))["formula"])
    validate("decompose", "decompose", "--mode", "balanced", str(monotone))
    product = tmp / "product.sexp"
    product.write_text("(* (+ x1 x2) (+ x3 x4) (+ x5 x6) (+ x7 x8) (+ x9 x10))")
    validate("decompose", "decompose", "--mode", "form", "--q", "2", "--d", "1", str(product))

    broken = tmp / "broken.sexp"
    broken.write_text("(+ x1 (* x2")
    run("verify", str(broken), expect=3)

    for suite in ["compositions", "lower", "monotone", "g", "partition"]:
        validate("bounds", "bounds", suite, "--n", "2..12", "--k", "2..5")

    rec = validate("table", "table", "--n", "4..9", "--k", "1..4")
    if rec and len(rec["rows"]) != sum(1 for n in range(4, 10) for k in range(1, 5) if k <= n):
        failures.append("table: wrong row count")
    rec = validate("table", "table", "--n", "5..4")
    if rec and rec["rows"] != []:
        failures.append("table: empty range should give no rows")

    rows = list(csv.reader(io.StringIO(run("table", "--n", "8", "--k", "4", "--format", "csv"), newline="")))
    if len(rows) != 2 or rows[0][:2] != ["n", "k"]:
        failures.append(f"table csv: unexpected rows {rows}")
    rows = list(csv.reader(io.StringIO(run("build", "ben-or", "--n", "2", "--k", "1", "--format", "csv"), newline="")))
    if rows[0] != ["key", "value"] or not any(r[0] == "formula" for r in rows[1:]):
        failures.append("build csv: missing key/value rows")

    config = tmp / "run.toml"
    config.write_text('[build]\nn = "6"\nk = "3"\n')
    rec = json.loads(run("--config", str(config), "build", "monotone", "--format", "json"))
    if (rec["n"], rec["k"]) != (6, 3):
        failures.append(f"config file ignored: n={rec['n']} k={rec['k']}")

    out = tmp / "report.json"
    run("build", "depth4", "--n", "6", "--k", "3", "--format", "json", "--out", str(out))
    if json.loads(out.read_text())["command"] != "build":
        failures.append("--out did not write the report")

for f in failures:
    print("FAIL", f)
print("cli checks:", "FAIL" if failures else "PASS")
sys.exit(1 if failures else 0)
