"""Runs the CLI on every documented report path and validates the JSON
against schemas/report.schema.json."""

import json
import subprocess
import sys
from pathlib import Path

import jsonschema

cli, schema_path, data = sys.argv[1], Path(sys.argv[2]), Path(sys.argv[3])
schema = json.loads(schema_path.read_text())
validator = jsonschema.Draft202012Validator(schema)

runs = [
    ["demo", "ghz"],
    ["demo", "w"],
    ["--tol", "1e-6", "demo", "ghz"],
    ["timing", "--model", "pf", "--x", "1", "--v-hc", "4", "--t-c", "0.8"],
    ["timing", "--model", "pf", "--x", "1", "--v-hc", "3"],
    ["timing", "--model", "multisim", "--v", "0.5"],
]
runs += [["scenario", str(p)] for p in sorted(data.glob("*.json"))]

failures = 0
for args in runs:
    proc = subprocess.run([cli, *args], capture_output=True, text=True)
    if proc.returncode == 1:
        continue  # input errors print no report
    try:
        validator.validate(json.loads(proc.stdout))
        print("ok  ", " ".join(args))
    except (json.JSONDecodeError, jsonschema.ValidationError) as e:
        failures += 1
        print("FAIL", " ".join(args), "-", str(e).splitlines()[0])

embedded = subprocess.run([cli, "--schema"], capture_output=True, text=True).stdout
if json.loads(embedded) != schema:
    failures += 1
    print("FAIL --schema output differs from the shipped schema")
sys.exit(1 if failures else 0)
