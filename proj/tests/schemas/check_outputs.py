"""Validates what the CLI emits against schemas/: every JSON document against
document.schema.json, sweep CSV against sweep_csv.json. Usage:
check_outputs.py <gausscircle binary> <schemas dir>"""

import csv
import io
import json
import subprocess
import sys
from pathlib import Path

import jsonschema

JSON_RUNS = [
    ["r2", "25"],
    ["sum", "1000"],
    ["delta", "4"],
    ["voronoi", "10.5", "--terms", "1000"],
    ["series", "d", "--x", "2", "--m", "1000"],
    ["series", "p", "--n", "20", "--k", "20"],
    ["closed-form", "fresnel", "--a", "2", "--m", "10000"],
    ["closed-form", "expint", "--eps", "1", "--x", "1", "--y", "10"],
    ["closed-form", "sqrt", "--x", "2", "--m", "100"],
    ["sweep", "--from", "1", "--to", "2000"],
    ["convergence", "d", "--x", "2", "--ladder", "100,1000"],
    ["report", "claims"],
]

TYPES = {"number": float, "integer": int}


def run(binary, args):
    proc = subprocess.run([binary, *args], capture_output=True, text=True, check=True)
    return proc.stdout


def check_sweep_csv(text, desc):
    assert "\r" not in text, "CRLF in sweep CSV"
    rows = list(csv.reader(io.StringIO(text)))
    names = [c["name"] for c in desc["columns"]]
    assert rows[0] == names, rows[0]
    assert len(rows) > 1
    for row in rows[1:]:
        assert len(row) == len(names)
        for value, col in zip(row, desc["columns"]):
            TYPES[col["type"]](value)


def main():
    binary, schemas = sys.argv[1], Path(sys.argv[2])
    doc_schema = json.loads((schemas / "document.schema.json").read_text())
    sweep_desc = json.loads((schemas / "sweep_csv.json").read_text())
    validator = jsonschema.Draft202012Validator(doc_schema)
    for args in JSON_RUNS:
        doc = json.loads(run(binary, [*args, "--format", "json"]))
        errors = sorted(validator.iter_errors(doc), key=str)
        assert not errors, f"{args}: {errors[0].message}"
        print("ok json", " ".join(args))
    check_sweep_csv(run(binary, ["sweep", "--from", "1", "--to", "3000", "--sampling", "half_integers"]), sweep_desc)
    print("ok csv sweep")
    claims = json.loads(run(binary, ["report", "claims", "--format", "json"]))["claims"]
    assert {c["verdict"] for c in claims} <= {"consistent", "tension", "out-of-reach"}


if __name__ == "__main__":
    main()
