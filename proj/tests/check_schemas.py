"""Validates every --json output of the CLI against the published schemas."""
import json
import subprocess
import sys
import tempfile
from pathlib import Path

import jsonschema

CLI = sys.argv[1]
SCHEMAS = Path(sys.argv[2])

CASES = [
    ("expand.json", ["expand", "--tree", "caterpillar:1,1,2,1,2", "--basis", "e"]),
    ("expand.json", ["expand", "--tree", "fixture:T1", "--basis", "p"]),
    ("expand.json", ["expand", "--tree", "path:1"]),
    ("btable.json", ["btable", "--tree", "spider:6,4,1,1"]),
    ("sinks.json", ["sinks", "--tree", "star:5"]),
    ("stk.json", ["stk", "--tree", "fixture:T4", "--s", "3", "--t", "4", "--k", "4", "--reduced"]),
    ("stk.json", ["stk", "--tree", "fixture:T3", "--s", "3", "--t", "2", "--k", "8"]),
    ("criteria.json", ["criteria", "--tree", "caterpillar:1,1,2,1,2", "--all"]),
    ("criteria.json", ["criteria", "--tree", "path:9", "--only", "n22,sink2"]),
    ("tabloid.json", ["tabloid", "w", "2,2,1,1", "4,2", "--list"]),
    ("tabloid.json", ["tabloid", "ob", "(3,2^7)", "(17)"]),
    ("fixtures.json", ["fixtures"]),
]


def load(name):
    schema = json.loads((SCHEMAS / name).read_text())
    jsonschema.Draft202012Validator.check_schema(schema)
    return jsonschema.Draft202012Validator(schema)


def main():
    failures = 0
    for schema, args in CASES:
        out = subprocess.run([CLI, "--json", *args], capture_output=True, text=True)
        try:
            assert out.returncode == 0, out.stderr
            load(schema).validate(json.loads(out.stdout))
            print("ok  ", schema, " ".join(args))
        except (AssertionError, jsonschema.ValidationError, json.JSONDecodeError) as e:
            failures += 1
            print("FAIL", schema, " ".join(args), "\n   ", str(e).splitlines()[0])

    with tempfile.TemporaryDirectory() as tmp:
        out_path = Path(tmp) / "scan.jsonl"
        run = subprocess.run(
            [CLI, "--json", "scan", "--n", "5..11", "--min-delta", "3", "--mode", "probe_problems",
             "--include-spiders", "--timing", "--out", str(out_path)],
            capture_output=True, text=True)
        summary = json.loads(run.stdout)
        try:
            load("scan_summary.json").validate(summary)
            load("scan_summary.json").validate(json.loads(Path(str(out_path) + ".summary.json").read_text()))
            record = load("scan_record.json")
            lines = out_path.read_text().splitlines()
            assert len(lines) == summary["records_written"]
            for line in lines:
                record.validate(json.loads(line))
            print("ok   scan_summary.json scan_record.json", len(lines), "records")
        except (AssertionError, jsonschema.ValidationError) as e:
            failures += 1
            print("FAIL scan schemas\n   ", str(e).splitlines()[0])
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
