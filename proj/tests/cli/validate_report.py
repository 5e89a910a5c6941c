"""Runs `verify run --scenario all` and validates the JSON report against the schema."""
import json
import subprocess
import sys
import tempfile
from pathlib import Path

import jsonschema


def main() -> int:
    verify, schema_path = sys.argv[1], Path(sys.argv[2])
    schema = json.loads(schema_path.read_text())
    jsonschema.Draft202012Validator.check_schema(schema)
    with tempfile.TemporaryDirectory() as tmp:
        out = Path(tmp) / "report.json"
        proc = subprocess.run([verify, "run", "--scenario", "all", "--samples", "20", "--report", str(out)],
                              capture_output=True, text=True)
        if proc.returncode not in (0, 1):
            print(proc.stderr, file=sys.stderr)
            return 1
        doc = json.loads(out.read_text())
    jsonschema.validate(doc, schema, cls=jsonschema.Draft202012Validator)
    overall_ok = all(c["matched"] for s in doc["scenarios"] for c in s["checks"])
    if (doc["overall"] == "PASS") != overall_ok or (proc.returncode == 0) != overall_ok:
        print("overall verdict, exit code and per-check matches disagree", file=sys.stderr)
        return 1
    print(f"report valid: {sum(len(s['checks']) for s in doc['scenarios'])} checks")
    return 0


if __name__ == "__main__":
    sys.exit(main())
