"""Runs `fl verify-all --suite quick` and validates its JSON against the shipped schema."""
import json
import subprocess
import sys

import jsonschema

fl, schema_path = sys.argv[1], sys.argv[2]
proc = subprocess.run([fl, "verify-all", "--suite", "quick"], capture_output=True, text=True)
if proc.returncode != 0:
    sys.exit(f"verify-all exited {proc.returncode}: {proc.stderr}")
with open(schema_path) as f:
    schema = json.load(f)
doc = json.loads(proc.stdout)
jsonschema.validate(doc, schema)
s = doc["summary"]
assert s["pass"] + s["fail"] + s["inconclusive"] + s["skipped"] == len(doc["reports"])
print(f"schema ok: {len(doc['reports'])} reports")
