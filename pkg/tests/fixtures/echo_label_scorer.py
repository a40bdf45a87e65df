#!/usr/bin/env python3
"""Stub facet scorer: answers a fixed label (argv[1], default "location")."""
import json
import sys

label = sys.argv[1] if len(sys.argv) > 1 else "location"
for line in sys.stdin:
    line = line.strip()
    if not line:
        continue
    req = json.loads(line)
    sys.stdout.write(json.dumps({"id": req["id"], "label": label}) + "\n")
    sys.stdout.flush()
