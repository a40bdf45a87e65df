#!/usr/bin/env python3
"""Stub pair scorer: 1.0 for identical (p, o) pairs, else a fixed value
(argv[1], default 0.0)."""
import json
import sys

other = float(sys.argv[1]) if len(sys.argv) > 1 else 0.0
for line in sys.stdin:
    line = line.strip()
    if not line:
        continue
    req = json.loads(line)
    same = req["p1"] == req["p2"] and req["o1"] == req["o2"]
    sys.stdout.write(json.dumps({"id": req["id"],
                                 "similarity": 1.0 if same else other}) + "\n")
    sys.stdout.flush()
