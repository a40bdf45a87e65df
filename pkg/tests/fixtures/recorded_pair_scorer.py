#!/usr/bin/env python3
"""Stub pair scorer replaying recorded responses: argv[1] is a JSON file
mapping "p1|o1||p2|o2" -> similarity. Unknown pairs score 0."""
import json
import sys

responses = json.loads(open(sys.argv[1], encoding="utf-8").read())
for line in sys.stdin:
    line = line.strip()
    if not line:
        continue
    req = json.loads(line)
    key = f"{req['p1']}|{req['o1']}||{req['p2']}|{req['o2']}"
    similarity = responses.get(key, 0.0)
    sys.stdout.write(json.dumps({"id": req["id"], "similarity": similarity}) + "\n")
    sys.stdout.flush()
