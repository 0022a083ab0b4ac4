"""Point counts and geometric degrees through the command-line front end."""

import json
import subprocess
import sys
import tempfile

docs = {
    "circle meets hyperbola xy = 1": {"vars": ["x", "y"], "system": {"field": "real", "polys": [
        [[1, 1, [2, 0]], [1, 1, [0, 2]], [-4, 1, [0, 0]]], [[1, 1, [1, 1]], [-1, 1, [0, 0]]]]}},
    "twisted cubic (y - x^2, z - x^3)": {"vars": ["x", "y", "z"], "system": {"field": "complex", "polys": [
        [[1, 1, [0, 1, 0]], [-1, 1, [2, 0, 0]]], [[1, 1, [0, 0, 1]], [-1, 1, [3, 0, 0]]]]}},
}

for label, doc in docs.items():
    with tempfile.NamedTemporaryFile("w", suffix=".json", delete=False) as fh:
        json.dump(doc, fh)
    for cmd in ("count-real", "count-complex", "dim", "degree"):
        proc = subprocess.run([sys.executable, "-m", "crag.cli", cmd, "--input", fh.name],
                              capture_output=True, text=True)
        result = json.loads(proc.stdout)
        print(f"{label:<34} {cmd:<14} {result.get('result', result.get('error'))}")
