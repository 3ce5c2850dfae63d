"""Run a small evaluate job through the CLI and validate its JSON output."""

import json
import subprocess
import sys
import tempfile
from pathlib import Path

import jsonschema


def main(cli, schema_path):
    schema = json.loads(Path(schema_path).read_text())
    with tempfile.TemporaryDirectory() as tmp:
        out = Path(tmp) / "results.json"
        subprocess.run(
            [cli, "--format", "json", "--seed", "3", "evaluate", "--nodes", "300", "--edges", "600",
             "--trials", "3", "--samples", "200", "--epochs", "5", "--rd", "0", "1",
             "--jordan", "rank", "-o", str(out)],
            check=True,
        )
        results = json.loads(out.read_text())
    jsonschema.validate(results, schema)
    assert len(results["rows"]) == 6
    assert all(row["source_in_primary"] for row in results["rows"])
    print(f"{len(results['rows'])} rows valid")


if __name__ == "__main__":
    main(sys.argv[1], sys.argv[2])
