"""Runs every hgb subcommand on a small dataset and validates the JSON
reports against docs/report-schema.json."""

import argparse
import json
import random
import subprocess
import sys
import tempfile
from pathlib import Path

import jsonschema


def make_dataset(path: Path) -> None:
    rng = random.Random(0)
    n = 40
    labels = [v % 2 for v in range(n)]
    edges = sorted({tuple(sorted(rng.sample(range(n), 2))) for _ in range(90)})
    hyperedges = [list(range(k, min(k + 5, n))) for k in range(0, n, 5)]
    features = [[float(labels[v] == j) + rng.gauss(0, 0.1) for j in range(4)] for v in range(n)]
    path.write_text(json.dumps({
        "name": "schema-check",
        "num_nodes": n,
        "task": "classification",
        "num_classes": 2,
        "node_features": features,
        "edges": [list(e) for e in edges],
        "hyperedges": hyperedges,
        "labels": labels,
    }))


def main() -> int:
    parser = argparse.ArgumentParser()
    parser.add_argument("--hgb", required=True)
    parser.add_argument("--schema", required=True)
    args = parser.parse_args()

    schema = json.loads(Path(args.schema).read_text())
    jsonschema.Draft202012Validator.check_schema(schema)
    validator = jsonschema.Draft202012Validator(schema)

    with tempfile.TemporaryDirectory() as tmp:
        tmp = Path(tmp)
        data = tmp / "data.json"
        make_dataset(data)
        model = tmp / "model.json"
        manifest = tmp / "suite.json"
        manifest.write_text(json.dumps({
            "name": "schema", "master_seed": 3, "defaults": {"epochs": 2, "seeds": 1},
            "runs": [{"dataset": "data.json", "model": "gcn"},
                     {"dataset": "data.json", "model": "hyperconv",
                      "saint": {"method": "node", "budget": 20, "batch": 2}},
                     {"dataset": "absent.json", "model": "gcn"}]}))
        commands = {
            "stats": ["stats", str(data), "--format", "json", "--count-arcs"],
            "convert": ["convert", "--in", str(data), "--out", str(tmp / "h.json"), "--to", "hierarchy"],
            "split": ["split", "--in", str(data), "--seed", "2"],
            "build-hyperedges": ["build-hyperedges", "--in", str(data), "--out", str(tmp / "b.json"),
                                 "--method", "ball", "--threshold", "0.5"],
            "sample": ["sample", "--in", str(data), "--method", "edge", "--budget", "10", "--seed", "1"],
            "sampler-report": ["sampler-report", "--in", str(data), "--method", "rw", "--budget", "4",
                               "--trials", "10", "--format", "json"],
            "train": ["train", "--model", "lp:gcn+hyperatten", "--dataset", str(data), "--epochs", "3",
                      "--seeds", "2", "--save-model", str(model)],
            "eval": ["eval", "--model-file", str(model), "--dataset", str(data), "--mask", "all"],
            "suite": ["suite", "--manifest", str(manifest)],
        }
        failures = 0
        for kind, cmd in commands.items():
            proc = subprocess.run([args.hgb, *cmd], capture_output=True, text=True)
            expected_code = 1 if kind == "suite" else 0
            if proc.returncode != expected_code:
                print(f"{kind}: exit {proc.returncode}\n{proc.stderr}")
                failures += 1
                continue
            report = json.loads(proc.stdout)
            errors = sorted(validator.iter_errors(report), key=lambda e: list(e.path))
            if report.get("kind") != kind:
                errors.append(f"kind is {report.get('kind')!r}")
            for e in errors:
                print(f"{kind}: {getattr(e, 'message', e)} at {list(getattr(e, 'path', []))}")
            failures += bool(errors)
            print(f"{kind}: {'ok' if not errors else 'invalid'}")
        return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
