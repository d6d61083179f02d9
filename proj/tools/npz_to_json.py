#!/usr/bin/env python3
"""Convert a NumPy .npz graph archive to the hgb array-layout JSON."""

import argparse
import json
import sys
from pathlib import Path

import numpy as np


def to_list(a: np.ndarray):
    if np.issubdtype(a.dtype, np.integer):
        return a.astype(np.int64).tolist()
    return a.astype(np.float64).tolist()


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("npz", type=Path)
    p.add_argument("out", type=Path)
    p.add_argument("--x", default="x", help="array holding node features")
    p.add_argument("--y", default="y", help="array holding labels")
    p.add_argument("--edge-index", default="edge_index")
    p.add_argument("--hyperedge-index", default="hyperedge_index")
    p.add_argument("--task", choices=["classification", "regression"])
    p.add_argument("--name")
    args = p.parse_args(argv)

    data = np.load(args.npz, allow_pickle=False)
    missing = [k for k in (args.x, args.y, args.edge_index) if k not in data.files]
    if missing:
        print(f"error: {args.npz}: missing arrays {missing}; present: {data.files}", file=sys.stderr)
        return 1

    x = data[args.x]
    if x.ndim == 1:
        x = x[:, None]
    y = data[args.y].reshape(-1)
    edge_index = data[args.edge_index]
    if edge_index.shape[0] != 2 and edge_index.ndim == 2 and edge_index.shape[1] == 2:
        edge_index = edge_index.T
    doc = {
        "name": args.name or args.npz.stem,
        "x": to_list(x),
        "y": to_list(y),
        "edge_index": to_list(edge_index),
    }
    if args.hyperedge_index in data.files:
        doc["hyperedge_index"] = to_list(data[args.hyperedge_index])
    if args.task:
        doc["task"] = args.task
    args.out.write_text(json.dumps(doc, separators=(",", ":")))
    print(f"{args.out}: {x.shape[0]} nodes, {edge_index.shape[1]} arcs", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
