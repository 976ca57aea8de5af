#!/usr/bin/env python3
"""Regenerate the bounded-check ceilings baseline from fresh runs.

Usage: make_ceilings.py BUILD_DIR OUT_JSON [--factor 1.5]
"""
import argparse
import json
import subprocess
import tempfile
from pathlib import Path

SURFACES = ["sphere", "torus", "perturbed_sphere"]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("build_dir")
    ap.add_argument("out")
    ap.add_argument("--factor", type=float, default=1.5)
    args = ap.parse_args()
    exe = Path(args.build_dir) / "thinshell"
    ceilings = {}
    with tempfile.TemporaryDirectory() as tmp:
        for s in SURFACES:
            out = Path(tmp) / s
            subprocess.run([str(exe), "check", "--all", "--surface", s, "--format", "json", "--out", str(out),
                            "--ceilings", str(Path(tmp) / "none.json")], check=False, stdout=subprocess.DEVNULL)
            for r in json.loads((out / "results.json").read_text()):
                if r["kind"] != "bounded" or r["verdict"] == "skipped" or not r["constant"] or r["ceiling"]:
                    continue
                ceilings[f"{s}/{r['name']}"] = float(f"{r['constant'] * args.factor:.4g}")
    Path(args.out).write_text(json.dumps(dict(sorted(ceilings.items())), indent=2) + "\n")


if __name__ == "__main__":
    main()
