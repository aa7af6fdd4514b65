"""Shared plumbing for the experiment scripts: dataclass config <-> argparse, JSON output."""

import argparse
import dataclasses
import json
import sys
from pathlib import Path


def parse_config(cls, description: str):
    p = argparse.ArgumentParser(description=description)
    for f in dataclasses.fields(cls):
        default = f.default
        p.add_argument(f"--{f.name.replace('_', '-')}", type=type(default) if default is not None else str, default=default)
    p.add_argument("--out", help="write the JSON report here instead of stdout")
    ns = vars(p.parse_args())
    out = ns.pop("out")
    return cls(**ns), out


def emit(report: dict, out: str | None):
    text = json.dumps(report, indent=2)
    if out:
        Path(out).write_text(text + "\n", encoding="utf-8")
        print(f"wrote {out}", file=sys.stderr)
    else:
        print(text)
