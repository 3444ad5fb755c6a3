"""Command line: render one figure job described by a JSON file."""

from __future__ import annotations

import argparse
import json
import sys

from .render import job_from_dict, render
from .schemas import SchemaError


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="orbitfig-render", description="Render a laboratory figure job"
    )
    parser.add_argument("--job", required=True, help="path to a job JSON file")
    args = parser.parse_args(argv)
    try:
        with open(args.job) as handle:
            payload = json.load(handle)
        job = job_from_dict(payload)
        out = render(job)
    except SchemaError as exc:
        print(f"schema error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return 3
    print(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
