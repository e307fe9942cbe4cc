#!/usr/bin/env python3
"""Validate scene manifests or flow documents against the published schemas.

usage: validate.py manifest|flows FILE...
"""
import json
import pathlib
import sys

import jsonschema
from referencing import Registry, Resource

HERE = pathlib.Path(__file__).resolve().parent


def load(name):
    return json.loads((HERE / name).read_text())


def main(argv):
    if len(argv) < 3 or argv[1] not in ("manifest", "flows"):
        print(__doc__, file=sys.stderr)
        return 2
    flows = load("flows.schema.json")
    manifest = load("manifest.schema.json")
    registry = Registry().with_resources([
        ("flows.schema.json", Resource.from_contents(flows)),
        (flows["$id"], Resource.from_contents(flows)),
        (manifest["$id"], Resource.from_contents(manifest)),
    ])
    schema = manifest if argv[1] == "manifest" else flows
    validator = jsonschema.Draft202012Validator(schema, registry=registry)
    bad = 0
    for path in argv[2:]:
        doc = json.loads(pathlib.Path(path).read_text())
        errors = sorted(validator.iter_errors(doc), key=lambda e: list(e.path))
        for e in errors[:5]:
            print(f"{path}: {'/'.join(map(str, e.path))}: {e.message[:200]}", file=sys.stderr)
        bad += bool(errors)
        print(f"{path}: {'FAIL' if errors else 'ok'}")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main(sys.argv))
