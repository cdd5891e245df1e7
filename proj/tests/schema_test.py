# Copyright 2026 The maxlin Authors
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Validates fixtures and CLI reports against the schemas in schemas/."""

import argparse
import json
import pathlib
import subprocess
import sys
import tempfile

import jsonschema


def load_schemas(root):
    schemas = {}
    for path in sorted((root / "schemas").glob("*.json")):
        schema = json.loads(path.read_text())
        jsonschema.Draft202012Validator.check_schema(schema)
        schemas[path.stem] = jsonschema.Draft202012Validator(schema)
    return schemas


def run(binary, *args):
    proc = subprocess.run([binary, *map(str, args)], capture_output=True,
                          text=True, check=False)
    if proc.returncode != 0:
        raise AssertionError(f"maxlin {' '.join(map(str, args))} exited "
                             f"{proc.returncode}: {proc.stderr}")
    return json.loads(proc.stdout)


def check(validator, doc, label, failures):
    errors = sorted(validator.iter_errors(doc), key=lambda e: list(e.path))
    for e in errors:
        failures.append(f"{label}: /{'/'.join(map(str, e.path))}: {e.message}")
    return not errors


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--binary", required=True)
    parser.add_argument("--source-dir", required=True)
    args = parser.parse_args()
    root = pathlib.Path(args.source_dir)
    schemas = load_schemas(root)
    failures = []
    checked = 0

    fixtures = sorted((root / "fixtures").glob("*.json"))
    with tempfile.TemporaryDirectory() as tmp:
        for path in fixtures:
            doc = json.loads(path.read_text())
            check(schemas["problem"], doc, path.name, failures)
            checked += 1
            linsat = doc["kind"] == "linsat"
            if not linsat:
                w = pathlib.Path(tmp) / ("w_" + path.name)
                u = pathlib.Path(tmp) / ("u_" + path.name)
                rep = run(args.binary, "transform", path, "--out", w,
                          "--unweighted-out", u)
                check(schemas["transform"], rep, "transform " + path.name, failures)
                for image in (w, u):
                    check(schemas["problem"], json.loads(image.read_text()),
                          image.name, failures)
                checked += 3
            check(schemas["analysis"], run(args.binary, "analyze", path, "--histogram"),
                  "analyze " + path.name, failures)
            for solver in ("brute", "anneal", "prange"):
                rep = run(args.binary, "solve", path, "--solver", solver, "--seed", 1,
                          "--timing")
                check(schemas["solve"], rep, f"solve {solver} {path.name}", failures)
            checked += 4
            if linsat:
                rep = run(args.binary, "estimate", path)
                check(schemas["estimate"], rep, "estimate " + path.name, failures)
                rep = run(args.binary, "estimate", path, "--mode", "sampled",
                          "--samples", 200, "--seed", 3)
                check(schemas["estimate"], rep, "estimate sampled " + path.name,
                      failures)
                checked += 2

    for extra in (["--table", "0001", "--q", "2"],
                  ["--table", "0001", "--q", "3", "--max-constraints", "1"],
                  ["--table", "0110", "--q", "2", "--approximate"]):
        rep = run(args.binary, "gadget", "synth", *extra)
        check(schemas["gadget"], rep, "gadget " + " ".join(extra), failures)
        checked += 1

    # The validators must reject obvious damage.
    bad = json.loads(fixtures[0].read_text())
    bad["kind"] = "cnf"
    if schemas["problem"].is_valid(bad):
        failures.append("problem schema accepted kind 'cnf'")

    for f in failures:
        print("FAIL", f)
    print(f"{checked} documents checked, {len(failures)} failures")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
