# Copyright 2026 The wcop Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Runs wco on every fixture and validates the JSON reports against the schema."""

import json
import pathlib
import subprocess
import sys

import jsonschema


def main() -> int:
    wco, schema_path, fixture_dir = sys.argv[1:4]
    schema = json.loads(pathlib.Path(schema_path).read_text())
    validator = jsonschema.Draft202012Validator(schema)
    failures = 0
    fixtures = sorted(pathlib.Path(fixture_dir).glob("*.wco"))
    for path in fixtures:
        for extra in ([], ["--oracle"]):
            proc = subprocess.run([wco, "analyze", str(path), "--format", "json", *extra],
                                  capture_output=True, text=True, check=False)
            if proc.returncode != 0:
                print(f"{path.name} {extra}: exit {proc.returncode}: {proc.stderr.strip()}")
                failures += 1
                continue
            errors = list(validator.iter_errors(json.loads(proc.stdout)))
            for err in errors:
                print(f"{path.name} {extra}: {err.json_path}: {err.message}")
            failures += bool(errors)
    print(f"validated {2 * len(fixtures)} reports, {failures} failing")
    return 1 if failures or not fixtures else 0


if __name__ == "__main__":
    sys.exit(main())
