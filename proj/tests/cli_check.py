#!/usr/bin/env python3
"""Runs the affc binary over a fixed corpus: exit codes, output text, JSON
schema conformance and byte-identical repeated runs."""

import json
import re
import subprocess
import sys

import jsonschema

AFFC, SCHEMA = sys.argv[1], sys.argv[2]

# (arguments, expected exit code, regex the human-readable stdout must match)
CASES = [
    (["classify", "(x+y^2+z^3, y+z^2, z)"], 0, r"family 10"),
    (["classify", "--char", "2", "(x+z^2+y^3, y+x^2)"], 0, r"family 8"),
    (["classify", "(x^2, y, z)"], 2, r"rejected"),
    (["dyndeg", "(y+x*z, z, x+z*(y+x*z))"], 0, r"\(3\+sqrt\(5\)\)/2"),
    (["dyndeg", "(z, y+x*z+z^3, x+y*z+x*z^2)"], 0, r"1\+sqrt\(2\)"),
    (["dyndeg", "(x^2, y, z)"], 2, r""),
    (["is-plane", "--char", "3", "y + z^3 + y^3*x"], 2, r"no"),
    (["is-plane", "x*(y+z^2)+z"], 0, r"yes"),
    (["compose", "(y, x, z)", "(y, x, z)"], 0, r"\(x, y, z\)"),
    (["iterate", "--rmax", "4", "(y+x*z, z, x+z*(y+x*z))"], 0, r"3 8 21 55"),
    (["invert", "(x+y^2, y, z)"], 0, r"-y\^2\+x"),
    (["decompose-tame", "(x+y*z+z*x^2, y+x^2+z^3, z)"], 0, r"triangular"),
    (["enumerate-lambda", "2"], 0, r"sqrt\(2\)"),
    (["estimate", "--rmax", "8", "(z+x*y, y+x, x)"], 0, r"lambda <="),
    (["is-plane", "(x+, y)"], 1, r""),
    (["is-plane", "--char", "4", "x"], 1, r""),
    (["compose", "(x, y, z)"], 1, r""),
]

# Inputs passed on stdin with "-".
STDIN_CASES = [(["is-plane", "-"], "x+y^2+z^3\n", 0)]


def run(args, stdin=None):
    return subprocess.run([AFFC] + args, input=stdin, capture_output=True, text=True, timeout=600)


def main():
    with open(SCHEMA) as fh:
        validator = jsonschema.Draft202012Validator(json.load(fh))
    failures = []

    def check(cond, what):
        if not cond:
            failures.append(what)

    for args, code, pattern in CASES:
        label = " ".join(args)
        plain = run(args)
        check(plain.returncode == code, f"{label}: exit {plain.returncode}, expected {code}")
        check(re.search(pattern, plain.stdout + plain.stderr) is not None, f"{label}: output lacks /{pattern}/")
        rep = run(args + ["--json"])
        check(rep.returncode == code, f"{label} --json: exit {rep.returncode}")
        try:
            doc = json.loads(rep.stdout)
        except json.JSONDecodeError as e:
            failures.append(f"{label} --json: not JSON ({e})")
            continue
        errors = sorted(validator.iter_errors(doc), key=str)
        check(not errors, f"{label} --json: schema violations {[e.message for e in errors]}")
        check(doc.get("exit") == code, f"{label} --json: exit field {doc.get('exit')}")
        again = run(args + ["--json"])
        check(again.stdout == rep.stdout, f"{label}: output differs between runs")

    for args, text, code in STDIN_CASES:
        r = run(args, text)
        check(r.returncode == code, f"{' '.join(args)} on stdin: exit {r.returncode}")

    # parse error offsets
    doc = json.loads(run(["classify", "--json", "(x+, y, z)"]).stdout)
    check(doc.get("error", {}).get("offset") == 3, f"parse error offset {doc.get('error')}")

    # printed maps parse back to themselves
    out = json.loads(run(["invert", "--json", "(x+y*z+z*x^2, y+x^2+z^3, z)"]).stdout)["inverse"]
    back = json.loads(run(["compose", "--json", out, "(x, y, z)"]).stdout)["map"]
    check(back == out, f"printed inverse does not reparse: {out} vs {back}")
    ident = json.loads(run(["compose", "--json", out, "(x+y*z+z*x^2, y+x^2+z^3, z)"]).stdout)["map"]
    check(ident == "(x, y, z)", f"inverse composes to {ident}")

    for f in failures:
        print("FAIL:", f)
    print(f"{len(CASES) + len(STDIN_CASES)} invocations, {len(failures)} failures")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
