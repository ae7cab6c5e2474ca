"""End-to-end run of the command-line tool: exit codes, schema validity,
config round trip, byte-identical reruns and the TSV report."""

import json
import subprocess
import sys
import tempfile
from pathlib import Path

import jsonschema

BIN, SCHEMAS = sys.argv[1], Path(sys.argv[2])
failures = []


def run(*args, expect=0):
    p = subprocess.run([BIN, *args], capture_output=True, text=True)
    if p.returncode != expect:
        failures.append(f"{' '.join(args)}: exit {p.returncode}, expected {expect}\n{p.stderr}")
    return p


def validate(path, kind):
    doc = json.loads(Path(path).read_text())
    schema = json.loads((SCHEMAS / f"{kind}.schema.json").read_text())
    try:
        jsonschema.validate(doc, schema, cls=jsonschema.Draft202012Validator)
    except jsonschema.ValidationError as e:
        failures.append(f"{path} against {kind}: {e.message} at {list(e.absolute_path)}")
    return doc


with tempfile.TemporaryDirectory() as tmp:
    t = Path(tmp)

    run("construct", "--d", "-7", "--n", "3", "--s", "1", "--a", "1", "--out", str(t / "i7.json"))
    i7 = validate(t / "i7.json", "instance")
    if i7["m"] != "-62505" or i7["branch"] != "3!|d":
        failures.append("construct d=-7: wrong m or branch")
    run("construct", "-d", "-3", "-n", "3", "-s", "1", "-a", "1", "--out", str(t / "i3.json"))
    if validate(t / "i3.json", "instance")["branch"] != "3|d":
        failures.append("construct d=-3: 3|d branch marker missing")
    run("construct", "--d", "-7", "--n", "3", "--s", "1", expect=2)
    run("construct", "--d", "-5", "--n", "3", "--s", "1", "--a", "1", expect=2)

    run("verify", "--d", "-7", "--n", "3", "--s", "1", "--a", "1", "--out", str(t / "v7.json"))
    v7 = validate(t / "v7.json", "verify")
    if v7["certificate"]["verdict"] != "certified" or v7["certificate"]["statement"] != "3 | h(K)":
        failures.append("verify d=-7: not certified")
    run("verify", "--d", "-7", "--n", "1", "--s", "1", "--a", "1", "--out", str(t / "v1.json"))
    validate(t / "v1.json", "verify")

    search = ["search", "--a-tilde", "1", "--n", "5", "--s", "1", "--d", "-7", "--q-bound", "100000", "--workers", "4"]
    run(*search, "--save-config", str(t / "cfg.json"))
    cfg = json.loads((t / "cfg.json").read_text())
    if cfg["command"] != "search" or cfg["q_bound"] != "100000":
        failures.append("saved config does not round-trip")
    run("search", "--config", str(t / "cfg.json"), "--out", str(t / "s1.json"))
    run("search", "--config", str(t / "cfg.json"), "--out", str(t / "s2.json"))
    if (t / "s1.json").read_bytes() != (t / "s2.json").read_bytes():
        failures.append("two search runs from one config differ")
    s1 = validate(t / "s1.json", "search")
    if len(s1["certificates"]) != 28 or s1["obstructed"] != ["5:1:0"]:
        failures.append("search fixture changed")
    run(*search[:-4], "--q-bound", "1000", expect=3)

    run("solve", "--certs", str(t / "s1.json"), "--ramify", "1", "--out", str(t / "sol.json"))
    sol = validate(t / "sol.json", "solve")
    if len(sol["ramified"]) != 1:
        failures.append("solve: ramified prime missing")
    run("solve", "--certs", str(t / "v7.json"), expect=2)

    run("construct", "--d", "-7", "--n", "5", "--s", "1", "--a", sol["a"], "--out", str(t / "e2e.json"))
    e2e = validate(t / "e2e.json", "instance")
    p = sol["ramified"][0]
    rows = {r["p"]: r for r in (e2e["ramification"] or {"rows": []})["rows"]}
    if p not in rows or not rows[p]["totally_ramified"] or rows[p]["v_m"] != 1:
        failures.append(f"end-to-end: {p} is not totally ramified with v_p(m) = 1")

    out = run("report", str(t / "s1.json"), str(t / "v7.json"), str(t / "sol.json")).stdout.splitlines()
    header = out[0].split("\t")
    if header[:3] != ["source", "kind", "id"] or len(out) != 1 + 28 + 1 + 1 + 1:
        failures.append(f"report: unexpected shape ({len(out)} lines)")
    if any(len(line.split("\t")) != len(header) for line in out):
        failures.append("report: ragged rows")

for f in failures:
    print("FAIL:", f)
print(f"{'ok' if not failures else 'failed'}: cli outputs")
sys.exit(1 if failures else 0)
