"""Black-box checks of the spanlab command-line tool: output schemas, exit codes, config handling."""

import csv
import io
import json
import math
import os
import subprocess
import sys
import tempfile

import jsonschema

cli, mutant, schema_dir, data_dir = sys.argv[1:5]
failures = []


def run(args, binary=cli):
    return subprocess.run([binary, *args], capture_output=True, text=True, timeout=1200)


def check(name, ok, info=""):
    print(("ok   " if ok else "FAIL ") + name + (f" ({info})" if info and not ok else ""))
    if not ok:
        failures.append(name)


def schema(name):
    with open(os.path.join(schema_dir, f"{name}.schema.json")) as f:
        return json.load(f)


def valid_json(name, args, subcommand):
    res = run([subcommand, *args])
    if res.returncode != 0:
        check(name, False, f"exit {res.returncode}: {res.stderr.strip()}")
        return None
    try:
        doc = json.loads(res.stdout)
        jsonschema.validate(doc, schema(subcommand))
    except (json.JSONDecodeError, jsonschema.ValidationError) as e:
        check(name, False, str(e).splitlines()[0])
        return None
    check(name, True)
    return doc


def data(name):
    return os.path.join(data_dir, name)


# every subcommand's JSON matches its schema
doc = valid_json("spectrum dir-hamilton n=4", ["--family", "dir-hamilton", "--n", "4"], "spectrum")
check("spectrum values 6,24,0,0,6", doc is not None and doc["f"] == ["6", "24", "0", "0", "6"])
valid_json("spectrum triangle-factor n=6", ["--family", "triangle-factor", "--n", "6"], "spectrum")
valid_json("spectrum degree-seq", ["--family", "degree-seq", "--n", "4", "--d", "1,1,1,1"], "spectrum")
valid_json("ratios hamilton n=7", ["--family", "hamilton", "--n", "7"], "ratios")
doc = valid_json("expect hamilton gnm(4,4)",
                 ["--family", "hamilton", "--model", "gnm", "--n", "4", "--m", "4"], "expect")
check("expect mu_exact 1/5", doc is not None and doc["mu_exact"] == "1/5")
doc = valid_json("expect hamilton gnp(4,1/2)",
                 ["--family", "hamilton", "--model", "gnp", "--n", "4", "--p", "0.5"], "expect")
check("expect lambda 3/16", doc is not None and abs(doc["lambda_log"] - math.log(3 / 16)) < 1e-12)
valid_json("expect degree-seq beyond enumeration",
           ["--family", "degree-seq", "--n", "30", "--d", ",".join(["3"] * 30), "--model", "gnp", "--p", "0.5"],
           "expect")
doc = valid_json("conditions all-h-edge",
                 ["--family", "all-h-edge", "--n", "4", "--h", "2", "--model", "gnm", "--m", "4"], "conditions")
check("conditions deviation 1.0", doc is not None and doc["a_deviations"][0]["deviation"] == 1.0)
valid_json("conditions dir-hamilton n=60",
           ["--family", "dir-hamilton", "--n", "60", "--model", "dnm", "--m", "900", "--gamma", "20", "--K", "2"],
           "conditions")
valid_json("bounds triangle-factor n=15", ["--family", "triangle-factor", "--n", "15"], "bounds")
doc = valid_json("bounds triangle-factor n=30", ["--family", "triangle-factor", "--n", "30"], "bounds")
check("bounds n=30 has evaluated cells", doc is not None and doc["audits"][0]["evaluated"] > 0)
valid_json("bounds hamilton n=7", ["--family", "hamilton", "--n", "7"], "bounds")
valid_json("simulate gnp", ["--family", "hamilton", "--n", "7", "--model", "gnp", "--p", "0.7",
                            "--trials", "50", "--seed", "1"], "simulate")
valid_json("simulate dnm", ["--family", "dir-triangle-factor", "--n", "6", "--model", "dnm", "--m", "20",
                            "--trials", "50", "--seed", "1"], "simulate")
valid_json("trend", ["--family", "hamilton", "--n-grid", "6,7,8", "--model", "gnm", "--m-frac", "0.75",
                     "--trials", "50", "--seed", "2"], "trend")
valid_json("trend gnp", ["--family", "all-h-edge", "--h", "3", "--n-grid", "5,6", "--model", "gnp", "--p", "0.5",
                         "--trials", "20", "--seed", "2"], "trend")
doc = valid_json("verify exact criteria", ["--skip-stochastic"], "verify")
check("verify exact criteria all pass", doc is not None and doc["passed"] and len(doc["results"]) == 9)

# host graph files
for fam, path, expect in [("hamilton", "c4.graph", "1"), ("hamilton", "tree5.graph", "0"),
                          ("triangle-factor", "k6.graph", "10"), ("hamilton", "k6.graph", "60"),
                          ("dir-triangle-factor", "dir_triangles.graph", "1"),
                          ("dir-hamilton", "dir_triangles.graph", "0")]:
    doc = valid_json(f"count {fam} in {path}", ["--family", fam, "--host-graph", data(path)], "count")
    check(f"count {fam} in {path} = {expect}", doc is not None and doc["count"] == expect)
doc = valid_json("count degree-seq in c4", ["--family", "degree-seq", "--d", "1,1,1,1",
                                            "--host-graph", data("c4.graph")], "count")
check("c4 has two perfect matchings", doc is not None and doc["count"] == "2")

# config files, flag overrides
cfg_run = run(["simulate", "--config", data("hamilton_gnp.cfg"), "--trials", "5"])
check("config file accepted", cfg_run.returncode == 0, cfg_run.stderr)
if cfg_run.returncode == 0:
    doc = json.loads(cfg_run.stdout)
    check("flag overrides config", doc["trials"] == 5 and doc["seed"] == "7" and doc["model"]["n"] == 10)
with tempfile.TemporaryDirectory() as tmp:
    bad_cfg = os.path.join(tmp, "bad.cfg")
    with open(bad_cfg, "w") as f:
        f.write("family = hamilton\ncolour = red\n")
    res = run(["spectrum", "--config", bad_cfg, "--n", "5"])
    check("unknown config key is a usage error", res.returncode == 2 and "colour" in res.stderr, res.stderr)

    csv_path = os.path.join(tmp, "trials.csv")
    res = run(["simulate", "--family", "hamilton", "--n", "7", "--model", "gnp", "--p", "0.6",
               "--trials", "40", "--seed", "9", "--emit-csv", csv_path])
    check("simulate with emit-csv", res.returncode == 0, res.stderr)
    if res.returncode == 0:
        with open(csv_path) as f:
            rows = list(csv.reader(f))
        counts = json.loads(res.stdout)["counts"]
        check("emit-csv header and rows", rows[0] == ["trial", "count", "T"] and len(rows) == 41)
        check("emit-csv counts match report", [r[1] for r in rows[1:]] == counts)

# CSV output
for sub, args, header in [
    ("spectrum", ["--family", "hamilton", "--n", "6"], "j,f_j,r_j_num,r_j_den"),
    ("ratios", ["--family", "hamilton", "--n", "6"], "j,r_j_num,r_j_den,r_j,predicted"),
    ("bounds", ["--family", "triangle-factor", "--n", "30"], "lemma,l,t,in_window,evaluated,ratio,lower,upper,holds"),
    ("trend", ["--family", "hamilton", "--n-grid", "6,7", "--model", "gnm", "--m-frac", "0.75", "--trials", "20",
               "--seed", "1"], "n,m,p,expected,exceed_0.5,exceed_0.25"),
    ("verify", ["--skip-stochastic"], "id,passed,name,detail"),
]:
    res = run([sub, *args, "--format", "csv"])
    rows = list(csv.reader(io.StringIO(res.stdout))) if res.returncode == 0 else []
    check(f"{sub} csv", res.returncode == 0 and rows and ",".join(rows[0]) == header
          and len(rows) > 1 and all(len(r) == len(rows[0]) for r in rows), res.stderr)
res = run(["expect", "--family", "hamilton", "--model", "gnm", "--n", "4", "--m", "4", "--format", "csv"])
check("csv rejected where unsupported", res.returncode == 2, res.stderr)

# exit codes
res = run(["expect", "--family", "triangle-factor", "--n", "7", "--model", "gnm", "--p", "0.5"])
problems = [l for l in res.stderr.splitlines() if l.startswith("  ")]
check("usage error lists every problem", res.returncode == 2 and len(problems) == 3
      and any(l.strip().startswith(k + ":") for l in problems for k in ["family"])
      and any(l.strip().startswith("p:") for l in problems)
      and any(l.strip().startswith("m:") for l in problems), res.stderr)
res = run(["spectrum", "--family", "hamilton"])
check("missing n is a usage error", res.returncode == 2 and "n: required" in res.stderr, res.stderr)
res = run(["spectrum", "--family", "hamilton", "--n", "5", "--bogus", "1"])
check("unknown flag is a usage error", res.returncode == 2)
res = run(["simulate", "--family", "hamilton", "--n", "30", "--model", "gnm", "--m", "200", "--trials", "1",
           "--seed", "1"])
check("capability error exit 3", res.returncode == 3 and "n <= 20" in res.stderr, res.stderr)
res = run(["spectrum", "--family", "hamilton", "--n", "14"])
check("spectrum cap exit 3", res.returncode == 3, res.stderr)
res = run(["count", "--family", "hamilton", "--host-graph", data("missing.graph")])
check("missing host file is a usage error", res.returncode == 2, res.stderr)
res = run(["--help"])
check("help exits 0", res.returncode == 0 and "spectrum" in res.stdout)
res = run([])
check("no subcommand is a usage error", res.returncode == 2)

# mutation check: the deliberately broken build must fail verification
res = run(["verify", "--skip-stochastic"], binary=mutant)
check("mutant verify exits 1", res.returncode == 1, f"exit {res.returncode}")
if res.returncode == 1:
    doc = json.loads(res.stdout)
    failed = [r["id"] for r in doc["results"] if not r["passed"]]
    check("mutant fails the recursion criterion", 1 in failed, str(failed))

print(f"{len(failures)} failure(s)")
sys.exit(1 if failures else 0)
