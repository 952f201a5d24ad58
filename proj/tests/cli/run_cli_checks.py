#!/usr/bin/env python3
"""End-to-end checks of the conekit command line binary."""

import csv
import io
import json
import os
import subprocess
import sys
import tempfile

CLI = None
checks = 0


def run(args, env_extra=None):
    env = os.environ.copy()
    env.pop("CONEKIT_OUT_DIR", None)
    if env_extra:
        env.update(env_extra)
    proc = subprocess.run(
        [CLI] + args, capture_output=True, text=True, env=env, timeout=240
    )
    return proc.returncode, proc.stdout, proc.stderr


def ok(cond, label):
    global checks
    checks += 1
    if not cond:
        print(f"FAILED: {label}", file=sys.stderr)
        sys.exit(1)
    print(f"ok: {label}")


def parse_csv(text):
    return list(csv.reader(io.StringIO(text)))


def error_payload(stderr):
    payload = json.loads(stderr)
    assert "error" in payload, stderr
    return payload["error"]


def main():
    global CLI
    if len(sys.argv) != 2:
        print("usage: run_cli_checks.py <conekit binary>", file=sys.stderr)
        return 2
    CLI = sys.argv[1]

    rc, out, _ = run(["--help"])
    ok(rc == 0 and "tkn" in out and "solve" in out, "--help lists subcommands")

    # odd k annihilates in both modes
    rc, out, _ = run(["tkn", "--k", "3"])
    rows = parse_csv(out)
    ok(rc == 0, "tkn exits 0")
    ok(rows[0] == ["k", "N", "xi1", "mode", "re", "im"], "tkn csv header")
    ok(len(rows) == 3, "tkn default prints both modes")
    ok(
        all(float(r[4]) == 0.0 and float(r[5]) == 0.0 for r in rows[1:]),
        "odd k rows are exactly zero",
    )

    rc, out, _ = run(["tkn", "--k", "2", "--format", "json"])
    payload = json.loads(out)
    ok(rc == 0 and payload, "tkn json output parses")

    # every invalid field is reported at once
    rc, out, err = run(
        ["tkn", "--k", "-1", "--N", "0", "--xi1", "0", "--mode", "bogus"]
    )
    ok(rc == 2, "validation failure exits 2")
    fields = set(error_payload(err)["fields"])
    ok(
        {"k", "N", "xi1", "mode"} <= fields,
        "validation error lists every bad field",
    )

    with tempfile.TemporaryDirectory() as tmp:
        bad = os.path.join(tmp, "bad.json")
        with open(bad, "w") as f:
            f.write("{ not json")
        rc, _, err = run(["tkn", "--config", bad])
        ok(rc == 2, "malformed config exits 2")
        ok("parse" in error_payload(err)["message"], "parse failure is named")

        unknown = os.path.join(tmp, "unknown.json")
        with open(unknown, "w") as f:
            json.dump({"bogus": 1}, f)
        rc, _, err = run(["tkn", "--config", unknown])
        ok(rc == 2, "unknown config key exits 2")
        ok("bogus" in err, "unknown key is named")

        missing = os.path.join(tmp, "absent.json")
        rc, _, _ = run(["tkn", "--config", missing])
        ok(rc == 3, "unreadable config exits 3")

        # config supplies values, flags win
        cfg = os.path.join(tmp, "tkn.json")
        with open(cfg, "w") as f:
            json.dump({"k": 3, "mode": "derived"}, f)
        rc, out, _ = run(["tkn", "--config", cfg, "--k", "2"])
        rows = parse_csv(out)
        ok(
            rc == 0 and len(rows) == 2 and rows[1][0] == "2"
            and rows[1][3] == "derived",
            "flags override config values",
        )

    rc, _, err = run(["tkn", "--k", "2", "--N", "inf"])
    ok(rc == 4 and "error" in err, "unrepresentable request exits 4")

    rc, out1, _ = run(["sweep"])
    ok(rc == 0, "default sweep exits 0")
    lines1 = out1.splitlines()
    record_rows = [l for l in lines1 if l.count(",") == 9]
    ok(len(record_rows) == 13, "sweep emits header plus 12 record rows")
    rc, out2, _ = run(["sweep"])

    def strip_runtime(text):
        out = []
        for line in text.splitlines():
            if line.count(",") == 9:
                line = line.rsplit(",", 1)[0]
            out.append(line)
        return out

    ok(
        strip_runtime(out1) == strip_runtime(out2),
        "sweep output is deterministic outside the runtime column",
    )

    rc, out, _ = run(["lemma1", "--k", "2"])
    rows = parse_csv(out)
    ok(
        rc == 0 and float(rows[1][5]) <= 1e-6,
        "lemma1 discrepancy stays below tolerance",
    )

    rc, out, _ = run(["discrepancy"])
    rows = parse_csv(out)
    ok(rc == 0, "discrepancy exits 0")
    ok(
        rows[0]
        == [
            "k",
            "N",
            "xi1",
            "paper_literal",
            "derived",
            "oracle",
            "err_paper",
            "err_derived",
            "verdict",
        ],
        "discrepancy csv has exactly the nine report columns",
    )
    ok(
        any(r[0] == "2" and r[8] == "derived" for r in rows[1:]),
        "discrepancy verdict favors the derived forms at k = 2",
    )

    rc, out, _ = run(["solve"])
    rows = parse_csv(out)
    ok(rc == 0 and len(rows) == 4, "solve samples the three default points")
    ok(all(r[9] == "true" for r in rows[1:]), "default solve points succeed")

    rc, out, _ = run(["pair", "--fn", "xi1_gaussian", "--a", "10"])
    rows = parse_csv(out)
    ok(
        rc == 0 and abs(float(rows[1][4]) - 0.28069480897950405) < 1e-6,
        "pair reproduces the frozen odd-gaussian value",
    )

    with tempfile.TemporaryDirectory() as tmp:
        nested = os.path.join(tmp, "runs", "batch1")
        rc, _, _ = run(
            ["tkn", "--k", "2", "--out", "rel.csv"],
            env_extra={"CONEKIT_OUT_DIR": nested},
        )
        ok(
            rc == 0 and os.path.exists(os.path.join(nested, "rel.csv")),
            "CONEKIT_OUT_DIR prefixes relative paths and creates directories",
        )

    print(f"all {checks} cli checks passed")
    return 0


if __name__ == "__main__":
    sys.exit(main())
