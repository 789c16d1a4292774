#!/usr/bin/env python3
"""End-to-end checks of the afdm command line tool.

Usage: cli_test.py PATH_TO_BINARY
"""
import json
import subprocess
import sys
import tempfile
from pathlib import Path

BINARY = Path(sys.argv[1])

SMALL_CFG = """
[frame]
n = 64
k_f = 1
k_max = 1
l_max = 4

[chirp]
m = 8
dt = 1.0

[grid]
d_tau = 0.5
d_f = 0.5

[scene]
p = 2

[sweep]
snr_db = 0, 20
trials = 4
seed = 7
"""

failures = []


def check(name, cond, detail=""):
    status = "ok" if cond else "FAIL"
    print(f"[{status}] {name}" + (f" ({detail})" if detail and not cond else ""))
    if not cond:
        failures.append(name)


def run(*args, expect=0):
    proc = subprocess.run([str(BINARY), *args], capture_output=True, text=True)
    if expect is not None and proc.returncode != expect:
        raise AssertionError(
            f"{args}: exit {proc.returncode} != {expect}\n{proc.stderr}")
    return proc


def main():
    tmp = Path(tempfile.mkdtemp(prefix="afdm_cli_"))
    cfg = tmp / "small.cfg"
    cfg.write_text(SMALL_CFG)

    # layout: exact key set and the frozen desk-scale numbers
    layout = json.loads(run("layout").stdout)
    check("layout keys",
          sorted(layout) == ["boost", "d_data", "d_gi", "m0", "overhead", "p_gi"])
    check("layout desk values",
          layout["m0"] == 147 and layout["boost"] == 308)
    sets = [set(layout[k]) for k in ("d_data", "d_gi", "p_gi")]
    union = set().union(*sets) | {layout["m0"]}
    check("layout partitions the frame",
          len(union) == 1024 and sum(len(s) for s in sets) + 1 == 1024)

    # simulate: structure and determinism
    a = run("--config", str(cfg), "simulate", "--snr", "25", "--trial", "1")
    b = run("--config", str(cfg), "simulate", "--snr", "25", "--trial", "1")
    check("simulate deterministic", a.stdout == b.stdout)
    sim = json.loads(a.stdout)
    check("simulate structure",
          len(sim["scene"]["targets"]) == 2 and len(sim["estimates"]) == 2
          and len(sim["errors"]) == 2 and "degraded" in sim)

    # sweep: files, CSV shape, worker-count invariance
    out1, out2 = tmp / "sweep1", tmp / "sweep2"
    run("--config", str(cfg), "--out", str(out1), "--threads", "1", "sweep")
    run("--config", str(cfg), "--out", str(out2), "--threads", "3", "sweep")
    csv1 = (out1 / "rmse.csv").read_text()
    check("sweep writes csv+json",
          (out1 / "rmse.csv").exists() and (out1 / "rmse.json").exists())
    check("sweep rows", csv1.count("\n") == 3 and csv1.startswith("snr_db,"))
    check("sweep thread invariance", csv1 == (out2 / "rmse.csv").read_text())
    meta = json.loads((out1 / "rmse.json").read_text())
    check("sweep json provenance",
          meta["seed"] == 7 and meta["version"].startswith("afdm-isac")
          and len(meta["rows"]) == 2)

    # throughput: monotone decreasing rate over the overhead grid
    rate_rows = run("--config", str(cfg), "throughput").stdout.strip().splitlines()[1:]
    rates = [float(r.split(",")[-1]) for r in rate_rows]
    check("throughput grid", len(rates) >= 3)
    # Requests below the natural overhead clamp to the same layout, so the
    # rate is non-increasing along the grid and strictly lower at the end.
    check("throughput monotone",
          all(x >= y for x, y in zip(rates, rates[1:])) and rates[0] > rates[-1])

    # sic-demo: all artifacts, report sanity
    demo = tmp / "demo"
    run("--config", str(cfg), "--out", str(demo), "sic-demo", "--snr", "30")
    names = ["sic_report.json", "sic_pilot_vector.csv",
             "sic_spectrum_received.csv", "sic_spectrum_dechirped.csv",
             "sic_spectrum_filtered.csv"]
    check("sic-demo artifacts", all((demo / n).exists() for n in names))
    report = json.loads((demo / "sic_report.json").read_text())
    check("sic-demo suppresses the direct path",
          report["si_suppression_db"] > 15.0)
    spectrum = (demo / "sic_spectrum_filtered.csv").read_text().splitlines()
    check("sic-demo spectrum shape",
          spectrum[0] == "freq_hz,power_db" and len(spectrum) == 8 * 64 + 1)

    # exit codes
    check("missing config exits 2",
          run("--config", "/nonexistent.cfg", "layout", expect=None).returncode == 2)
    bad = tmp / "bad.cfg"
    bad.write_text("[frame]\nbogus = 1\n")
    check("unknown key exits 2",
          run("--config", str(bad), "layout", expect=None).returncode == 2)
    check("help exits 0", run("--help", expect=None).returncode == 0)

    if failures:
        print(f"{len(failures)} CLI check(s) failed: {failures}")
        return 1
    print("all CLI checks passed")
    return 0


if __name__ == "__main__":
    sys.exit(main())
