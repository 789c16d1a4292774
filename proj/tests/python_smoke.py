#!/usr/bin/env python3
"""Smoke checks of the afdm_isac python module against built-in references.

Run with PYTHONPATH pointing at the directory containing the package.
"""
import math

import afdm_isac as ai

failures = []


def check(name, cond, detail=""):
    status = "ok" if cond else "FAIL"
    print(f"[{status}] {name}" + (f" ({detail})" if detail and not cond else ""))
    if not cond:
        failures.append(name)


def desk_layout():
    cfg = ai.desk_config()
    return cfg, ai.build_layout(cfg.frame, cfg.chirp())


def test_layout():
    cfg, layout = desk_layout()
    check("version string", ai.__version__.startswith("afdm-isac "))
    check("desk m0", layout.m0 == 147)
    check("desk boost", layout.boost == 308)
    check("desk overhead", abs(layout.overhead() - 309 / 1024) < 1e-12)
    members = list(layout.p_gi) + list(layout.d_gi) + list(layout.d_data)
    check("partition covers the grid",
          sorted(members + [layout.m0]) == list(range(1024)))
    ref = ai.table1_config()
    ref_layout = ai.build_layout(ref.frame, ref.chirp())
    check("reference m0", ref_layout.m0 == 287)
    check("reference pilot window", len(ref_layout.pilot_window()) == 295)
    check("reference throughput",
          abs(ai.throughput(ref) - 43.35e6) < 0.05e6,
          f"{ai.throughput(ref):.4g}")


def test_transforms():
    cfg, layout = desk_layout()
    p = cfg.chirp()
    rng = ai.RngStream(3, 0)
    frame = ai.assemble_frame(layout, rng)
    s = ai.idaft(frame.x, p)
    back = ai.daft(s, p)
    err = max(abs(a - b) for a, b in zip(back, frame.x))
    check("daft(idaft(x)) == x", err < 1e-10, f"max err {err:.3g}")
    with_prefix = ai.add_cpp(s, p)
    check("prefix length", len(with_prefix) == p.N + p.M)
    body = ai.remove_cpp(with_prefix, p)
    err = max(abs(a - b) for a, b in zip(body, s))
    check("remove_cpp inverts add_cpp", err < 1e-12, f"max err {err:.3g}")


def test_estimation():
    cfg, layout = desk_layout()
    p = cfg.chirp()
    rng = ai.RngStream(4, 0)
    frame = ai.assemble_frame(layout, rng)

    scene = ai.Scene()
    scene.targets = [ai.Target(0.8 + 0.3j, 3.0 * p.dt, -1.0 / p.T())]
    r = ai.apply_channel(frame, scene, p)
    y = ai.daft(r, p)

    grid = ai.GridSpec()
    grid.l_max = cfg.frame.l_max
    grid.k_max = cfg.frame.k_max
    est = ai.estimate(y, frame, grid, 1, p, ai.SensingMode.WholeFrame)
    t = est.targets[0]
    check("integer target delay, whole frame", abs(t.tau / p.dt - 3.0) < 1e-9)
    check("integer target Doppler, whole frame", abs(t.f * p.T() + 1.0) < 1e-9)

    y_p = ai.extract_pilot_slice(y, layout)
    est_p = ai.estimate(y_p, frame, grid, 1, p, ai.SensingMode.PilotOnly)
    check("pilot-only agrees",
          abs(est_p.targets[0].tau - t.tau) < 1e-12
          and abs(est_p.targets[0].f - t.f) < 1e-9)

    phys = ai.to_range_velocity(ai.TargetEstimate(0.65e-6, 0.0), 79e9)
    check("range conversion", abs(phys.range_m - 97.43) < 0.01,
          f"{phys.range_m:.4f}")


def test_front_end():
    cfg, layout = desk_layout()
    p = cfg.chirp()
    rng = ai.RngStream(5, 0)
    frame = ai.assemble_frame(layout, rng)

    scene = ai.Scene()
    scene.targets = [ai.Target(1.0 + 0.0j, 2.0 * p.dt, 1.0 / p.T())]
    scene.h0 = 10 ** (30.0 / 20.0) * complex(math.cos(1.0), math.sin(1.0))
    sic = ai.run_sic(frame, scene, p, 4)
    report = ai.si_report(sic.diag)
    check("pilot vector length", len(sic.y_p) == len(layout.pilot_window()))
    check("si suppressed", report.si_suppression_db > 15.0,
          f"{report.si_suppression_db:.1f} dB")
    check("desired signal retained", sic.diag.desired_power > 0.0)


def test_harness():
    cfg = ai.desk_config()
    cfg.P = 1
    cfg.trials = 3
    cfg.snr_db = [20.0]
    cfg.validate()

    first = ai.run_trial(cfg, 20.0, 5)
    again = ai.run_trial(cfg, 20.0, 5)
    check("trial errors per target", len(first.errors) == cfg.P)
    check("trial determinism",
          first.errors[0].range_m == again.errors[0].range_m
          and first.errors[0].velocity_mps == again.errors[0].velocity_mps)

    table = ai.run_sweep(cfg)
    check("sweep rows", len(table.rows) == 1)
    check("sweep trial count", table.rows[0].trials == 3)
    manual = [ai.run_trial(cfg, 20.0, t).errors[0] for t in range(3)]
    rmse = math.sqrt(sum(e.range_m ** 2 for e in manual) / 3)
    check("sweep aggregates trials",
          abs(table.rows[0].range_rmse_m - rmse) < 1e-12)
    csv = ai.rmse_csv(table)
    check("csv header",
          csv.splitlines()[0].startswith("snr_db,range_rmse_m"))


def test_config_grammar():
    cfg = ai.parse_config("[frame]\nn = 256\nk_f = 2\nk_max = 1\nl_max = 6\n")
    check("parsed frame size", cfg.frame.N == 256)
    try:
        ai.parse_config("[frame]\nbogus = 1\n")
        check("unknown key rejected", False)
    except ValueError:
        check("unknown key rejected", True)
    try:
        bad = ai.desk_config()
        bad.trials = 0
        bad.validate()
        check("invalid config rejected", False)
    except ValueError:
        check("invalid config rejected", True)


def main():
    test_layout()
    test_transforms()
    test_estimation()
    test_front_end()
    test_harness()
    test_config_grammar()
    if failures:
        print(f"{len(failures)} failing check(s): {failures}")
        return 1
    print("all python smoke checks passed")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
