import csv
import math

import numpy as np
import pytest

from unruh_memory.channels import ChannelKind, ChannelSpec
from unruh_memory.plotting import PlotInputError, emit_plot_script, pi_label
from unruh_memory.sweep import (
    CSV_HEADER, ERRATA_HEADER, SweepError, SweepGrid, emit_figure, errata_report, figure_grid,
    parse_number, parse_range, run_point, run_sweep, standard_grid, write_csv,
)

AD, DEP, BPF, PF = ChannelKind.AMPLITUDE_DAMPING, ChannelKind.DEPOLARIZING, ChannelKind.BIT_PHASE_FLIP, ChannelKind.PHASE_FLIP


def read_rows(path):
    with open(path, newline="") as fh:
        return [row for row in csv.reader(fh) if row and not row[0].startswith("#")]


def test_run_point_examples():
    assert run_point(ChannelSpec(PF, 0.5, 1.0), math.pi / 6).concurrence_numeric == pytest.approx(math.cos(math.pi / 6), abs=1e-12)
    for kind in ChannelKind:
        res = run_point(ChannelSpec(kind, 0.0, 0.0), math.pi / 4)
        assert res.concurrence_numeric == pytest.approx(math.sqrt(0.5), abs=1e-12)
    assert run_point(ChannelSpec(AD, 1.0, 0.0), 0.0).concurrence_numeric == pytest.approx(0.0, abs=1e-12)


def test_run_point_diagnostics():
    res = run_point(ChannelSpec(PF, 0.3, 0.4), 0.5)
    assert res.trace_residual <= 1e-12 and res.hermiticity_residual <= 1e-12
    assert res.lambda_dev <= 1e-9
    assert res.concurrence_closed_form == pytest.approx(res.concurrence_numeric, abs=1e-9)


def test_single_point_sweep_matches_run_point():
    grid = SweepGrid((BPF,), (0.3,), (0.6,), (0.2,))
    assert run_sweep(grid) == [run_point(ChannelSpec(BPF, 0.3, 0.6), 0.2)]


def test_sweep_over_r_with_full_memory():
    rows = run_sweep(SweepGrid((PF,), (0.5,), (1.0,), (0.0, math.pi / 6, math.pi / 4)))
    np.testing.assert_allclose([r.concurrence_numeric for r in rows],
                               [1.0, math.cos(math.pi / 6), math.cos(math.pi / 4)], atol=1e-12)


def test_sweep_order_and_parallel_determinism():
    grid = SweepGrid((AD, PF), (0.0, 0.5), (0.2, 0.8), (0.0, 0.3))
    serial = run_sweep(grid)
    assert [(r.kind, r.p, r.mu, r.r) for r in serial] == list(grid.points())
    assert run_sweep(grid, workers=4) == serial


@pytest.mark.parametrize("kw", [
    dict(kinds=(), p_values=(0.1,), mu_values=(0.1,), r_values=(0.1,)),
    dict(kinds=(PF,), p_values=(), mu_values=(0.1,), r_values=(0.1,)),
    dict(kinds=(PF,), p_values=(0.2, 0.1), mu_values=(0.1,), r_values=(0.1,)),
    dict(kinds=(PF,), p_values=(0.1,), mu_values=(1.1,), r_values=(0.1,)),
    dict(kinds=(PF,), p_values=(0.1,), mu_values=(0.1,), r_values=(1.0,)),
    dict(kinds=(PF, PF), p_values=(0.1,), mu_values=(0.1,), r_values=(0.1,)),
])
def test_grid_validation(kw):
    with pytest.raises(ValueError):
        SweepGrid(**kw)


def test_sweep_error_carries_coordinates(monkeypatch):
    import unruh_memory.sweep as sweep_mod

    def boom(spec, r):
        raise ArithmeticError("bad")

    monkeypatch.setattr(sweep_mod, "run_point", boom)
    with pytest.raises(SweepError, match=r"channel=pf p=0.5 mu=0.25 r=0.0"):
        run_sweep(SweepGrid((PF,), (0.5,), (0.25,), (0.0,)))


def test_standard_grid_shape():
    grid = standard_grid()
    assert len(grid) == 4 * 11 * 11 * 9
    assert grid.r_values[-1] == pytest.approx(math.pi / 4, abs=0)


@pytest.mark.parametrize("text,value", [("0.25", 0.25), ("pi/4", math.pi / 4), ("3*pi/8", 3 * math.pi / 8), ("pi", math.pi)])
def test_parse_number(text, value):
    assert parse_number(text) == value


def test_parse_range():
    assert parse_range("0.5") == (0.5,)
    vals = parse_range("0:1:0.1")
    assert len(vals) == 11 and vals[-1] == 1.0
    rs = parse_range("0:pi/4:pi/32")
    assert len(rs) == 9 and rs[-1] == math.pi / 4
    for bad in ("0:1", "0:1:0", "1:0:0.1", "x"):
        with pytest.raises(ValueError):
            parse_range(bad)


def test_figure_grids():
    g1 = figure_grid(1)
    assert g1.kinds == (AD,) and g1.p_values == (0.5,) and len(g1.mu_values) == 101
    assert g1.r_values == (0.0, math.pi / 6, math.pi / 4)
    assert [figure_grid(n).kinds for n in (2, 3, 4)] == [(DEP,), (BPF,), (PF,)]
    g5 = figure_grid(5)
    assert len(g5.r_values) == 101 and g5.r_values[1] == pytest.approx(math.pi / 400)
    assert g5.p_values == g5.mu_values == (0.5,)
    g6, g7 = figure_grid(6), figure_grid(7)
    assert g6.mu_values == (0.5,) and g6.r_values == (math.pi / 6,)
    assert g7.mu_values == (0.0,) and g7.r_values == (math.pi / 10,)
    for bad in (0, 8):
        with pytest.raises(ValueError):
            figure_grid(bad)


def test_write_csv_schema_and_precision(tmp_path):
    out = write_csv(run_sweep(SweepGrid((PF,), (0.5,), (1.0,), (math.pi / 6,))), tmp_path / "x.csv")
    rows = read_rows(out)
    assert tuple(rows[0]) == CSV_HEADER
    assert float(rows[1][4]) == math.cos(math.pi / 6) or abs(float(rows[1][4]) - math.cos(math.pi / 6)) < 1e-15
    # 17 significant digits round-trip exactly
    assert float(rows[1][3]) == math.pi / 6


def test_figure_two_reaches_one(tmp_path):
    rows = read_rows(emit_figure(2, tmp_path / "f2.csv"))[1:]
    at_full_memory = {float(r[3]): float(r[4]) for r in rows if float(r[2]) == 1.0}
    assert at_full_memory[0.0] == pytest.approx(1.0, abs=1e-12)
    # With identical errors on both qubits, X(x)X and Y(x)Y (total weight p/2)
    # swap the |01>,|10> populations and keep the |00><11| coherence, so the
    # X-state formula gives cos r - sin^2 r sqrt((1 - p/2) p/2). At p = 1/2:
    for r, c in at_full_memory.items():
        expected = math.cos(r) - math.sin(r) ** 2 * math.sqrt(0.75 * 0.25)
        assert c == pytest.approx(expected, abs=1e-12)


def test_figure_seven_zero_noise(tmp_path):
    rows = read_rows(emit_figure(7, tmp_path / "f7.csv"))[1:]
    at_zero = [float(r[4]) for r in rows if float(r[1]) == 0.0]
    assert len(at_zero) == 4
    np.testing.assert_allclose(at_zero, math.cos(math.pi / 10), atol=1e-12)


def test_figure_six_flip_symmetry(tmp_path):
    rows = read_rows(emit_figure(6, tmp_path / "f6.csv"))[1:]
    for code in ("bpf", "pf"):
        cs = np.array([float(r[4]) for r in rows if r[0] == code])
        np.testing.assert_allclose(cs, cs[::-1], atol=1e-9)
        assert np.argmin(cs) == 50


def test_figure_csv_deterministic(tmp_path):
    a = emit_figure(3, tmp_path / "a.csv").read_bytes()
    b = emit_figure(3, tmp_path / "b.csv", workers=3).read_bytes()
    assert a == b


def test_errata_zero_noise_grid_passes(tmp_path):
    grid = SweepGrid(tuple(ChannelKind), (0.0,), (0.0, 0.5, 1.0), (0.0, 0.3, math.pi / 4))
    summary = {s.equation: s for s in errata_report(grid, 1e-12, tmp_path / "e.csv")}
    for kind in (AD, BPF, PF):
        assert summary[f"printed_state_{kind.code}"].passed or kind is BPF
        assert summary[f"printed_lambdas_{kind.code}"].max_dev <= 1e-12
    assert summary["printed_state_ad"].passed and summary["printed_state_pf"].passed


def test_errata_flags_phase_flip_stray_entry(tmp_path):
    grid = SweepGrid((PF,), (0.0, 0.5, 1.0), (0.0, 0.5, 1.0), (0.0, math.pi / 6))
    out = tmp_path / "e.csv"
    summary = {s.equation: s for s in errata_report(grid, 1e-9, out)}
    rows = read_rows(out)
    assert tuple(rows[0]) == ERRATA_HEADER
    for eq, code, p, mu, r, herm, dev in rows[1:]:
        if eq != "printed_state_pf":
            continue
        stray = float(mu) * float(p) * math.sin(float(r)) > 0
        assert herm == ("false" if stray else "true")
    assert not summary["printed_state_pf"].passed
    assert summary["printed_state_pf_paired"].passed
    assert summary["printed_lambdas_pf"].passed
    text = out.read_text()
    assert "# printed_lambdas_pf,pf,pass" in text


def test_plot_script_for_memory_figure(tmp_path):
    csv_path = emit_figure(1, tmp_path / "f1.csv", p_step=10)
    script = emit_plot_script(csv_path, tmp_path / "f1.py").read_text()
    for label in ("'r=0'", "'r=π/6'", "'r=π/4'"):
        assert label in script
    for style in ("'-'", "'--'", "':'"):
        assert style in script
    compile(script, "f1.py", "exec")


def test_plot_script_for_channel_figure(tmp_path):
    csv_path = emit_figure(5, tmp_path / "f5.csv", r_step=40)
    script = emit_plot_script(csv_path, tmp_path / "f5.py").read_text()
    for kind in ChannelKind:
        assert repr(kind.label) in script
    assert "'-.'" in script


def test_plot_script_runs(tmp_path):
    pytest.importorskip("matplotlib")
    import runpy

    import matplotlib
    matplotlib.use("Agg")
    csv_path = emit_figure(6, tmp_path / "f6.csv", p_step=20)
    script = emit_plot_script(csv_path, tmp_path / "f6.py")
    ns = runpy.run_path(str(script))
    assert len(ns["SERIES"]) == 4


def test_plot_rejects_missing_column(tmp_path):
    bad = tmp_path / "bad.csv"
    bad.write_text("channel,p,mu,r\npf,0.5,0.5,0\n")
    with pytest.raises(PlotInputError, match="concurrence"):
        emit_plot_script(bad, tmp_path / "x.py")


def test_pi_label():
    assert pi_label(0.0) == "0"
    assert pi_label(math.pi / 6) == "π/6"
    assert pi_label(3 * math.pi / 8) == "3π/8"
    assert pi_label(0.3) == "0.3"
