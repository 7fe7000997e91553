import json

import numpy as np
import pytest

from wqwalk.cli import figure_suite, main


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def star_file(tmp_path):
    path = tmp_path / "star.edges"
    path.write_text("# star\n0 1 4\n0 2 1\n0 3 1\n0 4 1\n2 2 0.5\n")
    return path


def test_verify_szegedy_passes(capsys, tmp_path, star_file):
    out = tmp_path / "report.json"
    code, stdout, _ = run(capsys, "verify", "szegedy", "--graph", star_file, "--trials", 20, "--seed", 7, "--out", out)
    assert code == 0
    report = json.loads(out.read_text())
    assert report["pass"] is True and report["trials"] == 20
    assert stdout == ""


def test_verify_szegedy_moving_shift_fails(capsys):
    # only a line has a moving shift; the error is reported as a usage problem
    code, _, err = run(capsys, "verify", "szegedy", "--shift", "moving", "--trials", 3)
    assert code == 2 and "moving" in err.lower()


def test_reduce_verify_line_and_complete(capsys, tmp_path):
    out = tmp_path / "line.json"
    assert run(capsys, "reduce-verify", "--base", "line", "--size", 31, "--k", 4, "--steps", 30, "--out", out)[0] == 0
    assert json.loads(out.read_text())["pass"] is True
    code, stdout, _ = run(capsys, "reduce-verify", "--base", "complete", "--size", 8, "--k", 3, "--steps", 20)
    assert code == 0 and json.loads(stdout)["max_dev"] < 1e-10


def test_reduce_verify_rejects_short_line(capsys):
    assert run(capsys, "reduce-verify", "--base", "line", "--size", 10, "--k", 2, "--steps", 20)[0] == 2


def test_line_csv_and_velocity(capsys, tmp_path):
    out = tmp_path / "line.csv"
    code, _, err = run(capsys, "line", "--l", 10, "--steps", 100, "--out", out, "--velocity")
    assert code == 0
    data = np.loadtxt(out, delimiter=",", skiprows=1)
    assert data.shape == (201, 2)
    assert abs(data[:, 1].sum() - 1) < 1e-12
    assert "peak velocity" in err


def test_line_rho_and_exclusive_flags(capsys):
    code, stdout, _ = run(capsys, "line", "--rho", 0.5, "--steps", 5)
    assert code == 0 and stdout.startswith("position,probability\n")
    with pytest.raises(SystemExit) as exc:
        main(["line", "--l", "1", "--rho", "0.5"])
    assert exc.value.code == 2
    assert run(capsys, "line", "--rho", 1.5, "--steps", 5)[0] == 2


def test_search_csv_and_summary(capsys, tmp_path):
    out = tmp_path / "search.csv"
    code, stdout, _ = run(capsys, "search", "--n", 1024, "--l", 1, "--steps", 200, "--asym", "--out", out)
    assert code == 0
    header = out.read_text().splitlines()[0]
    assert header == "t,p,p_asym"
    summary = json.loads(stdout)
    assert set(summary) == {"N", "l", "regime", "t_star_pred", "p_star_pred", "t_peak", "p_peak", "hump_count"}
    assert summary["regime"] == "mid" and summary["t_peak"] == 50


def test_search_ambiguous_summary(capsys, tmp_path):
    summary = tmp_path / "s.json"
    code, _, _ = run(capsys, "search", "--n", 16, "--l", 0.3, "--steps", 10, "--summary", summary, "--out", tmp_path / "x.csv")
    assert code == 0
    data = json.loads(summary.read_text())
    assert data["regime"] == "ambiguous" and data["t_star_pred"] is None


def test_search_full_mode_matches_subspace(capsys, tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    run(capsys, "search", "--n", 16, "--l", 0.5, "--steps", 50, "--mode", "full", "--out", a)
    run(capsys, "search", "--n", 16, "--l", 0.5, "--steps", 50, "--out", b)
    pa = np.loadtxt(a, delimiter=",", skiprows=1)
    pb = np.loadtxt(b, delimiter=",", skiprows=1)
    np.testing.assert_allclose(pa, pb, atol=1e-12)


def test_search_full_mode_size_guard(capsys):
    assert run(capsys, "search", "--n", 10_000, "--mode", "full", "--steps", 1)[0] == 2


def test_search_scan(capsys):
    code, stdout, _ = run(capsys, "search", "--n", 1024, "--scan-l", "0:2:0.5")
    rows = stdout.strip().splitlines()
    assert code == 0 and rows[0] == "l,p_peak" and len(rows) == 6
    assert run(capsys, "search", "--n", 1024, "--scan-l", "2:0:0.5")[0] == 2
    assert run(capsys, "search", "--n", 1024, "--scan-l", "nope")[0] == 2


def test_outputs_are_reproducible(capsys, tmp_path, star_file):
    for argv in (
        ["verify", "szegedy", "--graph", star_file, "--trials", 10, "--seed", 3],
        ["search", "--n", 256, "--l", 0.2, "--steps", 60, "--asym"],
        ["line", "--l", 2, "--steps", 40],
    ):
        first = run(capsys, *argv)
        second = run(capsys, *argv)
        assert first == second


def test_bad_flags_exit_2(capsys):
    for argv in (["search"], ["nonsense"], ["line", "--l", "1", "--shift", "sideways"], []):
        with pytest.raises(SystemExit) as exc:
            main(argv)
        assert exc.value.code == 2
    assert run(capsys, "search", "--n", 1, "--steps", 5)[0] == 2
    assert run(capsys, "verify", "szegedy", "--graph", "/nonexistent/file")[0] == 2


@pytest.fixture(scope="module")
def figures(tmp_path_factory):
    outdir = tmp_path_factory.mktemp("figs")
    return outdir, figure_suite(outdir)


def test_figure_suite_files(figures):
    outdir, paths = figures
    names = {p.name for p in paths}
    assert {"fig3_loopless.csv", "fig3_l10_moving.csv", "fig3_l10_flipflop.csv"} <= names
    assert {f"fig4a_l{l}.csv" for l in ("0", "0.1", "0.2", "0.4", "0.8")} <= names
    assert {f"fig4b_l{l}.csv" for l in ("1", "2.5", "5", "7.5", "10")} <= names


def test_figure_suite_contents(figures):
    outdir, _ = figures
    loopless = np.loadtxt(outdir / "fig3_loopless.csv", delimiter=",", skiprows=1)
    assert np.all(loopless[loopless[:, 0] % 2 == 1, 1] == 0)
    fig4a = np.loadtxt(outdir / "fig4a_l0.4.csv", delimiter=",", skiprows=1)
    assert fig4a.shape[1] == 3
    assert 0.78 <= fig4a[:, 1].max() <= 0.92
    fig4b = np.loadtxt(outdir / "fig4b_l1.csv", delimiter=",", skiprows=1)
    assert fig4b[:, 1].max() >= 0.99


def test_figures_command(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("WQWALK_THREADS", "2")
    code, stdout, _ = run(capsys, "figures", "--outdir", tmp_path / "f", "--n", 64)
    assert code == 0 and len(stdout.splitlines()) == 13
    monkeypatch.setenv("WQWALK_THREADS", "many")
    assert run(capsys, "figures", "--outdir", tmp_path / "g", "--n", 64)[0] == 2
