import csv
import io
import json
import math

import pytest

from quditqkd import realistic, security
from quditqkd.cli import EXIT_INSECURE, EXIT_OK, EXIT_USAGE, fmt, main
from quditqkd.info import i_ab_symmetric


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def rows_of(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_fmt():
    assert fmt(3) == "3"
    assert fmt(0.1) == "0.100000000000"
    assert fmt(1 / 3) == "0.333333333333"
    assert fmt(math.inf) == "inf"


def test_mubs_qutrit(capsys):
    code, out, _ = run(capsys, "mubs", "--dim", "3")
    assert code == EXIT_OK
    doc = json.loads(out)
    assert (doc["N"], doc["p"], doc["k"], doc["M"]) == (3, 3, 1, 4)
    assert len(doc["overlaps"]) == 4 * 3 * 9
    assert {o["magnitude"] for o in doc["overlaps"]} == {"0.577350269190"}
    assert doc["max_deviation"] < 1e-12
    assert doc["bases"][0][0] == [[1.0, 0.0], [0.0, 0.0], [0.0, 0.0]]


@pytest.mark.parametrize("argv", [["mubs", "--dim", "6"], ["mubs", "--dim", "1"],
                                  ["mubs", "--dim", "3", "--format", "csv"], ["mubs"], ["bogus"]])
def test_mubs_usage_errors(capsys, argv):
    code, _, _ = run(capsys, *argv)
    assert code == EXIT_USAGE


def test_fig1_round_trip(capsys):
    code, out, _ = run(capsys, "fig1", "--dims", "2,3", "--grid", "11")
    assert code == EXIT_OK
    rows = rows_of(out)
    assert len(rows) == 2 * 12
    for r in rows:
        N, M = int(r["N"]), int(r["M"])
        e = min(float(r["e_B"]), (N - 1) / N)  # 12-digit rounding can overshoot the cap
        assert M == N + 1
        assert abs(float(r["R_AB"]) - security.rate_ab(N, M, e).R_AB) < 1e-9
    zc = [r for r in rows if r["kind"] == "zero_crossing"]
    assert abs(float(zc[0]["e_B"]) - 0.156373463330) < 1e-9
    assert all(abs(float(r["R_AB"])) < 1e-9 for r in zc)


def test_fig1_json(capsys):
    code, out, _ = run(capsys, "fig1", "--dims", "2", "--grid", "3", "--format", "json")
    doc = json.loads(out)
    assert code == EXIT_OK and doc["columns"][0] == "figure" and len(doc["rows"]) == 4


def test_fig1_bad_bases(capsys):
    assert run(capsys, "fig1", "--dims", "2", "--bases", "4")[0] == EXIT_USAGE


def test_fig2(capsys):
    code, out, _ = run(capsys, "fig2", "--max-dim", "9")
    rows = rows_of(out)
    assert code == EXIT_OK
    assert [int(r["N"]) for r in rows] == [2, 3, 4, 5, 7, 8, 9]
    for r in rows:
        N = int(r["N"])
        assert abs(float(r["e_incoherent"]) - security.incoherent_threshold(N).e_max) < 1e-9
        assert abs(i_ab_symmetric(N, float(r["e_coherent"])) - 0.5 * math.log2(N)) < 1e-9


def test_fig3(capsys):
    code, out, _ = run(capsys, "fig3", "--dims", "2,8", "--max-length-km", "20", "--step-km", "5")
    assert code == EXIT_OK
    rows = rows_of(out)
    assert len(rows) == 2 * 6
    star = {int(r["N"]): float(r["L_km"]) for r in rows if r["kind"] == "max_distance"}
    assert abs(star[2] - 124.759652530) < 1e-6
    assert abs(star[8] - 99.0073687533) < 1e-6
    grid = [r for r in rows if r["kind"] == "grid" and r["N"] == "2"]
    lp = realistic.LinkParams(N=2)
    for r in grid:
        assert abs(float(r["QBER"]) - realistic.qber(lp.at(float(r["L_km"])))) < 1e-12


def test_fig3_insecure(capsys):
    code, out, err = run(capsys, "fig3", "--dims", "2", "--pdark", "0.01", "--max-length-km", "5")
    assert code == EXIT_INSECURE
    assert "no secure distance" in err
    assert rows_of(out)[-1]["L_km"] == "nan"


def test_thresholds(capsys):
    code, out, _ = run(capsys, "thresholds", "--dims", "2,4")
    rows = rows_of(out)
    assert code == EXIT_OK
    assert abs(float(rows[0]["e_coherent"]) - 0.110027864438) < 1e-9
    assert abs(float(rows[1]["e_incoherent"]) - 0.266560585079) < 1e-9
    assert abs(float(rows[0]["F_symmetric_cloner"]) - 5 / 6) < 1e-9
    code, out, _ = run(capsys, "thresholds", "-N", "3")
    assert code == EXIT_OK and len(rows_of(out)) == 1


def test_link_secure_and_insecure(capsys):
    code, out, _ = run(capsys, "link", "--dim", "2", "--length-km", "50")
    assert code == EXIT_OK
    row = json.loads(out)["rows"][0]
    assert abs(row["QBER"] - 5.0e-3) < 1e-12
    assert row["secure"] == "true"
    assert abs(row["max_distance_km"] - 124.759652530) < 1e-6
    code, out, err = run(capsys, "link", "--dim", "2", "--length-km", "130")
    assert code == EXIT_INSECURE and "insecure" in err
    code, _, _ = run(capsys, "link", "--dim", "2", "--mu", "0")
    assert code == EXIT_INSECURE


def test_link_coherent_threshold(capsys):
    code, out, _ = run(capsys, "link", "--length-km", "120", "--threshold", "coherent", "--format", "csv")
    assert code == EXIT_INSECURE
    assert rows_of(out)[0]["threshold"] == "coherent"


def test_simulate(capsys):
    argv = ["simulate", "--dim", "2", "--bases", "2", "--attack", "intercept-resend",
            "--symbols", "100000", "--seed", "7"]
    code, out, _ = run(capsys, *argv)
    assert code == EXIT_OK
    doc = json.loads(out)
    assert abs(doc["z"]["e_hat"]) < 5
    assert abs(doc["observed"]["i_ae_hat"] - 0.5) < 0.02
    assert doc["predicted"]["e_B"] == 0.25
    _, again, _ = run(capsys, *argv)
    assert again == out


def test_simulate_cloner_and_transcript(capsys, tmp_path):
    t = tmp_path / "t.csv"
    code, out, _ = run(capsys, "simulate", "--attack", "cloner", "--beta", "0.4",
                       "--symbols", "1000", "--seed", "1", "--transcript", str(t))
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc["config"]["beta"] == 0.4
    assert sum(doc["observed"]["eve_classes"]) == doc["observed"]["n_sifted"]
    assert len(t.read_text().splitlines()) == 1001


@pytest.mark.parametrize("extra", [[], ["--seed", "1", "--beta", "2"], ["--seed", "1", "--format", "csv"],
                                   ["--seed", "1", "--dim", "6"], ["--seed", "-3"]])
def test_simulate_usage_errors(capsys, extra):
    code, _, _ = run(capsys, "simulate", "--attack", "cloner", "--symbols", "10", *extra)
    assert code == EXIT_USAGE


def test_out_file(capsys, tmp_path):
    p = tmp_path / "fig2.csv"
    code, out, _ = run(capsys, "fig2", "--max-dim", "3", "--out", str(p))
    assert code == EXIT_OK and out == ""
    assert len(rows_of(p.read_text())) == 2
