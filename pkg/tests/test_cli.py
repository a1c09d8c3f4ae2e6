import json

from chowforge.cli import run


def test_hilbert(capsys):
    assert run(["chow", "hilbert", "--uniform", "3,3"]) == 0
    assert capsys.readouterr().out.strip() == "1 + 4t + t^2"


def test_koszul_certify(capsys, tmp_path):
    out = tmp_path / "r.json"
    assert run(["koszul", "certify", "--uniform", "3,3", "--imax", "3", "--json", str(out)]) == 0
    assert "beta_i = 1, 4, 15, 56" in capsys.readouterr().out
    assert json.loads(out.read_text())["betti_totals"] == [1, 4, 15, 56]


def test_json_report_is_byte_identical(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    run(["achow", "basis", "--uniform", "2,3", "--json", str(a)])
    run(["achow", "basis", "--uniform", "2,3", "--json", str(b)])
    assert a.read_bytes() == b.read_bytes()


def test_dlg_certify_fails(tmp_path, capsys):
    lat = tmp_path / "b3.json"
    lat.write_text(json.dumps({
        "elements": ["0", "1", "2", "3", "12", "13", "23", "123"],
        "covers": [["0", "1"], ["0", "2"], ["0", "3"], ["1", "12"], ["2", "12"], ["1", "13"],
                   ["3", "13"], ["2", "23"], ["3", "23"], ["12", "123"], ["13", "123"],
                   ["23", "123"]]}))
    code = run(["dlg", "certify", "--lattice", str(lat), "--building", "1,2,3,123", "--imax", "3"])
    assert code == 2
    assert "beta[2,3] = 1" in capsys.readouterr().out


def test_exit_codes(capsys):
    assert run(["chow", "hilbert"]) == 1
    assert run(["chow", "hilbert", "--uniform", "3,3", "--field", "4"]) == 1
    assert run(["koszul", "certify", "--boolean", "4", "--budget", "10"]) == 3
    assert run(["lattice", "verify-order", "--lattice", "figure3"]) == 2
    assert run(["chow", "colon", "--boolean", "4", "--kind", "hyperplane", "--flat", "12"]) == 1


def test_field_from_environment(monkeypatch, capsys):
    monkeypatch.setenv("CHOWFORGE_FIELD", "101")
    assert run(["chow", "hilbert", "--uniform", "3,4"]) == 0
    assert capsys.readouterr().out.strip() == "1 + 7t + t^2"


def test_colon_matches_brute_force(capsys):
    assert run(["chow", "colon", "--boolean", "4", "--kind", "hyperplanes", "--set", "123;124"]) == 0
    assert "brute-force check: pass" in capsys.readouterr().out


def test_corpus_list(capsys):
    assert run(["corpus", "list"]) == 0
    assert "U5,6" in capsys.readouterr().out
