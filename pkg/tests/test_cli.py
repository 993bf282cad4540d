import json
from fractions import Fraction

from sigmaample.cli import main
from sigmaample.schemefile import serialize_scheme_file
from sigmaample.catalog import catalog_entry


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, "--format", "structured", *argv)
    return code, (json.loads(out) if out else None), err


def test_classify_composite(capsys):
    code, doc, _ = run_json(capsys, "classify", "wehler_k3", "--auto", "s1s2")
    assert code == 0
    (result,) = doc["results"]
    assert result["char_poly"]["text"] == "x^2-14x+1"
    assert result["char_poly"]["coefficients"] == ["1", "-14", "1"]
    assert result["quasi_unipotent"] is False
    lo, hi = (Fraction(result["spectral_radius"][k]) for k in ("lo", "hi"))
    assert hi - lo <= Fraction(1, 1000)


def test_classify_involution(capsys):
    code, doc, _ = run_json(capsys, "classify", "wehler_k3", "--auto", "s1")
    (result,) = doc["results"]
    assert result["quasi_unipotent"] is True
    assert result["unipotent_power"] == 2
    assert result["jordan_index"] == 0


def test_classify_shear(capsys):
    code, doc, _ = run_json(capsys, "classify", "abelian_square", "--auto", "shear")
    (result,) = doc["results"]
    assert (result["unipotent_power"], result["jordan_index"]) == (1, 2)


def test_eps_flag_tightens_radius(capsys):
    _, doc, _ = run_json(
        capsys, "classify", "wehler_k3", "--auto", "s1s2", "--eps", "1/100000"
    )
    (result,) = doc["results"]
    lo, hi = (Fraction(result["spectral_radius"][k]) for k in ("lo", "hi"))
    assert hi - lo <= Fraction(1, 100000)


def test_sigma_ample_yes(capsys):
    code, doc, _ = run_json(
        capsys, "sigma-ample", "wehler_k3", "--auto", "s1", "--divisor", "H1"
    )
    assert code == 0
    (result,) = doc["results"]
    assert result["sigma_ample"] is True
    assert result["unipotent_power"] == 2
    assert result["witness"] == 1
    assert result["reduction"]["summed_divisor"] == ["2", "0"]
    assert result["reduction"]["partial_sums"][0] == ["2", "0"]


def test_sigma_ample_not_quasi_unipotent(capsys):
    code, doc, _ = run_json(
        capsys, "sigma-ample", "wehler_k3", "--auto", "s1s2", "--divisor", "H1"
    )
    (result,) = doc["results"]
    assert result["sigma_ample"] is False
    assert result["reason"] == "not-quasi-unipotent"


def test_sigma_ample_no_partial_sum(capsys):
    code, doc, _ = run_json(
        capsys, "sigma-ample", "wehler_k3", "--auto", "id", "--divisor", "minusH1"
    )
    (result,) = doc["results"]
    assert result["reason"] == "no-ample-partial-sum"


def test_gkdim_p2(capsys):
    code, doc, _ = run_json(capsys, "gkdim", "p2", "--auto", "id", "--divisor", "D")
    (result,) = doc["results"]
    assert result["gk_dimension"] == 3


def test_gkdim_abelian(capsys):
    code, doc, _ = run_json(
        capsys, "gkdim", "abelian_square", "--auto", "shear", "--divisor", "D111"
    )
    (result,) = doc["results"]
    assert result["gk_dimension"] == 5
    comp = result["components"][0]
    assert comp["degree"] == 4
    assert comp["leading"] == "2/3"
    assert comp["binomial_coefficients"][-1] == "16"  # 2/3 m^4 + 16/3 m^2 in binomials


def test_growth_exponential(capsys):
    code, doc, _ = run_json(
        capsys,
        "growth",
        "wehler_k3",
        "--auto",
        "s1s2",
        "--divisor",
        "H1plusH2",
        "--mmax",
        "12",
    )
    (result,) = doc["results"]
    assert result["kind"] == "exponential"
    assert result["threshold_exceeded"] is True
    last = Fraction(result["ratios"][-1])
    assert abs(last - Fraction(139282, 10000)) < Fraction(2, 100) * Fraction(139282, 10000)


def test_growth_polynomial(capsys):
    code, doc, _ = run_json(
        capsys, "growth", "p2", "--auto", "id", "--divisor", "D"
    )
    (result,) = doc["results"]
    assert result == {
        "action": "id",
        "divisor": "D",
        "mmax": 12,
        "kind": "polynomial",
        "gk_dimension": 3,
        "hilbert_degree": 2,
    }


def test_chi_series(capsys):
    code, doc, _ = run_json(
        capsys, "chi", "wehler_k3", "--auto", "id", "--divisor", "H1", "--mmax", "3"
    )
    (result,) = doc["results"]
    assert result["values"] == ["3", "6", "11"]


def test_catalog_list(capsys):
    code, doc, _ = run_json(capsys, "catalog", "list")
    assert code == 0
    assert len(doc["entries"]) >= 5
    assert "wehler_k3" in doc["entries"]


def test_catalog_show(capsys):
    code, doc, _ = run_json(capsys, "catalog", "show", "wehler_k3")
    forms = doc["document"]["components"][0]["top_form"]
    assert {"index": [0, 1], "value": "4"} in forms
    names = {a["name"] for a in doc["document"]["automorphisms"]}
    assert {"s1", "s2", "s1s2"} <= names


def test_catalog_show_unknown(capsys):
    code, _, err = run(capsys, "catalog", "show", "nope")
    assert code == 3
    assert "nope" in err


def test_validate_catalog(capsys):
    code, doc, _ = run_json(capsys, "validate", "wehler_k3")
    assert code == 0
    assert doc["valid"] is True


def test_validate_rejects_doubled_identity(tmp_path, capsys):
    sf = catalog_entry("wehler_k3")
    text = serialize_scheme_file(sf)
    doc = json.loads(text)
    doc["automorphisms"].append({"name": "double", "matrix": [["2", "0"], ["0", "2"]]})
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(doc), encoding="utf-8")
    code, out, _ = run(capsys, "--format", "structured", "validate", str(path))
    assert code == 2
    report = json.loads(out)
    assert report["valid"] is False
    double = next(a for a in report["actions"] if a["name"] == "double")
    failing = [c for c in double["checks"] if not c["passed"]]
    assert any("det=4" in c["detail"] for c in failing)


def test_other_commands_refuse_invalid_files(tmp_path, capsys):
    sf = catalog_entry("wehler_k3")
    doc = json.loads(serialize_scheme_file(sf))
    doc["automorphisms"].append({"name": "double", "matrix": [["2", "0"], ["0", "2"]]})
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(doc), encoding="utf-8")
    code, _, err = run(capsys, "classify", str(path), "--auto", "s1")
    assert code == 2
    assert "double" in err


def test_parse_error_exit_code(tmp_path, capsys):
    path = tmp_path / "broken.json"
    path.write_text('{"rank": 2,,}', encoding="utf-8")
    code, _, err = run(capsys, "validate", str(path))
    assert code == 2
    assert "line" in err


def test_malformed_multi_index_is_parse_error(tmp_path, capsys):
    sf = catalog_entry("wehler_k3")
    doc = json.loads(serialize_scheme_file(sf))
    doc["components"][0]["top_form"][1]["index"] = [1, 0]
    path = tmp_path / "decreasing.json"
    path.write_text(json.dumps(doc), encoding="utf-8")
    code, _, err = run(capsys, "validate", str(path))
    assert code == 2
    assert "non-decreasing" in err


def test_unknown_input_name(capsys):
    code, _, err = run(capsys, "classify", "no_such_entry", "--auto", "id")
    assert code == 3


def test_unknown_action_name(capsys):
    code, _, err = run(capsys, "classify", "wehler_k3", "--auto", "zeta")
    assert code == 3


def test_precondition_failure_exit_code(capsys):
    code, _, err = run(
        capsys, "gkdim", "wehler_k3", "--auto", "id", "--divisor", "minusH1"
    )
    assert code == 4
    assert "ample" in err


def test_gkdim_refuses_non_quasi_unipotent(capsys):
    code, _, err = run(
        capsys, "gkdim", "wehler_k3", "--auto", "s1s2", "--divisor", "H1"
    )
    assert code == 4
    assert "quasi-unipotent" in err


def test_chi_without_todd_data(tmp_path, capsys):
    doc = json.loads(serialize_scheme_file(catalog_entry("wehler_k3")))
    doc["components"][0]["todd"] = None
    doc.pop("euler_char")
    path = tmp_path / "no_todd.json"
    path.write_text(json.dumps(doc), encoding="utf-8")
    code, _, err = run(
        capsys, "chi", str(path), "--auto", "id", "--divisor", "H1"
    )
    assert code == 4
    assert "Todd" in err


def test_reports_are_byte_identical_across_runs(capsys):
    outputs = set()
    for _ in range(3):
        _, out, _ = run(
            capsys, "--format", "structured", "classify", "wehler_k3", "--auto", "s1s2"
        )
        outputs.add(out)
    assert len(outputs) == 1
    shown = set()
    for _ in range(2):
        _, out, _ = run(capsys, "--format", "structured", "catalog", "show", "abelian_square")
        shown.add(out)
    assert len(shown) == 1


def test_batch_queries_with_jobs(capsys):
    code, doc, _ = run_json(
        capsys,
        "--jobs",
        "4",
        "sigma-ample",
        "wehler_k3",
        "--auto",
        "s1",
        "--auto",
        "s2",
        "--divisor",
        "H1",
        "--divisor",
        "H2",
    )
    assert code == 0
    assert [(r["action"], r["divisor"]) for r in doc["results"]] == [
        ("s1", "H1"),
        ("s1", "H2"),
        ("s2", "H1"),
        ("s2", "H2"),
    ]
    assert all(r["sigma_ample"] for r in doc["results"])


def test_text_format_mentions_key_facts(capsys):
    code, out, _ = run(capsys, "classify", "wehler_k3", "--auto", "s1s2")
    assert "x^2-14x+1" in out
    assert "not quasi-unipotent" in out


def test_file_input_round_trip(tmp_path, capsys):
    path = tmp_path / "wehler.json"
    path.write_text(serialize_scheme_file(catalog_entry("wehler_k3")), encoding="utf-8")
    code, doc, _ = run_json(
        capsys, "sigma-ample", str(path), "--auto", "s1", "--divisor", "H1"
    )
    assert code == 0
    assert doc["results"][0]["sigma_ample"] is True


def test_oracle_flag_required_with_multiple_oracles(tmp_path, capsys):
    doc = json.loads(serialize_scheme_file(catalog_entry("wehler_k3")))
    doc["oracles"].append(
        {
            "name": "extra",
            "kind": "surface_positive_cone",
            "data": {"component": "X", "reference_ample": ["1", "0"], "obstructions": []},
        }
    )
    path = tmp_path / "two_oracles.json"
    path.write_text(json.dumps(doc), encoding="utf-8")
    code, _, err = run(capsys, "sigma-ample", str(path), "--auto", "s1", "--divisor", "H1")
    assert code == 3
    assert "oracle" in err
    code, out, _ = run(
        capsys,
        "--format",
        "structured",
        "sigma-ample",
        str(path),
        "--auto",
        "s1",
        "--divisor",
        "H1",
        "--oracle",
        "extra",
    )
    assert code == 0
    assert json.loads(out)["oracle"] == "extra"


def test_cross_process_byte_determinism():
    import subprocess
    import sys

    cmd = [
        sys.executable,
        "-m",
        "sigmaample.cli",
        "--format",
        "structured",
        "classify",
        "wehler_k3",
        "--auto",
        "s1s2",
    ]
    first = subprocess.run(cmd, capture_output=True, check=True).stdout
    second = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert first == second
