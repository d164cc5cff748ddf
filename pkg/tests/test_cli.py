import json

import numpy as np
import pytest

from biclustlab.cli import main
from biclustlab.core import ExpressionMatrix, save_matrix


@pytest.fixture()
def matrix_file(tmp_path):
    rng = np.random.default_rng(0)
    path = tmp_path / "m.tsv"
    save_matrix(ExpressionMatrix.from_values(rng.standard_normal((20, 10))),
                path)
    return str(path)


def test_run_subcommand(matrix_file, tmp_path):
    out = tmp_path / "out.json"
    rc = main(["run", "--algo", "cc", "--param", "delta=0.5",
               "--param", "n=2", "--input", matrix_file,
               "--output", str(out)])
    assert rc == 0
    doc = json.loads(out.read_text())
    assert doc["algorithm"] == "cc"
    assert doc["params"]["delta"] == 0.5
    assert doc["seed"] == 42
    assert doc["n_biclusters"] == 2


def test_run_unknown_algorithm(matrix_file, tmp_path, capsys):
    rc = main(["run", "--algo", "nosuch", "--input", matrix_file,
               "--output", str(tmp_path / "x.json")])
    assert rc == 2
    err = capsys.readouterr().err
    assert "nosuch" in err and "bimax" in err


def test_run_unknown_parameter(matrix_file, tmp_path):
    rc = main(["run", "--algo", "cc", "--param", "zeta=1",
               "--input", matrix_file, "--output", str(tmp_path / "x.json")])
    assert rc == 1


def test_run_reruns_are_byte_identical(matrix_file, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for out in (a, b):
        assert main(["--seed", "7", "run", "--algo", "floc", "--param", "k=3",
                     "--input", matrix_file, "--output", str(out)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_run_all(matrix_file, tmp_path, capsys):
    out = tmp_path / "all.json"
    rc = main(["run", "--algo", "all", "--param", "delta=0.5",
               "--input", matrix_file, "--output", str(out)])
    assert rc == 0
    err = capsys.readouterr().err
    # delta only exists for cc/floc; other algorithms are skipped with a note
    assert (tmp_path / "all.cc.json").exists()
    assert (tmp_path / "all.floc.json").exists()
    assert "skipped" in err or not (tmp_path / "all.bimax.json").exists()


def test_preprocess_subcommand(matrix_file, tmp_path):
    out = tmp_path / "pp.tsv"
    steps = json.dumps([{"op": "normalize", "kind": "zscore_rows"}])
    rc = main(["preprocess", "--input", matrix_file, "--output", str(out),
               "--steps", steps])
    assert rc == 0
    from biclustlab.core import load_matrix
    m = load_matrix(out)
    assert np.allclose(m.values.mean(axis=1), 0.0, atol=1e-12)


def test_validate_subcommand(matrix_file, tmp_path, capsys):
    run_out = tmp_path / "r.json"
    main(["run", "--algo", "cc", "--param", "delta=0.5", "--param", "n=2",
          "--input", matrix_file, "--output", str(run_out)])
    rc = main(["validate", "--input", matrix_file,
               "--biclusters", str(run_out)])
    assert rc == 0
    doc = json.loads(capsys.readouterr().out)
    assert len(doc["per_bicluster"]) == 2
    assert "msr" in doc["per_bicluster"][0]
    assert doc["seed"] == 42

    rc = main(["validate", "--input", matrix_file,
               "--biclusters", str(run_out), "--index", "msr",
               "--output", str(tmp_path / "v.json")])
    assert rc == 0
    doc = json.loads((tmp_path / "v.json").read_text())
    assert set(doc["per_bicluster"][0]) == {"msr"}


def test_viz_subcommand(matrix_file, tmp_path):
    run_out = tmp_path / "r.json"
    main(["run", "--algo", "cc", "--param", "delta=0.5", "--param", "n=1",
          "--input", matrix_file, "--output", str(run_out)])
    svg = tmp_path / "h.svg"
    rc = main(["viz", "--input", matrix_file, "--biclusters", str(run_out),
               "--kind", "heatmap", "--output", str(svg)])
    assert rc == 0
    assert svg.read_text().startswith("<svg")
    rc = main(["viz", "--input", matrix_file, "--biclusters", str(run_out),
               "--kind", "gene_plot", "--bicluster", "0",
               "--output", str(tmp_path / "g.svg")])
    assert rc == 0


def test_synth_subcommand(tmp_path):
    spec = {"shape": [12, 8], "noise_sd": 0.0,
            "plants": [{"rows": [0, 1, 2], "cols": [0, 1], "level": 4.0}]}
    spec_path = tmp_path / "spec.json"
    spec_path.write_text(json.dumps(spec))
    out = tmp_path / "synth.tsv"
    truth = tmp_path / "truth.json"
    rc = main(["--seed", "3", "synth", "--spec", str(spec_path),
               "--output", str(out), "--truth", str(truth)])
    assert rc == 0
    from biclustlab.core import load_bicluster_set, load_matrix
    m = load_matrix(out)
    assert m.values[0, 0] == 4.0
    t = load_bicluster_set(truth, matrix=m)
    assert t.biclusters[0].rows == (0, 1, 2)


def test_missing_input_file(tmp_path):
    rc = main(["run", "--algo", "cc", "--input", str(tmp_path / "nope.tsv"),
               "--output", str(tmp_path / "o.json")])
    assert rc == 1


def test_usage_error_exit_code():
    assert main(["run"]) == 2  # missing required arguments
    assert main([]) == 2
