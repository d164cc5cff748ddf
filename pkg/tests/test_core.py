import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from biclustlab.core import (Bicluster, BiclusterSet, ExpressionMatrix, ParseError,
                             ValidationError, derive_seed, extract_submatrix,
                             export_numerical_matrix, load_bicluster_set,
                             load_matrix, make_rng, save_bicluster_set,
                             save_matrix)


def test_matrix_invariants():
    m = ExpressionMatrix.from_values(np.array([[1.0, 2.0], [3.0, 5.0]]))
    assert m.shape == (2, 2)
    assert m.n_missing == 0
    with pytest.raises(ValidationError):
        ExpressionMatrix(("a", "a"), ("c0", "c1"),
                         np.zeros((2, 2)), np.zeros((2, 2), bool))
    with pytest.raises(ValidationError):
        ExpressionMatrix(("a",), ("c0",), np.zeros((2, 2)),
                         np.zeros((2, 2), bool))


def test_bicluster_invariants():
    b = Bicluster.from_sets([2, 0, 1], [1, 0])
    assert b.rows == (0, 1, 2)
    assert b.cols == (0, 1)
    with pytest.raises(ValidationError):
        Bicluster((), (0,))
    with pytest.raises(ValidationError):
        Bicluster((1, 1), (0,))
    with pytest.raises(ValidationError):
        Bicluster((1, 0), (0,))
    m = ExpressionMatrix.from_values(np.zeros((2, 2)))
    with pytest.raises(ValidationError):
        Bicluster((0, 5), (0,)).validate_against(m)


def test_extract_submatrix_examples():
    m = ExpressionMatrix.from_values(np.array([[1.0, 2.0], [3.0, 5.0]]))
    full = Bicluster((0, 1), (0, 1))
    assert np.array_equal(extract_submatrix(m, full), m.values)
    assert extract_submatrix(m, Bicluster((0,), (1,))).tolist() == [[2.0]]
    assert extract_submatrix(m, Bicluster((0, 1), (0,))).tolist() == [[1.0], [3.0]]


def test_load_matrix_tsv(tmp_path):
    path = tmp_path / "m.tsv"
    path.write_text("id\tc0\tc1\ng0\t1.5\t2\ng1\t3\tNA\ng2\t-1\t0\n")
    m = load_matrix(path)
    assert m.shape == (3, 2)
    assert m.n_missing == 1
    assert m.missing_mask[1, 1]
    assert m.values[0, 0] == 1.5


def test_load_matrix_ragged_names_line(tmp_path):
    path = tmp_path / "bad.tsv"
    path.write_text("id\tc0\tc1\ng0\t1\t2\ng1\t3\n")
    with pytest.raises(ParseError) as err:
        load_matrix(path)
    assert "line 3" in str(err.value)


def test_load_matrix_rejects_duplicates_and_empty(tmp_path):
    path = tmp_path / "dup.tsv"
    path.write_text("id\tc0\tc0\ng0\t1\t2\n")
    with pytest.raises(ValidationError):
        load_matrix(path)
    path2 = tmp_path / "empty.tsv"
    path2.write_text("id\tc0\n")
    with pytest.raises(ValidationError):
        load_matrix(path2)


def test_matrix_roundtrip(tmp_path):
    rng = np.random.default_rng(3)
    m = ExpressionMatrix.from_values(rng.standard_normal((6, 4)))
    save_matrix(m, tmp_path / "m.tsv")
    back = load_matrix(tmp_path / "m.tsv")
    assert back.row_ids == m.row_ids
    assert np.array_equal(back.values, m.values)


def test_bicluster_set_roundtrip(tmp_path):
    m = ExpressionMatrix.from_values(np.arange(12.0).reshape(3, 4))
    s = BiclusterSet("cc", {"delta": 0.5}, 42,
                     [Bicluster((0, 1), (0, 2), 0.1), Bicluster((2,), (1, 3))])
    save_bicluster_set(s, tmp_path / "s.json", matrix=m)
    back = load_bicluster_set(tmp_path / "s.json", matrix=m)
    assert back == s
    assert back.seed == 42
    assert back.params == {"delta": 0.5}
    empty = BiclusterSet("cc", {}, 1, [])
    save_bicluster_set(empty, tmp_path / "e.json", matrix=m)
    assert load_bicluster_set(tmp_path / "e.json", matrix=m) == empty


def test_bicluster_set_out_of_bounds(tmp_path):
    m = ExpressionMatrix.from_values(np.zeros((2, 2)))
    s = BiclusterSet("cc", {}, 0, [Bicluster((0, 1), (0, 1))])
    save_bicluster_set(s, tmp_path / "s.json", matrix=m)
    doc = json.loads((tmp_path / "s.json").read_text())
    doc["matrix_shape"] = [1, 1]
    (tmp_path / "bad.json").write_text(json.dumps(doc))
    with pytest.raises(ValidationError):
        load_bicluster_set(tmp_path / "bad.json")


def test_export_numerical_matrix(tmp_path):
    m = ExpressionMatrix.from_values(np.array([[1.0, 2.0], [3.0, 5.0]]))
    export_numerical_matrix(m, Bicluster((0, 1), (1,)), tmp_path / "x.tsv")
    lines = (tmp_path / "x.tsv").read_text().splitlines()
    assert lines[0] == "id\tc1"
    assert lines[1].startswith("g0\t2")


def test_rng_policy():
    assert derive_seed(42, 0) != derive_seed(42, 1)
    assert derive_seed(42, 3) == derive_seed(42, 3)
    r1, r2 = make_rng(7), make_rng(7)
    assert np.array_equal(r1.standard_normal(5), r2.standard_normal(5))


@settings(max_examples=30, deadline=None)
@given(n=st.integers(1, 8), m=st.integers(1, 6),
       seed=st.integers(0, 2 ** 31 - 1))
def test_matrix_roundtrip_property(tmp_path_factory, n, m, seed):
    vals = np.random.default_rng(seed).standard_normal((n, m)).round(9)
    mat = ExpressionMatrix.from_values(vals)
    path = tmp_path_factory.mktemp("rt") / "m.tsv"
    save_matrix(mat, path)
    back = load_matrix(path)
    assert np.allclose(back.values, vals, atol=0, rtol=0)
