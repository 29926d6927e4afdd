import numpy as np
import pytest

from stable_pc.core import DataMatrix
from stable_pc.datagen import make_rng
from stable_pc.exceptions import DataError
from stable_pc.io import (
    read_cpdag,
    read_data_csv,
    read_edges,
    read_sepsets,
    write_cpdag,
    write_data_csv,
    write_edges,
    write_sepsets,
)
from stable_pc.orient import MixedGraph
from stable_pc.sepsets import SeparationSets


def test_csv_preserves_values_exactly(tmp_path):
    data = DataMatrix(make_rng(3).standard_normal((20, 4)) * 1e3)
    path = tmp_path / "data.csv"
    write_data_csv(path, data)
    np.testing.assert_array_equal(read_data_csv(path).values, data.values)


def test_csv_header_is_skipped(tmp_path):
    path = tmp_path / "data.csv"
    path.write_text("a,b\n1,2\n3,5\n4,4\n0,1\n")
    data = read_data_csv(path)
    assert (data.m, data.n) == (4, 2)


def test_csv_header_after_blank_lines(tmp_path):
    path = tmp_path / "data.csv"
    path.write_text("\n\nx,y,z\n1,2,3\n3,5,1\n4,4,0\n0,1,2\n")
    data = read_data_csv(path)
    assert (data.m, data.n) == (4, 3)
    np.testing.assert_array_equal(data.values[0], [1.0, 2.0, 3.0])

    path.write_text("1,2\nx,y\n3,5\n4,4\n0,1\n")
    with pytest.raises(DataError) as exc:
        read_data_csv(path)
    assert exc.value.row == 1


def test_csv_ragged_row(tmp_path):
    path = tmp_path / "data.csv"
    path.write_text("1,2\n3,4\n5\n6,7\n")
    with pytest.raises(DataError) as exc:
        read_data_csv(path)
    assert exc.value.row == 2
    assert "line 3" in str(exc.value)


def test_csv_non_numeric_cell(tmp_path):
    path = tmp_path / "data.csv"
    path.write_text("1,2\n3,x\n5,6\n7,8\n")
    with pytest.raises(DataError) as exc:
        read_data_csv(path)
    assert (exc.value.row, exc.value.column) == (1, 1)


def test_edges_keep_isolated_variables(tmp_path):
    path = tmp_path / "g.edges"
    write_edges(path, 6, [(3, 1), (0, 2)])
    assert path.read_text() == "# n=6\n0 2\n1 3\n"
    assert read_edges(path) == (6, [(0, 2), (1, 3)])


def test_edges_without_header(tmp_path):
    path = tmp_path / "g.edges"
    path.write_text("0 4\n2 1\n")
    assert read_edges(path) == (5, [(0, 4), (1, 2)])
    path.write_text("0 4 7\n")
    with pytest.raises(DataError):
        read_edges(path)


def test_sepsets_file(tmp_path):
    path = tmp_path / "s.txt"
    write_sepsets(path, 5, SeparationSets([((0, 1), ()), ((2, 4), (3, 1))]))
    assert path.read_text() == "# n=5\n0 1 :\n2 4 : 1 3\n"
    n, sepsets = read_sepsets(path)
    assert n == 5
    assert sepsets.items() == [((0, 1), ()), ((2, 4), (1, 3))]


def test_sepsets_file_rejects_endpoint(tmp_path):
    path = tmp_path / "s.txt"
    path.write_text("0 1 : 1\n")
    with pytest.raises(DataError):
        read_sepsets(path)


def test_cpdag_file(tmp_path):
    g = MixedGraph(4, frozenset({(2, 0), (1, 0)}), frozenset({(0, 3)}))
    path = tmp_path / "cpdag.txt"
    write_cpdag(path, g)
    assert path.read_text() == "# n=4\n0 3\n1 > 0\n2 > 0\n"
    assert read_cpdag(path) == g
