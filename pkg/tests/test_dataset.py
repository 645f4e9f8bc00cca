import numpy as np
import pytest

from causalprobe.dataset import (
    BinaryDataset,
    RawDataset,
    binarize,
    counts,
    drop_columns,
    read_csv,
    to_binary,
    write_csv,
)
from causalprobe.errors import CapacityError, DataError


def make_raw():
    return RawDataset(
        ["color", "size", "sold"],
        [
            ("red", "big", "1"),
            ("blue", "small", "0"),
            ("red", "small", "1"),
            ("green", "big", "0"),
        ],
    )


class TestRawDataset:
    def test_basic(self):
        d = make_raw()
        assert d.n_rows == 4
        assert d.column_index("size") == 1

    def test_duplicate_columns_rejected(self):
        with pytest.raises(DataError):
            RawDataset(["a", "a"], [])

    def test_ragged_row_rejected(self):
        with pytest.raises(DataError):
            RawDataset(["a", "b"], [("1",)])

    def test_unknown_column(self):
        with pytest.raises(DataError):
            make_raw().column_index("weight")

    def test_no_columns_rejected(self):
        with pytest.raises(DataError):
            RawDataset([], [])


class TestBinaryDataset:
    def test_basic(self):
        d = BinaryDataset(["a", "b"], np.array([[0, 1], [1, 1]]))
        assert d.n_rows == 2
        assert list(d.column("b")) == [1, 1]

    def test_non_binary_rejected(self):
        with pytest.raises(DataError):
            BinaryDataset(["a"], np.array([[2]]))

    def test_shape_mismatch_rejected(self):
        with pytest.raises(DataError):
            BinaryDataset(["a", "b"], np.array([[0], [1]]))

    def test_values_read_only(self):
        d = BinaryDataset(["a"], np.array([[0], [1]]))
        with pytest.raises(ValueError):
            d.values[0, 0] = 1

    def test_defensive_copy(self):
        src = np.array([[0], [1]], dtype=np.uint8)
        d = BinaryDataset(["a"], src)
        src[0, 0] = 1
        assert d.values[0, 0] == 0


class TestCsv:
    def test_round_trip_raw(self, tmp_path):
        d = make_raw()
        p = str(tmp_path / "t.csv")
        write_csv(d, p)
        assert read_csv(p) == d

    def test_round_trip_binary(self, tmp_path):
        d = BinaryDataset(["a", "b"], np.array([[0, 1], [1, 0], [1, 1]]))
        p = str(tmp_path / "b.csv")
        write_csv(d, p)
        assert to_binary(read_csv(p)) == d

    def test_exact_bytes(self, tmp_path):
        d = BinaryDataset(["a", "b"], np.array([[0, 1]]))
        p = str(tmp_path / "b.csv")
        write_csv(d, p)
        with open(p, "rb") as fh:
            assert fh.read() == b"a,b\n0,1\n"

    def test_missing_file(self, tmp_path):
        with pytest.raises(DataError):
            read_csv(str(tmp_path / "absent.csv"))

    def test_empty_file(self, tmp_path):
        p = tmp_path / "empty.csv"
        p.write_text("")
        with pytest.raises(DataError):
            read_csv(str(p))


class TestBinarize:
    def test_maps_and_drops(self):
        d = make_raw()
        out = binarize(d, "color", "blue", "red")
        # green row dropped; red -> 1, blue -> 0
        assert out.n_rows == 3
        assert [r[0] for r in out.rows] == ["1", "0", "1"]
        # untouched columns survive
        assert [r[1] for r in out.rows] == ["big", "small", "small"]

    def test_equal_values_rejected(self):
        with pytest.raises(DataError):
            binarize(make_raw(), "color", "red", "red")

    def test_unknown_column(self):
        with pytest.raises(DataError):
            binarize(make_raw(), "weight", "a", "b")

    def test_both_labels_absent_rejected(self):
        # A mapping that matches no cell at all is a misconfiguration.
        with pytest.raises(DataError):
            binarize(make_raw(), "color", "cyan", "magenta")

    def test_empty_input_stays_empty(self):
        empty = RawDataset(["color"], [])
        out = binarize(empty, "color", "red", "blue")
        assert out.n_rows == 0


class TestDropColumns:
    def test_raw(self):
        out = drop_columns(make_raw(), ["size"])
        assert out.columns == ("color", "sold")
        assert out.rows[0] == ("red", "1")

    def test_binary(self):
        d = BinaryDataset(["a", "b", "c"], np.array([[0, 1, 1]]))
        out = drop_columns(d, ["b"])
        assert out.columns == ("a", "c")
        assert list(out.values[0]) == [0, 1]

    def test_unknown(self):
        with pytest.raises(DataError):
            drop_columns(make_raw(), ["weight"])

    def test_cannot_drop_all(self):
        with pytest.raises(DataError):
            drop_columns(make_raw(), ["color", "size", "sold"])


class TestToBinary:
    def test_converts(self):
        d = RawDataset(["a", "b"], [("0", "1"), ("1", "1")])
        out = to_binary(d)
        assert list(out.values.ravel()) == [0, 1, 1, 1]

    def test_reports_location(self):
        d = RawDataset(["a", "b"], [("0", "1"), ("1", "yes")])
        with pytest.raises(DataError, match=r"row 1, column 'b'"):
            to_binary(d)


class TestCounts:
    def test_worked_example(self):
        # Rows (a, b): 00, 01, 01, 11. First variable is the high bit, so
        # the joint states are 0, 1, 1, 3 and the counts are [1, 2, 0, 1].
        d = BinaryDataset(["a", "b"], np.array([[0, 0], [0, 1], [0, 1], [1, 1]]))
        assert list(counts(d, ["a", "b"])) == [1, 2, 0, 1]

    def test_variable_order_matters(self):
        d = BinaryDataset(["a", "b"], np.array([[0, 1]]))
        assert list(counts(d, ["a", "b"])) == [0, 1, 0, 0]
        assert list(counts(d, ["b", "a"])) == [0, 0, 1, 0]

    def test_single_variable(self):
        d = BinaryDataset(["a"], np.array([[1], [1], [0]]))
        assert list(counts(d, ["a"])) == [1, 2]

    def test_total_is_row_count(self):
        rng = np.random.default_rng(3)
        d = BinaryDataset(["a", "b", "c"], rng.integers(0, 2, size=(50, 3)))
        assert counts(d, ["a", "c"]).sum() == 50

    def test_capacity_guard(self):
        cols = [f"v{i}" for i in range(21)]
        d = BinaryDataset(cols, np.zeros((1, 21), dtype=np.uint8))
        with pytest.raises(CapacityError):
            counts(d, cols)

    def test_duplicate_variables_rejected(self):
        d = BinaryDataset(["a", "b"], np.array([[0, 1]]))
        with pytest.raises(DataError):
            counts(d, ["a", "a"])

    def test_empty_query_counts_rows(self):
        d = BinaryDataset(["a", "b"], np.array([[0, 1], [1, 1], [0, 0]]))
        assert counts(d, []).tolist() == [3]

    def test_marginalization_consistency(self):
        # Summing the joint table over one variable must equal the joint
        # table of the remaining variables.
        rng = np.random.default_rng(411)
        for _ in range(20):
            k = int(rng.integers(1, 5))
            m = int(rng.integers(1, 40))
            names = [f"v{i}" for i in range(k)]
            d = BinaryDataset(names, rng.integers(0, 2, size=(m, k)))
            pos = int(rng.integers(0, k))
            full = counts(d, names).reshape((2,) * k)
            reduced = counts(d, names[:pos] + names[pos + 1:])
            assert full.sum(axis=pos).reshape(-1).tolist() == reduced.tolist()
