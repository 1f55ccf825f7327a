"""CSV ingestion tests: dialect handling and line-numbered diagnostics."""

import numpy as np
import pytest

from adamala.targets import DataError, load_regression_csv, load_returns_csv


def write(tmp_path, text, name="data.csv"):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return path


class TestReturns:
    def test_three_values(self, tmp_path):
        path = write(tmp_path, "0.1\n-0.2\n0.05\n")
        np.testing.assert_allclose(load_returns_csv(path), [0.1, -0.2, 0.05])

    def test_optional_header(self, tmp_path):
        path = write(tmp_path, "returns\n1.5\n2.5\n")
        np.testing.assert_allclose(load_returns_csv(path), [1.5, 2.5])

    def test_header_only_is_empty_data(self, tmp_path):
        path = write(tmp_path, "returns\n")
        with pytest.raises(DataError, match="no data rows"):
            load_returns_csv(path)

    def test_non_numeric_cites_line(self, tmp_path):
        rows = ["0.1"] * 6 + ["oops"] + ["0.2"]
        path = write(tmp_path, "\n".join(rows) + "\n")
        with pytest.raises(DataError, match="line 7"):
            load_returns_csv(path)

    def test_non_finite_rejected(self, tmp_path):
        path = write(tmp_path, "0.1\ninf\n")
        with pytest.raises(DataError, match="line 2"):
            load_returns_csv(path)

    def test_wrong_width(self, tmp_path):
        path = write(tmp_path, "0.1,0.2\n")
        with pytest.raises(DataError, match="expected 1 column"):
            load_returns_csv(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(DataError):
            load_returns_csv(tmp_path / "absent.csv")


class TestRegression:
    def test_basic(self, tmp_path):
        path = write(tmp_path, "x1,x2,y\n1.0,2.0,1\n-1.0,0.5,0\n")
        x_mat, y = load_regression_csv(path)
        np.testing.assert_allclose(x_mat, [[1.0, 2.0], [-1.0, 0.5]])
        np.testing.assert_allclose(y, [1.0, 0.0])

    def test_ragged_row_cites_line(self, tmp_path):
        path = write(tmp_path, "1.0,2.0,1\n1.0,0\n")
        with pytest.raises(DataError, match="line 2"):
            load_regression_csv(path)

    def test_non_binary_response(self, tmp_path):
        path = write(tmp_path, "1.0,2.0,0.5\n")
        with pytest.raises(DataError, match="response"):
            load_regression_csv(path)

    def test_needs_feature_column(self, tmp_path):
        path = write(tmp_path, "1\n0\n")
        with pytest.raises(DataError, match="feature"):
            load_regression_csv(path)
