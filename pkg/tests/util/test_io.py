import os
from unittest import mock

import pytest

from lpprox.util import atomic_write_text


class TestAtomicWriteText:
    def test_write_creates_directories(self, tmp_path):
        path = tmp_path / "nested" / "run.csv"
        atomic_write_text(str(path), "k,a_k\n1,2.0\n")
        assert path.read_text() == "k,a_k\n1,2.0\n"

    def test_write_replaces(self, tmp_path):
        path = tmp_path / "run.json"
        atomic_write_text(str(path), "first")
        atomic_write_text(str(path), "second")
        assert path.read_text() == "second"
        assert os.listdir(str(tmp_path)) == ["run.json"]

    @mock.patch("os.replace")
    def test_failed_write_leaves_no_temporary_file(self, mock_replace, tmp_path):
        mock_replace.side_effect = OSError("disk full")
        with pytest.raises(OSError):
            atomic_write_text(str(tmp_path / "run.json"), "text")
        assert os.listdir(str(tmp_path)) == []
