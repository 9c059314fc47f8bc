import os

import pytest

from utils.artifacts import BatchOutputs, write_atomic


def test_write_atomic_creates_parents(tmp_path):
    path = write_atomic(tmp_path / "a" / "b" / "out.txt", "hello")
    assert path.read_text() == "hello"
    assert [p.name for p in path.parent.iterdir()] == ["out.txt"]


def test_write_atomic_replaces_existing(tmp_path):
    target = tmp_path / "out.bin"
    target.write_bytes(b"old")
    write_atomic(target, b"new")
    assert target.read_bytes() == b"new"


def test_failed_write_leaves_nothing_behind(tmp_path, monkeypatch):
    target = tmp_path / "out.bin"
    target.write_bytes(b"old")

    def broken_replace(src, dst):
        raise OSError("disk full")

    monkeypatch.setattr(os, "replace", broken_replace)
    with pytest.raises(OSError):
        write_atomic(target, b"new")

    assert target.read_bytes() == b"old"
    assert [p.name for p in tmp_path.iterdir()] == ["out.bin"]


def test_single_input_writes_to_out(tmp_path):
    outputs = BatchOutputs(tmp_path / "result.pgm", 1, suffix="_he.pgm")
    assert outputs.target_for("images/cat.pgm") == tmp_path / "result.pgm"


def test_batch_writes_into_directory(tmp_path):
    outputs = BatchOutputs(tmp_path / "out", 2, suffix="_mask.pgm")
    outputs.write("in/a.pgm", b"A")
    outputs.write("in/b.pgm", b"B")

    assert (tmp_path / "out" / "a_mask.pgm").read_bytes() == b"A"
    summary = outputs.summary()
    assert summary["batch"] is True
    assert [os.path.basename(p) for p in summary["written"]] == ["a_mask.pgm", "b_mask.pgm"]
