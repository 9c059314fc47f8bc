"""
Artifact writer for CLI outputs
-------------------------------
Outputs are written to a temporary file in the target directory and
renamed into place on success, so a failed command never leaves a
partial file behind.
"""

import os
import tempfile
from pathlib import Path
from typing import Dict, Any, List, Union


def write_atomic(path: Union[str, Path], data: Union[bytes, str]) -> Path:
    path = Path(path)
    if isinstance(data, str):
        data = data.encode("utf-8")

    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp_name = tempfile.mkstemp(
        dir=path.parent,
        prefix=f".{path.name}.",
        suffix=".tmp",
    )
    try:
        with os.fdopen(fd, "wb") as f:
            f.write(data)
        os.replace(tmp_name, path)
    except BaseException:
        try:
            os.unlink(tmp_name)
        except FileNotFoundError:
            pass
        raise
    return path


class BatchOutputs:
    """
    Resolves output paths for a batch and records what was written.

    One input  → `out` is the output file itself.
    Many inputs → `out` is a directory holding `<stem><suffix>` per input.
    """

    def __init__(self, out: Union[str, Path], n_inputs: int, suffix: str):
        self.out = Path(out)
        self.batch = n_inputs > 1
        self.suffix = suffix
        self.written: List[Path] = []

    # --------------------------------------------------
    # Core
    # --------------------------------------------------

    def target_for(self, input_path: Union[str, Path]) -> Path:
        if not self.batch:
            return self.out
        return self.out / f"{Path(input_path).stem}{self.suffix}"

    def write(self, input_path: Union[str, Path], data: Union[bytes, str]) -> Path:
        path = write_atomic(self.target_for(input_path), data)
        self.written.append(path)
        return path

    # --------------------------------------------------
    # Debug
    # --------------------------------------------------

    def summary(self) -> Dict[str, Any]:
        return {
            "out": str(self.out),
            "batch": self.batch,
            "written": [str(p) for p in self.written],
        }
