"""Plain (P1) PBM and PNG export of module matrices."""

from __future__ import annotations

import re
from pathlib import Path

import numpy as np

from ..errors import CodecError
from .matrix import QrMatrix

QUIET_ZONE = 4
MAX_QUIET_ZONE = 8


class PbmFormatError(CodecError):
    pass


def with_quiet_zone(modules: np.ndarray, border: int = QUIET_ZONE) -> np.ndarray:
    return np.pad(np.asarray(modules, dtype=bool), border, constant_values=False)


def format_pbm(matrix: QrMatrix | np.ndarray, border: int = QUIET_ZONE) -> str:
    """P1 text: header, dimensions, then one LF-terminated row of 0/1 per module row."""
    modules = matrix.modules if isinstance(matrix, QrMatrix) else matrix
    img = with_quiet_zone(modules, border)
    h, w = img.shape
    rows = ("".join("1" if v else "0" for v in row) for row in img)
    return f"P1\n{w} {h}\n" + "\n".join(rows) + "\n"


def write_pbm(matrix: QrMatrix | np.ndarray, path: str | Path, border: int = QUIET_ZONE) -> None:
    Path(path).write_text(format_pbm(matrix, border), encoding="ascii", newline="\n")


_COMMENT = re.compile(r"#[^\n]*")


def parse_pbm(text: str) -> np.ndarray:
    """Bitmap from P1 text (True = dark).  Comments and any whitespace layout are accepted."""
    body = _COMMENT.sub(" ", text)
    head = body.split(None, 3)
    if len(head) < 3 or head[0] != "P1":
        raise PbmFormatError("not a plain PBM (P1) file")
    try:
        w, h = int(head[1]), int(head[2])
    except ValueError:
        raise PbmFormatError("bad PBM dimensions") from None
    if w <= 0 or h <= 0:
        raise PbmFormatError("bad PBM dimensions")
    raster = re.sub(r"\s+", "", head[3] if len(head) > 3 else "")
    if len(raster) != w * h or set(raster) - {"0", "1"}:
        raise PbmFormatError(f"expected {w * h} pixels of 0/1, got {len(raster)}")
    return (np.frombuffer(raster.encode("ascii"), dtype=np.uint8) == ord("1")).reshape(h, w)


def read_pbm(path: str | Path) -> np.ndarray:
    try:
        text = Path(path).read_text(encoding="ascii")
    except (OSError, UnicodeDecodeError) as exc:
        raise PbmFormatError(str(exc)) from None
    return parse_pbm(text)


def write_png(matrix: QrMatrix | np.ndarray, path: str | Path, scale: int = 8, border: int = QUIET_ZONE) -> None:
    from PIL import Image

    modules = matrix.modules if isinstance(matrix, QrMatrix) else matrix
    img = with_quiet_zone(modules, border)
    pixels = np.where(img, 0, 255).astype(np.uint8)
    pixels = np.kron(pixels, np.ones((scale, scale), dtype=np.uint8))
    Image.fromarray(pixels, mode="L").save(path, format="PNG")
