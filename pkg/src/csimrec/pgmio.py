"""Reading and writing 8-bit grayscale PGM images and binary sampling masks.

Images travel as 2D float64 arrays with intensities in [0, 255]; values are
clamped and rounded to the nearest integer only when written. Both the binary
(P5) and ASCII (P2) encodings are supported, with a maxval of at most 255.
Masks are PGM files restricted to the values {0, 255}: 255 marks an observed
pixel.
"""

from __future__ import annotations

import os

import numpy as np

from .solver2d import Mask2D

__all__ = ["PgmError", "MaskFormatError", "read_pgm", "write_pgm", "read_mask", "write_mask"]

_WHITESPACE = b" \t\n\r\x0b\x0c"


class PgmError(ValueError):
    """Malformed or unsupported PGM data; ``offset`` is the failing byte."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


class MaskFormatError(PgmError):
    """A mask file contained a value other than 0 or 255."""


def _next_token(buf: bytes, pos: int) -> tuple[bytes, int]:
    """Next header token after whitespace and '#' comments; returns (token, end)."""
    n = len(buf)
    while pos < n:
        ch = buf[pos : pos + 1]
        if ch in _WHITESPACE:
            pos += 1
        elif ch == b"#":
            nl = buf.find(b"\n", pos)
            pos = n if nl < 0 else nl + 1
        else:
            break
    if pos >= n:
        raise PgmError("unexpected end of file in header", pos)
    start = pos
    while pos < n and buf[pos : pos + 1] not in _WHITESPACE:
        pos += 1
    return buf[start:pos], pos


def _int_token(buf: bytes, pos: int, what: str) -> tuple[int, int]:
    token, end = _next_token(buf, pos)
    try:
        value = int(token)
    except ValueError:
        raise PgmError(f"expected integer {what}, got {token!r}", end - len(token)) from None
    return value, end


def read_pgm(path: str | os.PathLike) -> np.ndarray:
    """Read a P5 or P2 PGM file into a float64 array of shape (height, width)."""
    with open(path, "rb") as fh:
        buf = fh.read()

    magic, pos = _next_token(buf, 0)
    if magic not in (b"P2", b"P5"):
        raise PgmError(f"unsupported magic {magic!r}, expected P2 or P5", 0)
    width, pos = _int_token(buf, pos, "width")
    height, pos = _int_token(buf, pos, "height")
    if width <= 0 or height <= 0:
        raise PgmError(f"invalid dimensions {width}x{height}", pos)
    maxval, pos = _int_token(buf, pos, "maxval")
    if not 0 < maxval <= 255:
        raise PgmError(f"unsupported maxval {maxval} (must be 1..255)", pos)

    count = width * height
    if magic == b"P5":
        # exactly one whitespace byte separates the header from the raster
        if pos >= len(buf) or buf[pos : pos + 1] not in _WHITESPACE:
            raise PgmError("missing whitespace before binary raster", pos)
        pos += 1
        raster = buf[pos : pos + count]
        if len(raster) < count:
            raise PgmError(
                f"truncated raster: expected {count} bytes, got {len(raster)}",
                pos + len(raster),
            )
        data = np.frombuffer(raster, dtype=np.uint8).astype(np.float64)
        if data.max(initial=0.0) > maxval:
            raise PgmError(f"sample exceeds maxval {maxval}", pos)
    else:
        values = np.empty(count, dtype=np.float64)
        for i in range(count):
            value, pos = _int_token(buf, pos, "sample")
            if not 0 <= value <= maxval:
                raise PgmError(f"sample {value} outside [0, {maxval}]", pos)
            values[i] = value
        data = values
    return data.reshape(height, width)


def write_pgm(image: np.ndarray, path: str | os.PathLike, binary: bool = True) -> None:
    """Write an image as 8-bit PGM, clamping to [0, 255] and rounding."""
    image = np.asarray(image, dtype=np.float64)
    if image.ndim != 2:
        raise ValueError(f"expected a 2D image, got {image.ndim}D")
    if not np.isfinite(image).all():
        raise ValueError("image contains non-finite values")
    quantized = np.rint(np.clip(image, 0.0, 255.0)).astype(np.uint8)
    height, width = quantized.shape
    with open(path, "wb") as fh:
        if binary:
            fh.write(b"P5\n%d %d\n255\n" % (width, height))
            fh.write(quantized.tobytes())
        else:
            fh.write(b"P2\n%d %d\n255\n" % (width, height))
            # keep lines under the conventional 70-character limit
            line: list[str] = []
            used = 0
            for v in quantized.ravel():
                tok = str(v)
                if used + len(tok) + bool(line) > 69:
                    fh.write(" ".join(line).encode("ascii") + b"\n")
                    line, used = [], 0
                used += len(tok) + bool(line)
                line.append(tok)
            if line:
                fh.write(" ".join(line).encode("ascii") + b"\n")


def read_mask(path: str | os.PathLike) -> Mask2D:
    """Read a sampling mask: a PGM holding only 0 (missing) and 255 (observed)."""
    data = read_pgm(path)
    bad = ~np.isin(data, (0.0, 255.0))
    if bad.any():
        first = int(np.flatnonzero(bad.ravel())[0])
        raise MaskFormatError(
            f"mask contains value {data.ravel()[first]} at pixel {first}, "
            "only 0 and 255 are allowed",
            first,
        )
    return Mask2D(grid=(data == 255.0).astype(np.float64))


def write_mask(mask: Mask2D, path: str | os.PathLike, binary: bool = True) -> None:
    """Write a sampling mask as a {0, 255} PGM."""
    write_pgm(mask.grid * 255.0, path, binary=binary)
