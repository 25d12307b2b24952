"""Binary PGM (P5) reading and writing.

Only 8-bit images are supported (maxval <= 255).  Header comments
introduced by '#' are accepted anywhere between header tokens on read and
never emitted on write, so write -> read is an identity on the pixels.
"""

from __future__ import annotations

import numpy as np

from .canny import GrayImage
from .errors import PgmFormatError

__all__ = ["decode_pgm", "encode_pgm", "read_pgm", "write_pgm"]


def _header_tokens(data: bytes, count: int) -> tuple[list[bytes], int]:
    """First ``count`` whitespace-separated header tokens, skipping '#' comments.

    Returns the tokens and the offset just past the single whitespace byte
    that terminates the last one.
    """
    tokens: list[bytes] = []
    i = 0
    n = len(data)
    while len(tokens) < count:
        while i < n and data[i : i + 1].isspace():
            i += 1
        if i < n and data[i] == ord("#"):
            while i < n and data[i] not in (0x0A, 0x0D):
                i += 1
            continue
        start = i
        while i < n and not data[i : i + 1].isspace() and data[i] != ord("#"):
            i += 1
        if i == start:
            raise PgmFormatError("truncated PGM header")
        tokens.append(data[start:i])
    if i >= n or not data[i : i + 1].isspace():
        raise PgmFormatError("PGM header must end with a whitespace byte")
    return tokens, i + 1


def decode_pgm(data: bytes) -> GrayImage:
    """Parse P5 bytes into an image, validating the payload length."""
    if not data.startswith(b"P5"):
        raise PgmFormatError("not a binary PGM stream (missing P5 magic)")
    tokens, offset = _header_tokens(data, 4)
    try:
        width, height, maxval = (int(t) for t in tokens[1:])
    except ValueError:
        raise PgmFormatError(f"non-numeric PGM header fields: {tokens[1:]!r}") from None
    if width < 1 or height < 1:
        raise PgmFormatError(f"bad PGM dimensions {width}x{height}")
    if not 0 < maxval <= 255:
        raise PgmFormatError(f"unsupported PGM maxval {maxval} (need 1..255)")
    payload = data[offset:]
    if len(payload) < width * height:
        raise PgmFormatError(
            f"truncated PGM payload: expected {width * height} bytes, got {len(payload)}"
        )
    if len(payload) > width * height:
        raise PgmFormatError(
            f"trailing data after PGM payload: expected {width * height} bytes, got {len(payload)}"
        )
    px = np.frombuffer(payload, dtype=np.uint8).reshape(height, width).copy()
    return GrayImage(width=width, height=height, pixels=px)


def encode_pgm(img: GrayImage) -> bytes:
    header = f"P5\n{img.width} {img.height}\n255\n".encode("ascii")
    return header + img.pixels.tobytes()


def read_pgm(path: str) -> GrayImage:
    with open(path, "rb") as fh:
        return decode_pgm(fh.read())


def write_pgm(path: str, img: GrayImage) -> None:
    with open(path, "wb") as fh:
        fh.write(encode_pgm(img))
