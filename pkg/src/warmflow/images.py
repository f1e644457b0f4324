"""Self-contained 8-bit graymap/pixmap codecs (no imaging dependency).

Reads binary (P5) and plain-text (P2) portable graymaps; writes P5 graymaps
and P6 pixmaps. Pixels are stored row-major, x being the column.
"""

from __future__ import annotations

from dataclasses import dataclass


class ImageFormatError(ValueError):
    pass


@dataclass(frozen=True)
class GrayImage:
    width: int
    height: int
    pixels: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.width <= 0 or self.height <= 0:
            raise ValueError("image dimensions must be positive")
        object.__setattr__(self, "pixels", tuple(int(v) for v in self.pixels))
        if len(self.pixels) != self.width * self.height:
            raise ValueError("pixel count does not match dimensions")
        for v in self.pixels:
            if not 0 <= v <= 255:
                raise ValueError("intensities must be in [0, 255]")

    def intensity(self, x: int, y: int) -> int:
        return self.pixels[y * self.width + x]


@dataclass(frozen=True)
class RgbImage:
    width: int
    height: int
    pixels: tuple[tuple[int, int, int], ...]

    def __post_init__(self) -> None:
        if len(self.pixels) != self.width * self.height:
            raise ValueError("pixel count does not match dimensions")


def _header_tokens(data: bytes, count: int) -> tuple[list[bytes], int]:
    """Read count whitespace-separated header tokens, skipping # comments.

    Returns the tokens and the offset just past the single whitespace byte
    that terminates the last token.
    """
    tokens: list[bytes] = []
    i = 0
    n = len(data)
    while len(tokens) < count:
        while i < n and data[i : i + 1].isspace():
            i += 1
        if i < n and data[i] == ord("#"):
            while i < n and data[i] != ord("\n"):
                i += 1
            continue
        start = i
        while i < n and not data[i : i + 1].isspace():
            i += 1
        if start == i:
            raise ImageFormatError("truncated header")
        tokens.append(data[start:i])
        if len(tokens) == count:
            if i >= n:
                raise ImageFormatError("missing raster data")
            i += 1  # exactly one whitespace byte after the last header token
    return tokens, i


def parse_pgm(data: bytes) -> GrayImage:
    magic = data[:2]
    if magic not in (b"P5", b"P2"):
        raise ImageFormatError(f"not a P2/P5 graymap (magic {magic!r})")
    tokens, offset = _header_tokens(data, 4)
    try:
        width, height, maxval = (int(t) for t in tokens[1:])
    except ValueError as exc:
        raise ImageFormatError(f"bad header: {exc}") from None
    if maxval <= 0 or maxval > 255:
        raise ImageFormatError(f"only 8-bit graymaps supported (maxval {maxval})")
    count = width * height
    if magic == b"P5":
        raster = data[offset : offset + count]
        if len(raster) < count:
            raise ImageFormatError("raster shorter than width*height")
        values = list(raster)
    else:
        try:
            values = [int(t) for t in data[offset:].split()]
        except ValueError:
            raise ImageFormatError("non-integer sample in plain graymap") from None
        if len(values) < count:
            raise ImageFormatError("raster shorter than width*height")
        values = values[:count]
    for v in values:
        if v > maxval:
            raise ImageFormatError(f"sample {v} exceeds maxval {maxval}")
    return GrayImage(width, height, tuple(values))


def encode_pgm(img: GrayImage, plain: bool = False) -> bytes:
    header = f"{'P2' if plain else 'P5'}\n{img.width} {img.height}\n255\n"
    if plain:
        rows = []
        for y in range(img.height):
            row = img.pixels[y * img.width : (y + 1) * img.width]
            rows.append(" ".join(str(v) for v in row))
        return header.encode() + ("\n".join(rows) + "\n").encode()
    return header.encode() + bytes(img.pixels)


def encode_ppm(img: RgbImage) -> bytes:
    header = f"P6\n{img.width} {img.height}\n255\n"
    raster = bytearray()
    for r, g, b in img.pixels:
        raster += bytes((r, g, b))
    return header.encode() + bytes(raster)
