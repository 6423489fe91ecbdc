"""Frame and clip-tree I/O.

On disk a labeled corpus is a directory tree

    <root>/<label>/<clip_id>/frame_000001.png

with frames numbered consecutively from 1 (``.ppm`` is accepted as a
plain binary alternative).  Ingestion walks labels, clips and frames in
sorted order and refuses gaps in the numbering, mixed formats within a
clip, or images that are not 8-bit RGB.
"""

import re
from pathlib import Path

import numpy as np
from PIL import Image

from .errors import FormatError, IngestError
from .imaging import validate_frame

FRAME_PATTERN = re.compile(r"^frame_(\d{6})\.(png|ppm)$")


def write_frame_png(frame: np.ndarray, path) -> None:
    validate_frame(frame)
    Image.fromarray(frame, mode="RGB").save(path, format="PNG")


def write_frame_ppm(frame: np.ndarray, path) -> None:
    validate_frame(frame)
    h, w, _ = frame.shape
    with open(path, "wb") as fh:
        fh.write(f"P6\n{w} {h}\n255\n".encode("ascii"))
        fh.write(frame.tobytes())


def read_frame(path) -> np.ndarray:
    path = Path(path)
    if path.suffix == ".ppm":
        frame = _read_ppm(path)
    else:
        with Image.open(path) as img:
            if img.mode != "RGB":
                raise FormatError(
                    f"{path}: expected 8-bit RGB, got mode {img.mode!r}")
            frame = np.asarray(img, dtype=np.uint8)
    validate_frame(frame)
    return frame


def _read_ppm(path) -> np.ndarray:
    with open(path, "rb") as fh:
        data = fh.read()
    fields = []
    pos = 0
    while len(fields) < 4:
        while pos < len(data) and data[pos:pos + 1].isspace():
            pos += 1
        if data[pos:pos + 1] == b"#":
            while pos < len(data) and data[pos:pos + 1] != b"\n":
                pos += 1
            continue
        start = pos
        while pos < len(data) and not data[pos:pos + 1].isspace():
            pos += 1
        fields.append(data[start:pos])
    if fields[0] != b"P6":
        raise FormatError(f"{path}: not a binary PPM (P6) file")
    width, height, maxval = (int(f) for f in fields[1:4])
    if maxval != 255:
        raise FormatError(f"{path}: expected 8-bit samples, maxval={maxval}")
    pos += 1  # single whitespace after maxval
    expected = height * width * 3
    if len(data) - pos < expected:
        raise FormatError(f"{path}: truncated pixel data")
    pixels = np.frombuffer(data, dtype=np.uint8, count=expected, offset=pos)
    return pixels.reshape(height, width, 3).copy()


def write_clip(frames, clip_dir, image_format: str = "png") -> None:
    clip_dir = Path(clip_dir)
    clip_dir.mkdir(parents=True, exist_ok=True)
    writer = write_frame_png if image_format == "png" else write_frame_ppm
    for i, frame in enumerate(frames, start=1):
        writer(frame, clip_dir / f"frame_{i:06d}.{image_format}")


def read_clip_frames(clip_dir) -> list:
    """Frames of one clip directory, ordered and gap-checked."""
    clip_dir = Path(clip_dir)
    numbered = {}
    for entry in sorted(clip_dir.iterdir()):
        match = FRAME_PATTERN.match(entry.name)
        if match:
            numbered[int(match.group(1))] = entry
    if not numbered:
        raise IngestError(f"{clip_dir}: no frame_NNNNNN.png/.ppm files")
    for expected in range(1, len(numbered) + 1):
        if expected not in numbered:
            raise IngestError(
                f"{clip_dir}: missing frame index {expected:06d}")
    return [read_frame(numbered[i]) for i in range(1, len(numbered) + 1)]


def ingest_tree(root):
    """Yield (label, clip_id, frames) in canonical sorted order."""
    root = Path(root)
    if not root.is_dir():
        raise IngestError(f"{root}: not a directory")
    labels = sorted(p.name for p in root.iterdir() if p.is_dir())
    if not labels:
        raise IngestError(f"{root}: no label directories")
    for label in labels:
        clip_dirs = sorted(p.name for p in (root / label).iterdir()
                           if p.is_dir())
        if not clip_dirs:
            raise IngestError(f"{root / label}: no clip directories")
        for clip_id in clip_dirs:
            yield label, clip_id, read_clip_frames(root / label / clip_id)
