"""Optional on-disk cache for matrix-element arrays.

Activated by pointing the QDENT_CACHE_DIR environment variable at a
writable directory; otherwise every call is a no-op.  The cache is purely
an optimization: any read failure, version mismatch or corruption falls
back to recomputation.

File format: 4-byte magic b"QDNT", uint32 version, uint32 ndim, ndim
uint64 shape entries, then the float64 payload; all integers and floats
little-endian.
"""

import hashlib
import os
from pathlib import Path

import numpy as np

MAGIC = b"QDNT"
VERSION = 1


def cache_dir():
    root = os.environ.get("QDENT_CACHE_DIR")
    if not root:
        return None
    path = Path(root)
    try:
        path.mkdir(parents=True, exist_ok=True)
    except OSError:
        return None
    return path


def key_for(*parts) -> str:
    """Stable hash over a flat description of the inputs.

    Floats are rendered with 17 significant digits so distinct values
    never collide through formatting.
    """
    rendered = []
    for p in parts:
        if isinstance(p, float):
            rendered.append(f"{p:.17g}")
        elif isinstance(p, (tuple, list)):
            rendered.append(",".join(f"{float(q):.17g}" for q in p))
        else:
            rendered.append(str(p))
    return hashlib.sha256("|".join(rendered).encode()).hexdigest()[:32]


def store(key: str, array: np.ndarray) -> None:
    root = cache_dir()
    if root is None:
        return
    arr = np.ascontiguousarray(array, dtype="<f8")
    header = (MAGIC
              + np.uint32(VERSION).astype("<u4").tobytes()
              + np.uint32(arr.ndim).astype("<u4").tobytes()
              + np.asarray(arr.shape, dtype="<u8").tobytes())
    tmp = root / (key + ".tmp")
    try:
        tmp.write_bytes(header + arr.tobytes())
        tmp.replace(root / (key + ".bin"))
    except OSError:
        tmp.unlink(missing_ok=True)


def load(key: str):
    root = cache_dir()
    if root is None:
        return None
    path = root / (key + ".bin")
    try:
        raw = path.read_bytes()
    except OSError:
        return None
    if len(raw) < 12 or raw[:4] != MAGIC:
        return None
    version = int(np.frombuffer(raw[4:8], dtype="<u4")[0])
    if version != VERSION:
        return None
    ndim = int(np.frombuffer(raw[8:12], dtype="<u4")[0])
    head = 12 + 8 * ndim
    if len(raw) < head:
        return None
    shape = tuple(np.frombuffer(raw[12:head], dtype="<u8").astype(int))
    expected = int(np.prod(shape)) * 8
    if len(raw) != head + expected:
        return None
    return np.frombuffer(raw[head:], dtype="<f8").reshape(shape).copy()
