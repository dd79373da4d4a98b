"""Binary tensor container used for dataset frames and model checkpoints.

Layout of one tensor file:
  bytes 0..3    magic b"STAR"
  bytes 4..5    format version, uint16 little-endian
  byte  6       dtype code: 0=float32, 1=float64, 2=uint8, 3=int64
  byte  7       rank
  bytes 8..15   total element count, uint64 little-endian
  next rank*4   dims, uint32 little-endian each
  remainder     elements, C order, little-endian

Dataset tensors are float32; checkpoints use float64 so that 64-bit training
state round-trips bit-exactly.
"""

from __future__ import annotations

import struct

import numpy as np

from .errors import DataError

MAGIC = b"STAR"
VERSION = 1

_DTYPE_CODES = {
    np.dtype("<f4"): 0,
    np.dtype("<f8"): 1,
    np.dtype("u1"): 2,
    np.dtype("<i8"): 3,
}
_CODE_DTYPES = {v: k for k, v in _DTYPE_CODES.items()}

_HEADER = struct.Struct("<4sHBBQ")


def write_tensor(path, array: np.ndarray) -> None:
    """Write one array to `path` in the container format."""
    array = np.ascontiguousarray(array)
    dtype = array.dtype.newbyteorder("<")
    if dtype not in _DTYPE_CODES:
        raise DataError(f"unsupported tensor dtype {array.dtype} for {path}")
    data = array.astype(dtype, copy=False)
    with open(path, "wb") as fh:
        fh.write(_HEADER.pack(MAGIC, VERSION, _DTYPE_CODES[dtype], array.ndim, array.size))
        fh.write(np.asarray(array.shape, dtype="<u4").tobytes())
        fh.write(data.tobytes())


def read_tensor(path) -> np.ndarray:
    """Read one array back; raises DataError naming the path on any corruption."""
    try:
        with open(path, "rb") as fh:
            raw = fh.read()
    except OSError as exc:
        raise DataError(f"cannot read tensor file {path}: {exc}") from exc
    if len(raw) < _HEADER.size:
        raise DataError(f"tensor file {path} is truncated (no header)")
    magic, version, code, rank, count = _HEADER.unpack_from(raw, 0)
    if magic != MAGIC:
        raise DataError(f"tensor file {path} has bad magic {magic!r}")
    if version != VERSION:
        raise DataError(f"tensor file {path} has unsupported version {version}")
    if code not in _CODE_DTYPES:
        raise DataError(f"tensor file {path} has unknown dtype code {code}")
    dims_end = _HEADER.size + 4 * rank
    if len(raw) < dims_end:
        raise DataError(f"tensor file {path} is truncated (incomplete dims)")
    shape = tuple(np.frombuffer(raw, dtype="<u4", count=rank, offset=_HEADER.size).tolist())
    expected = 1
    for d in shape:
        expected *= d
    if expected != count:
        raise DataError(f"tensor file {path} header inconsistent: dims {shape} vs count {count}")
    dtype = _CODE_DTYPES[code]
    payload = raw[dims_end:]
    if len(payload) != count * dtype.itemsize:
        raise DataError(
            f"tensor file {path} is truncated: expected {count * dtype.itemsize} payload bytes, "
            f"got {len(payload)}")
    return np.frombuffer(payload, dtype=dtype).reshape(shape).copy()
