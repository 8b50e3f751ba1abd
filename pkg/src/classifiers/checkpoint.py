"""
Flat binary model checkpoints.

Layout: 8-byte magic, then little-endian int64 words (format version, seed,
number of layer dims, the dims), then every weight matrix (row-major) followed
by its bias vector as little-endian float64, layer by layer.
"""

from pathlib import Path
from typing import Union

import numpy as np

from ..utils.errors import DataFormatError
from .mlp import Model

MAGIC = b'SPECMLP1'
FORMAT_VERSION = 1


def save_checkpoint(model: Model, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    dims = model.layer_dims
    header = np.array([FORMAT_VERSION, model.seed, len(dims), *dims], dtype='<i8')
    with open(path, 'wb') as f:
        f.write(MAGIC)
        f.write(header.tobytes())
        for w, b in zip(model.weights, model.biases):
            f.write(np.ascontiguousarray(w, dtype='<f8').tobytes())
            f.write(np.ascontiguousarray(b, dtype='<f8').tobytes())
    return path


def load_checkpoint(path: Union[str, Path]) -> Model:
    raw = Path(path).read_bytes()
    if raw[:len(MAGIC)] != MAGIC:
        raise DataFormatError(f"{path} is not a model checkpoint")
    offset = len(MAGIC)

    def read_ints(count: int) -> np.ndarray:
        nonlocal offset
        values = np.frombuffer(raw, dtype='<i8', count=count, offset=offset)
        offset += 8 * count
        return values

    version, seed, num_dims = (int(v) for v in read_ints(3))
    if version != FORMAT_VERSION:
        raise DataFormatError(f"Unsupported checkpoint version {version}")
    dims = [int(d) for d in read_ints(num_dims)]

    expected = len(MAGIC) + 8 * (3 + num_dims) + 8 * sum(a * b + b for a, b in zip(dims[:-1], dims[1:]))
    if len(raw) != expected:
        raise DataFormatError(f"Checkpoint {path} has {len(raw)} bytes, expected {expected}")

    weights, biases = [], []
    for fan_in, fan_out in zip(dims[:-1], dims[1:]):
        w = np.frombuffer(raw, dtype='<f8', count=fan_in * fan_out, offset=offset)
        offset += 8 * w.size
        b = np.frombuffer(raw, dtype='<f8', count=fan_out, offset=offset)
        offset += 8 * b.size
        weights.append(w.reshape(fan_in, fan_out).astype(np.float64))
        biases.append(b.astype(np.float64))
    return Model(weights, biases, seed)
