"""JSON interchange for matrices, states and channels.

Matrix: ``{"rows": n, "cols": m, "entries": [[re, im], ...]}`` in row-major
order. A state adds an optional ``"dims"`` list. A channel is
``{"dim": d, "kraus": [matrix, ...]}``.
"""
import json

import numpy as np

from .channels import QuantumChannel
from .linalg import as_matrix


class FormatError(ValueError):
    pass


def matrix_to_json(m):
    a = as_matrix(m)
    flat = a.ravel()
    return {"rows": a.shape[0], "cols": a.shape[1],
            "entries": [[float(z.real), float(z.imag)] for z in flat]}


def matrix_from_json(obj):
    try:
        rows, cols = int(obj["rows"]), int(obj["cols"])
        entries = np.asarray(obj["entries"], dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"malformed matrix object: {exc}") from exc
    if rows < 1 or cols < 1:
        raise FormatError(f"matrix shape must be positive, got {rows}x{cols}")
    if entries.shape != (rows * cols, 2):
        raise FormatError(
            f"expected {rows * cols} [re, im] pairs, got array of shape {entries.shape}")
    if not np.all(np.isfinite(entries)):
        raise FormatError("matrix entries must be finite")
    return (entries[:, 0] + 1j * entries[:, 1]).reshape(rows, cols)


def state_to_json(rho, dims=None):
    obj = matrix_to_json(rho)
    if dims is not None:
        obj["dims"] = [int(d) for d in dims]
    return obj


def state_from_json(obj):
    """Return ``(matrix, dims)``; ``dims`` is ``None`` when absent."""
    m = matrix_from_json(obj)
    dims = obj.get("dims")
    if dims is not None:
        dims = [int(d) for d in dims]
        if int(np.prod(dims)) != m.shape[0]:
            raise FormatError(f"dims {dims} do not match matrix size {m.shape[0]}")
    return m, dims


def channel_to_json(ch):
    return {"dim": ch.dim, "kraus": [matrix_to_json(k) for k in ch.kraus]}


def channel_from_json(obj):
    try:
        dim = int(obj["dim"])
        ks = [matrix_from_json(k) for k in obj["kraus"]]
    except (KeyError, TypeError) as exc:
        raise FormatError(f"malformed channel object: {exc}") from exc
    if not ks or any(k.shape != (dim, dim) for k in ks):
        raise FormatError(f"every Kraus operator must be {dim}x{dim}")
    return QuantumChannel(np.array(ks))


def load_json(path):
    with open(path) as fh:
        try:
            return json.load(fh)
        except json.JSONDecodeError as exc:
            raise FormatError(f"{path}: invalid JSON ({exc})") from exc


def dump_json(obj, path):
    with open(path, "w") as fh:
        json.dump(obj, fh, indent=1)
        fh.write("\n")
