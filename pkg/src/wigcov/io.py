"""Serialisation helpers: matrix JSON, wave-function and phase-space CSV."""

import csv
import io
import json

import numpy as np

from .errors import WigcovError
from .matrixkit import as_matrix


def matrix_to_json(M):
    M = np.asarray(M, dtype=float)
    return {"dim": int(M.shape[0]), "entries": [[float(v) for v in row] for row in M]}


def matrix_from_json(obj):
    """Parse ``{"dim": n, "entries": [[...], ...]}`` into a square array."""
    if isinstance(obj, str):
        try:
            obj = json.loads(obj)
        except json.JSONDecodeError as exc:
            raise WigcovError(f"malformed matrix JSON: {exc}") from None
    if not isinstance(obj, dict) or "entries" not in obj:
        raise WigcovError('matrix JSON must be an object with an "entries" field')
    M = as_matrix(obj["entries"])
    if "dim" in obj and obj["dim"] != M.shape[0]:
        raise WigcovError(f'"dim" is {obj["dim"]} but entries are {M.shape[0]}x{M.shape[1]}')
    return M


def dumps(obj):
    return json.dumps(obj, sort_keys=True)


def wavefunction_to_csv(x, samples):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["x", "re", "im"])
    for xi, v in zip(x, samples):
        writer.writerow([f"{xi:.17g}", f"{v.real:.17g}", f"{v.imag:.17g}"])
    return buf.getvalue()


def wavefunction_from_csv(text):
    """Return ``(x, samples)`` from a CSV with header ``x,re,im``."""
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or [h.strip() for h in rows[0]] != ["x", "re", "im"]:
        raise WigcovError('wave-function CSV must start with the header "x,re,im"')
    try:
        data = np.array([[float(v) for v in r] for r in rows[1:] if r], dtype=float)
    except ValueError as exc:
        raise WigcovError(f"malformed wave-function CSV: {exc}") from None
    if data.ndim != 2 or data.shape[1] != 3:
        raise WigcovError("wave-function CSV rows must have three columns")
    return data[:, 0], data[:, 1] + 1j * data[:, 2]


def phasespace_to_csv(x, p, samples):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["x", "p", "re", "im"])
    for i, xi in enumerate(x):
        for j, pj in enumerate(p):
            v = samples[i, j]
            writer.writerow([f"{xi:.17g}", f"{pj:.17g}", f"{v.real:.17g}", f"{v.imag:.17g}"])
    return buf.getvalue()


def phasespace_from_csv(text):
    """Return ``(x, p, samples)`` from a row-major CSV with header ``x,p,re,im``."""
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or [h.strip() for h in rows[0]] != ["x", "p", "re", "im"]:
        raise WigcovError('phase-space CSV must start with the header "x,p,re,im"')
    try:
        data = np.array([[float(v) for v in r] for r in rows[1:] if r], dtype=float)
    except ValueError as exc:
        raise WigcovError(f"malformed phase-space CSV: {exc}") from None
    if data.ndim != 2 or data.shape[1] != 4:
        raise WigcovError("phase-space CSV rows must have four columns")
    x = np.unique(data[:, 0])
    p = np.unique(data[:, 1])
    if len(x) * len(p) != len(data):
        raise WigcovError("phase-space CSV is not a full rectangular grid")
    samples = (data[:, 2] + 1j * data[:, 3]).reshape(len(x), len(p))
    return x, p, samples
