"""Text formats for matrices, symbols, partitions, class functions.

Matrices and symbols travel as a JSON record {"rows": r, "cols": c,
"entries": [[re, im], ...]} in row-major order; partitions as
{"blocks": [...], "weights": [...]}.  Exact rational matrices accept
fraction strings ("3/4") or decimal literals in the re slot, imaginary
parts must be zero.  Class functions and vertex-pair lists are line
oriented: coordinates, a colon, then the payload; '#' starts a
comment.  All emitted numbers carry 15 significant digits.
"""

import json
from fractions import Fraction

import numpy as np

from .errors import InputError
from .padic import QMatrix
from .symbols import Partition


def fmt(x):
    """Decimal rendering with 15 significant digits.

    Integers and bools pass through; complex values render as
    "re+imj" (pure-real complex collapses to the real part).
    """
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, complex):
        if x.imag == 0.0:
            return fmt(x.real)
        sign = "+" if x.imag >= 0 else "-"
        return f"{fmt(x.real)}{sign}{fmt(abs(x.imag))}j"
    return f"{float(x):.15g}"


def _round15(x):
    return float(f"{float(x):.15g}")


def matrix_to_record(M):
    M = np.atleast_2d(np.asarray(M, dtype=complex))
    rows, cols = M.shape
    entries = [[_round15(z.real), _round15(z.imag)] for z in M.reshape(-1)]
    return {"rows": rows, "cols": cols, "entries": entries}


def matrix_from_record(rec):
    try:
        rows = int(rec["rows"])
        cols = int(rec["cols"])
        entries = rec["entries"]
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed matrix record: {exc}") from exc
    if rows < 1 or cols < 1:
        raise InputError(f"matrix shape must be positive, got {rows} x {cols}")
    if len(entries) != rows * cols:
        raise InputError(
            f"expected {rows * cols} entries for {rows} x {cols}, got {len(entries)}"
        )
    out = np.empty(rows * cols, dtype=complex)
    for k, pair in enumerate(entries):
        if not isinstance(pair, (list, tuple)) or len(pair) != 2:
            raise InputError(f"entry {k} is not an [re, im] pair: {pair!r}")
        out[k] = complex(float(pair[0]), float(pair[1]))
    return out.reshape(rows, cols)


def read_matrix(path):
    with open(path, encoding="utf-8") as fh:
        try:
            rec = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InputError(f"{path}: not valid JSON: {exc}") from exc
    return matrix_from_record(rec)


def write_matrix(path, M):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(matrix_to_record(M), fh)
        fh.write("\n")


def _exact_entry(value, where):
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"{where}: bad fraction literal {value!r}") from exc
    if isinstance(value, bool):
        raise InputError(f"{where}: bad entry {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        # decimal reading: 0.25 means 1/4, not the nearest binary float
        return Fraction(repr(value))
    raise InputError(f"{where}: bad entry {value!r}")


def read_qmatrix(path, q):
    """Exact rational matrix from the JSON record format.

    Entries may be numbers or fraction strings in the re slot; any
    nonzero imaginary part is rejected (the exact pipeline is rational).
    """
    with open(path, encoding="utf-8") as fh:
        try:
            rec = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InputError(f"{path}: not valid JSON: {exc}") from exc
    try:
        rows = int(rec["rows"])
        cols = int(rec["cols"])
        entries = rec["entries"]
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"{path}: malformed matrix record: {exc}") from exc
    if rows != cols:
        raise InputError(f"{path}: exact matrix must be square, got {rows} x {cols}")
    if len(entries) != rows * cols:
        raise InputError(f"{path}: expected {rows * cols} entries, got {len(entries)}")
    data = []
    for k, pair in enumerate(entries):
        where = f"{path}: entry {k}"
        if not isinstance(pair, (list, tuple)) or len(pair) != 2:
            raise InputError(f"{where}: not an [re, im] pair")
        re, im = pair
        if isinstance(im, str):
            if Fraction(im) != 0:
                raise InputError(f"{where}: imaginary part must be zero")
        elif im != 0:
            raise InputError(f"{where}: imaginary part must be zero")
        data.append(_exact_entry(re, where))
    rows_out = tuple(
        tuple(data[i * cols + j] for j in range(cols)) for i in range(rows)
    )
    return QMatrix(rows_out, q)


def partition_to_record(part):
    return {
        "blocks": [int(b) for b in part.blocks],
        "weights": [_round15(w) for w in part.weights],
    }


def partition_from_record(rec):
    try:
        blocks = [int(b) for b in rec["blocks"]]
        weights = [float(w) for w in rec["weights"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed partition record: {exc}") from exc
    return Partition(tuple(blocks), tuple(weights))


def read_partition(path):
    with open(path, encoding="utf-8") as fh:
        try:
            rec = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InputError(f"{path}: not valid JSON: {exc}") from exc
    return partition_from_record(rec)


def write_partition(path, part):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(partition_to_record(part), fh)
        fh.write("\n")


def _data_lines(path):
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if line:
                yield lineno, line


def _parse_coords(text, where):
    try:
        coords = tuple(int(tok) for tok in text.split())
    except ValueError as exc:
        raise InputError(f"{where}: bad coordinates {text!r}") from exc
    if not coords:
        raise InputError(f"{where}: empty coordinate list")
    return coords


def read_class_function(path):
    """Class-function file: lines "c1 c2 ... cr : re [im]".

    Returns a dict keyed by coordinate tuples with complex values.
    """
    out = {}
    for lineno, line in _data_lines(path):
        where = f"{path}:{lineno}"
        if ":" not in line:
            raise InputError(f"{where}: expected 'coords : value'")
        left, right = line.split(":", 1)
        coords = _parse_coords(left, where)
        parts = right.split()
        if len(parts) not in (1, 2):
            raise InputError(f"{where}: value must be 're' or 're im'")
        try:
            re = float(parts[0])
            im = float(parts[1]) if len(parts) == 2 else 0.0
        except ValueError as exc:
            raise InputError(f"{where}: bad value {right.strip()!r}") from exc
        if coords in out:
            raise InputError(f"{where}: duplicate coordinates {coords}")
        out[coords] = complex(re, im)
    if not out:
        raise InputError(f"{path}: no class-function entries")
    return out


def read_pair_list(path):
    """Vertex-pair file: lines "c1 c2 ... cr : i" with i a vertex index."""
    out = []
    for lineno, line in _data_lines(path):
        where = f"{path}:{lineno}"
        if ":" not in line:
            raise InputError(f"{where}: expected 'coords : index'")
        left, right = line.split(":", 1)
        coords = _parse_coords(left, where)
        try:
            index = int(right.strip())
        except ValueError as exc:
            raise InputError(f"{where}: bad vertex index {right.strip()!r}") from exc
        out.append((coords, index))
    if not out:
        raise InputError(f"{path}: no pairs")
    return out
