"""
File formats: headerless numeric CSV for data, `i j` / `i > j` edge lists,
`i j : k1 k2` separating sets, JSON reports. Every graph file starts with a
`# n=<count>` line so that isolated variables survive a round trip.
"""
from __future__ import annotations

import csv
import json
import math
from pathlib import Path
from typing import Iterable, List, Optional, Tuple, Union

import numpy as np

from .core import DataMatrix, Edge
from .exceptions import DataError
from .orient import MixedGraph
from .sepsets import SeparationSets

PathLike = Union[str, Path]


def _is_number(cell: str) -> bool:
    try:
        float(cell)
    except ValueError:
        return False
    return True


def read_data_csv(path: PathLike) -> DataMatrix:
    """
    Rows are samples, columns are variables. The first non-empty row is taken
    as a header when any of its cells is non-numeric.
    """
    rows: List[List[float]] = []
    width: Optional[int] = None
    with open(path, newline="", encoding="utf-8") as fh:
        first = True
        for line_no, cells in enumerate(csv.reader(fh), start=1):
            if not cells or all(not c.strip() for c in cells):
                continue
            cells = [c.strip() for c in cells]
            if first:
                first = False
                if not all(_is_number(c) for c in cells):
                    continue
            if width is None:
                width = len(cells)
            elif len(cells) != width:
                raise DataError(
                    f"{path}: line {line_no} has {len(cells)} columns, expected {width}",
                    row=len(rows),
                )
            values = []
            for col, cell in enumerate(cells):
                try:
                    value = float(cell)
                except ValueError:
                    raise DataError(
                        f"{path}: non-numeric cell {cell!r} at line {line_no}, column {col + 1}",
                        row=len(rows), column=col,
                    ) from None
                if not math.isfinite(value):
                    raise DataError(
                        f"{path}: non-finite cell {cell!r} at line {line_no}, column {col + 1}",
                        row=len(rows), column=col,
                    )
                values.append(value)
            rows.append(values)
    if not rows:
        raise DataError(f"{path}: no data rows")
    return DataMatrix(np.array(rows, dtype=np.float64))


def write_data_csv(path: PathLike, data: DataMatrix) -> None:
    """Shortest round-trip decimal for every value."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        for row in data.values:
            writer.writerow([repr(float(v)) for v in row])


def _header(n: int) -> str:
    return f"# n={n}\n"


def _content_lines(path: PathLike) -> Tuple[Optional[int], List[Tuple[int, str]]]:
    n: Optional[int] = None
    lines: List[Tuple[int, str]] = []
    with open(path, encoding="utf-8") as fh:
        for line_no, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line:
                continue
            if line.startswith("#"):
                key, _, value = line[1:].strip().partition("=")
                if key.strip() == "n":
                    try:
                        n = int(value)
                    except ValueError:
                        raise DataError(f"{path}: bad header at line {line_no}: {line!r}") from None
                continue
            lines.append((line_no, line))
    return n, lines


def _index(path: PathLike, line_no: int, token: str) -> int:
    try:
        value = int(token)
    except ValueError:
        raise DataError(f"{path}: line {line_no}: {token!r} is not a variable index") from None
    if value < 0:
        raise DataError(f"{path}: line {line_no}: negative variable index {value}")
    return value


def write_edges(path: PathLike, n: int, edges: Iterable[Edge]) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(_header(n))
        for i, j in sorted((min(a, b), max(a, b)) for a, b in edges):
            fh.write(f"{i} {j}\n")


def read_edges(path: PathLike) -> Tuple[int, List[Edge]]:
    n, lines = _content_lines(path)
    edges: List[Edge] = []
    for line_no, line in lines:
        tokens = line.split()
        if len(tokens) != 2:
            raise DataError(f"{path}: line {line_no}: expected 'i j', got {line!r}")
        i, j = (_index(path, line_no, t) for t in tokens)
        edges.append((min(i, j), max(i, j)))
    size = n if n is not None else 1 + max((j for _, j in edges), default=-1)
    if any(j >= size for _, j in edges):
        raise DataError(f"{path}: edge index exceeds declared n={size}")
    return size, edges


def write_sepsets(path: PathLike, n: int, sepsets: SeparationSets) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(_header(n))
        for (i, j), cond in sepsets.items():
            right = " ".join(str(k) for k in cond)
            fh.write(f"{i} {j} : {right}".rstrip() + "\n")


def read_sepsets(path: PathLike) -> Tuple[Optional[int], SeparationSets]:
    n, lines = _content_lines(path)
    sepsets = SeparationSets()
    for line_no, line in lines:
        left, sep, right = line.partition(":")
        pair = left.split()
        if not sep or len(pair) != 2:
            raise DataError(f"{path}: line {line_no}: expected 'i j : k1 k2 ...', got {line!r}")
        i, j = (_index(path, line_no, t) for t in pair)
        cond = [_index(path, line_no, t) for t in right.split()]
        try:
            sepsets.store(i, j, cond)
        except ValueError as exc:
            raise DataError(f"{path}: line {line_no}: {exc}") from None
    return n, sepsets


def write_cpdag(path: PathLike, g: MixedGraph) -> None:
    rows = [((a, b), f"{a} > {b}") for a, b in g.directed]
    rows += [((a, b), f"{a} {b}") for a, b in g.undirected]
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(_header(g.n))
        for _, line in sorted(rows):
            fh.write(line + "\n")


def read_cpdag(path: PathLike) -> MixedGraph:
    n, lines = _content_lines(path)
    directed, undirected = [], []
    for line_no, line in lines:
        tokens = line.split()
        if len(tokens) == 3 and tokens[1] == ">":
            directed.append((_index(path, line_no, tokens[0]), _index(path, line_no, tokens[2])))
        elif len(tokens) == 2:
            undirected.append(tuple(_index(path, line_no, t) for t in tokens))
        else:
            raise DataError(f"{path}: line {line_no}: expected 'i j' or 'i > j', got {line!r}")
    if n is None:
        n = 1 + max((max(e) for e in directed + undirected), default=-1)
    return MixedGraph(n, frozenset(directed), frozenset(undirected))


def write_json(path: PathLike, payload: dict) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2, sort_keys=False)
        fh.write("\n")
