"""CSV and JSON formats for command logs, trajectories and run metrics."""

import csv
import io
import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import MalformedLog

COMMAND_HEADER = ("t", "n1", "n2", "n3", "n4", "n5")
TRAJECTORY_HEADER = (
    "t", "x", "y", "z", "phi", "theta", "psi", "u", "v", "w", "p", "q", "r",
    "X", "Y", "Z", "K", "M", "N", "f1", "f2", "f3", "f4", "f5", "mode", "e", "ev",
)
METRIC_KEYS = ("rms_cross_track_m", "max_roll_deg", "duration_s", "distance_m")


def _fmt(v: float) -> str:
    return repr(float(v))


def _write(path, header, rows) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)


def _read_rows(source, header):
    """Rows of a CSV file (or CSV text containing a newline), checked against ``header``; yields (line, fields)."""
    if isinstance(source, str) and "\n" in source:
        text = source
    else:
        text = Path(source).read_text(encoding="utf-8")
    reader = csv.reader(io.StringIO(text))
    try:
        first = next(reader)
    except StopIteration:
        raise MalformedLog("empty log", 1) from None
    if tuple(h.strip() for h in first) != header:
        raise MalformedLog(f"expected header {','.join(header)}", 1)
    for fields in reader:
        if not fields:
            continue
        if len(fields) != len(header):
            raise MalformedLog(f"expected {len(header)} fields, got {len(fields)}", reader.line_num)
        yield reader.line_num, fields


def _number(text: str, line: int, name: str) -> float:
    try:
        return float(text)
    except ValueError:
        raise MalformedLog(f"field {name!r} is not a number: {text!r}", line) from None


@dataclass
class CommandLog:
    """Timed thruster speed commands [rev/s], held until the next row."""

    t: np.ndarray
    n: np.ndarray

    def __post_init__(self):
        self.t = np.asarray(self.t, float).ravel()
        self.n = np.asarray(self.n, float).reshape(-1, 5)
        if self.t.shape[0] != self.n.shape[0]:
            raise ValueError("times and commands differ in length")
        bad = np.flatnonzero(np.diff(self.t) <= 0.0)
        if bad.size:
            # +2: header line and one-based numbering
            raise MalformedLog("timestamps must increase strictly", int(bad[0]) + 3)

    def __len__(self) -> int:
        return self.t.shape[0]

    def write_csv(self, path) -> None:
        _write(path, COMMAND_HEADER, ([_fmt(t), *map(_fmt, n)] for t, n in zip(self.t, self.n)))

    @classmethod
    def read_csv(cls, source) -> "CommandLog":
        ts, ns, last = [], [], -math.inf
        for line, fields in _read_rows(source, COMMAND_HEADER):
            vals = [_number(v, line, h) for v, h in zip(fields, COMMAND_HEADER)]
            if not all(math.isfinite(v) for v in vals):
                raise MalformedLog("non-finite value", line)
            if vals[0] <= last:
                raise MalformedLog(f"time {vals[0]!r} does not increase", line)
            last = vals[0]
            ts.append(vals[0])
            ns.append(vals[1:])
        if not ts:
            raise MalformedLog("log has no rows", 2)
        return cls(np.array(ts), np.array(ns))

    def index_at(self, t) -> np.ndarray:
        """Row held at time(s) ``t``; -1 before the first row."""
        return np.searchsorted(self.t, t, side="right") - 1


@dataclass
class TrajectoryLog:
    """Logged states with the commanded forces, thrusts and guidance channels."""

    t: np.ndarray
    eta: np.ndarray
    nu: np.ndarray
    tau: np.ndarray
    f: np.ndarray
    mode: list
    e: np.ndarray
    ev: np.ndarray
    commands: CommandLog | None = field(default=None, repr=False)

    def __post_init__(self):
        n = len(self.mode)
        self.t = np.asarray(self.t, float).reshape(n)
        self.eta = np.asarray(self.eta, float).reshape(n, 6)
        self.nu = np.asarray(self.nu, float).reshape(n, 6)
        self.tau = np.asarray(self.tau, float).reshape(n, 6)
        self.f = np.asarray(self.f, float).reshape(n, 5)
        self.e = np.asarray(self.e, float).reshape(n)
        self.ev = np.asarray(self.ev, float).reshape(n)
        self.mode = list(self.mode)

    def __len__(self) -> int:
        return self.t.shape[0]

    @classmethod
    def empty(cls) -> "TrajectoryLog":
        return cls(np.zeros(0), np.zeros((0, 6)), np.zeros((0, 6)), np.zeros((0, 6)),
                   np.zeros((0, 5)), [], np.zeros(0), np.zeros(0))

    def channel(self, name: str) -> np.ndarray:
        cols = dict(zip(TRAJECTORY_HEADER[1:13], range(12)))
        if name not in cols:
            raise KeyError(f"unknown channel {name!r}")
        i = cols[name]
        return self.eta[:, i] if i < 6 else self.nu[:, i - 6]

    def rows(self):
        for i in range(len(self)):
            yield ([_fmt(self.t[i]), *map(_fmt, self.eta[i]), *map(_fmt, self.nu[i]),
                    *map(_fmt, self.tau[i]), *map(_fmt, self.f[i]), self.mode[i],
                    _fmt(self.e[i]), _fmt(self.ev[i])])

    def write_csv(self, path) -> None:
        _write(path, TRAJECTORY_HEADER, self.rows())

    @classmethod
    def read_csv(cls, source) -> "TrajectoryLog":
        data, modes, last = [], [], -math.inf
        for line, fields in _read_rows(source, TRAJECTORY_HEADER):
            vals = [_number(v, line, h) for v, h in zip(fields[:24], TRAJECTORY_HEADER[:24])]
            vals += [_number(v, line, h) for v, h in zip(fields[25:], TRAJECTORY_HEADER[25:])]
            if vals[0] <= last:
                raise MalformedLog(f"time {vals[0]!r} does not increase", line)
            last = vals[0]
            data.append(vals)
            modes.append(fields[24])
        a = np.array(data, float).reshape(-1, 26)
        return cls(a[:, 0], a[:, 1:7], a[:, 7:13], a[:, 13:19], a[:, 19:24], modes, a[:, 24], a[:, 25])


def write_metrics(path, metrics: dict) -> None:
    Path(path).write_text(json.dumps({k: metrics[k] for k in METRIC_KEYS}, indent=2) + "\n", encoding="utf-8")


def read_metrics(path) -> dict:
    return json.loads(Path(path).read_text(encoding="utf-8"))
