"""Finite datasets of dichotomic n-tuples and the arithmetic bounds on their
pair correlations.

A dataset is M rows of n values, each value exactly +1 or -1.  Pair
correlations are averages of products of two columns.  When all pairs are
taken from one set of triples (or quadruples), elementary integer arithmetic
forces the Boole (or CHSH-type) inequalities; when the pairs come from three
unrelated runs, only the much weaker 3-bound survives.  The checks here
implement exactly those clause families.

``check_boole_triple_anticorrelated`` covers the singlet-style convention in
which the two stations of a pair experiment report opposite signs for equal
settings: the triples hypothesis then concerns the sign-flipped station-2
variables, which maps the Boole clauses to ``|F12 +- F13| <= 1 -+ F23``.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .reports import InequalityReport, make_clause, make_report

_RANGE_TOL = 1e-12


@dataclass(frozen=True)
class DichotomicDataset:
    """M labeled n-tuples of +-1 outcomes, immutable after construction."""

    data: np.ndarray
    run_label: str | None = None

    def __post_init__(self):
        arr = np.asarray(self.data, dtype=np.int8)
        if arr.ndim != 2:
            raise ValueError("data must be a 2-d array of shape (M, n)")
        m, n = arr.shape
        if m < 1:
            raise ValueError("dataset must contain at least one tuple")
        if n not in (2, 3, 4):
            raise ValueError(f"tuple arity must be 2, 3 or 4, got {n}")
        if not np.all(np.abs(arr) == 1):
            raise ValueError("every entry must be exactly +1 or -1")
        arr.setflags(write=False)
        object.__setattr__(self, "data", arr)

    @property
    def n(self) -> int:
        return self.data.shape[1]

    @property
    def m(self) -> int:
        return self.data.shape[0]


@dataclass(frozen=True)
class ReducedDataset:
    """Projection of a dataset onto a strictly increasing index subset (1-based)."""

    parent_arity: int
    indices: tuple[int, ...]
    data: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.data, dtype=np.int8)
        arr.setflags(write=False)
        object.__setattr__(self, "data", arr)

    @property
    def m(self) -> int:
        return self.data.shape[0]


@dataclass(frozen=True)
class PairCorrelation:
    value: float
    i: int
    j: int
    source_arity: int


def reduce_dataset(ds: DichotomicDataset, indices: tuple[int, ...]) -> ReducedDataset:
    """Project every row onto the given strictly increasing 1-based indices."""
    idx = tuple(int(i) for i in indices)
    if any(i < 1 or i > ds.n for i in idx):
        raise ValueError(f"indices must lie in 1..{ds.n}, got {idx}")
    if any(b <= a for a, b in zip(idx, idx[1:])):
        raise ValueError(f"indices must be strictly increasing, got {idx}")
    cols = [i - 1 for i in idx]
    return ReducedDataset(ds.n, idx, ds.data[:, cols])


def correlation(ds: DichotomicDataset, i: int, j: int) -> PairCorrelation:
    """Average of products of columns i and j (1-based, i < j).

    The numerator is an exact integer sum, so the value is num/M with no
    accumulation error.
    """
    if not (1 <= i < j <= ds.n):
        raise ValueError(f"need 1 <= i < j <= {ds.n}, got i={i}, j={j}")
    num = int(np.sum(ds.data[:, i - 1].astype(np.int64) * ds.data[:, j - 1]))
    return PairCorrelation(num / ds.m, i, j, ds.n)


def _require_in_unit_interval(name_value_pairs):
    for name, value in name_value_pairs:
        if not np.isfinite(value) or abs(value) > 1.0 + _RANGE_TOL:
            raise ValueError(f"{name}={value} outside [-1, 1]")


def check_boole_triple(f12: float, f13: float, f23: float) -> InequalityReport:
    """Six-clause Boole family |Fij +- Fik| <= 1 +- Fjk for pair averages of
    one set of triples.  Mathematically unviolable for triple-derived data."""
    _require_in_unit_interval([("F12", f12), ("F13", f13), ("F23", f23)])
    vals = {(1, 2): f12, (1, 3): f13, (2, 3): f23}

    def v(i, j):
        return vals[(i, j)] if i < j else vals[(j, i)]

    clauses = []
    for (i, j, k) in ((1, 2, 3), (3, 1, 2), (2, 3, 1)):
        for sign, s in ((+1, "+"), (-1, "-")):
            clauses.append(make_clause(
                f"|F{i}{j} {s} F{i}{k}| <= 1 {s} F{j}{k}",
                abs(v(i, j) + sign * v(i, k)),
                1.0 + sign * v(j, k),
            ))
    return make_report("boole_triple", clauses)


def check_boole_triple_anticorrelated(f12: float, f13: float, f23: float) -> InequalityReport:
    """Boole family for the anticorrelated-station convention.

    For singlet-style pair experiments, equal settings give opposite outcomes
    at the two stations, so the latent triple lives in the station-2 sign
    convention and the observed correlations enter with flipped sign.  In
    terms of the raw values this yields |F12 +- F13| <= 1 -+ F23 and cyclic
    relabelings.
    """
    _require_in_unit_interval([("F12", f12), ("F13", f13), ("F23", f23)])
    vals = {(1, 2): f12, (1, 3): f13, (2, 3): f23}

    def v(i, j):
        return vals[(i, j)] if i < j else vals[(j, i)]

    clauses = []
    for (i, j, k) in ((1, 2, 3), (3, 1, 2), (2, 3, 1)):
        for sign, s, t in ((+1, "+", "-"), (-1, "-", "+")):
            clauses.append(make_clause(
                f"|F{i}{j} {s} F{i}{k}| <= 1 {t} F{j}{k} (anticorrelated convention)",
                abs(v(i, j) + sign * v(i, k)),
                1.0 - sign * v(j, k),
            ))
    return make_report("boole_triple_anticorrelated", clauses)


def check_pair_bound(f: float, fhat: float, ftilde: float) -> InequalityReport:
    """Correct bound when the three pair averages come from three unrelated
    runs: |F +- Fhat| <= 3 - |Ftilde| and the two symbol interchanges."""
    _require_in_unit_interval([("F", f), ("Fhat", fhat), ("Ftilde", ftilde)])
    named = (("F", f), ("Fhat", fhat), ("Ftilde", ftilde))
    clauses = []
    for (na, va), (nb, vb), (nc, vc) in (
        (named[0], named[1], named[2]),
        (named[0], named[2], named[1]),
        (named[2], named[1], named[0]),
    ):
        for sign, s in ((+1, "+"), (-1, "-")):
            clauses.append(make_clause(
                f"|{na} {s} {nb}| <= 3 - |{nc}|",
                abs(va + sign * vb),
                3.0 - abs(vc),
            ))
    return make_report("pair_bound", clauses)


def check_chsh(f13: float, f23: float, f14: float, f24: float) -> InequalityReport:
    """CHSH-type bound |F13 - F23 + F14 + F24| <= 2 for quadruple-derived
    correlations, plus the sign variants generated by column negations.

    Negating columns maps the base clause to |u*F13 - v*F23 + w*F14 + uvw*F24|
    with independent u, v, w in {+1,-1}: eight clauses in total.
    """
    _require_in_unit_interval(
        [("F13", f13), ("F23", f23), ("F14", f14), ("F24", f24)])
    clauses = []
    for u in (+1, -1):
        for v in (+1, -1):
            for w in (+1, -1):
                x = u * v * w
                desc = (f"|({'+' if u > 0 else '-'}F13) - ({'+' if v > 0 else '-'}F23)"
                        f" + ({'+' if w > 0 else '-'}F14) + ({'+' if x > 0 else '-'}F24)| <= 2")
                clauses.append(make_clause(
                    desc, abs(u * f13 - v * f23 + w * f14 + x * f24), 2.0))
    return make_report("chsh", clauses)


def write_dataset_csv(ds: DichotomicDataset, path: str | Path) -> None:
    """CSV format: mandatory header s1..sn, one row per tuple, values +1/-1."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow([f"s{i}" for i in range(1, ds.n + 1)])
        for row in ds.data:
            writer.writerow(["+1" if s > 0 else "-1" for s in row])


def read_dataset_csv(path: str | Path, run_label: str | None = None) -> DichotomicDataset:
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None:
            raise ValueError(f"{path}: empty file, header s1..sn is mandatory")
        n = len(header)
        if header != [f"s{i}" for i in range(1, n + 1)]:
            raise ValueError(f"{path}: header must be s1..s{n}, got {header}")
        rows = []
        for lineno, row in enumerate(reader, start=2):
            if len(row) != n:
                raise ValueError(f"{path}:{lineno}: expected {n} columns")
            try:
                rows.append([int(cell) for cell in row])
            except ValueError as exc:
                raise ValueError(f"{path}:{lineno}: non-integer value") from exc
    if not rows:
        raise ValueError(f"{path}: dataset must contain at least one row")
    return DichotomicDataset(np.array(rows, dtype=np.int8), run_label=run_label)
