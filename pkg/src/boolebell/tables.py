"""Real functions of two or three dichotomic variables, their multilinear
expansion coefficients, and the inequality families those coefficients obey
when the function is non-negative.

Any real f(S1,..,Sn) on {+1,-1}^n is a multilinear polynomial; the expansion
coefficients are the signed sums e_T = sum_S (prod_{i in T} S_i) f(S).  For
non-negative f the pair coefficients satisfy Boole-like bounds:

* two variables: 0 <= e0 and |e1 +- e2| <= e0 +- e12, which is also
  sufficient (``theorem1_check``);
* three variables: |e_ij +- e_ik| <= e0 +- e_jk plus the -3*e0 lower bounds
  (``ebbi_check``), and conversely any admissible pair-coefficient set is
  realized by an explicit non-negative table (``construct_g3``);
* three unrelated two-variable functions sharing e0: only the weak bound
  |e +- ehat| <= 3*e0 - |etilde| (``theorem3_check``).

``marginals_compatible``/``reconstruct_f3`` decide whether three pair tables
are the three pair marginals of one non-negative three-variable table, and
build such a table when they are.  ``LambdaModel`` covers the factorized
single-parameter mixtures whose pair tables always pass that test.

Tables are indexed with 0 <-> S=+1 and 1 <-> S=-1, variable 1 slowest.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

from .reports import SLACK_TOL, InequalityReport, make_clause, make_report

SIGNS = (1.0, -1.0)

NONNEG_TOL = 1e-12
MATCH_TOL = 1e-12


def _sign_key(idx: tuple[int, ...]) -> str:
    return "".join("+" if i == 0 else "-" for i in idx)


@dataclass(frozen=True)
class FuncTable2:
    """Real function of (S1, S2), stored as a 2x2 array."""

    values: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.values, dtype=float)
        if arr.shape != (2, 2):
            raise ValueError("FuncTable2 needs a 2x2 array")
        if not np.all(np.isfinite(arr)):
            raise ValueError("table entries must be finite")
        arr.setflags(write=False)
        object.__setattr__(self, "values", arr)

    def value(self, s1: int, s2: int) -> float:
        return float(self.values[(1 - s1) // 2, (1 - s2) // 2])

    def is_nonnegative(self, tol: float = NONNEG_TOL) -> bool:
        return bool(np.min(self.values) >= -tol)

    def to_dict(self) -> dict:
        return {_sign_key(idx): float(self.values[idx])
                for idx in product(range(2), repeat=2)}

    @classmethod
    def from_dict(cls, d: dict) -> "FuncTable2":
        arr = np.empty((2, 2))
        for idx in product(range(2), repeat=2):
            arr[idx] = d[_sign_key(idx)]
        return cls(arr)


@dataclass(frozen=True)
class FuncTable3:
    """Real function of (S1, S2, S3), stored as a 2x2x2 array."""

    values: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.values, dtype=float)
        if arr.shape != (2, 2, 2):
            raise ValueError("FuncTable3 needs a 2x2x2 array")
        if not np.all(np.isfinite(arr)):
            raise ValueError("table entries must be finite")
        arr.setflags(write=False)
        object.__setattr__(self, "values", arr)

    def value(self, s1: int, s2: int, s3: int) -> float:
        return float(self.values[(1 - s1) // 2, (1 - s2) // 2, (1 - s3) // 2])

    def is_nonnegative(self, tol: float = NONNEG_TOL) -> bool:
        return bool(np.min(self.values) >= -tol)

    def marginals(self) -> tuple[FuncTable2, FuncTable2, FuncTable2]:
        """Pair marginals over (S1,S2), (S1,S3), (S2,S3)."""
        v = self.values
        return (FuncTable2(v.sum(axis=2)),
                FuncTable2(v.sum(axis=1)),
                FuncTable2(v.sum(axis=0)))

    def to_dict(self) -> dict:
        return {_sign_key(idx): float(self.values[idx])
                for idx in product(range(2), repeat=3)}

    @classmethod
    def from_dict(cls, d: dict) -> "FuncTable3":
        arr = np.empty((2, 2, 2))
        for idx in product(range(2), repeat=3):
            arr[idx] = d[_sign_key(idx)]
        return cls(arr)


@dataclass(frozen=True)
class ExpansionCoeffs2:
    e0: float
    e1: float
    e2: float
    e12: float

    def to_dict(self) -> dict:
        return {"e0": self.e0, "e1": self.e1, "e2": self.e2, "e12": self.e12}


@dataclass(frozen=True)
class ExpansionCoeffs3:
    e0: float
    e1: float
    e2: float
    e3: float
    e12: float
    e13: float
    e23: float
    e123: float

    def to_dict(self) -> dict:
        return {"e0": self.e0, "e1": self.e1, "e2": self.e2, "e3": self.e3,
                "e12": self.e12, "e13": self.e13, "e23": self.e23,
                "e123": self.e123}


def expand2(f: FuncTable2) -> ExpansionCoeffs2:
    """Signed sums of the table: e_T = sum_S (prod_{i in T} S_i) f(S)."""
    e0 = e1 = e2 = e12 = 0.0
    for i1, i2 in product(range(2), repeat=2):
        s1, s2 = SIGNS[i1], SIGNS[i2]
        v = float(f.values[i1, i2])
        e0 += v
        e1 += s1 * v
        e2 += s2 * v
        e12 += s1 * s2 * v
    return ExpansionCoeffs2(e0, e1, e2, e12)


def synth2(c: ExpansionCoeffs2) -> FuncTable2:
    """Inverse of expand2: f = (e0 + S1 e1 + S2 e2 + S1 S2 e12) / 4."""
    arr = np.empty((2, 2))
    for i1, i2 in product(range(2), repeat=2):
        s1, s2 = SIGNS[i1], SIGNS[i2]
        arr[i1, i2] = (c.e0 + s1 * c.e1 + s2 * c.e2 + s1 * s2 * c.e12) / 4.0
    return FuncTable2(arr)


def expand3(f: FuncTable3) -> ExpansionCoeffs3:
    acc = dict(e0=0.0, e1=0.0, e2=0.0, e3=0.0,
               e12=0.0, e13=0.0, e23=0.0, e123=0.0)
    for i1, i2, i3 in product(range(2), repeat=3):
        s1, s2, s3 = SIGNS[i1], SIGNS[i2], SIGNS[i3]
        v = float(f.values[i1, i2, i3])
        acc["e0"] += v
        acc["e1"] += s1 * v
        acc["e2"] += s2 * v
        acc["e3"] += s3 * v
        acc["e12"] += s1 * s2 * v
        acc["e13"] += s1 * s3 * v
        acc["e23"] += s2 * s3 * v
        acc["e123"] += s1 * s2 * s3 * v
    return ExpansionCoeffs3(**acc)


def synth3(c: ExpansionCoeffs3) -> FuncTable3:
    arr = np.empty((2, 2, 2))
    for i1, i2, i3 in product(range(2), repeat=3):
        s1, s2, s3 = SIGNS[i1], SIGNS[i2], SIGNS[i3]
        arr[i1, i2, i3] = (c.e0 + s1 * c.e1 + s2 * c.e2 + s3 * c.e3
                           + s1 * s2 * c.e12 + s1 * s3 * c.e13
                           + s2 * s3 * c.e23 + s1 * s2 * s3 * c.e123) / 8.0
    return FuncTable3(arr)


def theorem1_check(c: ExpansionCoeffs2) -> InequalityReport:
    """Necessary and sufficient conditions for synth2(c) to be non-negative:
    0 <= e0 and |e1 +- e2| <= e0 +- e12."""
    clauses = [make_clause("0 <= e0", 0.0, c.e0)]
    for sign, s in ((+1, "+"), (-1, "-")):
        clauses.append(make_clause(
            f"|e1 {s} e2| <= e0 {s} e12",
            abs(c.e1 + sign * c.e2), c.e0 + sign * c.e12))
    return make_report("theorem1", clauses)


def ebbi_check(e0: float, e12: float, e13: float, e23: float) -> InequalityReport:
    """Pair-coefficient bounds obeyed by every non-negative three-variable
    function: |e_ij| <= e0 (preconditions), the six clauses
    |e_ij +- e_ik| <= e0 +- e_jk, and the -3*e0 lower bound for each of the
    eight sign patterns."""
    if not np.isfinite(e0) or e0 < 0.0:
        raise ValueError(f"e0 must be non-negative, got {e0}")
    vals = {(1, 2): e12, (1, 3): e13, (2, 3): e23}

    def v(i, j):
        return vals[(i, j)] if i < j else vals[(j, i)]

    clauses = [
        make_clause(f"|e{i}{j}| <= e0", abs(vals[(i, j)]), e0)
        for (i, j) in ((1, 2), (1, 3), (2, 3))
    ]
    for (i, j, k) in ((1, 2, 3), (3, 1, 2), (2, 3, 1)):
        for sign, s in ((+1, "+"), (-1, "-")):
            clauses.append(make_clause(
                f"|e{i}{j} {s} e{i}{k}| <= e0 {s} e{j}{k}",
                abs(v(i, j) + sign * v(i, k)),
                e0 + sign * v(j, k)))
    for s1, s2, s3 in product((+1, -1), repeat=3):
        pattern = "".join("+" if s > 0 else "-" for s in (s1, s2, s3))
        clauses.append(make_clause(
            f"-3 e0 <= -(s1 s2) e12 - (s1 s3) e13 - (s2 s3) e23 at ({pattern})",
            -3.0 * e0,
            -(s1 * s2 * e12) - (s1 * s3 * e13) - (s2 * s3 * e23)))
    return make_report("ebbi", clauses)


def construct_g3(a0: float, a12: float, a13: float, a23: float) -> FuncTable3:
    """Explicit non-negative table with pair coefficients (a0, a12, a13, a23)
    and all other coefficients zero:
    g(S1,S2,S3) = (a0 + S1 S2 a12 + S1 S3 a13 + S2 S3 a23) / 8."""
    report = ebbi_check(a0, a12, a13, a23)
    if not report.all_satisfied:
        bad = report.violated_clauses()[0]
        raise ValueError(f"inadmissible coefficients, violated: {bad.description} "
                         f"(lhs={bad.lhs}, rhs={bad.rhs})")
    arr = np.empty((2, 2, 2))
    for i1, i2, i3 in product(range(2), repeat=3):
        s1, s2, s3 = SIGNS[i1], SIGNS[i2], SIGNS[i3]
        arr[i1, i2, i3] = (a0 + s1 * s2 * a12 + s1 * s3 * a13 + s2 * s3 * a23) / 8.0
    return FuncTable3(arr)


def theorem3_check(e: float, ehat: float, etilde: float, e0: float) -> InequalityReport:
    """Bounds for three unrelated non-negative pair functions sharing e0 and
    carrying no single-variable terms: |e +- ehat| <= 3 e0 - |etilde| plus the
    two interchanges."""
    if not np.isfinite(e0) or e0 < 0.0:
        raise ValueError(f"e0 must be non-negative, got {e0}")
    for name, value in (("e", e), ("ehat", ehat), ("etilde", etilde)):
        if abs(value) > e0 + SLACK_TOL:
            raise ValueError(f"|{name}|={abs(value)} exceeds e0={e0}")
    named = (("e", e), ("ehat", ehat), ("etilde", etilde))
    clauses = []
    for (na, va), (nb, vb), (nc, vc) in (
        (named[0], named[1], named[2]),
        (named[0], named[2], named[1]),
        (named[2], named[1], named[0]),
    ):
        for sign, s in ((+1, "+"), (-1, "-")):
            clauses.append(make_clause(
                f"|{na} {s} {nb}| <= 3 e0 - |{nc}|",
                abs(va + sign * vb), 3.0 * e0 - abs(vc)))
    return make_report("theorem3", clauses)


@dataclass(frozen=True)
class CompatibilityResult:
    compatible: bool
    failures: tuple[str, ...]
    clause_report: InequalityReport

    def to_dict(self) -> dict:
        return {"compatible": self.compatible,
                "failures": list(self.failures),
                "clause_report": self.clause_report.to_dict()}


def _pair_clause_family(e: float, ehat: float, etilde: float, e0: float) -> InequalityReport:
    named = (("e", e), ("ehat", ehat), ("etilde", etilde))
    clauses = []
    for (na, va), (nb, vb), (nc, vc) in (
        (named[0], named[1], named[2]),
        (named[0], named[2], named[1]),
        (named[2], named[1], named[0]),
    ):
        for sign, s in ((+1, "+"), (-1, "-")):
            clauses.append(make_clause(
                f"|{na} {s} {nb}| <= e0 {s} {nc}",
                abs(va + sign * vb), e0 + sign * vc))
    return make_report("marginal_compatibility", clauses)


def marginals_compatible(f: FuncTable2, fhat: FuncTable2, ftilde: FuncTable2,
                         ) -> CompatibilityResult:
    """Decide whether f(S1,S2), fhat(S1,S3), ftilde(S2,S3) are the three pair
    marginals of one non-negative function of (S1,S2,S3).

    Three independently checked conditions: each table is entrywise
    non-negative; the shared coefficients match (e0 common, e1=ehat1,
    e2=etilde1, ehat2=etilde2); and the pair coefficients satisfy
    |e +- ehat| <= e0 +- etilde together with its two interchanges.
    """
    c, chat, ctilde = expand2(f), expand2(fhat), expand2(ftilde)
    failures = []
    for name, table in (("f", f), ("fhat", fhat), ("ftilde", ftilde)):
        if not table.is_nonnegative():
            failures.append(f"{name} has a negative entry "
                            f"(min {float(np.min(table.values))})")
    for desc, a, b in (
        ("e0 = ehat0", c.e0, chat.e0),
        ("e0 = etilde0", c.e0, ctilde.e0),
        ("e1 = ehat1", c.e1, chat.e1),
        ("e2 = etilde1", c.e2, ctilde.e1),
        ("ehat2 = etilde2", chat.e2, ctilde.e2),
    ):
        if abs(a - b) > MATCH_TOL:
            failures.append(f"coefficient mismatch {desc}: {a} vs {b}")
    report = _pair_clause_family(c.e12, chat.e12, ctilde.e12, c.e0)
    for clause in report.violated_clauses():
        failures.append(f"clause failed: {clause.description} "
                        f"(lhs={clause.lhs}, rhs={clause.rhs})")
    return CompatibilityResult(not failures, tuple(failures), report)


class IncompatibleMarginalsError(ValueError):
    """Raised when three pair tables admit no common non-negative triple table."""

    def __init__(self, failures: tuple[str, ...]):
        super().__init__("; ".join(failures))
        self.failures = failures


@dataclass(frozen=True)
class Reconstruction:
    table: FuncTable3
    e123: float
    e123_interval: tuple[float, float]


def reconstruct_f3(f: FuncTable2, fhat: FuncTable2, ftilde: FuncTable2,
                   ) -> Reconstruction:
    """Build a non-negative three-variable table whose pair marginals are the
    given tables, or raise IncompatibleMarginalsError naming the failed
    condition.

    All coefficients except the triple one are fixed by the marginals.  The
    free triple coefficient is bounded entrywise; it is set to 0 when the
    admissible interval contains 0 and to the interval midpoint otherwise,
    and the interval is returned alongside the table.
    """
    compat = marginals_compatible(f, fhat, ftilde)
    if not compat.compatible:
        raise IncompatibleMarginalsError(compat.failures)
    c, chat, ctilde = expand2(f), expand2(fhat), expand2(ftilde)
    e0, e1, e2, e3 = c.e0, c.e1, c.e2, chat.e2
    e12, e13, e23 = c.e12, chat.e12, ctilde.e12

    lo, hi = -np.inf, np.inf
    for s1, s2, s3 in product((+1.0, -1.0), repeat=3):
        base = (e0 + s1 * e1 + s2 * e2 + s3 * e3
                + s1 * s2 * e12 + s1 * s3 * e13 + s2 * s3 * e23)
        if s1 * s2 * s3 > 0:
            lo = max(lo, -base)
        else:
            hi = min(hi, base)
    if lo > hi + NONNEG_TOL:
        raise IncompatibleMarginalsError(
            (f"empty admissible interval for the triple coefficient "
             f"[{lo}, {hi}]",))
    if lo <= 0.0 <= hi:
        e123 = 0.0
    else:
        e123 = (lo + hi) / 2.0
    table = synth3(ExpansionCoeffs3(e0, e1, e2, e3, e12, e13, e23, e123))
    return Reconstruction(table, e123, (float(lo), float(hi)))


@dataclass(frozen=True)
class LambdaModel:
    """Discrete factorized mixture: weights mu(k) over K parameter points and
    three per-point single-variable expectations in [-1, 1]."""

    weights: np.ndarray
    e_a: np.ndarray
    e_b: np.ndarray
    e_c: np.ndarray

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float)
        if w.ndim != 1 or w.size < 1:
            raise ValueError("weights must be a non-empty 1-d array")
        if np.any(w < -SLACK_TOL):
            raise ValueError("weights must be non-negative")
        if abs(float(w.sum()) - 1.0) > 1e-12:
            raise ValueError(f"weights must sum to 1, got {float(w.sum())}")
        arrays = {"weights": w}
        for name in ("e_a", "e_b", "e_c"):
            e = np.asarray(getattr(self, name), dtype=float)
            if e.shape != w.shape:
                raise ValueError(f"{name} must have the same length as weights")
            if np.any(np.abs(e) > 1.0 + SLACK_TOL):
                raise ValueError(f"{name} entries must lie in [-1, 1]")
            arrays[name] = e
        for name, arr in arrays.items():
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    @property
    def k(self) -> int:
        return self.weights.size


def _single_table(e: np.ndarray) -> np.ndarray:
    # rows: parameter points; columns: S=+1, S=-1
    return np.stack([(1.0 + e) / 2.0, (1.0 - e) / 2.0], axis=1)


def bell_pair_tables(m: LambdaModel) -> tuple[FuncTable2, FuncTable2, FuncTable2]:
    """Weighted sums of products of single-variable tables, pairing
    (e_a, e_b), (e_a, e_c) and (e_b, e_c)."""
    ta, tb, tc = _single_table(m.e_a), _single_table(m.e_b), _single_table(m.e_c)
    w = m.weights

    def pair(u, v):
        return FuncTable2(np.einsum("k,ki,kj->ij", w, u, v))

    return pair(ta, tb), pair(ta, tc), pair(tb, tc)


def bell_triple_table(m: LambdaModel) -> FuncTable3:
    """Weighted sum of triple products; its pair marginals reproduce
    bell_pair_tables."""
    ta, tb, tc = _single_table(m.e_a), _single_table(m.e_b), _single_table(m.e_c)
    return FuncTable3(np.einsum("k,ki,kj,kl->ijl", m.weights, ta, tb, tc))
