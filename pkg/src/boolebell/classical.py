"""Classical scenarios that appear to violate Boole/Bell-type bounds.

Two engines:

* An allergy-testing story: outcomes depend on the examination city and the
  day parity through a fixed 18-entry lookup.  Collected as triples (one
  patient type per city) the pair-product sum averages to exactly -1, the
  arithmetic bound.  Collected as pairs by two doctors who drop the city
  label it averages to exactly -3, an apparent violation whose cause is the
  discarded label, not any physics.

* A factorizable hidden-variable model: the source draws an angle phi
  uniformly and a threshold pair (r, r'); each station reports the sign of
  cos(phi - setting) - threshold.  Three threshold laws are implemented:
  independent uniform thresholds with an anti-aligned source (station 2 sees
  orientation phi + pi), identical thresholds (r' = r), and opposite
  thresholds (r' = -r).  All three reproduce the cos^2 single-station law
  with respect to the station's local orientation.  The opposite-threshold
  law violates the Bell-type clauses for anti-correlated conventions while
  still satisfying the CHSH bound.

Setting angles are kept as raw reals and never reduced modulo 2 pi.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations_with_replacement
from typing import Iterable, Literal

import numpy as np

from .datasets import (DichotomicDataset, check_boole_triple,
                       check_boole_triple_anticorrelated)
from .reports import InequalityReport

Birthplace = Literal["a", "b", "c"]
MuKind = Literal["uniform", "delta_equal", "delta_opposite"]

# lookup[(birthplace, city, parity)] -> outcome
STANDARD_ALLERGY_TABLE: dict[tuple[str, int, str], int] = {
    ("a", 1, "even"): +1, ("a", 2, "even"): +1, ("a", 3, "even"): +1,
    ("b", 1, "even"): +1, ("b", 2, "even"): -1, ("b", 3, "even"): +1,
    ("c", 1, "even"): -1, ("c", 2, "even"): -1, ("c", 3, "even"): -1,
    ("a", 1, "odd"): -1, ("a", 2, "odd"): -1, ("a", 3, "odd"): -1,
    ("b", 1, "odd"): -1, ("b", 2, "odd"): +1, ("b", 3, "odd"): -1,
    ("c", 1, "odd"): +1, ("c", 2, "odd"): +1, ("c", 3, "odd"): +1,
}


@dataclass(frozen=True)
class AllergyScenario:
    """Outcome lookup keyed by (birthplace, city, day parity)."""

    lookup: dict = field(default_factory=lambda: dict(STANDARD_ALLERGY_TABLE))

    def __post_init__(self):
        for o in "abc":
            for l in (1, 2, 3):
                for parity in ("even", "odd"):
                    v = self.lookup.get((o, l, parity))
                    if v not in (+1, -1):
                        raise ValueError(f"missing or invalid entry ({o}, {l}, {parity})")

    def outcome(self, birthplace: str, city: int, day: int) -> int:
        if birthplace not in ("a", "b", "c"):
            raise ValueError(f"unknown birthplace {birthplace!r}")
        if city not in (1, 2, 3):
            raise ValueError(f"unknown city {city}")
        parity = "even" if day % 2 == 0 else "odd"
        return self.lookup[(birthplace, city, parity)]


def allergy_outcome(birthplace: str, city: int, day: int,
                    scenario: AllergyScenario | None = None) -> int:
    """Test outcome for a patient of the given birthplace examined in the
    given city on the given day; keyed by day parity."""
    return (scenario or AllergyScenario()).outcome(birthplace, city, day)


def _day_schedule(n_days: int, seed: int | None) -> Iterable[int]:
    if n_days < 1:
        raise ValueError("need at least one day")
    if seed is None:
        return range(1, n_days + 1)  # deterministic even/odd alternation
    rng = np.random.default_rng(seed)
    return (int(d) for d in rng.integers(1, 3, size=n_days))  # random parity


def allergy_gamma_triples(n_days: int, scenario: AllergyScenario | None = None,
                          seed: int | None = None) -> float:
    """Average of A_a^1 A_b^2 + A_a^1 A_c^3 + A_b^2 A_c^3 over the schedule:
    each doctor examines one patient type in one city, so each day yields a
    genuine triple and the average is bounded below by -1."""
    sc = scenario or AllergyScenario()
    total = 0.0
    count = 0
    for day in _day_schedule(n_days, seed):
        a1 = sc.outcome("a", 1, day)
        b2 = sc.outcome("b", 2, day)
        c3 = sc.outcome("c", 3, day)
        total += a1 * b2 + a1 * c3 + b2 * c3
        count += 1
    return total / count


def allergy_gamma_pairs(n_days: int, scenario: AllergyScenario | None = None,
                        seed: int | None = None) -> float:
    """Average of A_a^1 A_b^2 + A_a^1 A_c^2 + A_b^1 A_c^2 over the schedule:
    two doctors examine two patient types each and drop the city label, so
    the six factors are no longer three shared variables and the -1 bound is
    not derivable.  The standard table gives exactly -3."""
    sc = scenario or AllergyScenario()
    total = 0.0
    count = 0
    for day in _day_schedule(n_days, seed):
        a1 = sc.outcome("a", 1, day)
        b1 = sc.outcome("b", 1, day)
        b2 = sc.outcome("b", 2, day)
        c2 = sc.outcome("c", 2, day)
        total += a1 * b2 + a1 * c2 + b1 * c2
        count += 1
    return total / count


@dataclass(frozen=True)
class FactorizableModel:
    """Threshold-detection pair model, selected by the threshold law."""

    mu_kind: MuKind

    def __post_init__(self):
        if self.mu_kind not in ("uniform", "delta_equal", "delta_opposite"):
            raise ValueError(f"unknown mu_kind {self.mu_kind!r}")


def sample_pair_arrays(model: FactorizableModel, a: float, b: float,
                       rng: np.random.Generator, count: int,
                       ) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Vectorized draw of (phi, S, S') for `count` emissions.

    phi ~ U[0, 2pi); r ~ U[-1, 1]; S = sign(cos(phi - a) - r).  Station 2:
    identical thresholds use r' = r, opposite thresholds r' = -r, both with
    orientation phi; the uniform law draws an independent r' and the source
    is anti-aligned, so station 2 responds to orientation phi + pi.
    """
    if count < 1:
        raise ValueError("need at least one sample")
    phi = rng.uniform(0.0, 2.0 * np.pi, count)
    r = rng.uniform(-1.0, 1.0, count)
    s1 = np.where(np.cos(phi - a) - r >= 0.0, 1, -1).astype(np.int8)
    if model.mu_kind == "uniform":
        r2 = rng.uniform(-1.0, 1.0, count)
        s2 = np.where(np.cos(phi + np.pi - b) - r2 >= 0.0, 1, -1).astype(np.int8)
    elif model.mu_kind == "delta_equal":
        s2 = np.where(np.cos(phi - b) - r >= 0.0, 1, -1).astype(np.int8)
    else:  # delta_opposite
        s2 = np.where(np.cos(phi - b) + r >= 0.0, 1, -1).astype(np.int8)
    return phi, s1, s2


def station_orientations(model: FactorizableModel, phi: np.ndarray,
                         ) -> tuple[np.ndarray, np.ndarray]:
    """Local source orientation seen by each station for a batch of events."""
    if model.mu_kind == "uniform":
        return phi, phi + np.pi
    return phi, phi


def sample_pair(model: FactorizableModel, a: float, b: float,
                seed: int, count: int) -> DichotomicDataset:
    """Seeded pair dataset drawn from the model at settings (a, b)."""
    rng = np.random.default_rng(seed)
    _, s1, s2 = sample_pair_arrays(model, a, b, rng, count)
    return DichotomicDataset(np.column_stack([s1, s2]))


def analytic_correlation(model: FactorizableModel, a: float, b: float) -> float:
    """Exact pair correlation E(a, b) of the model.

    uniform:        -cos(a - b) / 2
    delta_equal:    1 - (4/pi) |sin((a - b) / 2)|
    delta_opposite: (4/pi) |cos((a - b) / 2)| - 1
    """
    if not (np.isfinite(a) and np.isfinite(b)):
        raise ValueError("angles must be finite")
    d = a - b
    if model.mu_kind == "uniform":
        return float(-np.cos(d) / 2.0)
    if model.mu_kind == "delta_equal":
        return float(1.0 - (4.0 / np.pi) * abs(np.sin(d / 2.0)))
    return float((4.0 / np.pi) * abs(np.cos(d / 2.0)) - 1.0)


def common_parameter_fit(model: FactorizableModel, a: float, b: float, c: float):
    """Search for a shared-parameter product representation of the three pair
    distributions at settings (a,b), (a,c), (b,c).

    A representation with one parameter shared across all three setting pairs
    exists exactly when one joint three-variable distribution has the three
    pair tables as marginals (take the outcome triple itself as the
    parameter), so the search reduces to the marginal-compatibility
    feasibility check.  The identical-threshold law always admits one; the
    opposite-threshold law fails at suitable angles, showing that its pairing
    of thresholds cannot be rewritten with a single shared parameter.
    """
    from .tables import ExpansionCoeffs2, marginals_compatible, synth2

    tabs = [synth2(ExpansionCoeffs2(1.0, 0.0, 0.0, analytic_correlation(model, x, y)))
            for x, y in ((a, b), (a, c), (b, c))]
    return marginals_compatible(*tabs)


@dataclass(frozen=True)
class WorstWitness:
    angles: tuple[float, ...]
    clause: str
    lhs: float
    rhs: float
    slack: float

    def to_dict(self) -> dict:
        return {"angles": list(self.angles), "clause": self.clause,
                "lhs": self.lhs, "rhs": self.rhs, "slack": self.slack}


@dataclass(frozen=True)
class SweepSummary:
    mu_kind: str
    n_triples: int
    bell_violations: int
    worst_bell: WorstWitness | None
    boole_violations: int
    worst_boole: WorstWitness | None
    n_quadruples: int
    chsh_violations: int
    chsh_max: float
    worst_chsh: WorstWitness | None

    def to_dict(self) -> dict:
        return {
            "mu_kind": self.mu_kind,
            "n_triples": self.n_triples,
            "bell_violations": self.bell_violations,
            "worst_bell": self.worst_bell.to_dict() if self.worst_bell else None,
            "boole_violations": self.boole_violations,
            "worst_boole": self.worst_boole.to_dict() if self.worst_boole else None,
            "n_quadruples": self.n_quadruples,
            "chsh_violations": self.chsh_violations,
            "chsh_max": self.chsh_max,
            "worst_chsh": self.worst_chsh.to_dict() if self.worst_chsh else None,
        }


def _scan_family(report: InequalityReport, angles, best: WorstWitness | None,
                 ) -> tuple[int, WorstWitness | None]:
    violated = 0
    for cl in report.clauses:
        if not cl.satisfied:
            violated = 1
        if best is None or cl.slack < best.slack:
            best = WorstWitness(tuple(float(x) for x in angles),
                                cl.description, cl.lhs, cl.rhs, cl.slack)
    return violated, best


def model_inequality_sweep(model: FactorizableModel, grid: Iterable[float],
                           chsh: bool = True) -> SweepSummary:
    """Evaluate, for every angle triple on the grid, the Bell-type clauses
    |E(a,b) +- E(a,c)| <= 1 -+ E(b,c) (anti-correlated convention, the form
    relevant to pair experiments mimicking a spin singlet) together with the
    direct Boole family, and for every quadruple the CHSH combination
    E(a,b) - E(a,c) + E(d,b) + E(d,c)."""
    angles = [float(x) for x in grid]
    if not angles:
        raise ValueError("grid must contain at least one angle")

    def e(x, y):
        return analytic_correlation(model, x, y)

    n_triples = 0
    bell_count = 0
    boole_count = 0
    worst_bell: WorstWitness | None = None
    worst_boole: WorstWitness | None = None
    for a, b, c in combinations_with_replacement(angles, 3):
        n_triples += 1
        eab, eac, ebc = e(a, b), e(a, c), e(b, c)
        v, worst_bell = _scan_family(
            check_boole_triple_anticorrelated(eab, eac, ebc), (a, b, c), worst_bell)
        bell_count += v
        v, worst_boole = _scan_family(
            check_boole_triple(eab, eac, ebc), (a, b, c), worst_boole)
        boole_count += v

    n_quads = 0
    chsh_count = 0
    chsh_max = 0.0
    worst_chsh: WorstWitness | None = None
    if chsh:
        arr = np.array(angles)
        # pairwise correlations on the grid, vectorized per kind
        diff = arr[:, None] - arr[None, :]
        if model.mu_kind == "uniform":
            emat = -np.cos(diff) / 2.0
        elif model.mu_kind == "delta_equal":
            emat = 1.0 - (4.0 / np.pi) * np.abs(np.sin(diff / 2.0))
        else:
            emat = (4.0 / np.pi) * np.abs(np.cos(diff / 2.0)) - 1.0
        n = len(angles)
        # emat is symmetric (every kind is an even function of a - b)
        combo = (emat[:, :, None, None] - emat[:, None, :, None]
                 + emat[None, :, None, :] + emat[None, None, :, :])
        # combo[a, b, c, d] = E(a,b) - E(a,c) + E(d,b) + E(d,c)
        n_quads = n ** 4
        abs_combo = np.abs(combo)
        chsh_count = int(np.count_nonzero(abs_combo > 2.0 + 1e-12))
        chsh_max = float(abs_combo.max())
        ia, ib, ic, id_ = np.unravel_index(int(abs_combo.argmax()), combo.shape)
        worst_chsh = WorstWitness(
            (angles[ia], angles[ib], angles[ic], angles[id_]),
            "|E(a,b) - E(a,c) + E(d,b) + E(d,c)| <= 2",
            chsh_max, 2.0, 2.0 - chsh_max)
    return SweepSummary(model.mu_kind, n_triples, bell_count, worst_bell,
                        boole_count, worst_boole, n_quads, chsh_count,
                        chsh_max, worst_chsh)
