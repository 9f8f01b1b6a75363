"""Laboratory-style pair experiment pipeline: time-tagged event generation,
coincidence-window reduction and inequality evaluation on the processed data.

A run produces M event pairs.  Each pair carries outcomes from a configurable
source (a fixed triple distribution projected to the scheduled pair, the
two-spin singlet, or a factorizable threshold model), detection times
t = alpha * period + delay with an optional setting-dependent jitter, and the
local instrument settings.  Post-processing keeps the pairs whose settings
match a requested pair and whose time difference lies within the coincidence
window, then feeds the per-setting correlations to the inequality checks.

A Boole-family failure on windowed pair data is reported as the rejection of
the triples hypothesis for the corresponding convention, never as an
arithmetic or physical impossibility.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .classical import FactorizableModel, sample_pair_arrays, station_orientations
from .datasets import (DichotomicDataset, InequalityReport, check_boole_triple,
                       check_boole_triple_anticorrelated, check_pair_bound,
                       correlation)
from .seeds import spawn_seeds
from .tables import FuncTable3

EVENT_PERIOD = 1.0


@dataclass(frozen=True)
class Setting:
    id: str
    angle: float


@dataclass(frozen=True)
class SettingPair:
    left: Setting
    right: Setting

    @property
    def key(self) -> tuple[str, str]:
        return (self.left.id, self.right.id)


@dataclass(frozen=True)
class TimingModel:
    """Detection delay law: delay = jitter * u * |sin(hidden - setting)|^exponent
    with u ~ U[0,1) per station and event.  Default is zero delay."""

    jitter: float = 0.0
    exponent: float = 0.0

    def __post_init__(self):
        if self.jitter < 0.0:
            raise ValueError("jitter must be non-negative")

    def delays(self, hidden: np.ndarray, setting_angle: float,
               rng: np.random.Generator) -> np.ndarray:
        u = rng.random(hidden.size)
        if self.jitter == 0.0:
            return np.zeros(hidden.size)
        return self.jitter * u * np.abs(np.sin(hidden - setting_angle)) ** self.exponent


@dataclass(frozen=True)
class CoincidenceConfig:
    """Coincidence window W (positive or infinite) and the requested setting
    pair."""

    window: float
    setting_filter: tuple[str, str]

    def __post_init__(self):
        if not (self.window > 0.0):
            raise ValueError("window must be positive (math.inf allowed)")


class TripleProcessSource:
    """Emits pairs by drawing a complete triple from a fixed non-negative
    three-variable table and projecting it onto the scheduled setting pair.
    Setting ids map to tuple slots 1..3."""

    def __init__(self, table: FuncTable3, slots: dict[str, int]):
        if not table.is_nonnegative():
            raise ValueError("triple table must be entrywise non-negative")
        flat = table.values.reshape(-1)
        total = float(flat.sum())
        if total <= 0.0:
            raise ValueError("triple table must have positive mass")
        self.probs = np.clip(flat / total, 0.0, None)
        self.cdf = np.cumsum(self.probs)
        self.cdf[-1] = 1.0
        if sorted(slots.values()) != sorted(set(slots.values())) or \
                any(v not in (1, 2, 3) for v in slots.values()):
            raise ValueError("slots must map setting ids to distinct values in 1..3")
        self.slots = dict(slots)
        signs = np.array([[1, 1, 1], [1, 1, -1], [1, -1, 1], [1, -1, -1],
                          [-1, 1, 1], [-1, 1, -1], [-1, -1, 1], [-1, -1, -1]],
                         dtype=np.int8)
        self.rows = signs

    def draw(self, left: Setting, right: Setting, rng: np.random.Generator,
             count: int):
        idx = np.searchsorted(self.cdf, rng.random(count), side="right")
        triples = self.rows[idx]
        s1 = triples[:, self.slots[left.id] - 1]
        s2 = triples[:, self.slots[right.id] - 1]
        hidden = rng.uniform(0.0, 2.0 * np.pi, count)
        return s1, s2, hidden, hidden


class SingletSource:
    """Emits singlet pairs: P(S1, S2) = (1 - S1 S2 cos(angle_left - angle_right)) / 4."""

    def draw(self, left: Setting, right: Setting, rng: np.random.Generator,
             count: int):
        cos = np.cos(left.angle - right.angle)
        p = np.array([1.0 - cos, 1.0 + cos, 1.0 + cos, 1.0 - cos]) / 4.0
        cdf = np.cumsum(p)
        cdf[-1] = 1.0
        idx = np.searchsorted(cdf, rng.random(count), side="right")
        s1 = np.where(idx < 2, 1, -1).astype(np.int8)
        s2 = np.where(idx % 2 == 0, 1, -1).astype(np.int8)
        hidden = rng.uniform(0.0, 2.0 * np.pi, count)
        return s1, s2, hidden, hidden


class PairModelSource:
    """Emits pairs from a factorizable threshold model; the hidden orientation
    of each station is the model's local source angle."""

    def __init__(self, model: FactorizableModel):
        self.model = model

    def draw(self, left: Setting, right: Setting, rng: np.random.Generator,
             count: int):
        phi, s1, s2 = sample_pair_arrays(self.model, left.angle, right.angle,
                                         rng, count)
        h1, h2 = station_orientations(self.model, phi)
        return s1, s2, h1, h2


@dataclass(frozen=True)
class RawDataset:
    """M time-tagged event pairs, stored column-wise."""

    s1: np.ndarray
    t1: np.ndarray
    id1: tuple[str, ...]
    angle1: np.ndarray
    s2: np.ndarray
    t2: np.ndarray
    id2: tuple[str, ...]
    angle2: np.ndarray

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("raw dataset must contain at least one pair")
        for name in ("s1", "t1", "angle1", "s2", "t2", "angle2"):
            arr = getattr(self, name)
            arr.setflags(write=False)

    @property
    def m(self) -> int:
        return self.s1.size

    def write_csv(self, path: str | Path) -> None:
        """One line per event record (two per pair):
        alpha,station,s,t,setting_id,angle."""
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["alpha", "station", "s", "t", "setting_id", "angle"])
            for i in range(self.m):
                writer.writerow([i + 1, 1, int(self.s1[i]), repr(float(self.t1[i])),
                                 self.id1[i], repr(float(self.angle1[i]))])
                writer.writerow([i + 1, 2, int(self.s2[i]), repr(float(self.t2[i])),
                                 self.id2[i], repr(float(self.angle2[i]))])


def generate_events(source, schedule: list[SettingPair], m: int,
                    timing: TimingModel, seed: int,
                    schedule_mode: str = "round_robin") -> RawDataset:
    """Generate M event pairs.  Settings cycle round-robin through the
    schedule or are chosen per event at random (seeded); outcomes, hidden
    orientations and delays are drawn from per-pair child generators derived
    from the master seed, so equal seeds give bit-identical datasets."""
    if m < 1:
        raise ValueError("need at least one event pair")
    if not schedule:
        raise ValueError("schedule must not be empty")
    if schedule_mode not in ("round_robin", "random"):
        raise ValueError(f"unknown schedule mode {schedule_mode!r}")
    n_pairs = len(schedule)
    children = spawn_seeds(seed, n_pairs + 1)
    if schedule_mode == "round_robin":
        assignment = np.arange(m) % n_pairs
    else:
        assignment = np.random.default_rng(children[-1]).integers(0, n_pairs, m)

    s1 = np.empty(m, dtype=np.int8)
    s2 = np.empty(m, dtype=np.int8)
    t1 = np.empty(m)
    t2 = np.empty(m)
    id1 = np.empty(m, dtype=object)
    id2 = np.empty(m, dtype=object)
    angle1 = np.empty(m)
    angle2 = np.empty(m)
    for p, pair in enumerate(schedule):
        mask = assignment == p
        count = int(mask.sum())
        if count == 0:
            continue
        rng = np.random.default_rng(children[p])
        a1, a2, h1, h2 = source.draw(pair.left, pair.right, rng, count)
        d1 = timing.delays(h1, pair.left.angle, rng)
        d2 = timing.delays(h2, pair.right.angle, rng)
        alphas = np.nonzero(mask)[0]
        s1[mask] = a1
        s2[mask] = a2
        t1[mask] = (alphas + 1) * EVENT_PERIOD + d1
        t2[mask] = (alphas + 1) * EVENT_PERIOD + d2
        id1[mask] = pair.left.id
        id2[mask] = pair.right.id
        angle1[mask] = pair.left.angle
        angle2[mask] = pair.right.angle
    return RawDataset(s1, t1, tuple(id1.tolist()), angle1,
                      s2, t2, tuple(id2.tolist()), angle2)


def coincidence_filter(raw: RawDataset, cfg: CoincidenceConfig,
                       ) -> DichotomicDataset | None:
    """Keep the pairs whose settings match the filter and whose detection
    times differ by at most the window.  Returns None when nothing survives
    (the explicit empty-selection signal)."""
    want_left, want_right = cfg.setting_filter
    mask = np.fromiter(((l == want_left and r == want_right)
                        for l, r in zip(raw.id1, raw.id2)), bool, raw.m)
    mask &= np.abs(raw.t1 - raw.t2) <= cfg.window
    if not np.any(mask):
        return None
    return DichotomicDataset(np.column_stack([raw.s1[mask], raw.s2[mask]]))


@dataclass(frozen=True)
class ThreeSettingsReport:
    angles: dict[str, float]
    window: float
    counts: dict[str, int]
    correlations: dict[str, float] | None
    empty_pairs: tuple[str, ...]
    pair_bound: InequalityReport | None
    boole_direct: InequalityReport | None
    boole_anticorrelated: InequalityReport | None
    verdict_direct: str | None
    verdict_anticorrelated: str | None

    def to_dict(self) -> dict:
        return {
            "angles": dict(self.angles),
            "window": self.window,
            "counts": dict(self.counts),
            "correlations": dict(self.correlations) if self.correlations else None,
            "empty_pairs": list(self.empty_pairs),
            "pair_bound": self.pair_bound.to_dict() if self.pair_bound else None,
            "boole_direct": self.boole_direct.to_dict() if self.boole_direct else None,
            "boole_anticorrelated": (self.boole_anticorrelated.to_dict()
                                     if self.boole_anticorrelated else None),
            "verdict_direct": self.verdict_direct,
            "verdict_anticorrelated": self.verdict_anticorrelated,
        }


def run_three_settings(angle_a: float, angle_b: float, angle_c: float,
                       source, timing: TimingModel, m: int, window: float,
                       seed: int, schedule_mode: str = "round_robin",
                       ) -> ThreeSettingsReport:
    """Schedule the setting pairs (a,b), (a,c), (b,c), generate M event
    pairs, window-filter each setting pair and evaluate the inequality
    families on the three filtered correlations.

    The pair-bound check holds for any three correlations.  The two Boole
    checks test the triples hypothesis in the direct and in the
    anti-correlated variable convention; a failure means that hypothesis is
    rejected for the data, nothing more.
    """
    a = Setting("a", angle_a)
    b = Setting("b", angle_b)
    c = Setting("c", angle_c)
    schedule = [SettingPair(a, b), SettingPair(a, c), SettingPair(b, c)]
    raw = generate_events(source, schedule, m, timing, seed, schedule_mode)
    counts = {}
    corr = {}
    empties = []
    for pair in schedule:
        key = "".join(pair.key)
        ds = coincidence_filter(raw, CoincidenceConfig(window, pair.key))
        if ds is None:
            counts[key] = 0
            empties.append(key)
        else:
            counts[key] = ds.m
            corr[key] = correlation(ds, 1, 2).value
    if empties:
        return ThreeSettingsReport(
            {"a": angle_a, "b": angle_b, "c": angle_c}, window, counts, None,
            tuple(empties), None, None, None, None, None)
    f_ab, f_ac, f_bc = corr["ab"], corr["ac"], corr["bc"]
    direct = check_boole_triple(f_ab, f_ac, f_bc)
    anti = check_boole_triple_anticorrelated(f_ab, f_ac, f_bc)

    def verdict(report: InequalityReport) -> str:
        return "consistent with triples" if report.all_satisfied \
            else "triples hypothesis rejected"

    return ThreeSettingsReport(
        {"a": angle_a, "b": angle_b, "c": angle_c}, window, counts, corr, (),
        check_pair_bound(f_ab, f_ac, f_bc), direct, anti,
        verdict(direct), verdict(anti))
