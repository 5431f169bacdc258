"""Wavelet candidate selection.

The procedure enumerates a grid of (family, order, level) candidates, screens
each level by normality of the reconstructed detail series (a trend extractor
should stop before the removed details look like Gaussian noise that has been
over-stripped from structure — levels whose own details are already implausible
under normality at `min_p` are dropped), screens levels by coefficient entropy,
prunes near-duplicate core series by correlation, and labels the survivors'
shapes.  All steps are deterministic; an audit row records every candidate's
numbers and fate.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DegenerateSeries,
    InvalidThreshold,
    LevelCapExceeded,
    TooFewObservations,
)
from .series import MonthlySeries
from .stats import count_turning_points, jarque_bera
from .wavelet import (
    WaveletSpec,
    build_filter_bank,
    decompose,
    entropy,
    reconstruct_approximation,
    reconstruct_details,
)

SHAPES = ("smooth", "pointed", "plateaued")


@dataclass
class SelectionCandidate:
    spec: WaveletSpec
    jb_pvalues: list = field(default_factory=list)
    entropies: dict = field(default_factory=dict)
    status: str = "kept"
    shape: str | None = None
    notes: list = field(default_factory=list)

    @property
    def name(self) -> str:
        return self.spec.name


def enumerate_candidates(families=("haar", "daubechies", "symlet"),
                         max_order: int = 10, max_level: int = 10,
                         symlet_max_order: int | None = 8) -> list[SelectionCandidate]:
    """Cross product of family x order x level, deduplicated by filter bank.

    haar, db1 and sym1 share one filter bank, so only the first family listed
    keeps its order-1 candidates.  Symlets default to a smaller maximum order
    than the Daubechies range (8 vs 10).
    """
    if max_level > 10:
        raise LevelCapExceeded(f"max_level {max_level} exceeds the cap of 10")
    out: list[SelectionCandidate] = []
    seen: set[tuple] = set()
    for family in families:
        if family == "haar":
            orders = [1]
        elif family == "symlet" and symlet_max_order is not None:
            orders = range(1, symlet_max_order + 1)
        else:
            orders = range(1, max_order + 1)
        for order in orders:
            for level in range(1, max_level + 1):
                spec = WaveletSpec(family, order, level)
                key = spec.canonical_filter_key() + (level,)
                if key in seen:
                    continue
                seen.add(key)
                out.append(SelectionCandidate(spec=spec))
    return out


def detail_pvalues(parent: MonthlySeries, family: str, order: int,
                   max_level: int = 10) -> list[float]:
    """JB p-values of the reconstructed details D_1..D_max_level.

    The pyramid nests, so one level-max decomposition yields every level's
    details; the result can be shared by all level-candidates of a wavelet.
    A degenerate detail series (constant — short blocky wavelets at depths
    past the signal's content reconstruct bit-identical values) has no
    defined JB p-value; it is recorded as NaN, which the keep rule
    ``p > min_p`` fails.
    """
    dec = decompose(parent.values, WaveletSpec(family, order, max_level))
    out = []
    for j in range(1, max_level + 1):
        try:
            out.append(jarque_bera(reconstruct_details(dec, j)).p_value)
        except DegenerateSeries:
            out.append(float("nan"))
    return out


def entropy_profile(parent: MonthlySeries, family: str, order: int,
                    max_level: int = 10) -> dict:
    """Both entropies of the concatenated coefficient vector per level.

    The vector is normalized to unit energy first, so the profile measures
    how concentrated the representation is rather than how large the data
    happens to be — without this the percent-scale of inflation drives the
    raw entropy by orders of magnitude per level and the screening tolerance
    loses all meaning.
    """
    profile = {"shannon": [], "log_energy": []}
    for j in range(1, max_level + 1):
        dec = decompose(parent.values, WaveletSpec(family, order, j))
        coeffs = np.concatenate([dec.approx] + dec.details[::-1])
        norm = np.sqrt(np.sum(coeffs * coeffs))
        if norm > 0:
            coeffs = coeffs / norm
        for k in profile:
            profile[k].append(entropy(coeffs, k))
    return profile


def screen_by_jb(parent: MonthlySeries, candidate: SelectionCandidate,
                 min_p: float = 0.01, screen_next_level: bool = False,
                 pvalues=None) -> SelectionCandidate:
    """Screen a candidate level by detail normality.

    Default rule: a candidate at level i is kept when p(D_i) > min_p.  With
    `screen_next_level` the threshold is applied to the next level's details
    instead (keep level i when p(D_{i+1}) > min_p; at the level-10 cap the own
    details are used).  Both readings are exposed because the stopping
    heuristic can be phrased against either level; the default tests the
    candidate's own details.
    """
    if not 0 < min_p < 1:
        raise InvalidThreshold(f"min_p must be in (0, 1), got {min_p}")
    level = candidate.spec.level
    probe_level = min(level + 1, 10) if screen_next_level else level
    if pvalues is None:
        pvalues = detail_pvalues(parent, candidate.spec.family, candidate.spec.order,
                                 probe_level)
    candidate.jb_pvalues = list(pvalues)
    tested = pvalues[probe_level - 1] if screen_next_level else pvalues[level - 1]
    if not tested > min_p:
        candidate.status = "failed_jb"
    return candidate


def screen_by_entropy(parent: MonthlySeries, candidate: SelectionCandidate,
                      kind: str = "shannon", tolerance: float = 0.10,
                      max_level: int = 10, profile=None) -> SelectionCandidate:
    """Screen a candidate level by coefficient entropy across levels.

    Entropy is computed on the concatenated coefficient vector (approximation
    plus all details) of the same wavelet at each level 1..max_level; the
    candidate's level is permissible when its entropy lies within `tolerance`
    of the range above the per-wavelet minimum.
    """
    if profile is None:
        profile = entropy_profile(parent, candidate.spec.family,
                                  candidate.spec.order, max_level)
    candidate.entropies = profile
    values = np.array(profile[kind])
    lo, hi = values.min(), values.max()
    cutoff = lo + tolerance * (hi - lo)
    if candidate.status == "kept" and values[candidate.spec.level - 1] > cutoff:
        candidate.status = "failed_entropy"
    return candidate


def prune_similar(kept: list[SelectionCandidate], parent: MonthlySeries,
                  threshold: float = 0.995) -> list[SelectionCandidate]:
    """Greedy correlation pruning of near-duplicate core series.

    Candidates are visited in (family, order, level) order; one is pruned when
    its core series has Pearson correlation above `threshold` with any core
    already retained.  The first candidate in order is never pruned.
    """
    if not 0 < threshold < 1:
        raise InvalidThreshold(f"threshold must be in (0, 1), got {threshold}")
    family_rank = {"haar": 0, "daubechies": 1, "symlet": 2}
    ordered = sorted(
        [c for c in kept if c.status == "kept"],
        key=lambda c: (family_rank[c.spec.family], c.spec.order, c.spec.level),
    )
    retained: list[SelectionCandidate] = []
    cores: list[np.ndarray] = []
    for cand in ordered:
        dec = decompose(parent.values, cand.spec)
        core = reconstruct_approximation(dec, cand.spec.level)
        dup = False
        for other in cores:
            r = np.corrcoef(core, other)[0, 1]
            if r > threshold:
                dup = True
                break
        if dup:
            cand.status = "pruned_similar"
        else:
            retained.append(cand)
            cores.append(core)
    return retained


def classify_shape(core: MonthlySeries, parent: MonthlySeries) -> str:
    """Label a core series smooth, pointed, or plateaued.

    plateaued: more than 30% of first differences are exactly zero (decimated
    approximations of blocky wavelets repeat values bit-for-bit); pointed: the
    mean absolute second difference exceeds half the parent's; else smooth.
    The thresholds are heuristics and are recorded in report metadata.
    """
    if len(core) < 24:
        raise TooFewObservations(f"classify_shape needs >= 24 points, got {len(core)}")
    d1 = np.diff(core.values)
    if np.mean(d1 == 0.0) > 0.30:
        return "plateaued"
    d2 = np.abs(np.diff(core.values, 2)).mean()
    ref = np.abs(np.diff(parent.values, 2)).mean()
    if d2 > 0.5 * ref:
        return "pointed"
    return "smooth"


def run_selection(parent: MonthlySeries, families=("haar", "daubechies", "symlet"),
                  max_order: int = 10, max_level: int = 10,
                  symlet_max_order: int | None = 8, min_p: float = 0.01,
                  screen_next_level: bool = False, entropy_kind: str = "shannon",
                  entropy_tolerance: float = 0.10,
                  similarity_threshold: float = 0.995) -> list[SelectionCandidate]:
    """Full selection pass; returns all candidates with final statuses."""
    candidates = enumerate_candidates(families, max_order, max_level, symlet_max_order)
    pvalue_cache: dict[tuple, list] = {}
    profile_cache: dict[tuple, dict] = {}
    probe_cap = 10 if screen_next_level else max_level
    for cand in candidates:
        key = cand.spec.canonical_filter_key()
        if key not in pvalue_cache:
            pvalue_cache[key] = detail_pvalues(parent, *key, max_level=probe_cap)
            profile_cache[key] = entropy_profile(parent, *key, max_level=max_level)
        screen_by_jb(parent, cand, min_p, screen_next_level, pvalues=pvalue_cache[key])
        screen_by_entropy(parent, cand, entropy_kind, entropy_tolerance, max_level,
                          profile=profile_cache[key])
    survivors = prune_similar(candidates, parent, similarity_threshold)
    for cand in survivors:
        dec = decompose(parent.values, cand.spec)
        core = MonthlySeries(parent.start, reconstruct_approximation(dec, cand.spec.level))
        cand.shape = classify_shape(core, parent)
    return candidates


def audit_rows(candidates: list[SelectionCandidate]) -> list[str]:
    """One tab-separated line per candidate for the selection audit file."""
    rows = []
    for c in candidates:
        jb = ",".join(f"{p:.6g}" for p in c.jb_pvalues)
        ent_s = ",".join(f"{e:.6g}" for e in c.entropies.get("shannon", []))
        ent_l = ",".join(f"{e:.6g}" for e in c.entropies.get("log_energy", []))
        rows.append(
            "\t".join([c.name, jb or "-", ent_s or "-", ent_l or "-", c.status,
                       c.shape or "-"])
        )
    return rows
