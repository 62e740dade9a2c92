"""Randomized sweep harness for the bound checkers.

Generates seeded state ensembles, computes the measure values each bound
needs, filters states by the bound's hypothesis conditions, and aggregates
violation counts and tightness statistics.  Filtering precedes checking:
states whose hypotheses fail are counted as tested but never judged.

Systems:

* ``tripartite_pure``          Haar-random three-qubit pure states, checked
                               against the tripartite bounds.
* ``four_qubit_pure``          Haar-random three-qubit states extended by a
                               fourth qubit in |0>, checked against the
                               two-step chained bounds.  The product fourth
                               qubit keeps every tail measure computable with
                               two-qubit formulas (tracing an uncorrelated
                               pure qubit changes no entanglement value).
* ``two_qubit_mixed_rank_r``   random mixed two-qubit states of the
                               configured rank; checks the measure ordering
                               N <= C <= C_a pointwise.

The per-state slack parameters default to the extreme admissible values
(largest u for monogamy, smallest for polygamy, smallest h in both modes),
where the bounds are tightest.  ``tightness_gain`` is the mean of
baseline-bound margin minus new-bound margin over the judged reports, which
is nonnegative in both modes exactly when the new bound is pointwise tighter
than the classic (u = 1, h = 1) coefficient.

State generation uses numpy's Philox generator (counter-based, documented,
reproducible across platforms); identical configs give identical summaries.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import LengthMismatchError, UnsupportedSystemMeasurePairError
from .inequalities import (
    MARGIN_TOL,
    MONOGAMY,
    BoundSpec,
    ChainSpec,
    SPLIT_ON_B,
    SPLIT_ON_C,
    bound_factor,
    chain_coefficients,
    chain_monogamy,
    chain_polygamy,
    check_monogamy_tripartite,
    check_polygamy_tripartite,
)
from .measures import (
    MEASURE_PROFILES,
    concurrence_assist_2q,
    concurrence_mixed_2q,
    concurrence_pure,
    negativity,
    negativity_pure,
    tripartite_triple,
)
from .qstate import (
    DensityMatrix,
    PureState,
    density_from_pure,
    haar_random_mixed,
    haar_random_pure,
    partial_trace,
)

SYSTEMS = ("tripartite_pure", "four_qubit_pure", "two_qubit_mixed_rank_r")


@dataclass(frozen=True)
class SweepConfig:
    """Everything a sweep needs; hashable and reproducible.

    ``h_override``/``u_override`` replace the per-state extreme slack values
    (for chains they apply to the first step).  ``fixture_states`` bypasses
    random generation, e.g. to inject a known state.
    """

    n_states: int
    seed: int
    system: str
    measure: str
    exponent_grid: tuple[float, ...]
    base_exponent: float
    rank: int = 2
    h_override: float | None = None
    u_override: float | None = None
    fixture_states: tuple[PureState, ...] | None = None

    def __post_init__(self):
        if self.n_states < 1:
            raise LengthMismatchError(f"n_states must be >= 1, got {self.n_states}")
        if self.system not in SYSTEMS:
            raise UnsupportedSystemMeasurePairError(f"unknown system {self.system!r}")
        profile = MEASURE_PROFILES.get(self.measure)
        if profile is None:
            raise UnsupportedSystemMeasurePairError(f"unknown measure {self.measure!r}")
        grid = tuple(float(x) for x in self.exponent_grid)
        object.__setattr__(self, "exponent_grid", grid)
        if self.system != "two_qubit_mixed_rank_r":
            if not grid:
                raise LengthMismatchError("exponent grid must be nonempty")
            if not profile.admits_base(self.base_exponent):
                raise UnsupportedSystemMeasurePairError(
                    f"base exponent {self.base_exponent} is outside the admissible "
                    f"set of measure {self.measure!r}"
                )
            for a in grid:
                ok = (0.0 <= a <= self.base_exponent
                      if profile.mode == MONOGAMY
                      else a >= self.base_exponent)
                if not ok:
                    raise UnsupportedSystemMeasurePairError(
                        f"exponent {a} is outside the admissible set for "
                        f"{profile.mode} with base {self.base_exponent}"
                    )
        if self.fixture_states is not None:
            if len(self.fixture_states) != self.n_states:
                raise LengthMismatchError(
                    f"{len(self.fixture_states)} fixture states but n_states = {self.n_states}"
                )


@dataclass(frozen=True)
class SweepSummary:
    """Aggregated sweep outcome; margins are reduced over judged reports only."""

    tested: int
    hypothesis_hits: int
    violations: int
    min_margin: float
    mean_margin: float
    tightness_gain: float

    def to_dict(self) -> dict:
        def _num(x: float):
            return None if math.isnan(x) else x

        return {
            "tested": self.tested,
            "hypothesis_hits": self.hypothesis_hits,
            "violations": self.violations,
            "min_margin": _num(self.min_margin),
            "mean_margin": _num(self.mean_margin),
            "tightness_gain": _num(self.tightness_gain),
        }


def _thread_count() -> int:
    raw = os.environ.get("MONOLAB_THREADS", "")
    try:
        n = int(raw)
    except ValueError:
        return 1
    return max(1, n)


def _map_in_order(fn, items):
    threads = _thread_count()
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(fn, items))
    return [fn(x) for x in items]


def _generate_states(cfg: SweepConfig):
    if cfg.fixture_states is not None:
        return list(cfg.fixture_states)
    rng = np.random.Generator(np.random.Philox(cfg.seed))
    states = []
    for _ in range(cfg.n_states):
        if cfg.system == "tripartite_pure":
            states.append(haar_random_pure((2, 2, 2), rng))
        elif cfg.system == "four_qubit_pure":
            base = haar_random_pure((2, 2, 2), rng)
            amps = np.kron(base.amps, np.array([1.0, 0.0], dtype=np.complex128))
            states.append(PureState(amps, (2, 2, 2, 2)))
        else:
            states.append(haar_random_mixed((2, 2), cfg.rank, rng))
    return states


def _case_for(plain_first: float, plain_second: float) -> tuple[str, float, float]:
    """Pick the split whose conditioned term is the larger pair value."""
    if plain_first <= plain_second:
        return SPLIT_ON_C, plain_first, plain_second
    return SPLIT_ON_B, plain_second, plain_first


def _eval_tripartite(cfg: SweepConfig, profile_mode: str, state: PureState):
    """Return (margins, gains) per exponent, or None when hypotheses fail."""
    base = cfg.base_exponent
    top, ab, ac = tripartite_triple(state, cfg.measure)
    if cfg.measure == "negativity":
        # hypothesis conditions and slack parameters come from the
        # concurrence triple; the bound itself is evaluated on negativities
        cond_top, cond_ab, cond_ac = tripartite_triple(state, "concurrence")
    else:
        cond_top, cond_ab, cond_ac = top, ab, ac

    case, plain_c, cond_c = _case_for(cond_ab, cond_ac)
    if case == SPLIT_ON_C:
        plain_v, cond_v = ab, ac
    else:
        plain_v, cond_v = ac, ab

    if cond_c == 0.0 and plain_c == 0.0:
        # degenerate state: bound short-circuits to margin = lhs (monogamy)
        margins = []
        gains = []
        for a in cfg.exponent_grid:
            lhs = 1.0 if a == 0.0 else top ** a
            if profile_mode == MONOGAMY:
                margins.append(lhs)
            else:
                margins.append(-lhs)
            gains.append(0.0)
        return margins, gains

    top_g = cond_top ** base
    plain_g = plain_c ** base
    cond_g = cond_c ** base

    # extreme defaults are clamped into the legal parameter ranges; the
    # admissibility slacks below absorb the float-rounding difference
    if profile_mode == MONOGAMY:
        if cfg.h_override is not None:
            h = cfg.h_override
        else:
            h = min(1.0, plain_g / cond_g)
        if cfg.u_override is not None:
            u = cfg.u_override
        else:
            u = max(1.0, (top_g - plain_g) / cond_g)
        ok = (
            0.0 <= h <= 1.0
            and u >= 1.0
            and top_g - plain_g - cond_g >= -MARGIN_TOL
            and h * cond_g - plain_g >= -MARGIN_TOL
            and (top_g - plain_g) - u * cond_g >= -MARGIN_TOL
        )
    else:
        if cfg.h_override is not None:
            h = cfg.h_override
        else:
            h = min(1.0, plain_g / cond_g)
        if cfg.u_override is not None:
            u = cfg.u_override
        else:
            u = min(1.0, max(0.0, (top_g - plain_g) / cond_g))
        ok = (
            0.0 <= h <= 1.0
            and 0.0 <= u <= 1.0
            and h * cond_g - plain_g >= -MARGIN_TOL
            and u * cond_g - (top_g - plain_g) >= -MARGIN_TOL
        )
    if not ok:
        return None

    margins = []
    gains = []
    for a in cfg.exponent_grid:
        r = a / base
        if cfg.measure == "negativity":
            factor = bound_factor(u, h, r)
            lhs = 1.0 if a == 0.0 else top ** a
            rhs = (1.0 if a == 0.0 else plain_v ** a) + factor * (
                1.0 if a == 0.0 else cond_v ** a
            )
            margin = lhs - rhs
            rhs_base = (1.0 if a == 0.0 else plain_v ** a) + bound_factor(1.0, 1.0, r) * (
                1.0 if a == 0.0 else cond_v ** a
            )
            margin_base = lhs - rhs_base
        else:
            spec = BoundSpec(exponent=a, base=base, h=h, u=u, case=case)
            if profile_mode == MONOGAMY:
                rep = check_monogamy_tripartite(top, ab, ac, spec)
            else:
                rep = check_polygamy_tripartite(top, ab, ac, spec)
            margin = rep.margin
            base_factor = bound_factor(1.0, 1.0, r)
            lhs = rep.lhs
            plain_a = 1.0 if a == 0.0 else plain_v ** a
            cond_a = 1.0 if a == 0.0 else cond_v ** a
            if profile_mode == MONOGAMY:
                margin_base = lhs - (plain_a + base_factor * cond_a)
            else:
                margin_base = (plain_a + base_factor * cond_a) - lhs
        margins.append(margin)
        gains.append(margin_base - margin)
    return margins, gains


def _eval_chain(cfg: SweepConfig, profile_mode: str, state: PureState):
    base = cfg.base_exponent
    rho = density_from_pure(state)
    r01 = partial_trace(rho, (0, 1))
    r02 = partial_trace(rho, (0, 2))
    r03 = partial_trace(rho, (0, 3))

    if profile_mode == MONOGAMY:
        top = concurrence_pure(state, (0,))
        pair = [concurrence_mixed_2q(r01), concurrence_mixed_2q(r02),
                concurrence_mixed_2q(r03)]
    else:
        if cfg.measure == "crenoa":
            top = negativity_pure(state, (0,))
        else:
            top = concurrence_pure(state, (0,))
        pair = [concurrence_assist_2q(r01), concurrence_assist_2q(r02),
                concurrence_assist_2q(r03)]
    # the fourth qubit is |0> and uncorrelated, so the tail across
    # A | partners 2,3 equals the two-qubit value with partner 2
    tails = [pair[1], pair[2]]
    if tails[0] == 0.0:
        return None

    top_g = top ** base
    pair1_g = pair[0] ** base
    tail_g = tails[0] ** base

    if cfg.h_override is not None:
        h1 = cfg.h_override
    else:
        h1 = min(1.0, pair1_g / tail_g)
    if profile_mode == MONOGAMY:
        if cfg.u_override is not None:
            u1 = cfg.u_override
        else:
            u1 = max(1.0, (top_g - pair1_g) / tail_g)
        ok = (
            0.0 <= h1 <= 1.0
            and u1 >= 1.0
            and h1 * tail_g - pair1_g >= -MARGIN_TOL
            and top_g - pair1_g - u1 * tail_g >= -MARGIN_TOL
        )
    else:
        if cfg.u_override is not None:
            u1 = cfg.u_override
        else:
            u1 = min(1.0, max(0.0, (top_g - pair1_g) / tail_g))
        ok = (
            0.0 <= h1 <= 1.0
            and 0.0 <= u1 <= 1.0
            and h1 * tail_g - pair1_g >= -MARGIN_TOL
            and u1 * tail_g - (top_g - pair1_g) >= -MARGIN_TOL
        )
    step2 = (1.0, 1.0)
    if not ok:
        return None

    chain = ChainSpec(steps=((h1, u1), step2), split=1, mode=profile_mode)
    margins = []
    gains = []
    for a in cfg.exponent_grid:
        if profile_mode == MONOGAMY:
            rep = chain_monogamy(top, pair, tails, chain, a, base)
        else:
            rep = chain_polygamy(top, pair, tails, chain, a, base)
        g = bound_factor(1.0, 1.0, a / base)
        coeffs = chain_coefficients([g, g], 1)
        rhs_base = 0.0
        for c, pval in zip(coeffs, pair):
            rhs_base += c * (1.0 if a == 0.0 else pval ** a)
        if profile_mode == MONOGAMY:
            margin_base = rep.lhs - rhs_base
        else:
            margin_base = rhs_base - rep.lhs
        margins.append(rep.margin)
        gains.append(margin_base - rep.margin)
    return margins, gains


def _eval_ordering(rho: DensityMatrix):
    n = negativity(rho, (0,))
    c = concurrence_mixed_2q(rho)
    ca = concurrence_assist_2q(rho)
    return [min(c - n, ca - c)], [0.0]


def run_sweep(cfg: SweepConfig) -> SweepSummary:
    """Run a configured sweep and aggregate margins; deterministic per config."""
    profile = MEASURE_PROFILES[cfg.measure]

    if cfg.system == "two_qubit_mixed_rank_r":
        if cfg.measure != "concurrence":
            raise UnsupportedSystemMeasurePairError(
                "the two-qubit mixed system checks the N <= C <= C_a ordering "
                "and pairs only with measure 'concurrence'"
            )
        evaluate = _eval_ordering
    elif cfg.system == "tripartite_pure":
        evaluate = lambda s: _eval_tripartite(cfg, profile.mode, s)
    else:
        if cfg.measure == "negativity":
            raise UnsupportedSystemMeasurePairError(
                "chained negativity sweeps are not provided; use the "
                "tripartite system for negativity"
            )
        evaluate = lambda s: _eval_chain(cfg, profile.mode, s)

    states = _generate_states(cfg)
    results = _map_in_order(evaluate, states)

    hits = 0
    violations = 0
    margin_sum = 0.0
    margin_count = 0
    min_margin = math.inf
    gain_sum = 0.0
    for res in results:
        if res is None:
            continue
        hits += 1
        margins, gains = res
        for m in margins:
            if m < -MARGIN_TOL:
                violations += 1
            margin_sum += m
            margin_count += 1
            if m < min_margin:
                min_margin = m
        for g in gains:
            gain_sum += g

    if margin_count == 0:
        return SweepSummary(len(states), 0, 0, math.nan, math.nan, math.nan)
    return SweepSummary(
        tested=len(states),
        hypothesis_hits=hits,
        violations=violations,
        min_margin=min_margin,
        mean_margin=margin_sum / margin_count,
        tightness_gain=gain_sum / margin_count,
    )
