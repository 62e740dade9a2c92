"""Parameterized monogamy and polygamy bounds and their checkers.

The bounds compare a power of a global bipartite measure against a weighted
combination of the pairwise values.  All of them share one scalar ingredient,
the factor (u+h)^r - h^r, which replaces the classic 2^r - 1 coefficient and
tightens it: for r in [0, 1] the factor grows with u >= 1 (monogamy, lower
bounds), for r >= 1 it shrinks with u <= 1 (polygamy, upper bounds).

Checkers take measure values, verify every hypothesis condition with a signed
slack, and return an InequalityReport; a condition that fails beyond the
tolerance raises instead.  Chain checkers verify one condition pair per step
against caller-supplied tail measures and accumulate the running factor
products that weight each pair term.

Convention: 0^0 = 1 throughout the power functions, so a zero outer exponent
makes every bound factor vanish and both sides collapse to counts.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import (
    BaseMonogamyViolatedError,
    ConditionViolatedError,
    DomainError,
    ExponentOutOfRangeError,
    LengthMismatchError,
    NegativeInputError,
    SlackTooLargeError,
    SlackTooSmallError,
    ZeroDivisorError,
)
from .measures import gs_closed_forms
from .qstate import EXAMPLE_PARAMS

MARGIN_TOL = 1e-9

SPLIT_ON_C = "split_on_C"
SPLIT_ON_B = "split_on_B"

MONOGAMY = "monogamy"
POLYGAMY = "polygamy"


def _pow(base: float, r: float) -> float:
    """base**r with the 0^0 = 1 convention; negative bases are a domain error."""
    if base < 0.0:
        raise DomainError(f"negative base {base!r} in power")
    if r == 0.0:
        return 1.0
    return base ** r


def f_lemma1(s: float, m: float) -> float:
    """(1+s)^m - s^m; decreasing in s for m in [0,1], increasing for m >= 1."""
    if s < 0.0 or m < 0.0:
        raise NegativeInputError(f"arguments must be nonnegative, got s={s}, m={m}")
    return _pow(1.0 + s, m) - _pow(s, m)


def bound_factor(u: float, h: float, r: float) -> float:
    """(u+h)^r - h^r, the tightened coefficient in front of the conditioned term."""
    if u + h < 0.0 or h < 0.0:
        raise DomainError(f"negative base in bound factor (u={u}, h={h})")
    if r < 0.0:
        raise DomainError(f"exponent ratio must be nonnegative, got {r}")
    return _pow(u + h, r) - _pow(h, r)


@dataclass(frozen=True)
class BoundSpec:
    """Exponent pair plus slack parameters for a tripartite bound check.

    ``exponent`` is the outer power (alpha or beta), ``base`` the base power
    (gamma or delta) for which the plain sharing inequality holds.  ``case``
    selects which partner carries the h-condition and the bound factor.
    """

    exponent: float
    base: float
    h: float
    u: float
    case: str = SPLIT_ON_C

    def __post_init__(self):
        if self.base <= 0.0:
            raise ExponentOutOfRangeError(f"base exponent must be positive, got {self.base}")
        if self.exponent < 0.0:
            raise ExponentOutOfRangeError(f"exponent must be nonnegative, got {self.exponent}")
        if not 0.0 <= self.h <= 1.0:
            raise DomainError(f"h must lie in [0, 1], got {self.h}")
        if self.case not in (SPLIT_ON_C, SPLIT_ON_B):
            raise DomainError(f"unknown case {self.case!r}")


@dataclass(frozen=True)
class ConditionCheck:
    name: str
    satisfied: bool
    slack: float

    def to_dict(self) -> dict:
        return {"name": self.name, "satisfied": self.satisfied, "slack": self.slack}


@dataclass(frozen=True)
class InequalityReport:
    """Evaluated bound: sides, margin, per-condition slacks, admissible extremes.

    ``margin`` is lhs - rhs for monogamy bounds and rhs - lhs for polygamy
    bounds, so holds <=> margin >= -1e-9 in both modes.
    """

    lhs: float
    rhs: float
    margin: float
    holds: bool
    conditions: tuple[ConditionCheck, ...]
    admissible_h_min: float | None
    admissible_u_extreme: float | None

    def to_dict(self) -> dict:
        return {
            "lhs": self.lhs,
            "rhs": self.rhs,
            "margin": self.margin,
            "holds": self.holds,
            "conditions": [c.to_dict() for c in self.conditions],
            "admissible": {
                "h_min": self.admissible_h_min,
                "u_extreme": self.admissible_u_extreme,
            },
        }


@dataclass(frozen=True)
class Admissible:
    """Extreme slack values compatible with a measure triple."""

    u_extreme: float
    h_min: float


def _check_nonnegative(**values: float) -> None:
    for name, v in values.items():
        if v < 0.0:
            raise NegativeInputError(f"{name} must be nonnegative, got {v}")


def admissible_monogamy(e_abc: float, e_ab: float, e_ac: float, gamma: float) -> Admissible:
    """Largest u and smallest h compatible with a monogamy triple (case split_on_C).

    u_max = (e_abc^g - e_ab^g) / e_ac^g and h_min = e_ab^g / e_ac^g; any
    h_min <= h <= 1 with 1 <= u <= u_max is valid checker input.  For the
    mirrored case pass the two pair values swapped.
    """
    _check_nonnegative(e_abc=e_abc, e_ab=e_ab, e_ac=e_ac)
    if gamma <= 0.0:
        raise ExponentOutOfRangeError(f"gamma must be positive, got {gamma}")
    top = e_abc ** gamma
    ab = e_ab ** gamma
    ac = e_ac ** gamma
    if top - ab - ac < -MARGIN_TOL:
        raise BaseMonogamyViolatedError(
            f"base monogamy fails: {top} < {ab} + {ac} beyond tolerance"
        )
    if ac == 0.0:
        raise ZeroDivisorError(
            "conditioned pair measure is zero; the bound degenerates to a zero lower bound"
        )
    return Admissible(u_extreme=(top - ab) / ac, h_min=ab / ac)


def admissible_polygamy(ea_abc: float, ea_ab: float, ea_ac: float, delta: float) -> Admissible:
    """Smallest u (clamped to [0, 1]) and smallest h for a polygamy triple (split_on_C)."""
    _check_nonnegative(ea_abc=ea_abc, ea_ab=ea_ab, ea_ac=ea_ac)
    if delta <= 0.0:
        raise ExponentOutOfRangeError(f"delta must be positive, got {delta}")
    top = ea_abc ** delta
    ab = ea_ab ** delta
    ac = ea_ac ** delta
    if ac == 0.0:
        raise ZeroDivisorError(
            "conditioned pair measure is zero; the bound degenerates to a zero upper bound"
        )
    u_min = min(1.0, max(0.0, (top - ab) / ac))
    return Admissible(u_extreme=u_min, h_min=ab / ac)


def _oriented(case: str, e_ab: float, e_ac: float) -> tuple[float, float]:
    """Return (plain term, conditioned term) for the selected case."""
    if case == SPLIT_ON_C:
        return e_ab, e_ac
    return e_ac, e_ab


def check_monogamy_tripartite(
    e_abc: float, e_ab: float, e_ac: float, spec: BoundSpec
) -> InequalityReport:
    """Check E_abc^a >= E_plain^a + [(u+h)^{a/g} - h^{a/g}] E_cond^a.

    The h-condition h * E_cond^g >= E_plain^g and the admissibility
    u * E_cond^g <= E_abc^g - E_plain^g must hold; violations beyond the
    tolerance raise.  When both pair measures vanish the bound short-circuits
    to a trivially held report with margin = lhs.
    """
    _check_nonnegative(e_abc=e_abc, e_ab=e_ab, e_ac=e_ac)
    if spec.u < 1.0:
        raise DomainError(f"monogamy requires u >= 1, got {spec.u}")
    alpha, gamma = spec.exponent, spec.base
    if alpha > gamma:
        raise ExponentOutOfRangeError(
            f"monogamy requires exponent <= base, got {alpha} > {gamma}"
        )
    plain, cond = _oriented(spec.case, e_ab, e_ac)
    lhs = _pow(e_abc, alpha)

    if cond == 0.0 and plain == 0.0:
        report_conditions = (
            ConditionCheck("degenerate_zero_pairs", True, 0.0),
        )
        return InequalityReport(
            lhs=lhs, rhs=0.0, margin=lhs, holds=True,
            conditions=report_conditions,
            admissible_h_min=None, admissible_u_extreme=None,
        )

    top_g = e_abc ** gamma
    plain_g = plain ** gamma
    cond_g = cond ** gamma

    base_slack = top_g - plain_g - cond_g
    if base_slack < -MARGIN_TOL:
        raise BaseMonogamyViolatedError(
            f"base monogamy fails with slack {base_slack:.3e}"
        )
    h_slack = spec.h * cond_g - plain_g
    if h_slack < -MARGIN_TOL:
        raise ConditionViolatedError(
            f"h-condition fails: h*E_cond^g - E_plain^g = {h_slack:.3e}"
        )
    u_slack = (top_g - plain_g) - spec.u * cond_g
    if u_slack < -MARGIN_TOL:
        raise SlackTooLargeError(
            f"u exceeds the admissible maximum, slack {u_slack:.3e}"
        )

    factor = bound_factor(spec.u, spec.h, alpha / gamma)
    rhs = _pow(plain, alpha) + factor * _pow(cond, alpha)
    margin = lhs - rhs
    if cond_g > 0.0:
        h_min = plain_g / cond_g
        u_max = (top_g - plain_g) / cond_g
    else:
        h_min = None
        u_max = None
    conditions = (
        ConditionCheck("base_monogamy", base_slack >= -MARGIN_TOL, base_slack),
        ConditionCheck("h_condition", h_slack >= -MARGIN_TOL, h_slack),
        ConditionCheck("u_admissible", u_slack >= -MARGIN_TOL, u_slack),
    )
    return InequalityReport(
        lhs=lhs, rhs=rhs, margin=margin, holds=margin >= -MARGIN_TOL,
        conditions=conditions,
        admissible_h_min=h_min, admissible_u_extreme=u_max,
    )


def check_polygamy_tripartite(
    ea_abc: float, ea_ab: float, ea_ac: float, spec: BoundSpec
) -> InequalityReport:
    """Check Ea_abc^b <= Ea_plain^b + [(u+h)^{b/d} - h^{b/d}] Ea_cond^b.

    Mirror of the monogamy check: requires beta >= delta, u in [0, 1],
    the h-condition Ea_plain^d <= h * Ea_cond^d, and u at least the
    admissible minimum (ea_abc^d - ea_plain^d) / ea_cond^d.
    """
    _check_nonnegative(ea_abc=ea_abc, ea_ab=ea_ab, ea_ac=ea_ac)
    if not 0.0 <= spec.u <= 1.0:
        raise DomainError(f"polygamy requires 0 <= u <= 1, got {spec.u}")
    beta, delta = spec.exponent, spec.base
    if beta < delta:
        raise ExponentOutOfRangeError(
            f"polygamy requires exponent >= base, got {beta} < {delta}"
        )
    plain, cond = _oriented(spec.case, ea_ab, ea_ac)
    lhs = _pow(ea_abc, beta)

    if cond == 0.0 and plain == 0.0:
        margin = -lhs
        return InequalityReport(
            lhs=lhs, rhs=0.0, margin=margin, holds=margin >= -MARGIN_TOL,
            conditions=(ConditionCheck("degenerate_zero_pairs", True, 0.0),),
            admissible_h_min=None, admissible_u_extreme=None,
        )

    top_d = ea_abc ** delta
    plain_d = plain ** delta
    cond_d = cond ** delta

    base_slack = plain_d + cond_d - top_d
    h_slack = spec.h * cond_d - plain_d
    if h_slack < -MARGIN_TOL:
        raise ConditionViolatedError(
            f"h-condition fails: h*Ea_cond^d - Ea_plain^d = {h_slack:.3e}"
        )
    u_slack = spec.u * cond_d - (top_d - plain_d)
    if u_slack < -MARGIN_TOL:
        raise SlackTooSmallError(
            f"u is below the admissible minimum, slack {u_slack:.3e}"
        )

    factor = bound_factor(spec.u, spec.h, beta / delta)
    rhs = _pow(plain, beta) + factor * _pow(cond, beta)
    margin = rhs - lhs
    if cond_d > 0.0:
        h_min = plain_d / cond_d
        u_min = min(1.0, max(0.0, (top_d - plain_d) / cond_d))
    else:
        h_min = None
        u_min = None
    conditions = (
        ConditionCheck("base_polygamy", base_slack >= -MARGIN_TOL, base_slack),
        ConditionCheck("h_condition", h_slack >= -MARGIN_TOL, h_slack),
        ConditionCheck("u_admissible", u_slack >= -MARGIN_TOL, u_slack),
    )
    return InequalityReport(
        lhs=lhs, rhs=rhs, margin=margin, holds=margin >= -MARGIN_TOL,
        conditions=conditions,
        admissible_h_min=h_min, admissible_u_extreme=u_min,
    )


@dataclass(frozen=True)
class ChainSpec:
    """Per-step slack parameters for an n-partner chained bound.

    ``steps`` holds (h_p, u_p) for p = 1..n-2; ``split`` is the index m up to
    which the forward conditions apply (the remaining steps use the mirrored
    conditions).  The uniform chain has split = n-2; a mixed chain needs
    1 <= split <= n-3 and at least four subsystems.
    """

    steps: tuple[tuple[float, float], ...]
    split: int
    mode: str = MONOGAMY

    def __post_init__(self):
        if self.mode not in (MONOGAMY, POLYGAMY):
            raise DomainError(f"unknown mode {self.mode!r}")
        n_steps = len(self.steps)
        if n_steps < 1:
            raise LengthMismatchError("a chain needs at least one step")
        if not (self.split == n_steps or 1 <= self.split <= n_steps - 1):
            raise DomainError(
                f"split {self.split} invalid for {n_steps} steps"
            )
        for p, (h, u) in enumerate(self.steps, start=1):
            if not 0.0 <= h <= 1.0:
                raise DomainError(f"step {p}: h must lie in [0, 1], got {h}")
            if self.mode == MONOGAMY and u < 1.0:
                raise DomainError(f"step {p}: monogamy requires u >= 1, got {u}")
            if self.mode == POLYGAMY and not 0.0 <= u <= 1.0:
                raise DomainError(f"step {p}: polygamy requires u in [0, 1], got {u}")


def chain_coefficients(factors: Sequence[float], split: int) -> list[float]:
    """Pair-term weights of the chained bound from per-step factors.

    With factors G_1..G_{n-2} and split m, partner i <= m gets G_1*..*G_{i-1},
    partner j in (m, n-2] gets (G_1*..*G_m) * G_j, and the last partner gets
    G_1*..*G_m.  For the uniform all-(h=1, u=1) chain this reproduces the
    classic (2^r - 1)^p coefficient ladder.
    """
    n_steps = len(factors)
    coeffs: list[float] = []
    running = 1.0
    for i in range(1, split + 1):
        coeffs.append(running)
        running *= factors[i - 1]
    prefix = running  # G_1 * ... * G_m
    for j in range(split + 1, n_steps + 1):
        coeffs.append(prefix * factors[j - 1])
    coeffs.append(prefix)
    return coeffs


def _chain_common(
    e_global: float,
    e_pairs: Sequence[float],
    e_tails: Sequence[float],
    chain: ChainSpec,
    base: float,
    mode: str,
):
    if chain.mode != mode:
        raise DomainError(f"chain spec mode {chain.mode!r} does not match checker {mode!r}")
    pairs = [float(x) for x in e_pairs]
    tails = [float(x) for x in e_tails]
    n = len(pairs) + 1
    if n < 3:
        raise LengthMismatchError("need at least two partners")
    if len(tails) != n - 2:
        raise LengthMismatchError(
            f"expected {n - 2} tail values for {n - 1} partners, got {len(tails)}"
        )
    if len(chain.steps) != n - 2:
        raise LengthMismatchError(
            f"expected {n - 2} chain steps for {n - 1} partners, got {len(chain.steps)}"
        )
    _check_nonnegative(e_global=e_global)
    for idx, v in enumerate(pairs):
        if v < 0.0:
            raise NegativeInputError(f"pair measure {idx} is negative: {v}")
    for idx, v in enumerate(tails):
        if v < 0.0:
            raise NegativeInputError(f"tail measure {idx} is negative: {v}")
    if abs(tails[-1] - pairs[-1]) > MARGIN_TOL:
        raise LengthMismatchError(
            "the last tail must equal the last pair measure "
            f"({tails[-1]!r} vs {pairs[-1]!r})"
        )
    if base <= 0.0:
        raise ExponentOutOfRangeError(f"base exponent must be positive, got {base}")
    # tails_full[p-1] = measure across A | partners p..n-1, so steps read
    # (tails_full[p-1], tails_full[p])
    tails_full = [float(e_global)] + tails
    # a zero tail strictly inside the chain leaves the step conditions with
    # no usable content; refuse instead of guessing
    for p in range(1, n - 2):
        if tails_full[p] == 0.0:
            raise ConditionViolatedError(
                f"tail measure after step {p} is zero mid-chain",
                step=p,
                degenerate_tail=True,
            )
    return pairs, tails_full, n


def chain_monogamy(
    e_global: float,
    e_pairs: Sequence[float],
    e_tails: Sequence[float],
    chain: ChainSpec,
    alpha: float,
    gamma: float,
) -> InequalityReport:
    """Chained lower bound on E_global^a over n-1 partners.

    ``e_pairs`` holds the pairwise values with partners 1..n-1; ``e_tails``
    the measures across A | partners p..n-1 for p = 2..n-1 (the last one is
    the final pair value again).  Per-step hypotheses are checked in the
    base-exponent power space; the failing step is named in the error.
    """
    if alpha < 0.0 or alpha > gamma:
        raise ExponentOutOfRangeError(
            f"monogamy requires 0 <= exponent <= base, got {alpha}, {gamma}"
        )
    pairs, tails_full, n = _chain_common(
        e_global, e_pairs, e_tails, chain, gamma, MONOGAMY
    )
    m = chain.split
    conditions: list[ConditionCheck] = []
    factors: list[float] = []
    for p in range(1, n - 1):
        h_p, u_p = chain.steps[p - 1]
        lhs_g = tails_full[p - 1] ** gamma
        tail_g = tails_full[p] ** gamma
        pair_g = pairs[p - 1] ** gamma
        if p <= m:
            h_slack = h_p * tail_g - pair_g
            u_slack = lhs_g - pair_g - u_p * tail_g
        else:
            h_slack = h_p * pair_g - tail_g
            u_slack = lhs_g - u_p * pair_g - tail_g
        if h_slack < -MARGIN_TOL:
            raise ConditionViolatedError(
                f"step {p}: h-condition fails with slack {h_slack:.3e}", step=p
            )
        if u_slack < -MARGIN_TOL:
            raise ConditionViolatedError(
                f"step {p}: u-condition fails with slack {u_slack:.3e}", step=p
            )
        conditions.append(ConditionCheck(f"h_step_{p}", True, h_slack))
        conditions.append(ConditionCheck(f"u_step_{p}", True, u_slack))
        factors.append(bound_factor(u_p, h_p, alpha / gamma))

    coeffs = chain_coefficients(factors, m)
    lhs = _pow(e_global, alpha)
    rhs = 0.0
    for c, pair in zip(coeffs, pairs):
        rhs += c * _pow(pair, alpha)
    margin = lhs - rhs
    return InequalityReport(
        lhs=lhs, rhs=rhs, margin=margin, holds=margin >= -MARGIN_TOL,
        conditions=tuple(conditions),
        admissible_h_min=None, admissible_u_extreme=None,
    )


def chain_polygamy(
    ea_global: float,
    ea_pairs: Sequence[float],
    ea_tails: Sequence[float],
    chain: ChainSpec,
    beta: float,
    delta: float,
) -> InequalityReport:
    """Chained upper bound on Ea_global^b; mirror of ``chain_monogamy``."""
    if beta < delta:
        raise ExponentOutOfRangeError(
            f"polygamy requires exponent >= base, got {beta} < {delta}"
        )
    pairs, tails_full, n = _chain_common(
        ea_global, ea_pairs, ea_tails, chain, delta, POLYGAMY
    )
    m = chain.split
    conditions: list[ConditionCheck] = []
    factors: list[float] = []
    for p in range(1, n - 1):
        h_p, u_p = chain.steps[p - 1]
        lhs_d = tails_full[p - 1] ** delta
        tail_d = tails_full[p] ** delta
        pair_d = pairs[p - 1] ** delta
        if p <= m:
            h_slack = h_p * tail_d - pair_d
            u_slack = pair_d + u_p * tail_d - lhs_d
        else:
            h_slack = h_p * pair_d - tail_d
            u_slack = u_p * pair_d + tail_d - lhs_d
        if h_slack < -MARGIN_TOL:
            raise ConditionViolatedError(
                f"step {p}: h-condition fails with slack {h_slack:.3e}", step=p
            )
        if u_slack < -MARGIN_TOL:
            raise ConditionViolatedError(
                f"step {p}: u-condition fails with slack {u_slack:.3e}", step=p
            )
        conditions.append(ConditionCheck(f"h_step_{p}", True, h_slack))
        conditions.append(ConditionCheck(f"u_step_{p}", True, u_slack))
        factors.append(bound_factor(u_p, h_p, beta / delta))

    coeffs = chain_coefficients(factors, m)
    lhs = _pow(ea_global, beta)
    rhs = 0.0
    for c, pair in zip(coeffs, pairs):
        rhs += c * _pow(pair, beta)
    margin = rhs - lhs
    return InequalityReport(
        lhs=lhs, rhs=rhs, margin=margin, holds=margin >= -MARGIN_TOL,
        conditions=tuple(conditions),
        admissible_h_min=None, admissible_u_extreme=None,
    )


@dataclass(frozen=True)
class BoundComparison:
    """The three competing factors at one (u, h, r) point plus ordering flags.

    ``k_form`` is the intermediate factor (1+h)^r - h^r, equal to
    ((1+k)^r - 1)/k^r at k = 1/h; it is None at h = 0 where k is undefined.
    ``ordered`` states whether the mode's tightness chain holds within
    tolerance at this point.
    """

    new: float
    k_form: float | None
    baseline: float
    ordered: bool

    def to_dict(self) -> dict:
        return {
            "new": self.new,
            "k_form": self.k_form,
            "baseline": self.baseline,
            "ordered": self.ordered,
        }


def compare_bounds(u: float, h: float, r: float, mode: str) -> BoundComparison:
    """Evaluate the new, k-form and baseline factors and check their ordering.

    Monogamy mode expects u >= 1 and r in [0, 1] with new >= k_form >=
    baseline; polygamy mode expects u in [0, 1] and r >= 1 with the chain
    reversed.
    """
    if not 0.0 <= h <= 1.0:
        raise DomainError(f"h must lie in [0, 1], got {h}")
    if mode == MONOGAMY:
        if u < 1.0:
            raise DomainError(f"monogamy comparison requires u >= 1, got {u}")
        if not 0.0 <= r <= 1.0:
            raise DomainError(f"monogamy comparison requires r in [0, 1], got {r}")
    elif mode == POLYGAMY:
        if not 0.0 <= u <= 1.0:
            raise DomainError(f"polygamy comparison requires u in [0, 1], got {u}")
        if r < 1.0:
            raise DomainError(f"polygamy comparison requires r >= 1, got {r}")
    else:
        raise DomainError(f"unknown mode {mode!r}")

    new = bound_factor(u, h, r)
    baseline = bound_factor(1.0, 1.0, r)
    k_form = bound_factor(1.0, h, r) if h > 0.0 else None
    mid = k_form if k_form is not None else baseline
    if mode == MONOGAMY:
        ordered = (new >= mid - MARGIN_TOL) and (mid >= baseline - MARGIN_TOL)
    else:
        ordered = (new <= mid + MARGIN_TOL) and (mid <= baseline + MARGIN_TOL)
    return BoundComparison(new=new, k_form=k_form, baseline=baseline, ordered=ordered)


# -- figure grids ---------------------------------------------------------------

FIGURE_HEADERS = {
    "fig1": ("alpha", "gamma", "z1", "z2", "z3"),
    "fig2": ("beta", "delta", "lhs", "rhs_prior", "rhs_new"),
    "fig3": ("beta", "y1", "y2"),
}

_STEP = 20  # grid resolution: 1/20 = 0.05 per step


def figure_grid(which: str) -> tuple[tuple[str, ...], list[tuple[float, ...]]]:
    """Grid data behind the three bundled surface/line plots, as CSV-ready rows.

    fig1 sweeps (alpha, gamma) over [0, gamma] x [2, 5] for the first example
    state at h = 1/2, u = 3/2, k = 2 and reports the three residuals
    lhs - rhs (baseline, k-form, new factor).  fig2 sweeps (beta, delta) over
    [delta, 8] x [1, 2] for the second example state at h = u = 4/5, k = 5/4
    and reports the upper-bound sides.  fig3 is the delta = 2 line cut of
    fig2 reporting the two residuals rhs - lhs (baseline, new).
    """
    if which not in FIGURE_HEADERS:
        raise DomainError(f"unknown figure {which!r}")
    rows: list[tuple[float, ...]] = []
    if which == "fig1":
        ms = gs_closed_forms(EXAMPLE_PARAMS["ex1"])
        top, ab, ac = ms.c_a_bc, ms.c_ab, ms.c_ac
        for i in range(0, 3 * _STEP + 1):          # gamma in [2, 5]
            gamma = (2 * _STEP + i) / _STEP
            for j in range(0, 2 * _STEP + i + 1):  # alpha in [0, gamma]
                alpha = j / _STEP
                r = alpha / gamma
                lhs = _pow(top, alpha)
                ab_a = _pow(ab, alpha)
                ac_a = _pow(ac, alpha)
                z1 = lhs - ab_a - bound_factor(1.0, 1.0, r) * ac_a
                z2 = lhs - ab_a - bound_factor(1.0, 0.5, r) * ac_a
                z3 = lhs - ab_a - bound_factor(1.5, 0.5, r) * ac_a
                rows.append((alpha, gamma, z1, z2, z3))
    elif which == "fig2":
        ms = gs_closed_forms(EXAMPLE_PARAMS["ex2"])
        top, ab, ac = ms.na_a_bc, ms.na_ab, ms.na_ac
        for i in range(0, _STEP + 1):              # delta in [1, 2]
            delta = (_STEP + i) / _STEP
            for j in range(_STEP + i, 8 * _STEP + 1):  # beta in [delta, 8]
                beta = j / _STEP
                r = beta / delta
                lhs = _pow(top, beta)
                ab_b = _pow(ab, beta)
                ac_b = _pow(ac, beta)
                rhs_prior = ab_b + bound_factor(1.0, 0.8, r) * ac_b
                rhs_new = ab_b + bound_factor(0.8, 0.8, r) * ac_b
                rows.append((beta, delta, lhs, rhs_prior, rhs_new))
    else:
        ms = gs_closed_forms(EXAMPLE_PARAMS["ex2"])
        top, ab, ac = ms.na_a_bc, ms.na_ab, ms.na_ac
        for j in range(2 * _STEP, 8 * _STEP + 1):  # beta in [2, 8], delta = 2
            beta = j / _STEP
            r = beta / 2.0
            lhs = _pow(top, beta)
            ab_b = _pow(ab, beta)
            ac_b = _pow(ac, beta)
            y1 = ab_b + bound_factor(1.0, 1.0, r) * ac_b - lhs
            y2 = ab_b + bound_factor(0.8, 0.8, r) * ac_b - lhs
            rows.append((beta, y1, y2))
    return FIGURE_HEADERS[which], rows


def format_float(x: float) -> str:
    """Deterministic decimal form capped at 12 significant digits."""
    return f"{x:.12g}"


def figure_csv(which: str) -> str:
    """CSV text for a figure grid; byte-identical across runs."""
    header, rows = figure_grid(which)
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(format_float(v) for v in row))
    return "\n".join(lines) + "\n"
