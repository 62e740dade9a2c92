import json
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from monolab.errors import (
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
from monolab.inequalities import (
    MONOGAMY,
    POLYGAMY,
    SPLIT_ON_B,
    BoundSpec,
    ChainSpec,
    admissible_monogamy,
    admissible_polygamy,
    bound_factor,
    chain_coefficients,
    chain_monogamy,
    chain_polygamy,
    check_monogamy_tripartite,
    check_polygamy_tripartite,
    compare_bounds,
    f_lemma1,
    figure_csv,
    figure_grid,
)
from monolab.measures import (
    concurrence_assist_2q,
    concurrence_mixed_2q,
    concurrence_pure,
    negativity_pure,
)
from monolab.qstate import (
    EXAMPLE_PARAMS,
    PureState,
    density_from_pure,
    gen_schmidt_state,
    ghz,
    partial_trace,
)

SQRT2 = math.sqrt(2.0)
EX1_TRIPLE = (2 / 3, 1 / 3, SQRT2 / 3)
EX2_TRIPLE = (math.sqrt(48) / 9, math.sqrt(24) / 9, math.sqrt(40) / 9)


class TestLemmaFunction:
    def test_zero_argument(self):
        for m in (0.3, 1.0, 2.5):
            assert f_lemma1(0.0, m) == 1.0

    def test_unit_exponent(self):
        for s in (0.0, 0.7, 3.0):
            assert abs(f_lemma1(s, 1.0) - 1.0) < 1e-12

    def test_half_exponent_at_one(self):
        assert abs(f_lemma1(1.0, 0.5) - (SQRT2 - 1.0)) < 1e-12

    def test_negative_input(self):
        with pytest.raises(NegativeInputError):
            f_lemma1(-0.1, 1.0)
        with pytest.raises(NegativeInputError):
            f_lemma1(0.1, -1.0)

    def test_monotonicity_grid(self):
        s_grid = np.linspace(0.0, 10.0, 60)
        for m in np.linspace(0.0, 1.0, 11):
            vals = [f_lemma1(s, float(m)) for s in s_grid]
            assert all(a >= b - 1e-12 for a, b in zip(vals, vals[1:]))
        for n in np.linspace(1.0, 5.0, 9):
            vals = [f_lemma1(s, float(n)) for s in s_grid]
            assert all(a <= b + 1e-12 for a, b in zip(vals, vals[1:]))

    @settings(max_examples=300, deadline=None)
    @given(
        s=st.floats(min_value=0.0, max_value=50.0),
        t=st.floats(min_value=0.0, max_value=50.0),
        m=st.floats(min_value=0.0, max_value=1.0),
        n=st.floats(min_value=1.0, max_value=6.0),
    )
    def test_monotonicity_property(self, s, t, m, n):
        lo, hi = min(s, t), max(s, t)
        assert f_lemma1(lo, m) >= f_lemma1(hi, m) - 1e-9
        assert f_lemma1(lo, n) <= f_lemma1(hi, n) + 1e-9


class TestBoundFactor:
    def test_baseline_point(self):
        for r in (0.0, 0.3, 1.0, 2.0):
            assert abs(bound_factor(1.0, 1.0, r) - (2.0 ** r - 1.0)) < 1e-12

    def test_linear_case(self):
        assert abs(bound_factor(1.5, 0.5, 1.0) - 1.5) < 1e-12

    def test_k_form_identity(self):
        for k in np.linspace(1.0, 5.0, 17):
            for r in np.linspace(0.0, 1.0, 21):
                lhs = bound_factor(1.0, 1.0 / k, float(r))
                rhs = ((1.0 + k) ** r - 1.0) / (k ** r)
                assert abs(lhs - rhs) < 1e-12

    def test_zero_ratio_convention(self):
        assert bound_factor(1.5, 0.5, 0.0) == 0.0
        assert bound_factor(1.0, 0.0, 0.0) == 0.0

    def test_monotone_in_u(self):
        for h in (0.0, 0.4, 1.0):
            for r in (0.2, 0.7, 1.0):
                prev = -math.inf
                for u in np.linspace(1.0, 4.0, 13):
                    val = bound_factor(float(u), h, r)
                    assert val >= prev - 1e-12
                    prev = val

    def test_domain_errors(self):
        with pytest.raises(DomainError):
            bound_factor(0.5, -0.1, 0.5)
        with pytest.raises(DomainError):
            bound_factor(1.0, 0.5, -0.2)

    @settings(max_examples=300, deadline=None)
    @given(
        u=st.floats(min_value=1.0, max_value=10.0),
        h=st.floats(min_value=1e-6, max_value=1.0),
        r=st.floats(min_value=0.0, max_value=1.0),
    )
    def test_monogamy_tightness_chain(self, u, h, r):
        new = bound_factor(u, h, r)
        k_form = bound_factor(1.0, h, r)
        baseline = bound_factor(1.0, 1.0, r)
        assert new >= k_form - 1e-9
        assert k_form >= baseline - 1e-9

    @settings(max_examples=300, deadline=None)
    @given(
        u=st.floats(min_value=0.0, max_value=1.0),
        h=st.floats(min_value=1e-6, max_value=1.0),
        r=st.floats(min_value=1.0, max_value=8.0),
    )
    def test_polygamy_tightness_chain(self, u, h, r):
        new = bound_factor(u, h, r)
        k_form = bound_factor(1.0, h, r)
        baseline = bound_factor(1.0, 1.0, r)
        assert new <= k_form + 1e-9
        assert k_form <= baseline + 1e-9


class TestAdmissible:
    def test_example_one(self):
        adm = admissible_monogamy(*EX1_TRIPLE, gamma=2.0)
        assert abs(adm.u_extreme - 1.5) < 1e-9
        assert abs(adm.h_min - 0.5) < 1e-9

    def test_zero_plain_pair(self):
        adm = admissible_monogamy(0.9, 0.0, 0.5, gamma=2.0)
        assert abs(adm.u_extreme - (0.9 / 0.5) ** 2) < 1e-12
        assert adm.h_min == 0.0

    def test_ghz_triple_degenerates(self):
        with pytest.raises(ZeroDivisorError):
            admissible_monogamy(1.0, 0.0, 0.0, gamma=2.0)

    def test_base_violation_detected(self):
        with pytest.raises(BaseMonogamyViolatedError):
            admissible_monogamy(1.0, 1.0, 1.0, gamma=2.0)

    def test_example_two_polygamy(self):
        adm = admissible_polygamy(*EX2_TRIPLE, delta=2.0)
        assert abs(adm.u_extreme - 0.6) < 1e-9
        assert abs(adm.h_min - 0.6) < 1e-9

    def test_polygamy_u_clamped(self):
        # global value below the first pair value: raw u_min is negative
        adm = admissible_polygamy(0.1, 0.5, 0.5, delta=2.0)
        assert adm.u_extreme == 0.0


class TestMonogamyTripartite:
    def test_equality_at_extreme(self):
        spec = BoundSpec(exponent=2.0, base=2.0, h=0.5, u=1.5)
        rep = check_monogamy_tripartite(*EX1_TRIPLE, spec)
        assert rep.holds
        assert abs(rep.margin) < 1e-12
        assert abs(rep.lhs - 4 / 9) < 1e-12
        assert abs(rep.rhs - 4 / 9) < 1e-12

    def test_zero_exponent(self):
        spec = BoundSpec(exponent=0.0, base=2.0, h=0.5, u=1.5)
        rep = check_monogamy_tripartite(*EX1_TRIPLE, spec)
        assert rep.lhs == 1.0 and rep.rhs == 1.0 and rep.margin == 0.0

    def test_alpha_one_saturates_at_double_extreme(self):
        # (h, u) = (h_min, u_max) makes the bound an identity in alpha:
        # u + h = (E_abc/E_cond)^g and h = (E_plain/E_cond)^g collapse the
        # right side to lhs exactly, for every exponent
        spec = BoundSpec(exponent=1.0, base=2.0, h=0.5, u=1.5)
        rep = check_monogamy_tripartite(*EX1_TRIPLE, spec)
        assert rep.holds
        assert abs(rep.margin) < 1e-12

    def test_positive_margin_off_extreme(self):
        spec = BoundSpec(exponent=1.0, base=3.0, h=0.5, u=1.5)
        rep = check_monogamy_tripartite(*EX1_TRIPLE, spec)
        assert rep.holds and rep.margin > 1e-3

    def test_report_fields(self):
        spec = BoundSpec(exponent=2.0, base=2.0, h=0.5, u=1.5)
        rep = check_monogamy_tripartite(*EX1_TRIPLE, spec)
        assert abs(rep.admissible_h_min - 0.5) < 1e-9
        assert abs(rep.admissible_u_extreme - 1.5) < 1e-9
        names = [c.name for c in rep.conditions]
        assert names == ["base_monogamy", "h_condition", "u_admissible"]
        assert all(c.satisfied for c in rep.conditions)
        payload = json.dumps(rep.to_dict())
        assert "margin" in payload

    def test_mirrored_case(self):
        top, ab, ac = EX1_TRIPLE
        spec = BoundSpec(exponent=2.0, base=2.0, h=0.5, u=1.5, case=SPLIT_ON_B)
        rep = check_monogamy_tripartite(top, ac, ab, spec)
        assert rep.holds and abs(rep.margin) < 1e-12

    def test_h_condition_violation(self):
        spec = BoundSpec(exponent=2.0, base=2.0, h=0.1, u=1.5)
        with pytest.raises(ConditionViolatedError):
            check_monogamy_tripartite(*EX1_TRIPLE, spec)

    def test_u_too_large(self):
        spec = BoundSpec(exponent=2.0, base=2.0, h=0.5, u=1.6)
        with pytest.raises(SlackTooLargeError):
            check_monogamy_tripartite(*EX1_TRIPLE, spec)

    def test_exponent_out_of_range(self):
        spec = BoundSpec(exponent=2.5, base=2.0, h=0.5, u=1.5)
        with pytest.raises(ExponentOutOfRangeError):
            check_monogamy_tripartite(*EX1_TRIPLE, spec)

    def test_u_below_one_rejected(self):
        spec = BoundSpec(exponent=2.0, base=2.0, h=0.5, u=0.9)
        with pytest.raises(DomainError):
            check_monogamy_tripartite(*EX1_TRIPLE, spec)

    def test_degenerate_zero_pairs_short_circuit(self):
        spec = BoundSpec(exponent=2.0, base=2.0, h=0.5, u=1.5)
        rep = check_monogamy_tripartite(1.0, 0.0, 0.0, spec)
        assert rep.holds
        assert rep.margin == rep.lhs == 1.0
        assert rep.admissible_h_min is None

    def test_base_monogamy_violation(self):
        spec = BoundSpec(exponent=2.0, base=2.0, h=1.0, u=1.0)
        with pytest.raises(BaseMonogamyViolatedError):
            check_monogamy_tripartite(0.5, 0.5, 0.5, spec)


class TestPolygamyTripartite:
    def test_example_two_margin(self):
        spec = BoundSpec(exponent=2.0, base=2.0, h=0.8, u=0.8)
        rep = check_polygamy_tripartite(*EX2_TRIPLE, spec)
        assert rep.holds
        assert abs(rep.margin - 8 / 81) < 1e-12
        assert abs(rep.lhs - 48 / 81) < 1e-12
        assert abs(rep.rhs - 56 / 81) < 1e-12

    def test_loosest_factor_at_unit_parameters(self):
        spec = BoundSpec(exponent=3.0, base=2.0, h=1.0, u=1.0)
        rep = check_polygamy_tripartite(*EX2_TRIPLE, spec)
        r = 3.0 / 2.0
        expected_factor = 2.0 ** r - 1.0
        implied = (rep.rhs - EX2_TRIPLE[1] ** 3.0) / EX2_TRIPLE[2] ** 3.0
        assert abs(implied - expected_factor) < 1e-12

    def test_degenerate_zero_pairs(self):
        spec = BoundSpec(exponent=2.0, base=2.0, h=0.5, u=0.5)
        rep = check_polygamy_tripartite(0.0, 0.0, 0.0, spec)
        assert rep.holds and rep.margin == 0.0

    def test_u_below_minimum(self):
        spec = BoundSpec(exponent=2.0, base=2.0, h=0.8, u=0.5)
        with pytest.raises(SlackTooSmallError):
            check_polygamy_tripartite(*EX2_TRIPLE, spec)

    def test_h_condition_violation(self):
        spec = BoundSpec(exponent=2.0, base=2.0, h=0.3, u=0.8)
        with pytest.raises(ConditionViolatedError):
            check_polygamy_tripartite(*EX2_TRIPLE, spec)

    def test_beta_below_delta_rejected(self):
        spec = BoundSpec(exponent=1.0, base=2.0, h=0.8, u=0.8)
        with pytest.raises(ExponentOutOfRangeError):
            check_polygamy_tripartite(*EX2_TRIPLE, spec)

    def test_u_above_one_rejected(self):
        spec = BoundSpec(exponent=2.0, base=2.0, h=0.8, u=1.2)
        with pytest.raises(DomainError):
            check_polygamy_tripartite(*EX2_TRIPLE, spec)


def ex1_chain_values():
    """Four-qubit fixture: first example state with a |0> fourth qubit.

    The product fourth qubit keeps every tail computable: the measure across
    A | partners 2,3 equals the two-qubit value with partner 2, and the last
    pair value is exactly zero.
    """
    base = gen_schmidt_state(EXAMPLE_PARAMS["ex1"])
    amps = np.kron(base.amps, np.array([1.0, 0.0]))
    state = PureState(amps, (2, 2, 2, 2))
    rho = density_from_pure(state)
    top = concurrence_pure(state, (0,))
    pairs = [
        concurrence_mixed_2q(partial_trace(rho, (0, 1))),
        concurrence_mixed_2q(partial_trace(rho, (0, 2))),
        concurrence_mixed_2q(partial_trace(rho, (0, 3))),
    ]
    tails = [pairs[1], pairs[2]]
    return top, pairs, tails


def ex2_chain_values():
    base = gen_schmidt_state(EXAMPLE_PARAMS["ex2"])
    amps = np.kron(base.amps, np.array([1.0, 0.0]))
    state = PureState(amps, (2, 2, 2, 2))
    rho = density_from_pure(state)
    top = negativity_pure(state, (0,))
    pairs = [
        concurrence_assist_2q(partial_trace(rho, (0, 1))),
        concurrence_assist_2q(partial_trace(rho, (0, 2))),
        concurrence_assist_2q(partial_trace(rho, (0, 3))),
    ]
    tails = [pairs[1], pairs[2]]
    return top, pairs, tails


class TestChainMonogamy:
    def test_three_party_reduction_matches_tripartite(self):
        top, ab, ac = EX1_TRIPLE
        chain = ChainSpec(steps=((0.5, 1.5),), split=1, mode=MONOGAMY)
        for alpha in (0.0, 0.7, 1.3, 2.0):
            rep_chain = chain_monogamy(top, [ab, ac], [ac], chain, alpha, 2.0)
            spec = BoundSpec(exponent=alpha, base=2.0, h=0.5, u=1.5)
            rep_tri = check_monogamy_tripartite(top, ab, ac, spec)
            assert rep_chain.margin == rep_tri.margin
            assert rep_chain.lhs == rep_tri.lhs and rep_chain.rhs == rep_tri.rhs

    def test_uniform_unit_parameters_reproduce_power_ladder(self):
        for alpha, gamma in ((1.0, 2.0), (1.5, 2.0), (2.0, 3.0)):
            g = 2.0 ** (alpha / gamma) - 1.0
            for n, m in ((5, 3), (5, 2), (5, 1), (4, 2), (4, 1)):
                factors = [g] * (n - 2)
                coeffs = chain_coefficients(factors, m)
                expected = []
                running = 1.0
                for _ in range(m):
                    expected.append(running)
                    running *= g
                prefix = running
                for _ in range(m + 1, n - 1):
                    expected.append(prefix * g)
                expected.append(prefix)
                assert coeffs == expected
                if m == n - 2:
                    powers = [g ** p for p in range(n - 1)]
                    assert np.allclose(coeffs, powers, rtol=0, atol=1e-15)

    def test_four_qubit_fixture_holds_with_zero_margin_at_base(self):
        top, pairs, tails = ex1_chain_values()
        chain = ChainSpec(steps=((0.5, 1.5), (1.0, 1.0)), split=1, mode=MONOGAMY)
        rep = chain_monogamy(top, pairs, tails, chain, 2.0, 2.0)
        assert rep.holds
        assert abs(rep.margin) < 1e-9
        rep1 = chain_monogamy(top, pairs, tails, chain, 1.0, 2.0)
        assert rep1.holds

    def test_condition_violation_names_step(self):
        top, pairs, tails = ex1_chain_values()
        chain = ChainSpec(steps=((0.1, 1.5), (1.0, 1.0)), split=1, mode=MONOGAMY)
        with pytest.raises(ConditionViolatedError) as err:
            chain_monogamy(top, pairs, tails, chain, 2.0, 2.0)
        assert err.value.step == 1
        assert not err.value.degenerate_tail

    def test_degenerate_mid_chain_tail_flagged(self):
        state = ghz(4)
        rho = density_from_pure(state)
        top = concurrence_pure(state, (0,))
        pairs = [concurrence_mixed_2q(partial_trace(rho, (0, k))) for k in (1, 2, 3)]
        tails = [0.0, pairs[2]]  # the A|B2B3 marginal of GHZ is separable
        chain = ChainSpec(steps=((1.0, 1.0), (1.0, 1.0)), split=1, mode=MONOGAMY)
        with pytest.raises(ConditionViolatedError) as err:
            chain_monogamy(top, pairs, tails, chain, 2.0, 2.0)
        assert err.value.degenerate_tail and err.value.step == 1

    def test_length_mismatches(self):
        top, pairs, tails = ex1_chain_values()
        chain = ChainSpec(steps=((0.5, 1.5), (1.0, 1.0)), split=1, mode=MONOGAMY)
        with pytest.raises(LengthMismatchError):
            chain_monogamy(top, pairs, tails[:1], chain, 2.0, 2.0)
        with pytest.raises(LengthMismatchError):
            chain_monogamy(top, pairs, [tails[0], 0.123], chain, 2.0, 2.0)

    def test_mode_mismatch(self):
        top, pairs, tails = ex1_chain_values()
        chain = ChainSpec(steps=((0.5, 0.5), (1.0, 1.0)), split=1, mode=POLYGAMY)
        with pytest.raises(DomainError):
            chain_monogamy(top, pairs, tails, chain, 2.0, 2.0)


class TestChainPolygamy:
    def test_three_party_reduction(self):
        top, ab, ac = EX2_TRIPLE
        chain = ChainSpec(steps=((0.8, 0.8),), split=1, mode=POLYGAMY)
        for beta in (2.0, 3.0, 4.5):
            rep_chain = chain_polygamy(top, [ab, ac], [ac], chain, beta, 2.0)
            spec = BoundSpec(exponent=beta, base=2.0, h=0.8, u=0.8)
            rep_tri = check_polygamy_tripartite(top, ab, ac, spec)
            assert rep_chain.margin == rep_tri.margin

    def test_four_qubit_fixture(self):
        top, pairs, tails = ex2_chain_values()
        chain = ChainSpec(steps=((0.8, 0.8), (1.0, 1.0)), split=1, mode=POLYGAMY)
        rep = chain_polygamy(top, pairs, tails, chain, 2.0, 2.0)
        assert rep.holds
        assert abs(rep.margin - 8 / 81) < 1e-9
        rep2 = chain_polygamy(top, pairs, tails, chain, 3.5, 2.0)
        assert rep2.holds

    def test_exponent_validation(self):
        top, pairs, tails = ex2_chain_values()
        chain = ChainSpec(steps=((0.8, 0.8), (1.0, 1.0)), split=1, mode=POLYGAMY)
        with pytest.raises(ExponentOutOfRangeError):
            chain_polygamy(top, pairs, tails, chain, 1.0, 2.0)


class TestChainSpecValidation:
    def test_split_bounds(self):
        with pytest.raises(DomainError):
            ChainSpec(steps=((0.5, 1.5), (1.0, 1.0)), split=0, mode=MONOGAMY)
        with pytest.raises(DomainError):
            ChainSpec(steps=((0.5, 1.5),), split=2, mode=MONOGAMY)

    def test_parameter_ranges(self):
        with pytest.raises(DomainError):
            ChainSpec(steps=((1.5, 1.0),), split=1, mode=MONOGAMY)
        with pytest.raises(DomainError):
            ChainSpec(steps=((0.5, 0.5),), split=1, mode=MONOGAMY)
        with pytest.raises(DomainError):
            ChainSpec(steps=((0.5, 1.5),), split=1, mode=POLYGAMY)


class TestCompareBounds:
    def test_all_equal_at_unit_point(self):
        cmp = compare_bounds(1.0, 1.0, 0.5, MONOGAMY)
        assert abs(cmp.new - cmp.baseline) < 1e-12
        assert abs(cmp.k_form - cmp.baseline) < 1e-12
        assert cmp.ordered

    def test_monogamy_strict_ordering(self):
        cmp = compare_bounds(1.5, 0.5, 0.5, MONOGAMY)
        assert cmp.new > cmp.k_form > cmp.baseline
        assert cmp.ordered

    def test_polygamy_reversed_ordering(self):
        cmp = compare_bounds(0.8, 0.8, 1.5, POLYGAMY)
        assert cmp.new < cmp.baseline
        assert cmp.new <= cmp.k_form <= cmp.baseline
        assert cmp.ordered

    def test_h_zero_reports_not_applicable(self):
        cmp = compare_bounds(1.5, 0.0, 0.5, MONOGAMY)
        assert cmp.k_form is None
        assert cmp.ordered

    def test_domain_validation(self):
        with pytest.raises(DomainError):
            compare_bounds(0.5, 0.5, 0.5, MONOGAMY)
        with pytest.raises(DomainError):
            compare_bounds(0.5, 0.5, 0.5, POLYGAMY)
        with pytest.raises(DomainError):
            compare_bounds(1.5, 0.5, 0.5, "other")


class TestFigureGrids:
    def test_headers(self):
        assert figure_grid("fig1")[0] == ("alpha", "gamma", "z1", "z2", "z3")
        assert figure_grid("fig2")[0] == ("beta", "delta", "lhs", "rhs_prior", "rhs_new")
        assert figure_grid("fig3")[0] == ("beta", "y1", "y2")

    def test_fig1_equality_point(self):
        _, rows = figure_grid("fig1")
        row = next(r for r in rows if r[0] == 2.0 and r[1] == 2.0)
        assert abs(row[4]) < 1e-12           # new-factor residual saturates
        assert row[3] > 0 and row[2] > 0
        assert row[2] >= row[3] >= row[4]

    def test_fig1_grid_coverage(self):
        _, rows = figure_grid("fig1")
        gammas = sorted({r[1] for r in rows})
        assert gammas[0] == 2.0 and gammas[-1] == 5.0
        assert len(gammas) == 61
        assert all(0.0 <= r[0] <= r[1] for r in rows)

    def test_fig3_first_row(self):
        _, rows = figure_grid("fig3")
        assert rows[0][0] == 2.0
        assert abs(rows[0][1] - 16 / 81) < 1e-9
        assert abs(rows[0][2] - 8 / 81) < 1e-9

    def test_csv_is_deterministic(self):
        a = figure_csv("fig3")
        b = figure_csv("fig3")
        assert a == b
        header = a.splitlines()[0]
        assert header == "beta,y1,y2"

    def test_unknown_figure(self):
        with pytest.raises(DomainError):
            figure_grid("fig9")
