import pytest

from kronseq import (Aperiodic, NoPeriodFound, Periodic2L, PeriodicL,
                     PrecisionExhausted, analyze, cascade,
                     certified_period_length, classify, convergents,
                     critical_scan, decompose, matrix_at, mod4_period_length,
                     normalize_period, threshold_valuation)

from conftest import CORPUS, block_analysis, block_classification, block_cf


def v2(n):
    return (n & -n).bit_length() - 1


# ---------------------------------------------------------------------------
# period lengths

def test_mod4_period_lengths():
    assert mod4_period_length(block_cf((1, 2, 3))) == 6
    assert mod4_period_length(block_cf((1, 2, 5))) == 12
    assert mod4_period_length(block_cf((2,))) == 4
    assert mod4_period_length(block_cf((1,))) == 6
    # for (1,2,2) the identity mod 4 first holds at 18 = 6*3, although the
    # Jacobi sequence only repeats from 36 on
    assert mod4_period_length(block_cf((1, 2, 2))) == 18


def test_certified_period_lengths():
    assert certified_period_length(block_cf((1, 2, 3))) == 6
    assert certified_period_length(block_cf((1, 2, 5))) == 24
    assert certified_period_length(block_cf((1, 2, 2))) == 36
    assert certified_period_length(block_cf((2,))) == 8
    assert certified_period_length(block_cf((1,))) == 12


def test_mod4_length_is_identity_and_smallest():
    for block in CORPUS:
        cf = block_cf(block)
        L = mod4_period_length(cf)
        assert L % 2 == 0 and L % len(cf) == 0
        M = matrix_at(cf, L - 1)
        assert (M.s % 4, M.s_prev % 4, M.t % 4, M.t_prev % 4) == (1, 0, 0, 1)
        for L2 in range(len(cf), L, len(cf)):
            if L2 % 2:
                continue
            M2 = matrix_at(cf, L2 - 1)
            assert (M2.s % 4, M2.s_prev % 4, M2.t % 4, M2.t_prev % 4) != (1, 0, 0, 1)


def test_search_bound_exhaustion():
    with pytest.raises(NoPeriodFound):
        mod4_period_length(block_cf((1, 2, 2)), max_multiplier=5)


# ---------------------------------------------------------------------------
# decompose

def test_decompose_123():
    m, U, e = decompose(block_cf((1, 2, 3)), 6)
    assert (m, e) == (2, 0)
    assert U == ((30, 9), (21, 6))


def test_decompose_125():
    m, U, e = decompose(block_cf((1, 2, 5)), 12)
    assert (m, e) == (2, 0)
    assert U[1][0] % 2 == 1


def test_decompose_122_both_bases():
    assert decompose(block_cf((1, 2, 2)), 18)[::2] == (2, 1)
    assert decompose(block_cf((1, 2, 2)), 36)[::2] == (3, 1)


def test_decompose_has_odd_entry_and_matches_matrix():
    for block in CORPUS:
        cf = block_cf(block)
        L = mod4_period_length(cf)
        m, U, e = decompose(cf, L)
        assert m >= 2
        assert any(x % 2 == 1 for row in U for x in row)
        M = matrix_at(cf, L - 1)
        assert U[1][0] == (M.t >> m) % (1 << 128)
        assert e == v2(M.t) - m  # lower-left of the difference is t_{L-1}


def test_decompose_rejects_wrong_period():
    with pytest.raises(ValueError):
        decompose(block_cf((1, 2, 5)), 6)


# ---------------------------------------------------------------------------
# critical_scan

def test_critical_scan_examples():
    assert critical_scan(block_cf((1, 2, 3)), 6, 2, 0) == ((), (1,))
    assert critical_scan(block_cf((1, 2, 5)), 12, 2, 0) == ((7,), (1,))
    assert critical_scan(block_cf((1, 2, 2)), 36, 3, 1) == ((6,), (24,))
    assert critical_scan(block_cf((1, 2, 2)), 18, 2, 1) == ((6,), ())


def test_critical_indices_satisfy_definition():
    for block in CORPUS:
        cf = block_cf(block)
        a = block_analysis(block)
        pairs = convergents(cf, a.period)
        for k in a.critical_indices:
            assert pairs[k].s % 4 == 3
            assert pairs[k].t % (1 << (a.m + a.e)) == 0
        for k in a.subcritical_indices:
            assert pairs[k].s % 4 == 3
            assert v2(pairs[k].t) == a.m + a.e - 1


# ---------------------------------------------------------------------------
# classify

def test_classify_worked_examples():
    assert block_classification((1, 2, 3)) == Periodic2L(period=12, witness=1)
    c = block_classification((1, 2, 5))
    assert isinstance(c, Aperiodic)
    assert c.first_critical == 7
    assert c.cascade[:4] == ((7, 0), (19, 1), (43, 3), (139, 6))
    c = block_classification((1, 2, 2))
    assert isinstance(c, Aperiodic)
    assert c.first_critical == 6


def test_classify_periodic_uses_certified_base():
    assert block_classification((2,)) == PeriodicL(period=8)
    assert block_classification((1,)) == PeriodicL(period=12)


def test_analysis_certified_flags():
    assert block_analysis((1, 2, 3)).certified
    assert not block_analysis((1, 2, 5)).certified  # aperiodic, mod-4 base
    assert block_analysis((2,)).certified
    assert block_analysis((2,)).period == 8


def test_classification_dichotomy():
    for block in CORPUS:
        a = block_analysis(block)
        c = block_classification(block)
        assert isinstance(c, Aperiodic) == bool(a.critical_indices), block
        if isinstance(c, Periodic2L):
            assert a.subcritical_indices and c.period == 2 * a.period
        if isinstance(c, PeriodicL):
            assert not a.subcritical_indices and c.period == a.period


def test_classify_escalates_precision():
    got = classify(block_cf((1, 2, 5)), precision=8, depth=8)
    assert got == block_classification((1, 2, 5))


# ---------------------------------------------------------------------------
# threshold_valuation

def test_threshold_valuation_tracks_doublings():
    for block, L in [((1, 2, 3), 6), ((1, 2, 5), 12), ((1, 2, 2), 36)]:
        cf = block_cf(block)
        m, _, e = decompose(cf, L)
        for r in range(9):
            assert threshold_valuation(cf, L, r) == m + e + r, (block, r)


def test_threshold_valuation_examples():
    cf = block_cf((1, 2, 5))
    assert threshold_valuation(cf, 12, 0) == 2
    assert threshold_valuation(cf, 12, 1) == 3


def test_threshold_valuation_precision_exhaustion():
    with pytest.raises(PrecisionExhausted):
        threshold_valuation(block_cf((1, 2, 5)), 12, 8, precision=8)


# ---------------------------------------------------------------------------
# cascade

def test_cascade_worked_example_values():
    got = cascade(block_cf((1, 2, 5)), 12, 7, depth=4)
    assert got == ((7, 0), (19, 1), (43, 3), (139, 6))


def test_cascade_depth_8_frozen():
    got = cascade(block_cf((1, 2, 5)), 12, 7, depth=8)
    assert got == ((7, 0), (19, 1), (43, 3), (139, 6),
                   (907, 8), (3979, 16), (790411, 17), (2363275, 19))


def test_cascade_122():
    assert cascade(block_cf((1, 2, 2)), 36, 6, depth=1) == ((6, 2),)
    assert cascade(block_cf((1, 2, 2)), 18, 6, depth=3) == ((6, 3), (150, 5), (726, 6))


def test_cascade_first_step_is_valuation_gap():
    for block in [(1, 2, 5), (1, 2, 2)]:
        cf = block_cf(block)
        a = block_analysis(block)
        if not a.critical_indices:
            continue
        k = a.critical_indices[0]
        t = convergents(cf, k + 1)[k].t
        got = cascade(cf, a.period, k, depth=1)
        assert got == ((k, v2(t) - a.m - a.e),)


def test_cascade_strictly_increasing():
    for block in CORPUS:
        c = block_classification(block)
        if not isinstance(c, Aperiodic):
            continue
        ks = [k for k, _ in c.cascade]
        rs = [r for _, r in c.cascade]
        assert ks == sorted(set(ks)) and rs == sorted(set(rs)), block


def test_cascade_valuations_match_exact_convergents():
    cf = block_cf((1, 2, 5))
    m, _, e = decompose(cf, 12)
    pairs = convergents(cf, 140)
    for k, r in cascade(cf, 12, 7, depth=4):
        assert v2(pairs[k].t) == m + e + r


def test_cascade_rejects_non_critical_start():
    with pytest.raises((AssertionError, ValueError)):
        cascade(block_cf((1, 2, 5)), 12, 1, depth=2)  # k=1 is subcritical


def test_cascade_precision_exhaustion_reported():
    with pytest.raises(PrecisionExhausted):
        cascade(block_cf((1, 2, 5)), 12, 7, depth=8, precision=16)


# ---------------------------------------------------------------------------
# structural checks along doubled periods

def test_doubling_keeps_e_and_raises_m():
    for block in CORPUS:
        cf = block_cf(block)
        L = mod4_period_length(cf)
        m1, _, e1 = decompose(cf, L)
        m2, _, e2 = decompose(cf, 2 * L)
        assert m2 == m1 + 1 and e2 == e1, block


def test_sign_flips_along_doubled_periods_exact():
    # first cascade level of (1,2,5): symbols at k + d*2L flip as (-1)^d
    from kronseq import kronecker
    cf = block_cf((1, 2, 5))
    pairs = convergents(cf, 7 + 2 * 24 + 1)
    base = kronecker(pairs[7].s, pairs[7].t)
    assert kronecker(pairs[7 + 24].s, pairs[7 + 24].t) == -base
    assert kronecker(pairs[7 + 48].s, pairs[7 + 48].t) == base


def test_congruence_along_one_period_shift():
    # t_{k+L} = 2^(m+f) t'' with t'' = t' mod 4 when f <= e-2, and
    # t'' = t' + 2 mod 4 when f = e-1
    from conftest import (block_certified_decomposition,
                          block_certified_length, convergent_pairs,
                          pinned_shift_cases)
    checked = 0
    for block in CORPUS:
        L = block_certified_length(block)
        m, e = block_certified_decomposition(block)
        pairs = convergent_pairs(block, 2 * L)
        for k, f in pinned_shift_cases(block):
            t_now, t_next = pairs[k][1], pairs[k + L][1]
            assert v2(t_next) == m + f == v2(t_now), (block, k)
            tp = t_now >> (m + f)
            tpp = t_next >> (m + f)
            if f <= e - 2:
                assert tpp % 4 == tp % 4, (block, k)
            else:
                assert tpp % 4 == (tp + 2) % 4, (block, k)
            checked += 1
    assert checked > 10


def test_analyze_periodic_recheck_consistency():
    # when the certified base differs from the mod-4 base, critical indices
    # must be absent at both (their existence is base-independent)
    for block in CORPUS:
        cf = block_cf(block)
        a = block_analysis(block)
        if a.critical_indices:
            continue
        L0 = mod4_period_length(cf)
        m0, _, e0 = decompose(cf, L0)
        assert critical_scan(cf, L0, m0, e0)[0] == ()
        assert a.certified
