import random
from fractions import Fraction

import pytest

from necklie import (LambdaElement, PreconditionError, TruncationProfile,
                     UsageError, char_class, embed_element, gauge_act,
                     homotopy_check, mc_residual)
from necklie.chains import chain_delta, chain_mul
from necklie.mc import (MCCandidate, as_candidate, candidate_parity,
                        class_residual_identity, element_of_hamiltonian,
                        exp_chain, hamiltonian_of_element)
from necklie.words import Hamiltonian

F = Fraction

T, X, XI = (0,), 0, 1          # generator indices: t in 1-d, x/xi in 2-d


def elem(space, variant, terms, L=9, K=3, G=2, N=2, P=4):
    return LambdaElement(space, variant, TruncationProfile(L, K, G, N, P),
                         {k: F(c) for k, c in terms.items()})


def test_candidate_parity_rules(sp1, sp2):
    assert candidate_parity(sp1) == 1      # even pairing, odd candidates
    assert candidate_parity(sp2) == 0
    as_candidate(elem(sp1, "lgv", {(0, 0, ((0, 0, 0),)): 1}))
    as_candidate(elem(sp2, "lgv", {(0, 0, ((X, X),)): 2}))
    as_candidate(elem(sp1, "lgv", {}))     # zero is vacuously homogeneous
    with pytest.raises(UsageError):
        MCCandidate(elem(sp1, "lgv", {(0, 1, ((0,),)): 1}))    # even in 1-d
    with pytest.raises(UsageError):
        MCCandidate(Hamiltonian(sp2, {(XI,): F(1)}))           # odd in 2-d
    with pytest.raises(UsageError):
        MCCandidate("not an element")


def test_residual_goldens(sp1, sp2):
    t3 = {(0, 0, ((0, 0, 0),)): 1}
    r = mc_residual(elem(sp1, "lgv", t3))
    assert r.terms == {(0, 1, ((0,),)): F(3)}      # d(t^3) = 3 nu t
    assert mc_residual(elem(sp1, "lg", t3)).is_zero()
    assert mc_residual(elem(sp1, "hq2", t3)).is_zero()
    assert mc_residual(elem(sp2, "lgv", {(0, 0, ((X, X),)): 2})).is_zero()
    h = Hamiltonian(sp2, {(X, X): F(2)}, max_length=6)
    rh = mc_residual(h)
    assert isinstance(rh, Hamiltonian) and rh.terms == {} and rh.scalar == 0


def test_hamiltonian_element_round_trip(sp2):
    h = Hamiltonian(sp2, {(X, X, XI): F(2), (X, X): F(-1)})
    e = element_of_hamiltonian(h)
    assert e.variant == "hq2"
    assert hamiltonian_of_element(e).terms == h.terms
    with pytest.raises(UsageError):
        hamiltonian_of_element(elem(sp2, "lgv", {(0, 0, ((X, X),)): 1}))
    cand = as_candidate(h.scale(0) + Hamiltonian(sp2, {(X, X): F(1)}))
    assert as_candidate(cand) is cand      # idempotent wrapper


def test_gauge_parameter_validation(sp1, sp2):
    x = elem(sp2, "lgv", {(0, 0, ((X, X),)): 2})
    with pytest.raises(UsageError):        # even parameter
        gauge_act(elem(sp2, "lgv", {(0, 0, ((X, X),)): 1}), x)
    with pytest.raises(UsageError):        # wrong space
        gauge_act(elem(sp1, "lgv", {(0, 0, ((0, 0, 0),)): 1}), x)
    with pytest.raises(UsageError):        # wrong variant
        gauge_act(elem(sp2, "lg", {(0, 0, ((X, X, XI),)): 1}), x)
    with pytest.raises(UsageError):
        gauge_act("y", x)


def test_gauge_flow_preserves_flatness_exactly(sp2):
    """Roomy caps on every axis make the truncated flow agree with the
    exact one through order P, so the residual stays literally zero."""
    prof = TruncationProfile(L=14, K=5, G=6, N=6, P=4)
    x = LambdaElement(sp2, "lgv", prof, {(0, 0, ((X, X),)): F(2)})
    assert mc_residual(x).is_zero()
    y = LambdaElement(sp2, "lgv", prof,
                      {(0, 0, ((X, X, XI),)): F(1), (0, 1, ((XI,),)): F(1, 3)})
    assert y.parity() == 1
    flowed = gauge_act(y, x)
    assert flowed.value != x               # the orbit actually moves
    assert mc_residual(flowed).is_zero()


def test_gauge_flow_is_trivial_in_one_dim_lg(sp1):
    """With the circle parameter removed every 1-d bracket vanishes and
    the flow degenerates to the identity."""
    prof = TruncationProfile(L=11, K=3, G=4, N=0, P=5)
    x = LambdaElement(sp1, "lg", prof, {(0, 0, ((0, 0, 0),)): F(1)})
    y = LambdaElement(sp1, "lg", prof, {(0, 0, ((0, 0, 0, 0, 0),)): F(1, 2)})
    assert gauge_act(y, x).value == x


def test_gauge_flow_hamiltonian_golden(sp2):
    x = Hamiltonian(sp2, {(X, X): F(2)}, max_length=6)
    y = Hamiltonian(sp2, {(X, X, XI): F(1)})
    flowed = gauge_act(y, x)
    assert isinstance(flowed.value, Hamiltonian)
    assert flowed.value.terms == {
        (X, X): F(2),
        (X, X, X): F(4),
        (X, X, X, X): F(6),
        (X, X, X, X, X): F(8),
        (X, X, X, X, X, X): F(10),
    }
    assert mc_residual(flowed).terms == {}


def test_exp_chain_unit_and_block_cap(sp2):
    prof = TruncationProfile(L=4, K=2, G=1, N=1, P=4)
    zero = LambdaElement(sp2, "lgv", prof, {})
    assert exp_chain(zero).terms == {(0, 0, ()): F(1)}
    x = LambdaElement(sp2, "lgv", prof, {(0, 0, ((X, X),)): F(2)})
    cx = exp_chain(x)
    xx = (X, X)
    assert cx.terms == {
        (0, 0, ()): F(1),
        (0, 0, ((xx,),)): F(2),
        (0, 0, ((xx,), (xx,))): F(2),      # 2*2/2!, third power capped away
    }


def test_char_class_requires_flat(sp1, sp2):
    bad = elem(sp1, "lgv", {(0, 0, ((0, 0, 0),)): 1})
    with pytest.raises(PreconditionError) as err:
        char_class(bad)
    assert err.value.evidence.terms == {(0, 1, ((0,),)): F(3)}
    flat = elem(sp2, "lgv", {(0, 0, ((X, X),)): 2}, L=4, K=2, G=1, N=1)
    assert char_class(flat) == exp_chain(flat)


def test_homotopy_identities_seeded(sp1, sp2):
    prof1 = TruncationProfile(L=7, K=3, G=2, N=2, P=3)
    prof2 = TruncationProfile(L=5, K=3, G=1, N=1, P=3)
    odd_pool_1 = [(0, 0, ((0, 0, 0),)), (0, 0, ((0, 0, 0, 0, 0),)),
                  (1, 0, ((0, 0, 0),)), (0, 2, ((0, 0, 0),))]
    odd_pool_2 = [(0, 0, ((X, X, XI),)), (0, 0, ((XI,) * 3,)),
                  (0, 1, ((XI,),)), (1, 0, ((XI,),))]
    rng = random.Random(2718)
    for _ in range(4):
        y1 = LambdaElement(sp1, "lgv", prof1,
                           {k: F(rng.randint(1, 3)) for k in
                            rng.sample(odd_pool_1, 2)})
        x1 = LambdaElement(sp1, "lgv", prof1, {(0, 0, ((0, 0, 0),)): F(1)})
        rep = homotopy_check(y1, x1, prof1)
        assert rep.passed, rep.summary_lines()
        assert rep.operator_identity.checked > 10

        y2 = LambdaElement(sp2, "lgv", prof2,
                           {k: F(rng.randint(1, 3)) for k in
                            rng.sample(odd_pool_2, 2)})
        x2 = LambdaElement(sp2, "lgv", prof2, {(0, 0, ((X, X),)): F(2)})
        rep = homotopy_check(y2, x2, prof2)
        assert rep.passed, rep.summary_lines()


def test_class_residual_identity(sp1, sp2):
    flat = elem(sp2, "lgv", {(0, 0, ((X, X),)): 2}, L=6, K=3, G=1, N=1)
    assert class_residual_identity(flat)
    bumpy = elem(sp2, "lgv", {(0, 0, ((X, X, XI, XI),)): 1,
                              (0, 0, ((X, XI),)): 2}, L=8, K=4, P=3)
    assert not mc_residual(bumpy).is_zero()
    assert class_residual_identity(bumpy)  # product form, non-flat input
    crooked = elem(sp1, "lgv", {(0, 0, ((0, 0, 0),)): 1},
                   L=7, K=3, G=2, N=2)     # not flat, degenerate form
    assert class_residual_identity(crooked)
    with pytest.raises(UsageError):
        class_residual_identity(elem(sp2, "lgv", {(0, 0, ((X, X, XI),)): 1}))


def test_even_pairing_exponential_collapses(sp1):
    """Candidates over an even pairing are odd blocks, so the series
    stops after the linear term and the product form of the cycle
    computation overcounts by exactly residual . x."""
    t, t3 = (0,), (0, 0, 0)
    prof = TruncationProfile(L=9, K=3, G=2, N=2, P=4)
    x = LambdaElement(sp1, "lgv", prof, {(0, 0, (t3,)): F(1)})
    cx = exp_chain(x)
    assert cx.terms == {(0, 0, ()): F(1), (0, 0, ((t3,),)): F(1)}
    res = mc_residual(x)
    defect = chain_delta(cx) - chain_mul(embed_element(res), cx)
    assert defect.terms == {(0, 1, ((t,), (t3,))): F(-3)}
