import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from delsarte_k3 import pencil_counts as pc
from delsarte_k3.field_characters import gauss_table, make_field

ALL_LABELS = sorted(pc.CATALOG)


def test_catalog_has_ten_delsarte_quartics():
    assert len(pc.CATALOG) == 10
    for spec in pc.CATALOG.values():
        assert all(sum(row) == 4 for row in spec.A)
        assert sum(spec.dual_weights) == spec.dT


def test_unknown_pencil():
    with pytest.raises(pc.UnknownPencil):
        pc.get_pencil("Q5")
    with pytest.raises(KeyError):
        pc.get_pencil("")


def test_dual_weights_solve_transposed_system():
    for spec in pc.CATALOG.values():
        A = np.array(spec.A)
        w = np.array(spec.dual_weights)
        assert np.all(w @ A == spec.dT)


@pytest.mark.parametrize("label", ALL_LABELS)
@pytest.mark.parametrize("p", [5, 7])
def test_brute_force_against_naive_walk(oracle, label, p):
    ctx = make_field(p)
    for psi in (1, 2, p - 1):
        assert pc.brute_force_count(pc.get_pencil(label), psi, ctx) == oracle(label, psi, p)


def test_brute_force_limit():
    with pytest.raises(ValueError):
        pc.brute_force_count(pc.get_pencil("C4"), 1, make_field(47, 2))


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(st.integers(-6, 6), min_size=3, max_size=3), min_size=2, max_size=4))
def test_snf_is_a_unimodular_diagonalisation(rows):
    A = np.array(rows, dtype=object)
    P, D, Q = pc.snf(A)
    assert (P.dot(A).dot(Q) == D).all()
    assert abs(round(np.linalg.det(P.astype(float)))) == 1
    assert abs(round(np.linalg.det(Q.astype(float)))) == 1
    m, n = D.shape
    assert all(D[i, j] == 0 for i in range(m) for j in range(n) if i != j)
    diag = [int(D[i, i]) for i in range(min(m, n))]
    assert all(d >= 0 for d in diag)
    for a, b in zip(diag, diag[1:]):
        assert (a == 0 and b == 0) or (a != 0 and b % a == 0)


def test_snf_known_example():
    _, D, _ = pc.snf([[2, 4, 4], [-6, 6, 12], [10, -4, -16]])
    assert [D[i, i] for i in range(3)] == [2, 6, 12]


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(ALL_LABELS), st.sampled_from([4, 6, 10, 12]))
def test_character_solutions_match_enumeration(label, qx):
    monos = pc.get_pencil(label).monomials()[:3]
    sol = pc.character_solutions([m[:3] for m in monos], qx, strict=False)
    brute = {s for s in itertools.product(range(qx), repeat=3)
             if sum(s) % qx == 0 and all(sum(v[j] * x for v, x in zip(monos, s)) % qx == 0 for j in range(3))}
    assert {tuple(int(x) for x in row) for row in sol.enumerate()} == brute
    assert len(sol) == len(brute)


def test_strict_hypothesis():
    with pytest.raises(pc.HypothesisViolated):
        pc.character_solutions([(4, 0), (0, 4)], 4)


@pytest.mark.parametrize("label", ALL_LABELS)
def test_koblitz_matches_brute_force_p7(label):
    ctx = make_field(7)
    spec = pc.get_pencil(label)
    for psi in range(7):
        assert pc.koblitz_count(spec, psi, ctx) == pc.brute_force_count(spec, psi, ctx)


def test_koblitz_over_extension_field():
    ctx = make_field(3, 2)
    for label in ("F4", "C2C2", "L4"):
        spec = pc.get_pencil(label)
        for psi in (1, 5):
            assert pc.koblitz_count(spec, psi, ctx) == pc.brute_force_count(spec, psi, ctx)


def test_strata_sum_to_koblitz_count():
    ctx = make_field(11)
    spec = pc.get_pencil("C2F2")
    strata = pc.koblitz_strata(spec, 3, ctx)
    assert sum(strata.values()) == pc.koblitz_count(spec, 3, ctx)
    assert len(strata) == 15


@pytest.mark.parametrize("label", pc.CLOSED_FORM_FAMILIES)
def test_closed_form_against_naive_walk(oracle, label):
    p = 11 if label != "C4" else 13
    ctx = make_field(p)
    table = gauss_table(ctx)
    spec = pc.get_pencil(label)
    for psi in range(1, p):
        if pc.t_value(label, psi, ctx) in (0, 1):
            continue
        assert pc.closed_count(spec, psi, ctx, table) == oracle(label, psi, p)


def test_closed_form_terms_layout():
    ctx = make_field(13)
    terms = pc.closed_form_terms(pc.get_pencil("C2F2"), 1, ctx)
    assert set(terms) == {"algebraic", "H(club0)", "q*H(club1)", "q*F(club2+club3)"}
    terms = pc.closed_form_terms(pc.get_pencil("C2F2"), 1, make_field(11))
    assert "q*F(club2+club3)" not in terms


def test_closed_form_rejections():
    with pytest.raises(pc.BadPrimeForFamily):
        pc.closed_count(pc.get_pencil("C4"), 1, make_field(7))
    with pytest.raises(pc.UnknownPencil):
        pc.closed_count(pc.get_pencil("F4"), 1, make_field(7))
    with pytest.raises(pc.DegenerateFiber):
        pc.closed_count(pc.get_pencil("C2C2"), 0, make_field(7))


def test_degenerate_fiber_detected():
    ctx = make_field(17)
    bad = [psi for psi in range(1, 17) if pc.t_value("C2C2", psi, ctx) == 1]
    assert bad
    with pytest.raises(pc.DegenerateFiber):
        pc.closed_count(pc.get_pencil("C2C2"), bad[0], ctx)


def test_negated_club_argument_breaks_the_count():
    # the club2/club3 sums only reproduce the count with t = +2^-10 3^-6 psi^-12
    from delsarte_k3.hyp_sums import gamma_sum

    spec = pc.get_pencil("C2F2")
    for p in (17, 29):
        ctx = make_field(p)
        table = gauss_table(ctx)
        misses = {1: 0, -1: 0}
        for psi in range(1, p):
            t = pc.t_value("C2F2", psi, ctx)
            if t in (0, 1):
                continue
            terms = pc.closed_form_terms(spec, psi, ctx, table)
            sign = 1 if terms["algebraic"] == p * p + 4 * p + 1 else -1
            base = complex(terms["algebraic"]) + terms["H(club0)"] + terms["q*H(club1)"]
            truth = pc.brute_force_count(spec, psi, ctx)
            for s in misses:
                tt = t if s == 1 else ctx.neg(t)
                total = base + sign * p * (gamma_sum(pc.CLUB2_TRIPLE, tt, ctx, table)
                                           + gamma_sum(pc.CLUB3_TRIPLE, tt, ctx, table))
                misses[s] += abs(total.real - truth) > 0.5
        assert misses[1] == 0
        assert misses[-1] > 0
