import random

import pytest
from hypothesis import given, settings, strategies as st

from itinlab.errors import NotGroupElement
from itinlab.permgroup import all_perms, eta, from_word, generator, identity, multiplicity, parse_perm
from itinlab.spinsign import (
    CliffordElem, LiftedSignedPerm, acute, canonicalize, cl_acute_gen, cl_hat_gen, cl_product, grave_perm,
    group_mul, hat_eta_table, hat_oracle, hat_perm, hat_perm_along, lifted, lifted_inverse, oracle_mul,
    parse_lifted, parse_quat, pi_matrix, pi_matrix_cl, quat_diag, quat_gen, quat_lift, quat_mul, quat_one,
    quat_with_diag, to_clifford,
)

from conftest import perms


def test_quat_products():
    a1, a2, a3 = (quat_gen(3, i) for i in (1, 2, 3))
    assert quat_mul(a1, a1) == -quat_one(3)
    assert quat_mul(a2, a1) == parse_quat("-a1*a2", 3)
    assert quat_mul(a1, a3) == parse_quat("+a1*a3", 3)
    assert str(parse_quat("-a3a1", 3)) == "-a1*a3"


def test_hat_examples():
    assert str(hat_perm(parse_perm("[7245136]"))) == "+a3*a6"
    assert hat_perm(identity(4)) == quat_one(4)
    assert str(hat_perm(eta(2))) == "-1"
    assert str(hat_perm(eta(3))) == "-a1*a3"


def test_hat_eta_table_matches_recursion_and_oracle():
    for n in range(1, 11):
        assert hat_perm(eta(n)) == hat_eta_table(n) == hat_oracle(eta(n)), n


def test_small_rank_hat_fibres():
    for n, scalar_set, eta_set in [
        (2, {"[123]", "[321]"}, {"[123]", "[321]"}),
        (3, {"[1234]", "[1432]", "[3214]", "[3412]"}, {"[2143]", "[4123]", "[2341]", "[4321]"}),
    ]:
        he = hat_perm(eta(n))
        sc = {str(s) for s in all_perms(n) if hat_perm(s).is_scalar()}
        et = {str(s) for s in all_perms(n) if hat_perm(s) in (he, -he)}
        assert sc == scalar_set and et == eta_set
        # hat = 1 only at e, hat = hat(eta) only at eta
        assert [s for s in all_perms(n) if hat_perm(s) == quat_one(n)] == [identity(n)]
        assert [s for s in all_perms(n) if hat_perm(s) == he] == [eta(n)]
    for n, vals in [(3, ("[1432]", "[3214]", "[3412]")), ]:
        assert all(str(hat_perm(parse_perm(v))) == "-1" for v in vals)
    assert all(str(hat_perm(parse_perm(v))) == "+a1*a3" for v in ("[2143]", "[4123]", "[2341]"))


def test_larger_ranks_have_extra_fibre_members():
    s0 = from_word(4, (1, 2, 3, 4, 3, 2, 1))
    assert s0 != identity(4) and hat_perm(s0) == quat_one(4)
    assert hat_perm(eta(4) * s0) == hat_perm(eta(4)) == hat_perm(s0 * eta(4))


@given(perms(1, 5))
def test_hat_eps_is_mult_mod_two(s):
    assert hat_perm(s).eps == tuple(m % 2 for m in multiplicity(s))


def test_pihat_diagonal_exhaustive():
    for n in range(1, 5):
        for s in all_perms(n):
            dg = quat_diag(hat_perm(s))
            assert dg == tuple((-1) ** (i + s(i)) for i in range(1, n + 2))


def _random_reduced_word(s, rnd):
    w, cur = [], s
    while not cur.is_identity():
        d = [i for i in range(1, s.n + 1) if cur(i) > cur(i + 1)]
        i = rnd.choice(d)
        w.append(i)
        cur = generator(s.n, i) * cur
    return w


@given(perms(1, 5), st.randoms(use_true_random=False))
def test_hat_independent_of_reduced_word(s, rnd):
    assert hat_perm_along(s, _random_reduced_word(s, rnd)) == hat_perm(s)


def test_clifford_generator_identities():
    d = 3
    a1, a2 = cl_acute_gen(d, 1), cl_acute_gen(d, 2)
    assert a1 * a1 == cl_hat_gen(d, 1)
    assert cl_product(d, [a1] * 8) == CliffordElem.scalar(d)
    assert cl_product(d, [a1] * 4) == CliffordElem.scalar(d, -1)
    assert a1 * a2 * a1 == a2 * a1 * a2
    e3 = cl_acute_gen(4, 3)
    b1 = cl_acute_gen(4, 1)
    assert b1 * e3 == e3 * b1
    for g in (a1, a2):
        assert g * g.reverse() == CliffordElem.scalar(d)


def test_stepacute_relations_in_oracle():
    n = 4
    d = n + 1
    for i in range(1, n + 1):
        ai = cl_acute_gen(d, i)
        for j in range(1, n + 1):
            hj = cl_hat_gen(d, j)
            if abs(i - j) == 1:
                assert hj * ai == ai.reverse() * hj
                assert hj * ai.reverse() == ai * hj
            else:
                assert hj * ai == ai * hj
                assert hj * ai.reverse() == ai.reverse() * hj


def test_pi_matrix_examples():
    m = pi_matrix_cl(cl_acute_gen(3, 1))
    assert m == [[0, -1, 0], [1, 0, 0], [0, 0, 1]]
    assert pi_matrix(acute(generator(2, 1))) == m
    pe = pi_matrix(acute(eta(3)))
    anti = [pe[3 - k][k] for k in range(4)]  # reading the antidiagonal from the bottom up
    assert anti == [1, -1, 1, -1]
    assert pi_matrix(lifted(n=3)) == [[int(i == j) for j in range(4)] for i in range(4)]


@given(perms(1, 4))
def test_pi_matrix_agrees_with_oracle(s):
    for q in (quat_one(s.n), quat_gen(s.n, 1)):
        z = LiftedSignedPerm(q, s)
        assert pi_matrix(z) == pi_matrix_cl(to_clifford(z))


def test_group_mul_examples():
    a1 = acute(generator(3, 1))
    assert group_mul(a1, a1) == quat_lift(quat_gen(3, 1))
    assert group_mul(acute(generator(3, 2)), acute(generator(3, 1))) == acute(from_word(3, (2, 1)))
    e = eta(3)
    assert group_mul(acute(e), acute(e)) == quat_lift(hat_perm(e))
    assert grave_perm(generator(3, 1)) == LiftedSignedPerm(parse_quat("-a1", 3), generator(3, 1))
    assert canonicalize(CliffordElem.scalar(4, -1)) == LiftedSignedPerm(-quat_one(3), identity(3))


def _random_element(n, rnd, length):
    """A random product of acute generators, their inverses and hat generators."""
    d = n + 1
    z, cl = lifted(n=n), CliffordElem.scalar(d)
    for _ in range(length):
        i = rnd.randint(1, n)
        kind = rnd.randrange(3)
        if kind == 0:
            g, c = acute(generator(n, i)), cl_acute_gen(d, i)
        elif kind == 1:
            g, c = lifted_inverse(acute(generator(n, i))), cl_acute_gen(d, i).reverse()
        else:
            g, c = quat_lift(quat_gen(n, i)), cl_hat_gen(d, i)
        z, cl = group_mul(z, g), cl * c
    return z, cl


def test_oracle_equivalence_random_words():
    rnd = random.Random(20240611)
    for n in range(1, 5):
        for _ in range(250):
            z, cl = _random_element(n, rnd, rnd.randint(0, 12))
            assert canonicalize(cl) == z
            w, _ = _random_element(n, rnd, rnd.randint(0, 6))
            assert group_mul(z, w) == oracle_mul(z, w)


@settings(max_examples=60)
@given(st.integers(1, 3), st.randoms(use_true_random=False))
def test_inverse_and_associativity(n, rnd):
    a, _ = _random_element(n, rnd, 6)
    b, _ = _random_element(n, rnd, 6)
    c, _ = _random_element(n, rnd, 6)
    one = lifted(n=n)
    assert group_mul(a, lifted_inverse(a)) == one
    assert group_mul(group_mul(a, b), c) == group_mul(a, group_mul(b, c))


def test_parity_rule_exhaustive():
    for n in range(1, 4):
        d = n + 1
        for bits in range(1 << n):
            eps = tuple(bits >> k & 1 for k in range(n))
            q = parse_quat("+" + "".join(f"a{k + 1}" for k in range(n) if eps[k]) or "+1", n)
            cq = to_clifford(quat_lift(q))
            for i in range(1, n + 1):
                odd = ((eps[i - 2] if i >= 2 else 0) + (eps[i] if i < n else 0)) % 2
                ai = cl_acute_gen(d, i)
                lhs = cq * ai
                if odd:
                    assert lhs == ai.reverse() * cq
                    assert quat_mul(q, quat_gen(n, i)) == -quat_mul(quat_gen(n, i), q)
                else:
                    assert lhs == ai * cq
                    assert quat_mul(q, quat_gen(n, i)) == quat_mul(quat_gen(n, i), q)
                dg = quat_diag(q)
                assert (dg[i] == -dg[i - 1]) == bool(odd)


def test_quat_with_diag_round_trip_and_rejects_odd():
    for bits in range(1 << 3):
        q = parse_quat("+" + "".join(f"a{k + 1}" for k in range(3) if bits >> k & 1) or "+1", 3)
        assert quat_with_diag(quat_diag(q)) == q
    with pytest.raises(NotGroupElement):
        quat_with_diag((-1, 1, 1, 1))


def test_lifted_text_and_json():
    z = parse_lifted("q=-a1*a3; sigma=[2143]")
    assert str(z) == "q=-a1*a3; sigma=[2143]"
    assert z.to_json() == {"sign": -1, "eps": [1, 0, 1], "sigma": [2, 1, 4, 3]}
