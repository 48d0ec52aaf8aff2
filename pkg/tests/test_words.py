import random

import pytest
from hypothesis import given, settings, strategies as st

from itinlab.errors import DimTooHigh, NotDimOne, NotDimZero, ParseError
from itinlab.permgroup import all_perms, parse_perm
from itinlab.spinsign import parse_quat, quat_one
from itinlab.words import (
    Word, basic_word_of, boundary, chain_add, chain_str, edge_boundary, edge_endpoints, gens_word,
    letter_boundary, lower_set, lower_set_full, normal_form, ord_key, parse_word, precedes, word_stats, xdim,
    xdim_str,
)


def W(text, n=None):
    return parse_word(text, n)


def chain(text, n):
    """Parse '[ba]a + b[ab] - [ab]b' into a chain."""
    out = {}
    sign = 1
    for tok in text.replace("-", " - ").replace("+", " + ").split():
        if tok in "+-":
            sign = -1 if tok == "-" else 1
        else:
            out = chain_add(out, {W(tok, n): sign})
    return out


def test_parse_and_print_round_trip():
    for text in ("b[ab]", "[ac]b[ac]", "abab", "[aba]", "a1[a3a5]"):
        w = W(text, 5)
        assert W(str(w), 5) == w
    assert str(W("a1[a3a5]", 5)) == "a[ce]"
    assert len(W("aba", 2)) == 3 and len(W("[aba]", 2)) == 1
    with pytest.raises(ParseError):
        W("[aa]", 2)
    with pytest.raises(ParseError):
        W("[ab", 2)


def test_stats_examples():
    st_ = word_stats(Word((), 2))
    assert (st_.dim, st_.length, st_.hat) == (0, 0, quat_one(2))
    w = W("[ac]b[ac]", 3)
    assert (w.dim, len(w)) == (2, 3) and xdim_str(w) == "2X + 1"
    w = W("aaaa", 2)
    assert w.hat == quat_one(2) and w.dim == 0
    assert xdim(W("[aba]", 2))[-3:] == (1, 0, 0)


def test_basic_words():
    n = 3
    assert str(basic_word_of(-quat_one(n))) == "aa"
    assert str(basic_word_of(quat_one(n))) == "aaaa"
    assert str(basic_word_of(parse_quat("+a1a3", n))) == "ac"
    assert str(basic_word_of(parse_quat("-a2", n))) == "aab"


def test_normal_form_examples():
    assert str(normal_form(W("abab"))) == "aa"
    assert normal_form(W("baa")) == normal_form(W("aab")) == W("aab")
    assert normal_form(W("a")) == W("a")
    with pytest.raises(NotDimZero):
        normal_form(W("[ab]"))


def test_edge_examples():
    assert edge_boundary(W("[ba]")) == chain("bab - a", 2)
    assert edge_boundary(W("[ab]")) == chain("b - aba", 2)
    assert edge_boundary(W("[ac]")) == chain("ca - ac", 3)
    assert edge_endpoints(W("a[ba]")) == (W("aa", 2), W("abab", 2))
    with pytest.raises(NotDimOne):
        edge_endpoints(W("ab"))


def test_letter_boundary_examples():
    assert letter_boundary(parse_perm("[aba]")) == chain("[ba]a + b[ab] - [ab]b - a[ba]", 2)
    assert letter_boundary(parse_perm("[bcb]", 3)) == chain("[cb]b + c[bc] - [bc]c - b[cb]", 3)
    assert letter_boundary(parse_perm("[ace]", 5)) == chain(
        "a[ce] + [ae]c + e[ac] - [ce]a - c[ae] - [ac]e", 5)
    assert letter_boundary(parse_perm("[abc]")) == chain(
        "abc[ab] + a[bc] + [ac] - [bc]a - [ab]cba + ab[ac]ba", 3)
    with pytest.raises(DimTooHigh):
        letter_boundary(parse_perm("[ab]"))


def test_product_cell_boundaries():
    assert boundary(W("[ba][ab]")) == chain("[ba]aba + bab[ab] - [ba]b - a[ab]", 2)
    assert boundary(W("[ac]b[ac]")) == chain("[ac]bac + cab[ac] - [ac]bca - acb[ac]", 3)


def _inv3_letters(n):
    return [s for s in all_perms(n) if s.inv == 3]


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_every_dimension_two_letter_is_covered_and_closed(n):
    for s in _inv3_letters(n):
        c = letter_boundary(s)
        assert c
        total = {}
        for w, v in c.items():
            total = chain_add(total, edge_boundary(w), v)
        assert total == {}, str(s)


def test_boundary_of_boundary_for_products():
    for text, n in (("[ba][ab]", 2), ("a[ac]b[bd]", 4), ("[acb]a", 3), ("c[bac]", 3)):
        total = {}
        for w, v in boundary(W(text, n)).items():
            total = chain_add(total, edge_boundary(w), v)
        assert total == {}


def _random_edge(rnd, n, length):
    inv2 = [s for s in all_perms(n) if s.inv == 2]
    gens = [s for s in all_perms(n) if s.inv == 1]
    letters = [rnd.choice(gens) for _ in range(length - 1)]
    letters.insert(rnd.randrange(length), rnd.choice(inv2))
    return Word(letters, n)


def test_edges_conserve_hat():
    rnd = random.Random(1)
    for _ in range(300):
        n = rnd.randint(2, 5)
        e = _random_edge(rnd, n, rnd.randint(1, 6))
        lo, hi = edge_endpoints(e)
        assert lo.hat == hi.hat == e.hat


@settings(max_examples=80, deadline=None)
@given(st.integers(2, 4), st.randoms(use_true_random=False))
def test_normal_form_constant_on_edge_orbits(n, rnd):
    w = gens_word(n, [rnd.randint(1, n) for _ in range(rnd.randint(1, 6))])
    nf = normal_form(w)
    assert normal_form(nf) == nf
    for _ in range(10):
        # pick an edge with w as one endpoint and jump to the other end
        cands = []
        for s in (s for s in all_perms(n) if s.inv == 2):
            for i in range(len(w) + 1):
                for cut in (1, 2, 3):
                    e = Word(w.letters[:i] + (s,) + w.letters[i + cut:], n) if i + cut <= len(w) else None
                    if e is None:
                        continue
                    lo, hi = edge_endpoints(e)
                    if lo == w:
                        cands.append(hi)
                    elif hi == w:
                        cands.append(lo)
        if not cands:
            break
        w = rnd.choice(cands)
        assert normal_form(w) == nf


def test_lower_set_examples():
    got = {str(w) for w in lower_set(parse_perm("[aba]"))}
    assert got == {"aa", "abab", "bb", "baba", "[ba]a", "a[ba]", "[ab]b", "b[ab]", "[aba]"}
    assert {str(w) for w in lower_set(parse_perm("a", 2))} == {"a"}
    assert {str(w) for w in lower_set(parse_perm("[ac]", 3))} == {"ac", "ca", "[ac]"}
    with pytest.raises(DimTooHigh):
        lower_set(parse_perm("[abac]"))


def test_precedes_examples():
    assert precedes(W("abab"), W("[aba]"))
    assert precedes(W("[ab]b"), W("[ab]b"))
    assert precedes(W("[ac]b[ac]"), W("[acb]"))
    assert precedes(W("aa", 2), W("[aba]", 2))
    assert precedes(W("ab", 2), W("[aba]", 2)) is False
    assert precedes(W("abac", 3), W("[abac]", 3)) is None


@pytest.mark.parametrize("top", ["[aba]", "[acb]", "[abc]", "[bac]"])
def test_precedes_implies_hat_length_and_ord(top):
    s = parse_perm(top, 3)
    w1 = Word([s], 3)
    for w0 in lower_set_full(s):
        assert precedes(w0, w1)
        assert w0.hat == w1.hat and len(w0) >= len(w1)
        assert ord_key(w0) <= ord_key(w1)


def test_ord_examples():
    assert ord_key(Word((), 3))[0] == (0,) * len(ord_key(Word((), 3))[0])
    assert ord_key(W("[ac]b[ac]", 3)) < ord_key(W("[acb]", 3))
    assert ord_key(W("ab", 2)) < ord_key(W("[ab]", 2))


def test_chain_text():
    assert chain_str(chain("bab - a", 2)) in ("bab - a", "-a + bab")
