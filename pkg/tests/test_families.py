import pytest

from hfree.families import (FamilyError, UnresolvedFigureError, adopt_catalog_candidates, make_catalog_h,
                            make_complete, make_cycle, make_f_prime, make_fan, make_friendship, make_h,
                            make_path, make_s, make_s_minus, make_star, parse_family_spec)
from hfree.graph import canonical_form, is_connected


@pytest.mark.parametrize("n", range(3, 40))
def test_s_size_and_degrees(n):
    g = make_s(n)
    assert g.m == 2 * n - 3
    assert sorted(g.degrees(), reverse=True)[:2] == [n - 1, n - 1]


@pytest.mark.parametrize("n", range(4, 40))
def test_s_minus_shape(n):
    g = make_s_minus(n)
    assert g.m == 2 * n - 4
    assert g.degrees().count(1) == 1
    assert is_connected(g)


def test_s_minus_example():
    g = make_s_minus(21)
    assert (g.n, g.m) == (21, 38)
    assert sorted(g.degrees(), reverse=True)[:2] == [20, 19]


@pytest.mark.parametrize("k,l", [(3, 3), (4, 3), (4, 4), (5, 3), (6, 7)])
def test_h_shape(k, l):
    g = make_h(k, l)
    assert (g.n, g.m) == (k + l - 1, k + l)
    assert g.degree(0) == 4


def test_f_prime_one_pendant_is_s_minus():
    for m in range(6, 61, 2):
        assert canonical_form(make_f_prime(m, 1)) == canonical_form(make_s_minus((m + 4) // 2))


def test_f_prime_hub_choice_isomorphic():
    for m, l in [(12, 3), (20, 5), (38, 7)]:
        a, b = make_f_prime(m, l, hub=0), make_f_prime(m, l, hub=1)
        assert a.m == b.m == m
        assert canonical_form(a) == canonical_form(b)


@pytest.mark.parametrize("m,l", [(12, 2), (4, 3), (12, -1)])
def test_f_prime_rejects(m, l):
    with pytest.raises(FamilyError):
        make_f_prime(m, l)


def test_small_families():
    assert make_fan(3).m == 5  # paw plus chord: K1 + P3
    assert make_friendship(2).m == 6
    assert canonical_form(make_friendship(2)) == canonical_form(make_h(3, 3))
    assert make_star(5).degrees()[0] == 5
    assert make_cycle(5).m == 5


def test_catalog():
    assert canonical_form(make_catalog_h(1)) == canonical_form(make_path(4))
    assert make_catalog_h(5).m == 5
    assert canonical_form(make_catalog_h(6)) == canonical_form(make_complete(4))
    assert make_catalog_h(7, 4).m == 4
    with pytest.raises(FamilyError):
        make_catalog_h(8)


def test_catalog_pictorial_members():
    from hfree import families

    saved = dict(families._ADOPTED)
    families._ADOPTED.clear()
    try:
        with pytest.raises(UnresolvedFigureError):
            make_catalog_h(3)
        adopt_catalog_candidates(make_cycle(3), make_path(4))
        assert make_catalog_h(3).m == 3
    finally:
        families._ADOPTED.clear()
        families._ADOPTED.update(saved)


@pytest.mark.parametrize("text,size", [("s_minus:21", 38), ("h(4,3)", 7), ("s:6", 9),
                                       ("f_prime(12,3)", 12), ("star:4", 4)])
def test_parse_family_spec(text, size):
    assert parse_family_spec(text).build().m == size


@pytest.mark.parametrize("text", ["nope:3", "s:x", "s:1,2"])
def test_parse_family_spec_errors(text):
    with pytest.raises(FamilyError):
        parse_family_spec(text).build()
