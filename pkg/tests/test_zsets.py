import random

import pytest

from typemonoid.zsets import (
    EventuallyPeriodicZSet,
    ep_all,
    ep_complement,
    ep_difference,
    ep_empty,
    ep_evens,
    ep_finite,
    ep_intersect,
    ep_odds,
    ep_residue,
    ep_set,
    ep_translate,
    ep_union,
)


def brute(x, lo=-60, hi=60):
    return set(x.window(lo, hi))


def random_ep(rng):
    mod = rng.choice([1, 2, 3, 4, 6])
    residues = [r for r in range(mod) if rng.random() < 0.5]
    pts = range(-8, 9)
    add = [n for n in pts if rng.random() < 0.15]
    remove = [n for n in pts if rng.random() < 0.15]
    # the factory sorts out whichever side each patch point belongs to
    keep_add = [n for n in add if n % mod not in residues]
    keep_remove = [n for n in remove if n % mod in residues]
    return ep_set(mod, residues, add=keep_add, remove=keep_remove)


class TestNormalForm:
    def test_trivial_identities(self):
        assert ep_union(ep_evens(), ep_odds()) == ep_all()
        assert ep_translate(ep_evens(), 1) == ep_odds()

    def test_patch_reabsorbed(self):
        gap = ep_difference(ep_evens(), ep_finite([0]))
        assert ep_union(gap, ep_finite([0])) == ep_evens()

    def test_modulus_reduction(self):
        assert ep_residue(4, [0, 2]) == ep_evens()
        assert ep_residue(6, [0, 1, 2, 3, 4, 5]) == ep_all()

    def test_redundant_patches_dropped(self):
        assert ep_set(2, [0], add=[4]) == ep_evens()
        assert ep_set(1, [0], remove=[3], add=[3]) == ep_all()

    def test_invariants_enforced(self):
        with pytest.raises(ValueError):
            EventuallyPeriodicZSet(2, frozenset([0]), frozenset([4]), frozenset())
        with pytest.raises(ValueError):
            EventuallyPeriodicZSet(2, frozenset([0]), frozenset(), frozenset([3]))
        with pytest.raises(ValueError):
            EventuallyPeriodicZSet(0, frozenset(), frozenset(), frozenset())

    def test_equality_is_set_equality(self):
        rng = random.Random(11)
        for _ in range(60):
            x, y = random_ep(rng), random_ep(rng)
            assert (x == y) == (brute(x) == brute(y) and brute(x, -300, 300) == brute(y, -300, 300))


class TestAlgebra:
    def test_membership(self):
        evens = ep_evens()
        assert 0 in evens and 2 in evens and -4 in evens
        assert 1 not in evens
        holed = ep_difference(evens, ep_finite([2]))
        assert 2 not in holed and 4 in holed

    def test_boolean_laws_randomized(self):
        rng = random.Random(7)
        for _ in range(40):
            x, y, z = random_ep(rng), random_ep(rng), random_ep(rng)
            assert ep_union(ep_union(x, y), z) == ep_union(x, ep_union(y, z))
            assert ep_intersect(x, ep_union(y, z)) == ep_union(
                ep_intersect(x, y), ep_intersect(x, z)
            )
            assert ep_complement(ep_union(x, y)) == ep_intersect(
                ep_complement(x), ep_complement(y)
            )
            assert ep_complement(ep_complement(x)) == x

    def test_ops_agree_with_window_enumeration(self):
        rng = random.Random(19)
        for _ in range(40):
            x, y = random_ep(rng), random_ep(rng)
            assert brute(ep_union(x, y)) == brute(x) | brute(y)
            assert brute(ep_intersect(x, y)) == brute(x) & brute(y)
            assert brute(ep_difference(x, y)) == brute(x) - brute(y)

    def test_translate_is_automorphism(self):
        rng = random.Random(23)
        for _ in range(30):
            x, y = random_ep(rng), random_ep(rng)
            k = rng.randrange(-7, 8)
            assert ep_translate(ep_union(x, y), k) == ep_union(
                ep_translate(x, k), ep_translate(y, k)
            )
            assert ep_translate(ep_complement(x), k) == ep_complement(
                ep_translate(x, k)
            )
            assert ep_translate(ep_translate(x, k), -k) == x

    def test_translate_window(self):
        x = ep_set(3, [1], add=[0], remove=[4])
        assert brute(ep_translate(x, 5), -20, 20) == {n + 5 for n in x.window(-25, 15)}

    def test_empty_and_all(self):
        assert ep_empty().is_empty()
        assert not ep_all().is_empty()
        assert ep_complement(ep_all()) == ep_empty()
        assert ep_intersect(ep_evens(), ep_odds()) == ep_empty()

    def test_str_forms(self):
        assert str(ep_empty()) == "{}"
        assert "2Z" in str(ep_evens())
