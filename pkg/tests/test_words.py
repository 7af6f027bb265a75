import random

import pytest

from typemonoid.words import (
    LETTERS,
    compile_word_regex,
    dfa_all,
    dfa_complement,
    dfa_difference,
    dfa_equivalent,
    dfa_first_letter,
    dfa_intersect,
    dfa_none,
    dfa_star,
    dfa_union,
    dfa_word,
    inverse_letter,
    invert_word,
    is_reduced,
    left_translate,
    reduce_word,
    reduced_words_upto,
)


def lang(x, max_len=4):
    return set(x.enumerate(max_len))


def random_language(rng):
    base = [dfa_first_letter(rng.choice(LETTERS)) for _ in range(2)]
    x = base[0]
    for y in base[1:]:
        x = dfa_union(x, y)
    if rng.random() < 0.5:
        x = dfa_union(x, dfa_word(rng.choice(["", "a", "ab", "Ba", "bb"])))
    if rng.random() < 0.3:
        x = dfa_complement(x)
    if rng.random() < 0.3:
        x = dfa_intersect(x, dfa_star(rng.choice(LETTERS)))
    return x


class TestWords:
    def test_reduce(self):
        assert reduce_word("aA") == ""
        assert reduce_word("abBA") == ""
        assert reduce_word("abAB") == "abAB"
        assert reduce_word("aabBA") == "a"
        with pytest.raises(ValueError):
            reduce_word("xyz")

    def test_is_reduced(self):
        assert is_reduced("") and is_reduced("abab") and is_reduced("aaaa")
        assert not is_reduced("aA") and not is_reduced("bB") and not is_reduced("x")

    def test_invert(self):
        assert invert_word("ab") == "BA"
        assert reduce_word("ab" + invert_word("ab")) == ""
        assert inverse_letter("a") == "A"

    def test_enumeration_counts(self):
        words = list(reduced_words_upto(3))
        assert len(words) == 1 + 4 + 12 + 36
        assert len(set(words)) == len(words)
        assert all(is_reduced(w) for w in words)


class TestAlgebra:
    def test_partition_of_whole(self):
        whole = dfa_word("")
        for c in LETTERS:
            whole = dfa_union(whole, dfa_first_letter(c))
        assert whole == dfa_all()
        assert dfa_equivalent(whole, dfa_all())

    def test_first_letters_disjoint(self):
        assert dfa_intersect(dfa_first_letter("a"), dfa_first_letter("b")).is_empty()

    def test_complement_of_empty(self):
        assert dfa_complement(dfa_none()) == dfa_all()

    def test_equality_is_language_equality(self):
        rng = random.Random(3)
        for _ in range(25):
            x, y = random_language(rng), random_language(rng)
            assert (x == y) == dfa_equivalent(x, y)
            assert (x == y) == (lang(x) == lang(y) and lang(x, 6) == lang(y, 6))

    def test_boolean_laws(self):
        rng = random.Random(5)
        for _ in range(15):
            x, y, z = (random_language(rng) for _ in range(3))
            assert dfa_union(dfa_union(x, y), z) == dfa_union(x, dfa_union(y, z))
            assert dfa_complement(dfa_union(x, y)) == dfa_intersect(
                dfa_complement(x), dfa_complement(y)
            )
            assert dfa_difference(x, y) == dfa_intersect(x, dfa_complement(y))

    def test_star(self):
        d = dfa_star("A")
        assert lang(d) == {"", "A", "AA", "AAA", "AAAA"}

    def test_languages_stay_reduced(self):
        rng = random.Random(9)
        for _ in range(10):
            x = random_language(rng)
            assert dfa_difference(x, dfa_all()).is_empty()


class TestLeftTranslate:
    def test_identity_move(self):
        x = dfa_first_letter("a")
        assert left_translate(x, "") == x

    def test_classical_identity(self):
        # a . W(a-1) is everything not starting with a
        moved = left_translate(dfa_first_letter("A"), "a")
        assert moved == dfa_complement(dfa_first_letter("a"))

    def test_inverse_move_roundtrip(self):
        rng = random.Random(13)
        for _ in range(12):
            x = random_language(rng)
            w = rng.choice(["a", "b", "AB", "ba", "aa"])
            assert left_translate(left_translate(x, w), invert_word(w)) == x

    def test_brute_force_agreement(self):
        # v in w.L iff reduce(w^-1 v) in L, checked on all short words
        rng = random.Random(17)
        movers = ["a", "A", "b", "B", "ab", "aB", "ba", "AA", "aba"]
        for _ in range(8):
            x = random_language(rng)
            for w in movers:
                moved = left_translate(x, w)
                wi = invert_word(w)
                for v in reduced_words_upto(6):
                    assert moved.accepts(v) == x.accepts(reduce_word(wi + v)), (w, v)

    def test_not_reduced_mover_rejected(self):
        with pytest.raises(ValueError):
            left_translate(dfa_all(), "aA")

    def test_translate_distributes_over_union(self):
        rng = random.Random(21)
        for _ in range(10):
            x, y = random_language(rng), random_language(rng)
            assert left_translate(dfa_union(x, y), "ab") == dfa_union(
                left_translate(x, "ab"), left_translate(y, "ab")
            )


class TestRegex:
    def test_literals_and_star(self):
        assert compile_word_regex("a(a|A|b|B)*") == dfa_first_letter("a")
        assert compile_word_regex("A*") == dfa_star("A")
        assert compile_word_regex("%") == dfa_word("")

    def test_union_and_concat(self):
        assert compile_word_regex("ab|ba") == dfa_union(dfa_word("ab"), dfa_word("ba"))
        assert compile_word_regex("a(b|B)") == dfa_union(dfa_word("ab"), dfa_word("aB"))

    def test_unreduced_words_filtered(self):
        # the compiler intersects with the reduced-word language
        assert compile_word_regex("aA").is_empty()
        assert compile_word_regex("a+A").is_empty()
        assert lang(compile_word_regex("a*A")) == {"A"}

    def test_parse_errors(self):
        for bad in ["(", "a)", "*a", "x"]:
            with pytest.raises(ValueError):
                compile_word_regex(bad)

    def test_plus_and_optional(self):
        assert compile_word_regex("a?") == dfa_union(dfa_word(""), dfa_word("a"))
        assert lang(compile_word_regex("b+")) == {"b", "bb", "bbb", "bbbb"}
