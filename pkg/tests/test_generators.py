"""Parity-word labelling and benchmark corpus generation."""

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sepdfa.generators import (
    BudgetExceededError,
    ParityConfig,
    classify_parity_word,
    format_stats_line,
    gen_parity_samples,
    gen_random_dfa,
    gen_samples_from_dfa,
    parity_stats,
)
from sepdfa.samples import DONT_CARE, NEGATIVE, POSITIVE


def classify_by_consecutive_occurrences(w, colours):
    """Independent labelling: cycles are consecutive occurrence pairs."""
    positions = {}
    for idx, colour in enumerate(w):
        positions.setdefault(colour, []).append(idx)
    verdicts = []
    for colour, where in positions.items():
        for prev, cur in zip(where, where[1:]):
            verdicts.append(max(w[prev + 1:cur + 1]) % 2 == 0)
    if not verdicts:
        return DONT_CARE
    if all(verdicts):
        return POSITIVE
    if not any(verdicts):
        return NEGATIVE
    return DONT_CARE


class TestClassify:
    def test_all_cycles_winning(self):
        assert classify_parity_word((0, 0, 1, 2, 1, 2), 3) == POSITIVE

    def test_all_cycles_losing(self):
        assert classify_parity_word((1, 3, 1, 2, 3, 3, 1, 2), 4) == NEGATIVE

    def test_mixed_cycles(self):
        assert classify_parity_word((2, 1, 2, 3, 2), 4) == DONT_CARE

    def test_cycle_free(self):
        assert classify_parity_word((0, 1, 2), 3) == DONT_CARE
        assert classify_parity_word((), 2) == DONT_CARE

    def test_single_colour_runs(self):
        assert classify_parity_word((0, 0), 2) == POSITIVE
        assert classify_parity_word((1, 1, 1), 2) == NEGATIVE

    def test_colour_out_of_range(self):
        with pytest.raises(ValueError):
            classify_parity_word((2,), 2)

    @given(st.integers(2, 4).flatmap(
        lambda c: st.tuples(st.just(c),
                            st.lists(st.integers(0, c - 1), max_size=9))))
    def test_matches_independent_labelling(self, case):
        colours, letters = case
        w = tuple(letters)
        assert classify_parity_word(w, colours) == \
            classify_by_consecutive_occurrences(w, colours)


class TestParityConfig:
    def test_validation(self):
        with pytest.raises(ValueError):
            ParityConfig(1, 3)
        with pytest.raises(ValueError):
            ParityConfig(3, 3)

    def test_word_count(self):
        assert ParityConfig(2, 3).word_count == 8
        assert ParityConfig(5, 8).word_count == 5 ** 8


class TestGenParity:
    def test_smallest_corpus_exact(self):
        s = gen_parity_samples(ParityConfig(2, 3))
        assert s.positives == frozenset({
            (0, 0, 0), (0, 0, 1), (1, 0, 0)})
        assert s.negatives == frozenset({
            (0, 1, 0), (0, 1, 1), (1, 0, 1), (1, 1, 0), (1, 1, 1)})

    def test_counts_three_colours(self):
        s = gen_parity_samples(ParityConfig(3, 4))
        assert (len(s.positives), len(s.negatives)) == (51, 20)

    def test_partition_covers_labelled_words(self):
        cfg = ParityConfig(2, 4)
        s = gen_parity_samples(cfg)
        for w in itertools.product(range(2), repeat=4):
            label = classify_parity_word(w, 2)
            assert (w in s.positives) == (label == POSITIVE)
            assert (w in s.negatives) == (label == NEGATIVE)
        assert all(len(w) == 4 for w in s.positives | s.negatives)

    def test_budget(self):
        with pytest.raises(BudgetExceededError):
            gen_parity_samples(ParityConfig(2, 3), budget=7)
        assert gen_parity_samples(ParityConfig(2, 3), budget=8).size == 8


class TestRandomDfa:
    def test_deterministic_per_seed(self):
        assert gen_random_dfa(5, 2, 42) == gen_random_dfa(5, 2, 42)
        # not a guarantee, but these seeds do differ
        assert gen_random_dfa(5, 2, 1) != gen_random_dfa(5, 2, 2)

    @pytest.mark.parametrize("size", [1, 2, 5, 9])
    def test_all_states_reachable(self, size):
        dfa = gen_random_dfa(size, 2, 7)
        seen = {0}
        frontier = [0]
        while frontier:
            q = frontier.pop()
            for a in range(2):
                r = dfa.transitions[(q, a)]
                if r not in seen:
                    seen.add(r)
                    frontier.append(r)
        assert seen == set(range(size))

    def test_bad_arguments(self):
        with pytest.raises(ValueError):
            gen_random_dfa(0)
        with pytest.raises(ValueError):
            gen_random_dfa(2, 0)


class TestSamplesFromDfa:
    def test_labels_match_hidden_dfa(self):
        dfa = gen_random_dfa(4, 2, 3)
        s = gen_samples_from_dfa(dfa, 60, 6, seed=3)
        assert s.size == 60
        for w in s.positives:
            assert dfa.accepts(w)
        for w in s.negatives:
            assert not dfa.accepts(w)
        assert all(len(w) <= 6 for w in s.positives | s.negatives)

    def test_deterministic_per_seed(self):
        dfa = gen_random_dfa(3, 2, 0)
        a = gen_samples_from_dfa(dfa, 30, 5, seed=11)
        b = gen_samples_from_dfa(dfa, 30, 5, seed=11)
        assert a == b

    def test_full_pool_enumeration(self):
        # pool of words up to length 2 over two letters has 7 entries
        dfa = gen_random_dfa(2, 2, 0)
        s = gen_samples_from_dfa(dfa, 7, 2, seed=0)
        assert s.size == 7

    def test_pool_overflow(self):
        dfa = gen_random_dfa(2, 2, 0)
        with pytest.raises(ValueError):
            gen_samples_from_dfa(dfa, 8, 2)

    @given(st.integers(0, 7), st.integers(0, 100))
    @settings(max_examples=25)
    def test_requested_count_is_exact(self, count, seed):
        dfa = gen_random_dfa(3, 2, 5)
        s = gen_samples_from_dfa(dfa, count, 4, seed=seed)
        assert s.size == count


class TestStats:
    def test_smallest_corpus_line(self):
        line = format_stats_line(parity_stats(ParityConfig(2, 3)))
        assert line == "2\t3\t3\t5\t15\t8\t12"

    def test_three_colour_line(self):
        stats = parity_stats(ParityConfig(3, 4))
        assert stats == (3, 4, 51, 20, 111, 23, 28)
