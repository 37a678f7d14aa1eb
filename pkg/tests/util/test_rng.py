import numpy as np
import pytest

from lpprox.util import derive_rng, derive_seed_sequence, spawn_rngs


class TestDeriveRng:
    def test_same_keys_same_stream(self):
        assert np.array_equal(derive_rng(42, 1, 2).random(5), derive_rng(42, 1, 2).random(5))

    def test_keys_separate_streams(self):
        assert not np.array_equal(derive_rng(42, 1).random(5), derive_rng(42, 2).random(5))
        assert not np.array_equal(derive_rng(42).random(5), derive_rng(43).random(5))

    def test_seed_is_reduced_to_64_bits(self):
        assert np.array_equal(derive_rng(2 ** 64 + 5).random(3), derive_rng(5).random(3))

    def test_negative_keys_are_rejected(self):
        with pytest.raises(ValueError):
            derive_seed_sequence(0, -1)


class TestSpawnRngs:
    def test_streams_do_not_depend_on_the_count(self):
        few = spawn_rngs(7, 2)
        many = spawn_rngs(7, 5)
        assert len(many) == 5
        for a, b in zip(few, many):
            assert np.array_equal(a.random(4), b.random(4))

    def test_spawned_streams_match_derived_ones(self):
        assert np.array_equal(spawn_rngs(7, 3, 9)[2].random(4), derive_rng(7, 9, 2).random(4))
