""" Small utilities shared by the rest of lpprox """
from .io import atomic_write_text
from .rng import derive_rng, derive_seed_sequence, spawn_rngs
