"""Exact computations in the group of birational self-maps of the real projective plane."""

from .birational_maps import BirationalMap, base_points, compose, compose_word, inverse_of
from .errors import CremonaError, InvariantViolation, ValidationError
from .generators import GeneratorTag, classify, sigma, sigma_std, standard_quintic
from .parsing import parse_map

__all__ = [
    "BirationalMap",
    "clear_caches",
    "CremonaError",
    "GeneratorTag",
    "InvariantViolation",
    "ValidationError",
    "base_points",
    "classify",
    "compose",
    "compose_word",
    "inverse_of",
    "parse_map",
    "sigma",
    "sigma_std",
    "standard_quintic",
]


def clear_caches():
    """Drop all memoized results, e.g. before timing a computation from scratch."""
    from . import amalgam, birational_maps, generators, sampling
    for fn in (amalgam.classify_letter, birational_maps._proper_base_points_cached,
               generators.conic_bundle_link, generators.is_in_Jstar, generators.is_in_Jcirc,
               generators.classify, sampling.quintic_pool, sampling.letter_pool, sampling.gstar_pool):
        fn.cache_clear()
