import random

import pytest

from cremona.amalgam import (
    GCIRC,
    GCIRC_ONLY,
    GSTAR,
    GSTAR_ONLY,
    IN_H,
    UNKNOWN,
    AmalgamWord,
    bass_serre_ball,
    classify_letter,
    coset_certificate,
    coset_separation,
    fixed_base_vertices,
    is_reduced,
    nontriviality_certificate,
    reduce,
    translation,
    translation_vector,
    word_of,
)
from cremona.birational_maps import automorphism, compose_word, is_identity
from cremona.errors import UnknownLetter, ValidationError
from cremona.generators import sigma, sigma_std
from cremona.sampling import quintic_pool, random_de_jonquieres, random_translation_vectors


@pytest.fixture(scope="module")
def q():
    return quintic_pool(1)[0]


def test_letter_classes(q):
    assert classify_letter(sigma()).variant == IN_H
    assert classify_letter(sigma_std()).variant == GSTAR_ONLY
    assert classify_letter(q).variant == GCIRC_ONLY
    assert classify_letter(automorphism([[0, 1, 0], [1, 0, 0], [0, 0, 1]])).variant == IN_H


def test_sigma_witness_recomposes():
    cls = classify_letter(compose_word([automorphism([[1, 1, 0], [0, 1, 0], [0, 0, 1]]), sigma()]))
    assert cls.variant == IN_H


def test_de_jonquieres_letter_is_unknown():
    f = random_de_jonquieres(random.Random(2), 3)
    if f.degree == 3:
        assert classify_letter(f).variant == UNKNOWN


def test_involution_cancels():
    assert len(reduce(word_of([sigma(), sigma()]))) == 0
    assert len(reduce(word_of([sigma_std(), sigma_std()]))) == 0


def test_h_letters_are_absorbed(q):
    perm = automorphism([[0, 1, 0], [1, 0, 0], [0, 0, 1]])
    w = word_of([sigma_std(), perm, sigma_std(), q])
    r = reduce(w)
    assert r.variants() == (GCIRC_ONLY,)
    assert r.composite() == w.composite()


def test_alternating_word_is_reduced_and_nontrivial(q):
    r = reduce(word_of([q, sigma_std()]))
    assert is_reduced(r) and len(r) == 2
    assert nontriviality_certificate(r)


def test_star_h_star_merge_outside_known_classes_is_reported():
    with pytest.raises(UnknownLetter):
        reduce(word_of([sigma_std(), sigma(), sigma_std()]))


def test_empty_word():
    assert not nontriviality_certificate(AmalgamWord(()))


def test_translation_vector_round_trip():
    assert translation_vector(translation(3, -2)) == (3, -2)
    with pytest.raises(ValidationError):
        translation_vector(sigma_std())


def test_coset_separation():
    a, b = translation(1, 2), translation(0, 0)
    cert = coset_certificate(a, b)
    assert cert.separated and cert.composite.degree == 2 and len(cert.base_points) == 3
    assert not coset_separation(a, a)


def test_coset_separation_with_infinitely_near_base_point():
    cert = coset_certificate(translation(1, 0), translation(0, 0))
    assert cert.separated and cert.composite.degree == 2
    assert len(cert.base_points) == 2 and cert.infinitely_near == 1


def test_sampled_translations_are_distinct():
    vs = random_translation_vectors(random.Random(0), 10)
    assert len(set(vs)) == 10


def test_ball_is_a_tree(q):
    s = sigma_std()
    tree = bass_serre_ball([word_of([s, q]), word_of([q, s])], 2)
    assert tree.is_tree()
    assert len(tree.vertices) == len(tree.edges) + 1


def test_sigma_fixes_base_edge(q):
    assert fixed_base_vertices(word_of([sigma()])) == [GSTAR, GCIRC]
    assert fixed_base_vertices(word_of([q])) == [GCIRC]
    assert fixed_base_vertices(word_of([sigma_std()])) == [GSTAR]


def test_ball_radius_bounds():
    with pytest.raises(ValidationError):
        bass_serre_ball([], 0)


def test_reduce_preserves_composite_on_mixed_word(q):
    w = word_of([q, sigma(), sigma_std(), sigma()])
    r = reduce(w)
    assert r.composite() == w.composite()
    assert not is_identity(r.composite())
