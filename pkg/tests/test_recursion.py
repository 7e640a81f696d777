"""Expansion of I^N over lower-order informations."""

import math
import random

import pytest

from topomi import builders
from topomi.engine import recursion_check, subset_information_table
from topomi.errors import TooManySubsystems
from topomi.grid import GridCss
from topomi.model import EntropyModel

LN2 = math.log(2)
D2 = EntropyModel(2.0)


def test_recursion_on_annuli():
    for n in range(3, 9):
        result = recursion_check(D2, builders.annulus(n))
        assert result.residual < 1e-9, n


def test_recursion_on_gallery_shapes():
    shapes = [
        builders.open_chain(5),
        builders.annulus_with_island(6),
        builders.annulus_with_appendage(5),
        builders.annulus_with_punched_hole(5),
        builders.annulus_with_self_handle(6),
        builders.annulus_with_nn_handle(4),
        builders.far_handle_annulus(6, 3),
        builders.two_hole_five(),
        builders.theta_pair(),
    ]
    for css in shapes:
        assert recursion_check(D2, css).residual < 1e-9, css.name


def test_recursion_on_fuzzed_css():
    rng = random.Random(20260808)
    for _ in range(100):
        n = rng.randint(2, 8)
        css = builders.random_css(rng, n)
        result = recursion_check(D2, css)
        assert result.residual < 1e-9, css.name


def test_recursion_alpha_independent_residual():
    css = builders.two_hole_five()
    for alpha in (0.0, 1.3):
        assert recursion_check(EntropyModel(2.0, alpha=alpha), css).residual < 1e-9


def test_two_hole_five_intermediate_terms():
    """The expansion terms of the two-hole CSS: I^5 = 0, the two ring
    triples each contribute -2 log D, all other triples vanish."""
    css = builders.two_hole_five()
    table = subset_information_table(D2, css)
    full = (1 << 5) - 1
    assert table[full] == pytest.approx(0.0, abs=1e-12)
    mask_abc = 0b00111  # A, B, C
    mask_ade = 0b11001  # A, D, E
    assert table[mask_abc] == pytest.approx(-2 * LN2)
    assert table[mask_ade] == pytest.approx(-2 * LN2)
    assert table[mask_abc] + table[mask_ade] == pytest.approx(-2 * 2 * LN2)
    for mask in range(1, full + 1):
        if mask.bit_count() == 3 and mask not in (mask_abc, mask_ade):
            assert table[mask] == pytest.approx(0.0, abs=1e-12), bin(mask)
        if mask.bit_count() == 4:
            assert table[mask] == pytest.approx(0.0, abs=1e-12), bin(mask)


def test_recursion_guard():
    labels = tuple(range(13))
    with pytest.raises(TooManySubsystems):
        recursion_check(D2, GridCss(13, 1, labels))
