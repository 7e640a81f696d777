"""Per-mask topology tables against the flood-fill definitions."""

import random

import pytest

from topomi import builders
from topomi.errors import TooManySubsystems
from topomi.grid import (
    GridCss,
    boundary_component_count,
    connected_components,
    perimeter_links,
    union_region,
)
from topomi.masks import UnionTopology


def reference_tables(css):
    """Flood-fill J, links and components for every non-empty mask."""
    n = css.n_subsystems
    j = [0] * (1 << n)
    links = [0] * (1 << n)
    comps = [0] * (1 << n)
    for mask in range(1, 1 << n):
        region = union_region(css, mask)
        j[mask] = boundary_component_count(region)
        links[mask] = perimeter_links(region)
        comps[mask] = connected_components(region)[0]
    return j, links, comps


CASES = [
    builders.annulus(3),
    builders.annulus(6),
    builders.open_chain(5),
    builders.annulus_with_island(5),
    builders.annulus_with_appendage(5),
    builders.annulus_with_punched_hole(5),
    builders.annulus_with_self_handle(5),
    builders.annulus_with_nn_handle(5),
    builders.far_handle_annulus(6, 3),
    builders.two_hole_five(),
    builders.theta_pair(),
]


@pytest.mark.parametrize("css", CASES, ids=lambda c: c.name)
def test_tables_match_flood_fill(css):
    topo = UnionTopology(css)
    j_ref, links_ref, comp_ref = reference_tables(css)
    assert topo.j_table[1:].tolist() == j_ref[1:]
    assert topo.boundary_links_table[1:].tolist() == links_ref[1:]
    assert topo.component_table[1:].tolist() == comp_ref[1:]


def test_tables_match_on_fuzzed_grids():
    rng = random.Random(987)
    for _ in range(25):
        css = builders.random_css(rng, rng.randint(2, 6), width=9, height=9)
        topo = UnionTopology(css)
        j_ref, links_ref, comp_ref = reference_tables(css)
        assert topo.j_table[1:].tolist() == j_ref[1:]
        assert topo.boundary_links_table[1:].tolist() == links_ref[1:]
        assert topo.component_table[1:].tolist() == comp_ref[1:]


def test_disconnected_subsystem_supported():
    # one subsystem made of two islands (no pinch): component counting must
    # fall back to the cell-component graph
    css = GridCss(5, 1, (0, -1, 1, -1, 0), name="split")
    topo = UnionTopology(css)
    assert topo.component_table[0b01].item() == 2
    assert topo.j_table[0b01].item() == 2
    assert topo.j_table[0b11].item() == 3


def test_six_hole_sampled_masks():
    css = builders.six_hole_eighteen()
    topo = UnionTopology(css)
    rng = random.Random(5)
    masks = [rng.randrange(1, 1 << 18) for _ in range(40)]
    masks += [1, (1 << 18) - 1, 0b101, 0b111111]
    for mask in masks:
        region = union_region(css, mask)
        assert topo.j_table[mask].item() == boundary_component_count(region)
        assert topo.boundary_links_table[mask].item() == perimeter_links(region)


def test_subsystem_cap():
    labels = tuple(range(25))
    css = GridCss(25, 1, labels)
    with pytest.raises(TooManySubsystems):
        UnionTopology(css).j_table
