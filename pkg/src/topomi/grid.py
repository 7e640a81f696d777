"""Labeled planar grids of subsystems and their topology queries.

A collection of subsystems (CSS) is stored as a rectangular grid of cells,
each cell either OUTSIDE or owned by exactly one subsystem.  All topology
(connected components, disconnected boundary counts, holes, adjacency,
Euler characteristic) is computed with 4-adjacency for both regions and
their complements.  Grids containing a diagonal pinch -- a 2x2 block in
which two regions, or a region and its complement, meet only at a corner --
are rejected at construction time so that every boundary-curve count is
unambiguous.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import (
    DisconnectedCss,
    EmptyRegion,
    EmptySubset,
    NotACycle,
    ParseError,
    ValidationError,
)

OUTSIDE = -1

#: width * height above this is rejected so flood fills stay desk-scale
CELL_CAP = 1_048_576

#: subsystem id -> single character used by the ASCII format
_ID_CHARS = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz"

Cell = tuple[int, int]
Region = frozenset  # frozenset[Cell]


def _neighbors4(cell: Cell) -> tuple[Cell, Cell, Cell, Cell]:
    x, y = cell
    return ((x + 1, y), (x - 1, y), (x, y + 1), (x, y - 1))


@dataclass(frozen=True)
class GridCss:
    """A planar CSS: disjoint labeled subsystems on a cell grid.

    ``labels`` is row-major; value ``OUTSIDE`` (-1) marks background cells,
    values ``0..n_subsystems-1`` mark subsystem cells.  Every id in that
    range must occur at least once.
    """

    width: int
    height: int
    labels: tuple[int, ...]
    name: str = ""

    def __post_init__(self):
        if self.width <= 0 or self.height <= 0:
            raise ValidationError("grid dimensions must be positive")
        if self.width * self.height > CELL_CAP:
            raise ValidationError(
                f"grid has {self.width * self.height} cells, cap is {CELL_CAP}"
            )
        if len(self.labels) != self.width * self.height:
            raise ValidationError(
                f"expected {self.width * self.height} labels, got {len(self.labels)}"
            )
        present = sorted({v for v in self.labels if v != OUTSIDE})
        if not present:
            raise ValidationError("grid contains no subsystem cells")
        if present[0] < 0 or present != list(range(len(present))):
            raise ValidationError(
                f"subsystem ids must be exactly 0..{len(present) - 1}, got {present}"
            )
        _reject_diagonal_pinches(self)

    @property
    def n_subsystems(self) -> int:
        return max(self.labels) + 1

    def label_at(self, x: int, y: int) -> int:
        """Label of cell (x, y); OUTSIDE for coordinates off the grid."""
        if 0 <= x < self.width and 0 <= y < self.height:
            return self.labels[y * self.width + x]
        return OUTSIDE

    def subsystem_cells(self, i: int) -> Region:
        if not 0 <= i < self.n_subsystems:
            raise ValidationError(f"no subsystem {i}")
        w = self.width
        return frozenset(
            (k % w, k // w) for k, v in enumerate(self.labels) if v == i
        )

    def to_ascii(self) -> str:
        if self.n_subsystems > len(_ID_CHARS):
            raise ValidationError(
                f"ASCII format carries at most {len(_ID_CHARS)} subsystem ids"
            )
        rows = []
        for y in range(self.height):
            row = self.labels[y * self.width : (y + 1) * self.width]
            rows.append(
                "".join("." if v == OUTSIDE else _ID_CHARS[v] for v in row)
            )
        return "\n".join(rows)


def _reject_diagonal_pinches(css: GridCss) -> None:
    """Reject corner-only contacts.

    Scanning every 2x2 window (including a virtual OUTSIDE border), a
    diagonal pair of cells must not share a label interrupted by both
    anti-diagonal cells, and two distinct subsystems must not meet only
    diagonally.  Under this rule every union of subsystems, and every
    complement of such a union, has identical 4-adjacency and homotopy
    component structure.
    """
    lab = css.label_at
    for y in range(-1, css.height):
        for x in range(-1, css.width):
            a, b = lab(x, y), lab(x + 1, y)
            c, d = lab(x, y + 1), lab(x + 1, y + 1)
            for (p, q), (r, s) in (((a, d), (b, c)), ((b, c), (a, d))):
                if p == q and r != p and s != p:
                    raise ValidationError(
                        f"diagonal pinch of label {p} at cells "
                        f"({x},{y})..({x + 1},{y + 1})"
                    )
                if (
                    p != q
                    and p != OUTSIDE
                    and q != OUTSIDE
                    and r not in (p, q)
                    and s not in (p, q)
                ):
                    raise ValidationError(
                        f"subsystems {p} and {q} meet only diagonally at cells "
                        f"({x},{y})..({x + 1},{y + 1})"
                    )


# ----------------------------------------------------------------------
# Parsing
# ----------------------------------------------------------------------

def parse_ascii(text: str, name: str = "") -> GridCss:
    """Parse the one-character-per-cell format.

    ``.`` is OUTSIDE, ``A``-``Z`` then ``a``-``z`` are subsystem ids 0..51,
    lines starting with ``#`` are comments.  Ragged lines are rejected.
    """
    rows = [
        line for line in text.splitlines() if line and not line.startswith("#")
    ]
    if not rows:
        raise ParseError("no grid rows found")
    width = len(rows[0])
    labels: list[int] = []
    for j, row in enumerate(rows):
        if len(row) != width:
            raise ParseError(f"ragged line {j}: expected {width} chars, got {len(row)}")
        for i, ch in enumerate(row):
            if ch == ".":
                labels.append(OUTSIDE)
            else:
                k = _ID_CHARS.find(ch)
                if k < 0:
                    raise ParseError(f"bad cell character {ch!r} at column {i}, line {j}")
                labels.append(k)
    try:
        return GridCss(width, len(rows), tuple(labels), name=name)
    except ValidationError as exc:
        raise ValidationError(f"{name or 'ascii grid'}: {exc}") from exc


def parse_grid_json(obj: Mapping, name: str = "") -> GridCss:
    """Parse ``{"width", "height", "labels", "name"}`` with -1 = OUTSIDE."""
    try:
        width = int(obj["width"])
        height = int(obj["height"])
        labels = tuple(int(v) for v in obj["labels"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad grid object: {exc}") from exc
    return GridCss(width, height, labels, name=str(obj.get("name", name)))


def load_grid(path) -> GridCss:
    """Load a grid from an ASCII (.txt) or JSON file."""
    text = open(path, "r", encoding="utf-8").read()
    if str(path).endswith(".json"):
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"{path}: {exc}") from exc
        css = obj.get("css", obj)
        if isinstance(css, Mapping) and "ascii" in css:
            return parse_ascii("\n".join(css["ascii"]), name=str(obj.get("name", "")))
        return parse_grid_json(css, name=str(obj.get("name", "")))
    return parse_ascii(text, name=str(path))


# ----------------------------------------------------------------------
# Region topology
# ----------------------------------------------------------------------

def connected_components(region: Iterable[Cell]) -> tuple[int, dict[Cell, int]]:
    """4-adjacency components of a cell set.

    Returns the component count and a cell -> component-id labeling.
    Component ids are assigned in order of each component's smallest cell
    (sorted by (y, x)), so the labeling is deterministic.
    """
    cells = set(region)
    labeling: dict[Cell, int] = {}
    count = 0
    for seed in sorted(cells, key=lambda c: (c[1], c[0])):
        if seed in labeling:
            continue
        stack = [seed]
        labeling[seed] = count
        while stack:
            cur = stack.pop()
            for nb in _neighbors4(cur):
                if nb in cells and nb not in labeling:
                    labeling[nb] = count
                    stack.append(nb)
        count += 1
    return count, labeling


def _complement_components(region: set) -> tuple[list[set], set]:
    """Components of the complement within a 1-cell-padded bounding box.

    Returns (bounded components, the unique unbounded component).  The
    padding guarantees that everything outside the bounding box belongs to
    one outer component.
    """
    xs = [c[0] for c in region]
    ys = [c[1] for c in region]
    x0, x1 = min(xs) - 1, max(xs) + 1
    y0, y1 = min(ys) - 1, max(ys) + 1
    todo = {
        (x, y)
        for x in range(x0, x1 + 1)
        for y in range(y0, y1 + 1)
        if (x, y) not in region
    }
    comps: list[set] = []
    outer: set | None = None
    corner = (x0, y0)
    while todo:
        seed = min(todo, key=lambda c: (c[1], c[0]))
        comp = {seed}
        stack = [seed]
        todo.discard(seed)
        while stack:
            cur = stack.pop()
            for nb in _neighbors4(cur):
                if nb in todo:
                    todo.discard(nb)
                    comp.add(nb)
                    stack.append(nb)
        if corner in comp:
            assert outer is None, "padding must yield a unique outer component"
            outer = comp
        else:
            comps.append(comp)
    assert outer is not None
    return comps, outer


def boundary_component_count(region: Iterable[Cell]) -> int:
    """Number of disjoint closed curves bounding the region.

    Equals (# components of the region) + (# bounded components of its
    complement in a 1-cell-padded bounding grid).
    """
    cells = set(region)
    if not cells:
        raise EmptyRegion("boundary count of an empty region is undefined")
    n_comp, _ = connected_components(cells)
    holes, _ = _complement_components(cells)
    return n_comp + len(holes)


def region_holes(region: Iterable[Cell]) -> list[Region]:
    """Bounded complement components of a region, deterministically ordered."""
    cells = set(region)
    if not cells:
        raise EmptyRegion("holes of an empty region are undefined")
    holes, _ = _complement_components(cells)
    return [
        frozenset(h) for h in sorted(holes, key=lambda h: min((c[1], c[0]) for c in h))
    ]


def perimeter_links(region: Iterable[Cell]) -> int:
    """Grid edges with exactly one endpoint cell inside the region."""
    cells = set(region)
    if not cells:
        raise EmptyRegion("perimeter of an empty region is undefined")
    return sum(1 for c in cells for nb in _neighbors4(c) if nb not in cells)


def union_region(css: GridCss, subset: Iterable[int] | int) -> Region:
    """Cells labeled by any id in ``subset`` (ids or a bitmask)."""
    if isinstance(subset, int):
        ids = {i for i in range(css.n_subsystems) if subset >> i & 1}
        if subset and subset >= 1 << css.n_subsystems:
            raise ValidationError(f"mask {subset:#x} has bits beyond subsystem range")
    else:
        ids = set(subset)
    if not ids:
        raise EmptySubset("union of an empty subset is undefined")
    bad = [i for i in ids if not 0 <= i < css.n_subsystems]
    if bad:
        raise ValidationError(f"unknown subsystem ids {sorted(bad)}")
    w = css.width
    return frozenset(
        (k % w, k // w) for k, v in enumerate(css.labels) if v in ids
    )


# ----------------------------------------------------------------------
# CSS-level structures
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class CssGraph:
    """Simple adjacency graph of a CSS: one vertex per subsystem."""

    n_vertices: int
    edges: tuple[tuple[int, int], ...]  # lexicographically sorted (i, j), i < j

    @property
    def d_nn(self) -> int:
        return len(self.edges)

    def neighbor_masks(self) -> list[int]:
        masks = [0] * self.n_vertices
        for i, j in self.edges:
            masks[i] |= 1 << j
            masks[j] |= 1 << i
        return masks


def restrict_css(css: GridCss, keep: Iterable[int], name: str = "") -> GridCss:
    """Sub-CSS on a subset of subsystems.

    Cells of dropped subsystems become OUTSIDE; kept ids are relabeled to
    0..k-1 in increasing order of their original id.
    """
    ids = sorted(set(keep))
    bad = [i for i in ids if not 0 <= i < css.n_subsystems]
    if bad or not ids:
        raise ValidationError(f"cannot restrict to ids {ids}")
    remap = {old: new for new, old in enumerate(ids)}
    labels = tuple(remap.get(v, OUTSIDE) for v in css.labels)
    return GridCss(css.width, css.height, labels, name=name or css.name)


def adjacency_graph(css: GridCss) -> CssGraph:
    """Edge (i, j) iff a cell of i shares a grid edge with a cell of j."""
    edges: set[tuple[int, int]] = set()
    for y in range(css.height):
        for x in range(css.width):
            a = css.label_at(x, y)
            if a == OUTSIDE:
                continue
            for b in (css.label_at(x + 1, y), css.label_at(x, y + 1)):
                if b != OUTSIDE and b != a:
                    edges.add((min(a, b), max(a, b)))
    return CssGraph(css.n_subsystems, tuple(sorted(edges)))


@dataclass(frozen=True)
class HoleSet:
    """Bounded complement components of the full CSS footprint."""

    holes: tuple[Region, ...]

    @property
    def n_h(self) -> int:
        return len(self.holes)


def find_holes(css: GridCss) -> HoleSet:
    footprint = union_region(css, (1 << css.n_subsystems) - 1)
    return HoleSet(tuple(region_holes(footprint)))


def euler_characteristic(css: GridCss) -> int:
    """V - E + F of the embedded CSS.

    V counts subsystems, E the adjacency-graph edges, F the holes plus the
    outer face.  Requires an edge-connected footprint.  The value is
    returned as computed; it equals 2 exactly when N - d_nn + n_h = 1.
    """
    footprint = union_region(css, (1 << css.n_subsystems) - 1)
    n_comp, _ = connected_components(footprint)
    if n_comp != 1:
        raise DisconnectedCss(f"footprint has {n_comp} components")
    v = css.n_subsystems
    e = adjacency_graph(css).d_nn
    f = find_holes(css).n_h + 1
    return v - e + f


def loop_around_hole(css: GridCss, hole: Iterable[Cell]) -> tuple[int, ...]:
    """Subsystems around a hole, in clockwise first-touch order.

    Walks the hole's boundary clockwise recording the adjacent subsystem of
    each boundary edge, collapsing consecutive repeats.  The touching set
    must induce a single cycle in the adjacency graph; a subsystem touching
    the hole on two separated arcs, or a second structure inside the hole,
    raises NotACycle.
    """
    hole = frozenset(hole)
    holeset = find_holes(css)
    if hole not in holeset.holes:
        raise ValidationError("region is not a hole of this CSS")

    walk = _boundary_walk_labels(css, hole)
    touching = {
        css.label_at(*nb)
        for c in hole
        for nb in _neighbors4(c)
        if css.label_at(*nb) != OUTSIDE
    }

    loop: list[int] = []
    for lbl in walk:
        if not loop or loop[-1] != lbl:
            loop.append(lbl)
    if len(loop) > 1 and loop[0] == loop[-1]:
        loop.pop()
    if set(loop) != touching:
        raise NotACycle(
            "hole boundary walk does not meet every touching subsystem; "
            "the hole encloses extra structure"
        )
    if len(loop) != len(set(loop)):
        raise NotACycle(
            "a subsystem touches the hole on disconnected arcs: "
            f"walk order {tuple(loop)}"
        )
    if len(loop) < 3:
        raise NotACycle(f"only {len(loop)} subsystems around the hole")

    # the touching set must induce exactly one cycle, and the walk must be it
    graph = adjacency_graph(css)
    sub_edges = {
        (i, j) for i, j in graph.edges if i in touching and j in touching
    }
    if len(sub_edges) != len(loop):
        raise NotACycle(
            f"induced subgraph on {sorted(touching)} has {len(sub_edges)} edges, "
            f"a single cycle needs {len(loop)}"
        )
    for a, b in zip(loop, loop[1:] + loop[:1]):
        if (min(a, b), max(a, b)) not in sub_edges:
            raise NotACycle(f"walk neighbors {a},{b} are not adjacent")
    return tuple(loop)


def _boundary_walk_labels(css: GridCss, hole: frozenset) -> list[int]:
    """Labels of cells just outside the hole along its clockwise boundary.

    Directed boundary edges of a pinch-free cell set form disjoint simple
    loops; the loop through the topmost-leftmost corner is the outer
    boundary, traversed clockwise in screen coordinates.
    """
    # corner -> (next corner, outside cell) for each directed boundary edge
    step: dict[Cell, tuple[Cell, Cell]] = {}
    for (x, y) in hole:
        if (x, y - 1) not in hole:
            step[(x, y)] = ((x + 1, y), (x, y - 1))
        if (x + 1, y) not in hole:
            step[(x + 1, y)] = ((x + 1, y + 1), (x + 1, y))
        if (x, y + 1) not in hole:
            step[(x + 1, y + 1)] = ((x, y + 1), (x, y + 1))
        if (x - 1, y) not in hole:
            step[(x, y + 1)] = ((x, y), (x - 1, y))
    start = min(step, key=lambda c: (c[1], c[0]))
    labels: list[int] = []
    cur = start
    while True:
        nxt, outside_cell = step[cur]
        labels.append(css.label_at(*outside_cell))
        cur = nxt
        if cur == start:
            break
    assert all(lbl != OUTSIDE for lbl in labels), "hole touches the background"
    return labels
