"""Alternating component-count invariant over induced subgraphs.

For a finite simple graph the invariant is

    rho = sum over nontrivial induced subgraphs G' of (-1)^|V(G')| H0(G'),

where H0 counts connected components and "nontrivial" excludes the empty
vertex set and the full vertex set.  Path graphs give rho(P_n) = (-1)^(n-1)
and cycle graphs give rho(C_n) = 0, which is what makes open chains vanish
and rings survive in the subsystem-counting identities.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Mapping

from .errors import ParseError, PreconditionViolated, TooManyVertices, ValidationError
from .grid import GridCss, adjacency_graph
from .masks import UnionTopology, _ComponentCounter

#: 2**v induced subgraphs are enumerated
MAX_VERTICES = 20


@dataclass(frozen=True)
class SimpleGraph:
    vertex_count: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.vertex_count < 1:
            raise ValidationError("graph needs at least one vertex")
        seen = set()
        for edge in self.edges:
            i, j = edge
            if i == j:
                raise ValidationError(f"self-loop at vertex {i}")
            if not (0 <= i < self.vertex_count and 0 <= j < self.vertex_count):
                raise ValidationError(f"edge {edge} out of range")
            key = (min(i, j), max(i, j))
            if key in seen:
                raise ValidationError(f"duplicate edge {key}")
            seen.add(key)
        object.__setattr__(self, "edges", tuple(sorted(seen)))

    def neighbor_masks(self) -> list[int]:
        masks = [0] * self.vertex_count
        for i, j in self.edges:
            masks[i] |= 1 << j
            masks[j] |= 1 << i
        return masks


def path_graph(n: int) -> SimpleGraph:
    return SimpleGraph(n, tuple((i, i + 1) for i in range(n - 1)))


def cycle_graph(n: int) -> SimpleGraph:
    if n < 3:
        raise ValidationError("cycle graph needs at least 3 vertices")
    return SimpleGraph(n, tuple((i, (i + 1) % n) for i in range(n)))


def induced_component_count(graph: SimpleGraph, vertices: int) -> int:
    """Components of the induced subgraph on a vertex bitmask."""
    return _ComponentCounter(graph.neighbor_masks()).count(vertices)


def rho(graph: SimpleGraph) -> int:
    """Alternating sum of component counts over nontrivial induced subgraphs."""
    v = graph.vertex_count
    if v > MAX_VERTICES:
        raise TooManyVertices(f"{v} vertices exceed the cap of {MAX_VERTICES}")
    counter = _ComponentCounter(graph.neighbor_masks())
    total = 0
    for mask in range(1, (1 << v) - 1):
        h0 = counter.count(mask)
        total += h0 if mask.bit_count() % 2 == 0 else -h0
    return total


def sigma_of_css(css: GridCss) -> int:
    """Partial alternating J sum over proper subsets, tied to -rho.

    Valid only when every proper union's boundary count equals the
    component count of the induced adjacency subgraph (in particular each
    subsystem is a hole-free disk and no proper union encloses a hole);
    the first violating subset mask is reported otherwise.
    """
    n = css.n_subsystems
    if n > MAX_VERTICES:
        raise TooManyVertices(f"{n} subsystems exceed the cap of {MAX_VERTICES}")
    graph = SimpleGraph(n, adjacency_graph(css).edges)
    counter = _ComponentCounter(graph.neighbor_masks())
    j_table = UnionTopology(css).j_table
    sigma = 0
    for mask in range(1, (1 << n) - 1):
        j = int(j_table[mask])
        h0 = counter.count(mask)
        if j != h0:
            raise PreconditionViolated(
                f"subset mask {mask:#x} has J = {j} but induced component count {h0} "
                "(a subsystem or proper union is not a disk arrangement)",
                mask=mask,
            )
        sigma += j if mask.bit_count() % 2 == 1 else -j
    assert sigma == -rho(graph), "alternating J sum must equal -rho"
    return sigma


# ----------------------------------------------------------------------
# parsing
# ----------------------------------------------------------------------

def parse_graph_json(obj: Mapping) -> SimpleGraph:
    """Parse ``{"v": int, "edges": [[i, j], ...]}``."""
    try:
        v = int(obj["v"])
        edges = tuple((int(i), int(j)) for i, j in obj["edges"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad graph object: {exc}") from exc
    return SimpleGraph(v, edges)


def parse_graph_text(text: str) -> SimpleGraph:
    """Parse edge-list lines ``i j``; vertex count is 1 + max id."""
    edges = []
    for lineno, line in enumerate(text.splitlines()):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"line {lineno}: expected 'i j', got {line!r}")
        try:
            edges.append((int(parts[0]), int(parts[1])))
        except ValueError as exc:
            raise ParseError(f"line {lineno}: {exc}") from exc
    if not edges:
        raise ParseError("no edges found")
    v = 1 + max(max(i, j) for i, j in edges)
    return SimpleGraph(v, tuple(edges))


def load_graph(path) -> SimpleGraph:
    text = open(path, "r", encoding="utf-8").read()
    if str(path).endswith(".json"):
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"{path}: {exc}") from exc
        if "graph" in obj:
            obj = obj["graph"]
        return parse_graph_json(obj)
    return parse_graph_text(text)
