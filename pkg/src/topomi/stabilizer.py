"""Exact stabilizer-code ground states and their region entropies.

The square-lattice code places one qubit on every edge, an X-type star on
every vertex and a Z-type plaquette on every face.  On the torus the two
global product relations are removed and the generator set is completed by
the two non-contractible Z loops along row 0 and column 0, fixing a single
ground state; the open-boundary (planar) patch already has a unique ground
state.  Region entropies are integer multiples of log 2 obtained from the
GF(2) rank of the generator matrix restricted to the complement of the
region -- the kernel of that restriction is exactly the subgroup supported
inside the region.  A dense state-vector construction provides an
independent oracle for small systems.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping

import numpy as np

from .errors import (
    EmptyRegion,
    LatticeTooSmall,
    TooManyQubits,
    TooManySubsystems,
    ValidationError,
    WindingRegion,
)
from .grid import OUTSIDE, GridCss

#: dense 2**n state vectors
BRUTE_CAP = 12

#: 2**N rank computations
EXACT_SUBSET_CAP = 12

LN2 = math.log(2.0)


@dataclass(frozen=True)
class CodeLattice:
    """Square lattice of ``lx`` x ``ly`` vertices with edge qubits."""

    lx: int
    ly: int
    boundary: str = "torus"  # "torus" or "planar"

    def __post_init__(self):
        if self.boundary not in ("torus", "planar"):
            raise ValidationError(f"boundary must be 'torus' or 'planar', got {self.boundary!r}")
        if self.lx < 2 or self.ly < 2:
            raise LatticeTooSmall(f"{self.lx}x{self.ly} lattice; need at least 2x2")

    @property
    def periodic(self) -> bool:
        return self.boundary == "torus"

    @property
    def n_horizontal(self) -> int:
        return self.lx * self.ly if self.periodic else (self.lx - 1) * self.ly

    @property
    def n_vertical(self) -> int:
        return self.lx * self.ly if self.periodic else self.lx * (self.ly - 1)

    @property
    def n_qubits(self) -> int:
        return self.n_horizontal + self.n_vertical

    @property
    def face_shape(self) -> tuple[int, int]:
        """Cell grid the lattice faces form: (columns, rows)."""
        if self.periodic:
            return self.lx, self.ly
        return self.lx - 1, self.ly - 1

    def h_edge(self, i: int, j: int) -> int:
        """Qubit on the edge (i, j)-(i+1, j)."""
        if self.periodic:
            return (j % self.ly) * self.lx + (i % self.lx)
        if not (0 <= i < self.lx - 1 and 0 <= j < self.ly):
            raise ValidationError(f"no horizontal edge at ({i},{j})")
        return j * (self.lx - 1) + i

    def v_edge(self, i: int, j: int) -> int:
        """Qubit on the edge (i, j)-(i, j+1)."""
        if self.periodic:
            return self.n_horizontal + (j % self.ly) * self.lx + (i % self.lx)
        if not (0 <= i < self.lx and 0 <= j < self.ly - 1):
            raise ValidationError(f"no vertical edge at ({i},{j})")
        return self.n_horizontal + j * self.lx + i

    def star_qubits(self, i: int, j: int) -> list[int]:
        """Edges incident to vertex (i, j)."""
        out = []
        if self.periodic:
            out = [
                self.h_edge(i, j),
                self.h_edge(i - 1, j),
                self.v_edge(i, j),
                self.v_edge(i, j - 1),
            ]
        else:
            if i < self.lx - 1:
                out.append(self.h_edge(i, j))
            if i > 0:
                out.append(self.h_edge(i - 1, j))
            if j < self.ly - 1:
                out.append(self.v_edge(i, j))
            if j > 0:
                out.append(self.v_edge(i, j - 1))
        return out

    def plaquette_qubits(self, i: int, j: int) -> list[int]:
        """Edges bounding the face whose north-west vertex is (i, j)."""
        if not self.periodic and not (0 <= i < self.lx - 1 and 0 <= j < self.ly - 1):
            raise ValidationError(f"no face at ({i},{j})")
        return [
            self.h_edge(i, j),
            self.h_edge(i, j + 1),
            self.v_edge(i, j),
            self.v_edge(i + 1, j),
        ]

    def vertices(self) -> Iterable[tuple[int, int]]:
        return ((i, j) for j in range(self.ly) for i in range(self.lx))

    def faces(self) -> Iterable[tuple[int, int]]:
        cols, rows = self.face_shape
        return ((i, j) for j in range(rows) for i in range(cols))


@dataclass(frozen=True)
class StabilizerState:
    """Pure stabilizer state: n independent commuting generators.

    Each row is an integer whose low ``n`` bits are the X part and high
    ``n`` bits the Z part.
    """

    n: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if len(self.rows) != self.n:
            raise ValidationError(f"{len(self.rows)} generators for {self.n} qubits")
        if _gf2_rank(self.rows) != self.n:
            raise ValidationError("generators are not independent over GF(2)")
        n = self.n
        mask = (1 << n) - 1
        xs = [r & mask for r in self.rows]
        zs = [r >> n for r in self.rows]
        for a in range(n):
            for b in range(a + 1, n):
                if ((xs[a] & zs[b]).bit_count() + (zs[a] & xs[b]).bit_count()) % 2:
                    raise ValidationError(f"generators {a} and {b} anticommute")


def _gf2_rank(rows: Iterable[int]) -> int:
    pivots: dict[int, int] = {}
    rank = 0
    for row in rows:
        while row:
            bit = row.bit_length() - 1
            if bit in pivots:
                row ^= pivots[bit]
            else:
                pivots[bit] = row
                rank += 1
                break
    return rank


def build_code(lattice: CodeLattice) -> StabilizerState:
    """Ground state of the star/plaquette code on the lattice."""
    n = lattice.n_qubits
    rows: list[int] = []
    stars = list(lattice.vertices())[:-1]  # product of all stars is identity
    for i, j in stars:
        x = 0
        for q in lattice.star_qubits(i, j):
            x |= 1 << q
        rows.append(x)
    faces = list(lattice.faces())
    if lattice.periodic:
        faces = faces[:-1]  # product of all plaquettes is identity
    for i, j in faces:
        z = 0
        for q in lattice.plaquette_qubits(i, j):
            z |= 1 << q
        rows.append(z << n)
    if lattice.periodic:
        row_loop = 0
        for i in range(lattice.lx):
            row_loop |= 1 << lattice.h_edge(i, 0)
        col_loop = 0
        for j in range(lattice.ly):
            col_loop |= 1 << lattice.v_edge(0, j)
        rows.append(row_loop << n)
        rows.append(col_loop << n)
    return StabilizerState(n, tuple(rows))


# ----------------------------------------------------------------------
# entropies
# ----------------------------------------------------------------------

def _as_qubit_mask(state: StabilizerState, qubits: Iterable[int]) -> int:
    mask = 0
    for q in qubits:
        if not 0 <= q < state.n:
            raise ValidationError(f"qubit {q} out of range 0..{state.n - 1}")
        mask |= 1 << q
    return mask


def entropy_bits(state: StabilizerState, qubits: Iterable[int]) -> int:
    """Entanglement entropy of a qubit set, in units of log 2 (exact).

    S/log2 = |A| - (n - rank of the generators restricted to the
    complement); the full set returns 0 by purity.
    """
    mask = _as_qubit_mask(state, qubits)
    if mask == 0:
        raise EmptyRegion("entropy of an empty qubit set is undefined")
    size = mask.bit_count()
    n = state.n
    comp = ((1 << n) - 1) ^ mask
    comp_cols = comp | (comp << n)
    rank = _gf2_rank(r & comp_cols for r in state.rows)
    return size - (n - rank)


@dataclass(frozen=True)
class QubitRegionMap:
    """Disjoint qubit sets realizing subsystems on the lattice."""

    n_qubits: int
    regions: tuple[frozenset, ...]

    def __post_init__(self):
        seen: set[int] = set()
        for k, region in enumerate(self.regions):
            if not region:
                raise ValidationError(f"region {k} is empty")
            for q in region:
                if not 0 <= q < self.n_qubits:
                    raise ValidationError(f"region {k}: qubit {q} out of range")
                if q in seen:
                    raise ValidationError(f"qubit {q} appears in two regions")
                seen.add(q)

    @property
    def n_subsystems(self) -> int:
        return len(self.regions)

    def union(self, ids: Iterable[int]) -> frozenset:
        out: set[int] = set()
        for i in ids:
            out |= self.regions[i]
        return frozenset(out)


def multipartite_information_exact(state: StabilizerState, region_map: QubitRegionMap) -> int:
    """Alternating entropy sum over all unions, in units of log 2 (exact)."""
    n = region_map.n_subsystems
    if n > EXACT_SUBSET_CAP:
        raise TooManySubsystems(f"{n} regions exceed the cap of {EXACT_SUBSET_CAP}")
    if region_map.n_qubits != state.n:
        raise ValidationError("region map and state disagree on qubit count")
    total = 0
    for mask in range(1, 1 << n):
        ids = [i for i in range(n) if mask >> i & 1]
        s = entropy_bits(state, region_map.union(ids))
        total += s if mask.bit_count() % 2 == 1 else -s
    return total


def region_entropy_source(state: StabilizerState, region_map: QubitRegionMap, scale: float = LN2):
    """Entropy of a set of region ids, for the subadditivity combination.

    Returns nats by default so values line up with a log-base-e model.
    """

    def source(ids: Iterable[int]) -> float:
        return entropy_bits(state, region_map.union(ids)) * scale

    return source


# ----------------------------------------------------------------------
# dense independent oracle
# ----------------------------------------------------------------------

def brute_force_entropy(state: StabilizerState, qubits: Iterable[int]) -> float:
    """Entropy (nats) from the dense ground-state vector.

    Builds the state by projecting |0...0> onto the +1 eigenspace of every
    generator, then diagonalizes the reduced density matrix.  Independent
    of the GF(2) rank route; capped at 12 qubits.
    """
    n = state.n
    if n > BRUTE_CAP:
        raise TooManyQubits(f"{n} qubits exceed the dense-oracle cap of {BRUTE_CAP}")
    mask = _as_qubit_mask(state, qubits)
    if mask == 0:
        raise EmptyRegion("entropy of an empty qubit set is undefined")

    dim = 1 << n
    idx = np.arange(dim, dtype=np.int64)
    psi = np.zeros(dim)
    psi[0] = 1.0
    full = (1 << n) - 1
    for row in state.rows:
        x = row & full
        z = row >> n
        signs = 1.0 - 2.0 * (np.bitwise_count(idx & z) % 2)
        psi = 0.5 * (psi + (signs * psi)[idx ^ x])
    norm = math.sqrt(float(psi @ psi))
    if norm < 1e-12:
        raise ValidationError("generators project |0...0> to zero; no +1 ground state")
    psi /= norm

    region = sorted(q for q in range(n) if mask >> q & 1)
    rest = [q for q in range(n) if not mask >> q & 1]
    # qubit q is bit q of the index, i.e. axis n-1-q of the reshaped tensor
    tensor = psi.reshape([2] * n)
    perm = [n - 1 - q for q in region] + [n - 1 - q for q in rest]
    matrix = np.transpose(tensor, perm).reshape(1 << len(region), -1)
    # eigenvalues of rho_A are squared singular values of the bipartition
    lams = np.linalg.svd(matrix, compute_uv=False) ** 2
    lams = lams[lams > 1e-14]
    return float(-(lams * np.log(lams)).sum())


# ----------------------------------------------------------------------
# grid CSS -> qubit regions
# ----------------------------------------------------------------------

def rasterize_css(lattice: CodeLattice, css: GridCss) -> QubitRegionMap:
    """Overlay a grid CSS onto the lattice faces and assign edge qubits.

    A cell of the CSS is a lattice face.  Every edge bordering at least one
    subsystem cell is owned: a wall between two subsystem cells goes to the
    north (horizontal walls) or west (vertical walls) cell's subsystem, any
    other bordering edge to its unique subsystem side.  On the torus the
    footprint must be contractible.
    """
    cols, rows = lattice.face_shape
    if (css.width, css.height) != (cols, rows):
        raise ValidationError(
            f"CSS is {css.width}x{css.height} but the lattice has {cols}x{rows} faces"
        )

    def face_label(i: int, j: int) -> int:
        if lattice.periodic:
            return css.label_at(i % cols, j % rows)
        return css.label_at(i, j)

    if lattice.periodic:
        _check_contractible(css)

    regions: list[set] = [set() for _ in range(css.n_subsystems)]

    def assign(qubit: int, primary: int, secondary: int) -> None:
        if primary != OUTSIDE:
            regions[primary].add(qubit)
        elif secondary != OUTSIDE:
            regions[secondary].add(qubit)

    # horizontal edge (i,j)-(i+1,j): faces (i, j-1) north / (i, j) south
    if lattice.periodic:
        h_range = ((i, j) for j in range(lattice.ly) for i in range(lattice.lx))
    else:
        h_range = ((i, j) for j in range(lattice.ly) for i in range(lattice.lx - 1))
    for i, j in h_range:
        assign(lattice.h_edge(i, j), face_label(i, j - 1), face_label(i, j))
    # vertical edge (i,j)-(i,j+1): faces (i-1, j) west / (i, j) east
    if lattice.periodic:
        v_range = ((i, j) for j in range(lattice.ly) for i in range(lattice.lx))
    else:
        v_range = ((i, j) for j in range(lattice.ly - 1) for i in range(lattice.lx))
    for i, j in v_range:
        assign(lattice.v_edge(i, j), face_label(i - 1, j), face_label(i, j))

    empty = [k for k, r in enumerate(regions) if not r]
    if empty:
        raise ValidationError(f"subsystems {empty} own no qubits after rasterization")
    return QubitRegionMap(lattice.n_qubits, tuple(frozenset(r) for r in regions))


def _check_contractible(css: GridCss) -> None:
    """Reject footprints that wind around the torus.

    BFS with plane lifts: revisiting a cell at a different lift offset
    means the component wraps a periodic direction.
    """
    w, h = css.width, css.height
    cells = {
        (k % w, k // w) for k, v in enumerate(css.labels) if v != OUTSIDE
    }
    lift: dict[tuple[int, int], tuple[int, int]] = {}
    for seed in sorted(cells, key=lambda c: (c[1], c[0])):
        if seed in lift:
            continue
        lift[seed] = seed
        stack = [seed]
        while stack:
            cx, cy = stack.pop()
            lx, ly = lift[(cx, cy)]
            for dx, dy in ((1, 0), (-1, 0), (0, 1), (0, -1)):
                nb = ((cx + dx) % w, (cy + dy) % h)
                if nb not in cells:
                    continue
                want = (lx + dx, ly + dy)
                have = lift.get(nb)
                if have is None:
                    lift[nb] = want
                    stack.append(nb)
                elif have != want:
                    raise WindingRegion(
                        f"footprint component through {seed} winds around the torus"
                    )


# ----------------------------------------------------------------------
# lattice scenario payloads
# ----------------------------------------------------------------------

def parse_lattice_scenario(obj: Mapping) -> tuple[CodeLattice, QubitRegionMap]:
    """Parse ``{"Lx", "Ly", "boundary", "regions": {name: [qubit, ...]}}``.

    Region names are sorted for deterministic subsystem order.  A "css"
    grid payload may replace "regions", in which case it is rasterized.
    """
    try:
        lattice = CodeLattice(int(obj["Lx"]), int(obj["Ly"]), str(obj.get("boundary", "torus")))
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError(f"bad lattice object: {exc}") from exc
    if "regions" in obj:
        named = obj["regions"]
        regions = tuple(
            frozenset(int(q) for q in named[key]) for key in sorted(named)
        )
        return lattice, QubitRegionMap(lattice.n_qubits, regions)
    if "css" in obj:
        from .grid import parse_ascii, parse_grid_json

        css_obj = obj["css"]
        if isinstance(css_obj, Mapping) and "ascii" in css_obj:
            css = parse_ascii("\n".join(css_obj["ascii"]))
        else:
            css = parse_grid_json(css_obj)
        return lattice, rasterize_css(lattice, css)
    raise ValidationError("lattice scenario needs 'regions' or 'css'")
