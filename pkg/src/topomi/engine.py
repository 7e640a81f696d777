"""Multipartite information of a grid CSS.

The N-partite information of subsystems A_1..A_N is the alternating
inclusion-exclusion sum of union entropies

    I^N = sum_{m=1..N} (-1)^(m-1) sum_{|Q|=m} S(union Q)  -  S(intersection),

with the global intersection empty by construction (disjoint subsystems),
so its term is identically zero.  Under the topology entropy model the
per-link coefficient cancels and

    I^N = -C^N log(D),    C^N = alternating sum of boundary counts J.

C^N is an exact integer and is the primary quantity of record; reported
information values are C^N scaled by the topological entropy.  Both
evaluation routes are computed and compared on every call.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

from .errors import (
    DisconnectedCss,
    MismatchBetweenPaths,
    NotACycle,
    NotAnnular,
    TooManySubsystems,
    ValidationError,
)
from .grid import (
    GridCss,
    boundary_component_count,
    euler_characteristic,
    find_holes,
    loop_around_hole,
    perimeter_links,
    restrict_css,
)
from .masks import UnionTopology
from .model import EntropyModel

#: recursion expansion enumerates subset sums of subsets, cost ~3^N
RECURSION_CAP = 12

PATH_RTOL = 1e-9


def entropy_of_region(model: EntropyModel, region) -> float:
    """Model entropy alpha*n - J*log(D) of an explicit cell region."""
    return model.entropy(perimeter_links(region), boundary_component_count(region))


# ----------------------------------------------------------------------
# connectivity count and the information value
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class ConnectivityResult:
    n_subsystems: int
    c_n: int
    per_subset_j: np.ndarray  # index = subset bitmask; entry 0 unused


def connectivity_count(css: GridCss) -> ConnectivityResult:
    """C^N and the full J table over all 2^N - 1 non-empty subsets."""
    topo = UnionTopology(css)
    c_n = int(topo.signs @ topo.j_table)
    return ConnectivityResult(css.n_subsystems, c_n, topo.j_table)


def _information_value(model: EntropyModel, topo: UnionTopology) -> tuple[int, float]:
    """(C^N, I^N) with the counting and entropy-sum routes reconciled.

    The alternating sums over J and perimeter links are integer-exact, so
    the entropy-sum route is alpha * sum(+-n) - log(D) * sum(+-J) without
    float accumulation error.  The alpha term must vanish identically.
    """
    j_alt = int(topo.signs @ topo.j_table)
    links_alt = int(topo.signs @ topo.boundary_links_table)
    i_counting = -j_alt * model.s_topo
    i_direct = model.alpha_value * links_alt - j_alt * model.s_topo
    if abs(i_direct - i_counting) > PATH_RTOL * max(1.0, abs(i_counting)):
        raise MismatchBetweenPaths(
            f"entropy-sum route {i_direct} vs counting route {i_counting} "
            f"(alternating link sum {links_alt})"
        )
    return j_alt, i_counting


def subset_entropy_table(model: EntropyModel, css: GridCss) -> np.ndarray:
    """Model entropy of every subset union, indexed by bitmask (entry 0 = 0)."""
    topo = UnionTopology(css)
    s = model.alpha_value * topo.boundary_links_table.astype(float)
    s -= model.s_topo * topo.j_table.astype(float)
    s[0] = 0.0
    return s


# ----------------------------------------------------------------------
# full report
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class HoleReport:
    loop: tuple[int, ...] | None
    info: float | None  # I around the hole, selected units
    error: str | None = None


@dataclass(frozen=True)
class InfoReport:
    name: str
    n_subsystems: int
    c_n: int
    i_n: float  # selected units
    s_topo: float
    dimension: float
    alpha: float
    log_base: str
    chi: int | None
    holes: tuple[HoleReport, ...]
    constraint_sum: float | None
    paths_agree: bool
    per_subset_j: np.ndarray

    @property
    def i_n_nats(self) -> float:
        return -self.c_n * math.log(self.dimension)

    @property
    def i_n_log2(self) -> float:
        return -self.c_n * math.log2(self.dimension)

    def to_json_dict(self) -> dict:
        return {
            "schema": "topo-mpi/1",
            "name": self.name,
            "n": self.n_subsystems,
            "c_n": self.c_n,
            "i_n_nats": self.i_n_nats,
            "i_n_log2": self.i_n_log2,
            "s_intersection": 0.0,
            "chi": self.chi,
            "holes": [
                {"loop": list(h.loop) if h.loop else None, "i": h.info, "error": h.error}
                for h in self.holes
            ],
            "constraint_sum": self.constraint_sum,
            "paths_agree": self.paths_agree,
        }


def multipartite_information(model: EntropyModel, css: GridCss) -> InfoReport:
    """I^N of the whole CSS plus the per-hole loop decomposition."""
    topo = UnionTopology(css)
    c_n, i_n = _information_value(model, topo)

    try:
        chi: int | None = euler_characteristic(css)
    except DisconnectedCss:
        chi = None

    hole_reports: list[HoleReport] = []
    for hole in find_holes(css).holes:
        try:
            loop = loop_around_hole(css, hole)
        except NotACycle as exc:
            hole_reports.append(HoleReport(None, None, str(exc)))
            continue
        sub = restrict_css(css, loop)
        _, sub_i = _information_value(model, UnionTopology(sub))
        hole_reports.append(HoleReport(loop, sub_i))

    if hole_reports and all(h.error is None for h in hole_reports):
        constraint_sum: float | None = sum(abs(h.info) for h in hole_reports)
    else:
        constraint_sum = None

    return InfoReport(
        name=css.name,
        n_subsystems=css.n_subsystems,
        c_n=c_n,
        i_n=i_n,
        s_topo=model.s_topo,
        dimension=model.quantum_dimension,
        alpha=model.alpha_value,
        log_base=model.log_base,
        chi=chi,
        holes=tuple(hole_reports),
        constraint_sum=constraint_sum,
        paths_agree=True,
        per_subset_j=topo.j_table,
    )


def write_subset_table_csv(report: InfoReport, fileobj) -> None:
    """Debug CSV of the per-subset J table: mask, m, J, sign."""
    writer = csv.writer(fileobj)
    writer.writerow(["mask", "m", "J", "sign"])
    j = report.per_subset_j
    for mask in range(1, len(j)):
        m = mask.bit_count()
        writer.writerow([mask, m, int(j[mask]), 1 if m % 2 else -1])


# ----------------------------------------------------------------------
# annular structure
# ----------------------------------------------------------------------

def annular_order(css: GridCss) -> tuple[int, ...]:
    """Cyclic subsystem order of an annular CSS.

    A CSS counts as annular when exactly one of its holes is ringed by a
    cycle through every subsystem.  Extra holes punched inside single
    subsystems or under nearest-neighbour handles do not yield such a
    cycle and are ignored here.
    """
    holes = find_holes(css)
    if holes.n_h == 0:
        raise NotAnnular("CSS has no hole")
    full_loops = []
    for hole in holes.holes:
        try:
            loop = loop_around_hole(css, hole)
        except NotACycle:
            continue
        if len(loop) == css.n_subsystems:
            full_loops.append(loop)
    if len(full_loops) != 1:
        raise NotAnnular(
            f"{len(full_loops)} holes are ringed by all {css.n_subsystems} subsystems"
        )
    return full_loops[0]


@dataclass(frozen=True)
class AnnularCheck:
    value: float
    expected: float
    passed: bool
    c_n: int


def annular_invariant_check(model: EntropyModel, css: GridCss) -> AnnularCheck:
    """Check I^N = (-1)^N * 2 log(D) on an annular CSS (chi = 2)."""
    annular_order(css)
    topo = UnionTopology(css)
    c_n, i_n = _information_value(model, topo)
    expected = (-1) ** css.n_subsystems * 2 * model.s_topo
    return AnnularCheck(i_n, expected, abs(i_n - expected) < 1e-9, c_n)


def irreducible_correlation_bound(model: EntropyModel, css: GridCss) -> float:
    """Upper bound chi * S_topo = 2 log(D) on the N-party irreducible correlation.

    Only the bound is reported; the maximum-entropy state optimisation
    behind the bounded quantity is out of scope.
    """
    annular_order(css)
    return 2.0 * model.s_topo


# ----------------------------------------------------------------------
# sub-loop revival under a further-neighbour handle
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class SubloopResult:
    p: int
    q: int
    loop_p: tuple[int, ...]
    loop_q: tuple[int, ...]
    info_p: float
    info_q: float
    expected_p: float
    expected_q: float


def subloop_revival(model: EntropyModel, css: GridCss) -> SubloopResult:
    """I^p and I^q of the two loops created by a further-neighbour handle.

    Requires exactly two holes whose loops are proper cycles sharing the
    two handle endpoints, so that p + q - 2 = N.
    """
    holes = find_holes(css)
    if holes.n_h != 2:
        raise ValidationError(
            f"expected exactly 2 holes from a further-neighbour handle, found {holes.n_h}"
        )
    loops = [loop_around_hole(css, hole) for hole in holes.holes]
    loops.sort(key=len)
    p, q = len(loops[0]), len(loops[1])
    if p + q - 2 != css.n_subsystems:
        raise ValidationError(
            f"loop sizes {p} + {q} - 2 != N = {css.n_subsystems}; "
            "not a single-handle deformation"
        )
    infos = []
    for loop in loops:
        sub = restrict_css(css, loop)
        infos.append(_information_value(model, UnionTopology(sub))[1])
    return SubloopResult(
        p=p,
        q=q,
        loop_p=loops[0],
        loop_q=loops[1],
        info_p=infos[0],
        info_q=infos[1],
        expected_p=(-1) ** p * 2 * model.s_topo,
        expected_q=(-1) ** q * 2 * model.s_topo,
    )


# ----------------------------------------------------------------------
# recursion over lower-order informations
# ----------------------------------------------------------------------

def subset_information_table(model: EntropyModel, css: GridCss) -> np.ndarray:
    """I of every subset R (indexed by bitmask) via a signed zeta transform.

    I_R = sum over non-empty Q subset of R of (-1)^(|Q|-1) S(union Q).
    """
    n = css.n_subsystems
    if n > RECURSION_CAP:
        raise TooManySubsystems(f"subset information table capped at N = {RECURSION_CAP}")
    s = subset_entropy_table(model, css)
    popcounts = np.bitwise_count(np.arange(1 << n, dtype=np.int64))
    f = np.where(popcounts % 2 == 1, s, -s)
    f[0] = 0.0
    table = f.copy()
    for i in range(n):
        step = 1 << i
        view = table.reshape(-1, 2, step)
        view[:, 1, :] += view[:, 0, :]
    return table


@dataclass(frozen=True)
class RecursionResult:
    lhs: float
    rhs: float

    @property
    def residual(self) -> float:
        return abs(self.lhs - self.rhs)


def recursion_check(model: EntropyModel, css: GridCss) -> RecursionResult:
    """Expand I^N over all lower-order informations and compare.

    I^N = sum_{mu=1..N-2} (-1)^(mu-1) sum_{|R|=N-mu} I_R
          + (-1)^N (sum_i S_i - S_union).
    """
    n = css.n_subsystems
    if n < 2:
        raise ValidationError("recursion needs at least 2 subsystems")
    if n > RECURSION_CAP:
        raise TooManySubsystems(f"recursion check capped at N = {RECURSION_CAP}")
    info = subset_information_table(model, css)
    s = subset_entropy_table(model, css)
    popcounts = np.bitwise_count(np.arange(1 << n, dtype=np.int64))

    lhs = float(info[-1])
    middle = 0.0
    for mu in range(1, n - 1):
        size = n - mu
        sign = (-1) ** (mu - 1)
        middle += sign * float(info[popcounts == size].sum())
    singles = sum(float(s[1 << i]) for i in range(n))
    tail = (-1) ** n * (singles - float(s[-1]))
    return RecursionResult(lhs, middle + tail)


# ----------------------------------------------------------------------
# multi-hole measurement constraint
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class HoleConstraintResult:
    holes: tuple[HoleReport, ...]
    total: float
    expected_total: float
    satisfied: bool
    full_info: float
    full_expected: float
    full_matches: bool
    chi: int
    n_h: int


def hole_constraint(model: EntropyModel, css: GridCss) -> HoleConstraintResult:
    """Sum of |I| around every hole against n_h * chi * S_topo.

    Every hole must be ringed by a proper cycle.  The full-CSS I^N is also
    computed; when every hole loop is a proper subset it must equal
    (-1)^(N-1) (chi - 2) log(D), i.e. vanish on the plane, while a loop
    covering all subsystems (the plain annulus) reduces the whole check to
    the single-ring invariant.
    """
    holeset = find_holes(css)
    if holeset.n_h == 0:
        raise ValidationError("CSS has no holes to measure around")
    reports: list[HoleReport] = []
    for hole in holeset.holes:
        loop = loop_around_hole(css, hole)
        sub = restrict_css(css, loop)
        _, info = _information_value(model, UnionTopology(sub))
        reports.append(HoleReport(loop, info))

    chi = euler_characteristic(css)
    total = sum(abs(r.info) for r in reports)
    expected_total = holeset.n_h * chi * model.s_topo

    n = css.n_subsystems
    _, full_info = _information_value(model, UnionTopology(css))
    if all(len(r.loop) < n for r in reports):
        full_expected = (-1) ** (n - 1) * (chi - 2) * model.s_topo
    else:
        full_expected = (-1) ** n * 2 * model.s_topo
    tol = 1e-9 * max(1.0, abs(expected_total))
    return HoleConstraintResult(
        holes=tuple(reports),
        total=total,
        expected_total=expected_total,
        satisfied=abs(total - expected_total) < tol,
        full_info=full_info,
        full_expected=full_expected,
        full_matches=abs(full_info - full_expected) < 1e-9,
        chi=chi,
        n_h=holeset.n_h,
    )


# ----------------------------------------------------------------------
# strong subadditivity combination
# ----------------------------------------------------------------------

EntropySource = Callable[[frozenset], float]


def model_entropy_source(model: EntropyModel, css: GridCss) -> EntropySource:
    """Entropy of a set of subsystem ids under the topology model."""
    topo = UnionTopology(css)
    links = topo.boundary_links_table
    j = topo.j_table

    def source(ids: Iterable[int]) -> float:
        mask = 0
        for i in ids:
            mask |= 1 << i
        if mask == 0:
            raise ValidationError("entropy of an empty id set")
        return model.alpha_value * int(links[mask]) - int(j[mask]) * model.s_topo

    return source


def strong_subadditivity_combination(
    css: GridCss,
    entropy: EntropySource,
    order: Sequence[int] | None = None,
) -> float:
    """S_union + sum_i (S_i - S_{i, i+1 mod N}) over the annular cyclic order.

    Equals -2 log(D) under the topology model; with a physical entropy
    source it is bounded above by 0, with equality only in a trivial phase.
    """
    if order is None:
        order = annular_order(css)
    n = len(order)
    value = entropy(frozenset(range(css.n_subsystems)))
    for k, i in enumerate(order):
        j = order[(k + 1) % n]
        value += entropy(frozenset([i])) - entropy(frozenset([i, j]))
    return value


# ----------------------------------------------------------------------
# entanglement vector over an annular family
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class CssFamily:
    """Annular CSS of every size p = 3..N, one per size."""

    members: tuple[GridCss, ...]

    def __post_init__(self):
        if not self.members:
            raise ValidationError("family is empty")
        for k, css in enumerate(self.members):
            if css.n_subsystems != k + 3:
                raise ValidationError(
                    f"family member {k} has {css.n_subsystems} subsystems, expected {k + 3}"
                )
            annular_order(css)  # raises NotAnnular on bad members

    @property
    def max_n(self) -> int:
        return len(self.members) + 2


@dataclass(frozen=True)
class EntanglementVector:
    magnitudes: tuple[float, ...]  # |I^p|, p = 3..N
    normalized: tuple[float, ...]
    is_zero: bool


def entanglement_vector(model: EntropyModel, family: CssFamily) -> EntanglementVector:
    """Normalized vector of |I^p|, p = 3..N.

    The normalisation sqrt((N-2) / sum |I^p|^2) maps a topologically
    ordered family to (1, ..., 1); an all-zero family is returned
    unnormalised with the zero flag set.
    """
    mags = tuple(
        abs(_information_value(model, UnionTopology(css))[1]) for css in family.members
    )
    total = sum(m * m for m in mags)
    if total == 0.0:
        return EntanglementVector(mags, mags, True)
    scale = math.sqrt(len(mags) / total)
    return EntanglementVector(mags, tuple(m * scale for m in mags), False)
