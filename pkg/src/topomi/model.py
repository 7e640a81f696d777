"""Entropy model mapping region topology to entanglement entropies.

A region with n perimeter links and J disconnected boundaries is assigned

    S = alpha * n - J * log(D)

where D is the total quantum dimension of the phase.  The per-link
coefficient alpha is non-universal and cancels identically from every
multipartite combination reported by the engine; it defaults to log(D),
which reproduces the zero-correlation-length string-net value.  When
per-sector dimensions d_k are supplied, alpha is instead derived as
-sum_k (d_k^2 / D) * log(d_k^2 / D).  (The weight d_k^2 / D is kept as
given; the more common probability weight d_k^2 / D^2 changes alpha only,
and alpha drops out of every reported invariant.)

Entropies are reported in the units of the selected log base (nats for
``e``, bits for ``2``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import SingularK, ValidationError

_BASE_SCALE = {"e": 1.0, "2": math.log(2.0)}


@dataclass(frozen=True)
class EntropyModel:
    quantum_dimension: float = 2.0
    alpha: float | None = None
    log_base: str = "e"
    anyon_dims: tuple[float, ...] | None = None

    def __post_init__(self):
        if self.log_base not in _BASE_SCALE:
            raise ValidationError(f"log_base must be 'e' or '2', got {self.log_base!r}")
        if not self.quantum_dimension >= 1.0:
            raise ValidationError(
                f"quantum dimension must be >= 1, got {self.quantum_dimension}"
            )
        if self.anyon_dims is not None:
            if self.alpha is not None:
                raise ValidationError("give either alpha or anyon_dims, not both")
            dims = tuple(float(d) for d in self.anyon_dims)
            if not dims or any(d <= 0 for d in dims):
                raise ValidationError("anyon dimensions must be positive")
            total = sum(d * d for d in dims)
            dsq = self.quantum_dimension**2
            if abs(total - dsq) > 1e-9 * max(1.0, dsq):
                raise ValidationError(
                    f"sum of d_k^2 = {total} must equal D^2 = {dsq}"
                )
            object.__setattr__(self, "anyon_dims", dims)
        if self.alpha is not None and self.alpha < 0:
            raise ValidationError(f"alpha must be >= 0, got {self.alpha}")

    def log(self, x: float) -> float:
        """log of x in the selected base."""
        return math.log(x) / _BASE_SCALE[self.log_base]

    @property
    def s_topo(self) -> float:
        """Topological entanglement entropy log(D), in selected units."""
        return self.log(self.quantum_dimension)

    @property
    def alpha_value(self) -> float:
        """Effective per-link coefficient, in selected units."""
        if self.anyon_dims is not None:
            d = self.quantum_dimension
            return -sum((dk * dk / d) * self.log(dk * dk / d) for dk in self.anyon_dims)
        if self.alpha is not None:
            return self.alpha
        return self.s_topo

    def entropy(self, perimeter: int, boundaries: int) -> float:
        return self.alpha_value * perimeter - boundaries * self.s_topo

    def with_alpha(self, alpha: float) -> "EntropyModel":
        return EntropyModel(self.quantum_dimension, alpha, self.log_base)


def quantum_dimension_from_K(K: Sequence[Iterable[int]]) -> float:
    """Total quantum dimension sqrt(|det K|) of an abelian Chern-Simons phase."""
    rows = [list(r) for r in K]
    size = len(rows)
    if size == 0 or any(len(r) != size for r in rows):
        raise ValidationError("K must be a non-empty square matrix")
    det = _integer_determinant(rows)
    if det == 0:
        raise SingularK("det K = 0")
    return math.sqrt(abs(det))


def _integer_determinant(rows: list[list[int]]) -> Fraction:
    """Exact determinant by fraction-free elimination."""
    mat = [[Fraction(v) for v in r] for r in rows]
    size = len(mat)
    det = Fraction(1)
    for col in range(size):
        pivot = next((r for r in range(col, size) if mat[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            mat[col], mat[pivot] = mat[pivot], mat[col]
            det = -det
        det *= mat[col][col]
        inv = 1 / mat[col][col]
        for r in range(col + 1, size):
            factor = mat[r][col] * inv
            if factor:
                mat[r] = [a - factor * b for a, b in zip(mat[r], mat[col])]
    return det
