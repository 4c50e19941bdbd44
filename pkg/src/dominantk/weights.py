"""Integral weights of the Cartan realization and the reflection action.

A weight is a plain tuple of integers: its evaluations against the simple
coroots h_1..h_m followed by the complementary basis d_1..d_c.  The torus
rank is 2m - rank(A), so these coordinates determine the weight.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from . import intlinalg
from .coxeter import CoxeterElement, weyl_group
from .errors import (
    NotAffineError,
    NotDominantError,
    NotProperError,
)
from .gcm import AFFINE, GeneralizedCartanMatrix, classify_type

Weight = tuple

IN_CONE = "in-cone"
NOT_IN_CONE = "not-in-cone"
UNDECIDED = "undecided"


@dataclass(frozen=True)
class Box:
    """Finite window in weight space: |coroot values| and |complement
    coordinates| bounded separately."""

    coroot_bound: int
    complement_bound: int = 0

    def contains(self, real: "Realization", lam: Weight) -> bool:
        m = real.coroot_count
        return all(abs(x) <= self.coroot_bound for x in lam[:m]) and all(
            abs(x) <= self.complement_bound for x in lam[m:]
        )


@dataclass(frozen=True)
class ChamberReduction:
    status: str
    weight: Weight | None
    element: CoxeterElement | None
    steps: int


class Realization:
    """Coordinates of the simple roots on the chosen torus basis.

    The complementary indices C are the first c column indices whose removal
    from the matrix leaves a full-rank set of columns; alpha_j evaluates to 1
    on d_k exactly when j = C[k].
    """

    def __init__(self, A: GeneralizedCartanMatrix):
        self.gcm = A
        m = A.size
        matrix_rank = intlinalg.rank(A.entries)
        c = m - matrix_rank
        removed: list[int] = []
        cols = list(range(m))
        for j in range(m):
            if len(removed) == c:
                break
            trial = [x for x in cols if x not in removed and x != j]
            sub = [[A.entries[i][x] for x in trial] for i in range(m)]
            if intlinalg.rank(sub) == matrix_rank:
                removed.append(j)
        self.coroot_count = m
        self.complement_indices = tuple(removed)
        self.rank = m + c
        self.root_coords = tuple(
            tuple(A.entries[i][j] for i in range(m))
            + tuple(1 if j == k else 0 for k in removed)
            for j in range(m)
        )

    # -- basic weights ---------------------------------------------------------

    def zero(self) -> Weight:
        return (0,) * self.rank

    def rho(self) -> Weight:
        """The fixed Weyl element: value 1 on every coroot, 0 on complements."""
        return (1,) * self.coroot_count + (0,) * (self.rank - self.coroot_count)

    def coroot_dual(self, i: int) -> Weight:
        """h_i^*: value delta_ij on coroots, 0 on complements."""
        return tuple(
            1 if k == i else 0 for k in range(self.coroot_count)
        ) + (0,) * (self.rank - self.coroot_count)

    def partial_rho(self, K) -> Weight:
        """Sum of h_i^* over i in K."""
        K = set(K)
        return tuple(
            1 if k in K else 0 for k in range(self.coroot_count)
        ) + (0,) * (self.rank - self.coroot_count)

    def barycenter_weight(self, J) -> Weight:
        """Weight attached to the barycenter of a proper subset J: its
        stabilizer stratum is exactly J."""
        J = set(J)
        if not J < set(range(self.coroot_count)):
            raise NotProperError("J must be a proper subset of the node set")
        return self.partial_rho(set(range(self.coroot_count)) - J)

    def root_weight(self, coeffs) -> Weight:
        """Weight coordinates of an integer combination of simple roots."""
        out = [0] * self.rank
        for j, c in enumerate(coeffs):
            if c:
                for k, x in enumerate(self.root_coords[j]):
                    out[k] += c * x
        return tuple(out)

    # -- action ----------------------------------------------------------------

    def reflect(self, i: int, lam: Weight) -> Weight:
        """Simple reflection: lam - <lam, h_i> alpha_i."""
        v = lam[i]
        if v == 0:
            return lam
        alpha = self.root_coords[i]
        return tuple(x - v * a for x, a in zip(lam, alpha))

    def act(self, w, lam: Weight) -> Weight:
        """Apply a group element (or raw word) to a weight."""
        word = w.word if isinstance(w, CoxeterElement) else tuple(w)
        for s in reversed(word):
            lam = self.reflect(s, lam)
        return lam

    # -- dominance and strata ----------------------------------------------------

    def is_dominant(self, lam: Weight) -> bool:
        return all(x >= 0 for x in lam[: self.coroot_count])

    def is_dominant_for(self, lam: Weight, J) -> bool:
        return all(lam[j] >= 0 for j in J)

    def is_regular_for(self, lam: Weight, J) -> bool:
        return all(lam[j] > 0 for j in J)

    def stratum(self, lam: Weight) -> tuple[int, ...]:
        """Coroot indices where a dominant weight vanishes."""
        if not self.is_dominant(lam):
            raise NotDominantError(f"{lam} has a negative coroot value")
        return tuple(i for i in range(self.coroot_count) if lam[i] == 0)

    # -- Tits cone reduction -------------------------------------------------------

    def default_max_steps(self, lam: Weight) -> int:
        return 10 * (1 + sum(abs(x) for x in lam))

    def chamber_reduce(self, lam: Weight, max_steps: int | None = None,
                       rng: random.Random | None = None) -> ChamberReduction:
        """Reflect at negative coroot values until dominant.

        Picks the least negative index (or a random one when ``rng`` is
        given; the dominant representative does not depend on the choice).
        For an indecomposable affine matrix a negative level certifies that
        the weight lies outside the Tits cone.
        """
        if max_steps is None:
            max_steps = self.default_max_steps(lam)
        cls = classify_type(self.gcm)
        if cls.kind == AFFINE and cls.indecomposable and self.affine_level(lam) < 0:
            return ChamberReduction(NOT_IN_CONE, None, None, 0)
        group = weyl_group(self.gcm)
        letters: list[int] = []
        current = lam
        for step in range(max_steps + 1):
            negatives = [
                i for i in range(self.coroot_count) if current[i] < 0
            ]
            if not negatives:
                word = tuple(reversed(letters))
                return ChamberReduction(IN_CONE, current, group.element(word), step)
            i = rng.choice(negatives) if rng is not None else negatives[0]
            current = self.reflect(i, current)
            letters.append(i)
        return ChamberReduction(UNDECIDED, None, None, max_steps)

    # -- affine level ------------------------------------------------------------

    @property
    def dual_kac_labels(self) -> tuple[int, ...]:
        cls = classify_type(self.gcm)
        if cls.kind != AFFINE or not cls.indecomposable:
            raise NotAffineError("level requires an indecomposable affine matrix")
        return _dual_labels(self.gcm)

    def affine_level(self, lam: Weight) -> int:
        """Evaluation on the canonical central element (W-invariant)."""
        labels = self.dual_kac_labels
        return sum(a * x for a, x in zip(labels, lam))

    # -- enumeration ----------------------------------------------------------------

    def dominant_box_weights(self, K, box: Box):
        """Dominant weights in the box whose stratum is exactly K."""
        K = set(K)
        m = self.coroot_count
        ranges = []
        for i in range(m):
            ranges.append((0,) if i in K else tuple(range(1, box.coroot_bound + 1)))
        for _ in range(self.rank - m):
            ranges.append(tuple(range(-box.complement_bound, box.complement_bound + 1)))
        return tuple(product(*ranges))


@lru_cache(maxsize=None)
def _dual_labels(A: GeneralizedCartanMatrix) -> tuple[int, ...]:
    transpose = tuple(tuple(A.entries[j][i] for j in range(A.size)) for i in range(A.size))
    labels = intlinalg.primitive_null_vector(transpose)
    if any(x <= 0 for x in labels):
        raise NotAffineError("affine null vector is not positive")
    return labels


@lru_cache(maxsize=None)
def build_realization(A: GeneralizedCartanMatrix) -> Realization:
    return Realization(A)
