"""Truncated character-ring arithmetic for Levi subgroups.

Characters are finitely supported integer maps on weights.  The term order
is lexicographic on the coordinate tuple; exact division is leading-term
elimination, with a nonzero remainder treated as an internal bug.
"""

from __future__ import annotations

from .coxeter import weyl_group
from .errors import (
    ConeReductionFailedError,
    DivisionRemainderError,
    NotDominantError,
    NotFiniteTypeError,
)
from .gcm import FINITE, GeneralizedCartanMatrix, classify_type
from .weights import IN_CONE, NOT_IN_CONE, Realization, Weight

_DIVISION_STEP_CAP = 1_000_000


class FormalCharacter:
    """Finitely supported Weight -> int map with optional truncation metadata.

    ``length_bound`` records the enumeration bound of a truncated full-group
    alternating sum; two characters compare equal only at equal metadata.
    """

    __slots__ = ("terms", "length_bound", "box", "truncated")

    def __init__(self, terms=None, *, length_bound=None, box=None, truncated=False):
        self.terms = {w: c for w, c in (terms or {}).items() if c}
        self.length_bound = length_bound
        self.box = box
        self.truncated = truncated

    @classmethod
    def monomial(cls, lam: Weight, coeff: int = 1) -> "FormalCharacter":
        return cls({tuple(lam): coeff})

    @classmethod
    def zero(cls) -> "FormalCharacter":
        return cls({})

    def _meta(self, other):
        bound = self.length_bound if self.length_bound is not None else other.length_bound
        if (
            self.length_bound is not None
            and other.length_bound is not None
            and self.length_bound != other.length_bound
        ):
            raise ValueError("length-truncated characters are comparable only at equal bounds")
        box = self.box if self.box is not None else other.box
        return bound, box

    def __add__(self, other):
        bound, box = self._meta(other)
        terms = dict(self.terms)
        for w, c in other.terms.items():
            terms[w] = terms.get(w, 0) + c
        return FormalCharacter(
            terms, length_bound=bound, box=box,
            truncated=self.truncated or other.truncated,
        )

    def __neg__(self):
        return FormalCharacter(
            {w: -c for w, c in self.terms.items()},
            length_bound=self.length_bound, box=self.box, truncated=self.truncated,
        )

    def __sub__(self, other):
        return self + (-other)

    def scaled(self, k: int) -> "FormalCharacter":
        return FormalCharacter(
            {w: k * c for w, c in self.terms.items()},
            length_bound=self.length_bound, box=self.box, truncated=self.truncated,
        )

    def mul(self, other, real: Realization | None = None) -> "FormalCharacter":
        """Product; with a box present, terms outside it are discarded and
        the result is flagged truncated."""
        bound, box = self._meta(other)
        terms: dict = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = tuple(a + b for a, b in zip(w1, w2))
                terms[w] = terms.get(w, 0) + c1 * c2
        truncated = self.truncated or other.truncated
        if box is not None:
            if real is None:
                raise ValueError("a realization is needed to apply a box")
            kept = {w: c for w, c in terms.items() if c and box.contains(real, w)}
            truncated = truncated or len(kept) != len({w for w, c in terms.items() if c})
            terms = kept
        return FormalCharacter(terms, length_bound=bound, box=box, truncated=truncated)

    def __mul__(self, other):
        if isinstance(other, FormalCharacter):
            return self.mul(other)
        return self.scaled(other)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, FormalCharacter):
            return NotImplemented
        return (
            self.terms == other.terms
            and self.length_bound == other.length_bound
            and self.box == other.box
        )

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def support(self):
        return set(self.terms)

    def leading(self):
        w = max(self.terms)
        return w, self.terms[w]

    def sorted_terms(self):
        return sorted(self.terms.items(), reverse=True)

    def __repr__(self):
        if not self.terms:
            return "FormalCharacter(0)"
        bits = []
        for w, c in self.sorted_terms():
            sign = "+" if c >= 0 else "-"
            mag = "" if abs(c) == 1 else str(abs(c))
            bits.append(f"{sign}{mag}e^{w}")
        return "FormalCharacter(" + " ".join(bits) + ")"


def exact_divide(numerator: FormalCharacter, denominator: FormalCharacter) -> FormalCharacter:
    """Exact division in the group ring by leading-term elimination."""
    if not denominator:
        raise ZeroDivisionError("character division by zero")
    glt, gc = denominator.leading()
    rest = [(w, c) for w, c in denominator.terms.items() if w != glt]
    remainder = dict(numerator.terms)
    quotient: dict = {}
    steps = 0
    while remainder:
        steps += 1
        if steps > _DIVISION_STEP_CAP:
            raise DivisionRemainderError("character division did not terminate")
        flt = max(remainder)
        fc = remainder.pop(flt)
        if fc % gc:
            raise DivisionRemainderError(
                f"leading coefficient {fc} not divisible by {gc}"
            )
        shift = tuple(a - b for a, b in zip(flt, glt))
        coeff = fc // gc
        quotient[shift] = quotient.get(shift, 0) + coeff
        for w, c in rest:
            key = tuple(a + b for a, b in zip(w, shift))
            val = remainder.get(key, 0) - coeff * c
            if val:
                remainder[key] = val
            else:
                remainder.pop(key, None)
    return FormalCharacter(quotient)


# -- Levi root systems ----------------------------------------------------------


def levi_positive_roots(A: GeneralizedCartanMatrix, J) -> tuple[tuple[int, ...], ...]:
    """Positive roots of the finite-type root subsystem spanned by J.

    Root vectors are integer coefficient tuples over the full simple-root
    basis, closed under the reflections r_j for j in J.
    """
    J = tuple(sorted(set(J)))
    if J and classify_type(A.submatrix(J)).kind != FINITE:
        raise NotFiniteTypeError(f"subset {J} is not of finite type")
    n = A.size
    simple = [tuple(1 if k == j else 0 for k in range(n)) for j in J]
    positives = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for root in frontier:
            for i in J:
                pairing = sum(A.entries[i][k] * root[k] for k in range(n))
                image = list(root)
                image[i] -= pairing
                image = tuple(image)
                if all(x >= 0 for x in image) and image not in positives:
                    positives.add(image)
                    nxt.append(image)
        frontier = nxt
    return tuple(sorted(positives))


def weyl_denominator(real: Realization, J) -> FormalCharacter:
    """A_J: e^{rho_J} times the product of (1 - e^{-alpha}) over the
    positive Levi roots."""
    out = FormalCharacter.monomial(real.partial_rho(J))
    for root in levi_positive_roots(real.gcm, J):
        neg = real.root_weight([-c for c in root])
        out = out * (FormalCharacter.monomial(real.zero()) - FormalCharacter.monomial(neg))
    return out


def spinor_character(real: Realization, J) -> FormalCharacter:
    """e^{rho_J} times the product of (1 + e^{-alpha}): the character of the
    Levi irreducible with highest weight rho_J (degree-shift Thom class)."""
    out = FormalCharacter.monomial(real.partial_rho(J))
    for root in levi_positive_roots(real.gcm, J):
        neg = real.root_weight([-c for c in root])
        out = out * (FormalCharacter.monomial(real.zero()) + FormalCharacter.monomial(neg))
    return out


def weyl_numerator(real: Realization, lam: Weight, J=None,
                   length_bound: int | None = None) -> FormalCharacter:
    """Alternating orbit sum of e^{lam}.

    With J given the sum runs over the full finite Levi group W_J; without
    J it runs over the ball of the stated length bound and the result
    carries that bound as metadata.
    """
    group = weyl_group(real.gcm)
    if J is not None:
        elements = group.subgroup_elements(tuple(sorted(set(J))))
        bound = None
    else:
        if length_bound is None:
            raise NotFiniteTypeError(
                "the full group is infinite: a length bound is required"
            )
        elements = group.ball(length_bound)
        bound = length_bound
    terms: dict = {}
    for w in elements:
        key = real.act(w, lam)
        terms[key] = terms.get(key, 0) + w.sign()
    return FormalCharacter(terms, length_bound=bound)


def levi_irreducible_character(real: Realization, J, mu: Weight) -> FormalCharacter:
    """Character of the Levi irreducible with J-dominant highest weight mu,
    by exact division of the shifted alternating sum by A_J."""
    J = tuple(sorted(set(J)))
    if not real.is_dominant_for(mu, J):
        raise NotDominantError(f"{mu} is not dominant for the Levi on {J}")
    shifted = tuple(a + b for a, b in zip(mu, real.partial_rho(J)))
    return exact_divide(weyl_numerator(real, shifted, J), weyl_denominator(real, J))


def dirac_induction(real: Realization, J, mu: Weight) -> FormalCharacter:
    """Pushforward-then-restrict of e^{mu}: the alternating W_J-sum at mu
    divided by A_J.  Zero when mu is J-singular, otherwise a signed
    irreducible character."""
    J = tuple(sorted(set(J)))
    numerator = weyl_numerator(real, mu, J)
    if not numerator:
        return FormalCharacter.zero()
    return exact_divide(numerator, weyl_denominator(real, J))


# -- ambient dominance -------------------------------------------------------------


def ambient_dominance_test(real: Realization, J, mu: Weight,
                           max_steps: int | None = None) -> bool:
    """Does the Levi irreducible L_mu consist of characters of the maximal
    dominant representation?

    Equivalent to mu lying in the Tits cone: the character set of the
    maximal dominant representation is exactly the cone, it is closed under
    the group action and under addition, and mu is itself a weight of L_mu.
    """
    J = tuple(sorted(set(J)))
    if classify_type(real.gcm.submatrix(J)).kind != FINITE:
        raise NotFiniteTypeError(f"subset {J} is not of finite type")
    if not real.is_dominant_for(mu, J):
        raise NotDominantError(f"{mu} is not dominant for the Levi on {J}")
    result = real.chamber_reduce(mu, max_steps=max_steps)
    if result.status == NOT_IN_CONE:
        return False
    if result.status == IN_CONE:
        return True
    raise ConeReductionFailedError(
        "cone membership undecided within the step bound"
    )


def ambient_dominance_oracle(real: Realization, J, mu: Weight,
                             max_steps: int | None = None) -> bool:
    """Weight-by-weight route: every weight of the Levi irreducible lies in
    the Tits cone.  Cross-checks ambient_dominance_test."""
    char = levi_irreducible_character(real, J, mu)
    for lam in char.support():
        result = real.chamber_reduce(lam, max_steps=max_steps)
        if result.status == NOT_IN_CONE:
            return False
        if result.status != IN_CONE:
            raise ConeReductionFailedError(
                "cone membership undecided within the step bound"
            )
    return True
