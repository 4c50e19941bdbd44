"""The Weyl group of a generalized Cartan matrix as a computational object.

Elements act on the simple-root lattice through the crystallographic
reflection representation r_i(alpha_j) = alpha_j - a[i][j] alpha_i, which is
faithful and integral; the word problem, lengths and descents all reduce to
sign tests on root images.  Stored words are ShortLex-minimal reduced words
with the input node order as tie-break.
"""

from __future__ import annotations

import threading
from functools import lru_cache

from .errors import NotFiniteTypeError, NotMinimalError, ResourceExceededError
from .gcm import FINITE, GeneralizedCartanMatrix, classify_type

DEFAULT_ELEMENT_CAP = 10**6


class CoxeterElement:
    """Group element carrying its ShortLex reduced word and root action.

    ``cols[j]`` is the coefficient vector of w(alpha_j) over the simple
    roots; ``inv_rows`` stores the matrix of the inverse element by rows.
    """

    __slots__ = ("group", "word", "cols", "inv_rows")

    def __init__(self, group, word, cols, inv_rows):
        self.group = group
        self.word = word
        self.cols = cols
        self.inv_rows = inv_rows

    @property
    def length(self) -> int:
        return len(self.word)

    def act_on_root(self, j: int) -> tuple[int, ...]:
        """Coefficients of w(alpha_j) over the simple-root basis."""
        if not 0 <= j < self.group.n:
            raise IndexError(f"root index {j} out of range")
        return self.cols[j]

    def inverse_root_image(self, i: int) -> tuple[int, ...]:
        return tuple(row[i] for row in self.inv_rows)

    def descent_set(self, side: str = "right") -> tuple[int, ...]:
        """Indices i with l(w r_i) < l(w) (right) or l(r_i w) < l(w) (left)."""
        if side == "right":
            return tuple(
                j for j in range(self.group.n) if _is_negative(self.cols[j])
            )
        if side == "left":
            return tuple(
                i
                for i in range(self.group.n)
                if _is_negative(self.inverse_root_image(i))
            )
        raise ValueError(f"side must be 'left' or 'right', not {side!r}")

    def sign(self) -> int:
        return -1 if self.length % 2 else 1

    def sort_key(self):
        return (self.length, self.word)

    def __eq__(self, other):
        return (
            isinstance(other, CoxeterElement)
            and self.group.key == other.group.key
            and self.word == other.word
        )

    def __hash__(self):
        return hash((self.group.key, self.word))

    def __repr__(self):
        return f"CoxeterElement({','.join(map(str, self.word)) or 'e'})"


def _is_negative(coeffs) -> bool:
    # nonzero root vectors have uniform sign; negative <=> all entries <= 0
    return all(x <= 0 for x in coeffs) and any(x < 0 for x in coeffs)


class WeylGroup:
    """Reflection group of a generalized Cartan matrix with ball enumeration,
    coset machinery and the Bruhat order."""

    def __init__(self, A: GeneralizedCartanMatrix, element_cap: int = DEFAULT_ELEMENT_CAP):
        self.gcm = A
        self.n = A.size
        self.key = A.entries
        self.element_cap = element_cap
        ident = tuple(
            tuple(1 if i == j else 0 for i in range(self.n)) for j in range(self.n)
        )
        self.identity = CoxeterElement(self, (), ident, ident)
        self._spheres = [[self.identity]]
        self._by_cols = {ident: self.identity}
        self._total = 1
        self._lock = threading.RLock()  # enumeration caches are shared state

    # -- elementary matrix updates (sparse in the bond degree) ---------------

    def _rmul(self, cols, inv_rows, s):
        """Matrices of w*r_s from those of w."""
        row_s = self.gcm.entries[s]
        col_s = cols[s]
        new_cols = list(cols)
        for j in range(self.n):
            a = row_s[j]
            if a:
                new_cols[j] = tuple(x - a * y for x, y in zip(cols[j], col_s))
        acc = [-x for x in inv_rows[s]]
        for j in range(self.n):
            a = row_s[j]
            if a and j != s:
                acc = [x - a * y for x, y in zip(acc, inv_rows[j])]
        new_rows = list(inv_rows)
        new_rows[s] = tuple(acc)
        return tuple(new_cols), tuple(new_rows)

    def _lmul(self, cols, inv_rows, s):
        """Matrices of r_s*w from those of w."""
        row_s = self.gcm.entries[s]
        new_cols = []
        for col in cols:
            acc = -col[s]
            for k in range(self.n):
                a = row_s[k]
                if a and k != s:
                    acc -= a * col[k]
            lst = list(col)
            lst[s] = acc
            new_cols.append(tuple(lst))
        new_rows = []
        for row in inv_rows:
            lst = list(row)
            for j in range(self.n):
                a = row_s[j]
                if a:
                    lst[j] = row[j] - a * row[s]
            new_rows.append(tuple(lst))
        return tuple(new_cols), tuple(new_rows)

    @staticmethod
    def _least_left_descent(inv_rows, n):
        for i in range(n):
            col = [row[i] for row in inv_rows]
            if all(x <= 0 for x in col) and any(x < 0 for x in col):
                return i
        return None

    def _normalize(self, cols, inv_rows) -> CoxeterElement:
        """ShortLex word by repeatedly stripping the least left descent."""
        word = []
        c, r = cols, inv_rows
        while True:
            i = self._least_left_descent(r, self.n)
            if i is None:
                break
            word.append(i)
            c, r = self._lmul(c, r, i)
        return CoxeterElement(self, tuple(word), cols, inv_rows)

    # -- public construction -------------------------------------------------

    def element(self, word) -> CoxeterElement:
        """Normal form of an arbitrary generator word."""
        cols, inv_rows = self.identity.cols, self.identity.inv_rows
        for s in word:
            if not 0 <= s < self.n:
                raise IndexError(f"generator index {s} out of range")
            cols, inv_rows = self._rmul(cols, inv_rows, s)
        cached = self._by_cols.get(cols)
        if cached is not None:
            return cached
        return self._normalize(cols, inv_rows)

    def generator(self, s: int) -> CoxeterElement:
        return self.element((s,))

    def multiply(self, u: CoxeterElement, v: CoxeterElement) -> CoxeterElement:
        cols, inv_rows = u.cols, u.inv_rows
        for s in v.word:
            cols, inv_rows = self._rmul(cols, inv_rows, s)
        cached = self._by_cols.get(cols)
        if cached is not None:
            return cached
        return self._normalize(cols, inv_rows)

    def inverse(self, w: CoxeterElement) -> CoxeterElement:
        return self.element(tuple(reversed(w.word)))

    def rmul_gen(self, w: CoxeterElement, s: int) -> CoxeterElement:
        cols, inv_rows = self._rmul(w.cols, w.inv_rows, s)
        cached = self._by_cols.get(cols)
        if cached is not None:
            return cached
        return self._normalize(cols, inv_rows)

    # -- ball enumeration -----------------------------------------------------

    def _extend(self, L: int) -> None:
        with self._lock:
            self._extend_locked(L)

    def _extend_locked(self, L: int) -> None:
        while len(self._spheres) <= L:
            frontier = {}
            for el in self._spheres[-1]:
                for s in range(self.n):
                    if _is_negative(el.cols[s]):
                        continue  # descent: ws is shorter
                    cols, inv_rows = self._rmul(el.cols, el.inv_rows, s)
                    if cols in frontier:
                        continue
                    # ShortLex word: least left descent, then the cached
                    # normal form of the shorter element it strips to.
                    i = self._least_left_descent(inv_rows, self.n)
                    c2, r2 = self._lmul(cols, inv_rows, i)
                    parent = self._by_cols[c2]
                    frontier[cols] = CoxeterElement(
                        self, (i,) + parent.word, cols, inv_rows
                    )
            sphere = sorted(frontier.values(), key=lambda e: e.word)
            self._total += len(sphere)
            if self._total > self.element_cap:
                raise ResourceExceededError(
                    f"ball enumeration exceeded the cap of {self.element_cap} elements"
                )
            self._by_cols.update(frontier)
            self._spheres.append(sphere)

    def sphere(self, length: int) -> tuple[CoxeterElement, ...]:
        self._extend(length)
        return tuple(self._spheres[length])

    def ball(self, L: int) -> tuple[CoxeterElement, ...]:
        """All elements of length <= L, sorted by (length, ShortLex)."""
        if L < 0:
            raise ValueError("length bound must be >= 0")
        self._extend(L)
        out = []
        for sphere in self._spheres[: L + 1]:
            out.extend(sphere)
        return tuple(out)

    def is_finite(self, max_length: int = 64) -> bool:
        """Exhaustion test: some sphere up to max_length is empty."""
        for k in range(max_length + 1):
            if not self.sphere(k):
                return True
        return False

    def subgroup_elements(self, J) -> tuple[CoxeterElement, ...]:
        """All elements of the standard parabolic subgroup on J (finite type)."""
        J = tuple(sorted(set(J)))
        if J and classify_type(self.gcm.submatrix(J)).kind != FINITE:
            raise NotFiniteTypeError(f"subset {J} does not span a finite subgroup")
        return self._parabolic(J)

    @lru_cache(maxsize=None)
    def _parabolic(self, J) -> tuple[CoxeterElement, ...]:
        out = [self.identity]
        layer = [self.identity]
        while layer:
            nxt = {}
            for el in layer:
                for s in J:
                    if not _is_negative(el.cols[s]):
                        w = self.rmul_gen(el, s)
                        nxt[w.word] = w
            layer = list(nxt.values())
            out.extend(layer)
        return tuple(sorted(out, key=lambda e: e.sort_key()))

    # -- cosets, purity, Bruhat order -----------------------------------------

    def min_coset_reps(self, J, K=None, L: int = 0) -> tuple[CoxeterElement, ...]:
        """Elements of length <= L minimal in W_J w (and in W_J w W_K if K given)."""
        J = frozenset(J)
        K = frozenset(K) if K is not None else None
        out = []
        for w in self.ball(L):
            if any(i in J for i in w.descent_set("left")):
                continue
            if K is not None and any(k in K for k in w.descent_set("right")):
                continue
            out.append(w)
        return tuple(out)

    def is_min_double_rep(self, w: CoxeterElement, J, K) -> bool:
        """For w minimal in W_J w: is w the minimal W_J-W_K double coset rep."""
        J = frozenset(J)
        if any(i in J for i in w.descent_set("left")):
            raise NotMinimalError("w is not a minimal left W_J-coset representative")
        K = frozenset(K)
        return not any(k in K for k in w.descent_set("right"))

    def double_coset_intersection(self, w: CoxeterElement, J, K) -> tuple[int, ...]:
        """Subset L of J with W_K meet w W_J w^{-1} equal to w W_L w^{-1}.

        Requires w minimal for (K-left, J-right).  j belongs to L exactly
        when w(alpha_j) is a positive root supported on K.
        """
        J = tuple(sorted(set(J)))
        K = frozenset(K)
        if any(k in K for k in w.descent_set("left")) or any(
            j in set(J) for j in w.descent_set("right")
        ):
            raise NotMinimalError("w is not a minimal (K, J) double coset representative")
        out = []
        for j in J:
            col = w.cols[j]
            if all(x >= 0 for x in col) and all(
                col[i] == 0 for i in range(self.n) if i not in K
            ):
                out.append(j)
        return tuple(out)

    def pure_reps(self, K, J, L: int, maximal: bool = False) -> tuple[CoxeterElement, ...]:
        """Minimal (K, J) double coset reps w of length <= L whose conjugate
        of W_J meets W_K trivially; with ``maximal``, additionally pure for
        no proper superset of J."""
        K = tuple(sorted(set(K)))
        J = tuple(sorted(set(J)))
        out = []
        for w in self.min_coset_reps(K, J, L):
            if self.double_coset_intersection(w, J, K):
                continue
            if maximal and self.pure_for_proper_superset(w, K, J):
                continue
            out.append(w)
        return tuple(out)

    def pure_for_proper_superset(self, w, K, J) -> bool:
        rest = [i for i in range(self.n) if i not in J]
        right = set(w.descent_set("right"))
        for bits in range(1, 1 << len(rest)):
            extra = [rest[t] for t in range(len(rest)) if bits >> t & 1]
            if any(i in right for i in extra):
                continue  # not even a minimal rep for the bigger parabolic
            if not self.double_coset_intersection(w, tuple(sorted(J + tuple(extra))), K):
                return True
        return False

    def bruhat_leq(self, v: CoxeterElement, w: CoxeterElement) -> bool:
        """Bruhat order: v is a subword of any reduced expression of w.

        Computed by the lifting property: with i a left descent of w,
        v <= w iff (r_i v <= r_i w when i is a descent of v) else v <= r_i w.
        """
        vc, vr, vl = v.cols, v.inv_rows, v.length
        wc, wr, wl = w.cols, w.inv_rows, w.length
        while True:
            if vl == 0:
                return True
            if vl > wl:
                return False
            i = self._least_left_descent(wr, self.n)
            wc, wr = self._lmul(wc, wr, i)
            wl -= 1
            col = [row[i] for row in vr]
            if all(x <= 0 for x in col) and any(x < 0 for x in col):
                vc, vr = self._lmul(vc, vr, i)
                vl -= 1

    # -- canonical coset minimization -----------------------------------------

    def rstrip(self, w: CoxeterElement, S) -> CoxeterElement:
        """Minimal length element of w W_S."""
        S = tuple(sorted(set(S)))
        while True:
            for s in S:
                if _is_negative(w.cols[s]):
                    w = self.rmul_gen(w, s)
                    break
            else:
                return w

    def lstrip(self, w: CoxeterElement, S) -> CoxeterElement:
        """Minimal length element of W_S w."""
        S = tuple(sorted(set(S)))
        while True:
            for s in S:
                col = w.inverse_root_image(s)
                if all(x <= 0 for x in col) and any(x < 0 for x in col):
                    cols, inv_rows = self._lmul(w.cols, w.inv_rows, s)
                    w = self._by_cols.get(cols) or self._normalize(cols, inv_rows)
                    break
            else:
                return w

    def double_strip(self, w: CoxeterElement, J, K) -> CoxeterElement:
        """Minimal length element of W_J w W_K."""
        while True:
            w2 = self.rstrip(self.lstrip(w, J), K)
            if w2.length == w.length:
                return w2
            w = w2


_GROUPS: dict[tuple, WeylGroup] = {}
_GROUPS_LOCK = threading.Lock()


def weyl_group(A: GeneralizedCartanMatrix) -> WeylGroup:
    """Shared per-matrix group instance (balls and parabolics are cached)."""
    with _GROUPS_LOCK:
        group = _GROUPS.get(A.entries)
        if group is None:
            group = _GROUPS[A.entries] = WeylGroup(A)
        return group


def normal_form(word, A: GeneralizedCartanMatrix) -> CoxeterElement:
    return weyl_group(A).element(tuple(word))
