"""Exact central hyperplane arrangements.

An arrangement is a canonical set of primitive, sign-normalized integer
normal vectors; hyperplanes are kernels of the corresponding dot-product
functionals.  All computations are exact over the rationals.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

from .linalg import Eliminator, kernel_basis, primitive, rank as matrix_rank, rref, solve_coords
from .polynomials import IntPolynomial

Normal = Tuple[int, ...]


@dataclass(frozen=True)
class Arrangement:
    dim: int
    normals: Tuple[Normal, ...]

    def __init__(self, dim: int, normals: Iterable[Sequence[int]]):
        canon = sorted({primitive(v) for v in normals if any(v)})
        for v in canon:
            if len(v) != dim:
                raise ValueError("normal has wrong dimension")
        object.__setattr__(self, "dim", int(dim))
        object.__setattr__(self, "normals", tuple(canon))

    def __len__(self):
        return len(self.normals)

    def rank(self) -> int:
        return matrix_rank(self.normals)

    def to_json_obj(self) -> dict:
        return {"dim": self.dim, "normals": [list(v) for v in self.normals]}

    @classmethod
    def from_json_obj(cls, obj: dict) -> "Arrangement":
        return cls(obj["dim"], [tuple(v) for v in obj["normals"]])


@dataclass(frozen=True)
class Flat:
    """A flat, stored as the set of hyperplanes containing it plus a basis."""
    subspace: Tuple[Tuple, ...]          # RREF basis rows of the subspace
    contains: FrozenSet[int]             # closed set of hyperplane indices

    def rank_in(self, A: Arrangement) -> int:
        return A.dim - len(self.subspace)


def _closure(A: Arrangement, indices: Iterable[int]) -> FrozenSet[int]:
    elim = Eliminator()
    for i in indices:
        elim.add(A.normals[i])
    return frozenset(i for i, v in enumerate(A.normals) if elim.in_span(v))


def flat_of(A: Arrangement, indices: Iterable[int]) -> Flat:
    closed = _closure(A, indices)
    sub = kernel_basis([A.normals[i] for i in sorted(closed)], A.dim) if closed else \
        tuple(tuple(int(i == j) for j in range(A.dim)) for i in range(A.dim))
    return Flat(sub, closed)


def flat_from_subspace(A: Arrangement, basis: Sequence[Sequence[int]]) -> Flat:
    """The smallest flat whose subspace contains span(basis)."""
    elim = Eliminator()
    for v in basis:
        elim.add(v)
    contains = [i for i, n in enumerate(A.normals)
                if all(sum(x * y for x, y in zip(n, b)) == 0 for b in elim.rows)]
    return flat_of(A, contains)


def deletion(A: Arrangement, normal: Sequence[int]) -> Arrangement:
    h = primitive(normal)
    if h not in A.normals:
        raise ValueError("hyperplane not in arrangement")
    return Arrangement(A.dim, [v for v in A.normals if v != h])


def restriction_basis(normal: Sequence[int]) -> Tuple[Tuple, ...]:
    """Canonical (RREF-derived) basis of the hyperplane ker(normal)."""
    return kernel_basis([primitive(normal)], len(normal))


def restriction(A: Arrangement, normal: Sequence[int]) -> Arrangement:
    h = primitive(normal)
    if h not in A.normals:
        raise ValueError("hyperplane not in arrangement")
    basis = restriction_basis(h)
    restricted = []
    for v in A.normals:
        if v == h:
            continue
        restricted.append(tuple(sum(x * y for x, y in zip(v, b)) for b in basis))
    return Arrangement(A.dim - 1, [r for r in restricted if any(r)])


def localization(A: Arrangement, X: Flat) -> Arrangement:
    if _closure(A, X.contains) != X.contains:
        raise ValueError("not a flat of this arrangement")
    return Arrangement(A.dim, [A.normals[i] for i in sorted(X.contains)])


def quotient_by_center(A: Arrangement) -> Arrangement:
    """Re-coordinatize so the center becomes 0: express normals in the
    canonical RREF basis of their span."""
    if not A.normals:
        return Arrangement(0, [])
    basis = rref(A.normals)
    out = []
    for v in A.normals:
        coords = solve_coords(basis, v)
        out.append(coords)
    return Arrangement(len(basis), out)


def matroid_rank(A: Arrangement, subset: Iterable[int]) -> int:
    return matrix_rank([A.normals[i] for i in subset])


def nbc_sets(A: Arrangement, order: Optional[Sequence[Normal]] = None) -> List[Tuple[Normal, ...]]:
    """All NBC subsets under the given total order (default: canonical order).

    A subset B is NBC iff it is independent and no gamma outside B lies in
    the span of {b in B : b < gamma} (broken circuit = circuit minus its
    largest element).
    """
    ordered = list(A.normals) if order is None else [primitive(v) for v in order]
    if sorted(ordered) != list(A.normals):
        raise ValueError("order must be a permutation of the arrangement's normals")
    out: List[Tuple[Normal, ...]] = []
    m = len(ordered)

    def rec(i: int, taken: List[Normal], elim: Eliminator):
        if i == m:
            out.append(tuple(taken))
            return
        gamma = ordered[i]
        if elim.in_span(gamma):
            # gamma can be neither taken (dependent) nor skipped (it would be
            # a broken-circuit witness for every completion)
            return
        ext = elim.copy()
        ext.add(gamma)
        taken.append(gamma)
        rec(i + 1, taken, ext)
        taken.pop()
        rec(i + 1, taken, elim)

    rec(0, [], Eliminator())
    return out


def nbc_counts_by_size(A: Arrangement, order: Optional[Sequence[Normal]] = None) -> List[int]:
    counts: List[int] = []
    for b in nbc_sets(A, order):
        k = len(b)
        while len(counts) <= k:
            counts.append(0)
        counts[k] += 1
    return counts or [1]


def poincare_polynomial(A: Arrangement) -> IntPolynomial:
    return IntPolynomial(nbc_counts_by_size(A))


def characteristic_polynomial(A: Arrangement) -> IntPolynomial:
    q = poincare_polynomial(A).coeffs
    l = A.dim
    coeffs = [0] * (l + 1)
    for i, c in enumerate(q):
        coeffs[l - i] += c * (-1) ** i
    return IntPolynomial(coeffs)


def flats_of_rank(A: Arrangement, target: int) -> List[Flat]:
    """All flats of the given matroid rank, generated level by level."""
    level: Dict[FrozenSet[int], None] = {_closure(A, ()): None}
    r = 0
    while r < target:
        nxt: Dict[FrozenSet[int], None] = {}
        for closed in level:
            for i in range(len(A.normals)):
                if i not in closed:
                    bigger = _closure(A, list(closed) + [i])
                    nxt.setdefault(bigger, None)
        level = nxt
        r += 1
        if not level:
            break
    return [flat_of(A, closed) for closed in level]


def coatoms(A: Arrangement) -> List[Flat]:
    return flats_of_rank(A, A.rank() - 1)


def is_modular_coatom(A: Arrangement, X: Flat) -> bool:
    if matroid_rank(A, X.contains) != A.rank() - 1:
        raise ValueError("flat is not a coatom")
    inside = [A.normals[i] for i in sorted(X.contains)]
    outside = [v for i, v in enumerate(A.normals) if i not in X.contains]
    for a in range(len(outside)):
        for b in range(a + 1, len(outside)):
            h1, h2 = outside[a], outside[b]
            if not any(matrix_rank([h1, h2, h3]) <= 2 for h3 in inside):
                return False
    return True


_ss_memo: Dict[Tuple[int, Tuple[Normal, ...]], Optional[Tuple[FrozenSet[Normal], ...]]] = {}


def is_supersolvable(A: Arrangement):
    """(True, witness chain) or (False, None).

    The witness lists, outermost first, the hyperplane normals of the
    localization at each successive modular coatom.
    """
    key = (A.dim, A.normals)
    if key not in _ss_memo:
        _ss_memo[key] = _supersolvable_chain(A)
    chain = _ss_memo[key]
    return (True, chain) if chain is not None else (False, None)


def _supersolvable_chain(A: Arrangement):
    if A.rank() <= 2:
        return ()
    for X in coatoms(A):
        if is_modular_coatom(A, X):
            sub = _supersolvable_chain(localization(A, X))
            if sub is not None:
                return (frozenset(A.normals[i] for i in X.contains),) + sub
    return None
