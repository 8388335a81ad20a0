"""Gröbner bases with cofactor tracking, normal forms and the quotient algebra.

Everything here works for a square system ``p = (p_1, ..., p_n)`` in ``n``
variables whose zero set is finite and non-empty.  The Gröbner basis keeps,
for every element ``G_i``, polynomials ``C_ik`` with ``G_i = sum_k C_ik p_k``,
so every normal form comes with an ideal-membership certificate expressed in
the original generators.
"""

import heapq
from dataclasses import dataclass, field
from functools import cached_property, lru_cache

from .algebra import linalg
from .algebra.order import GREVLEX, MonomialOrder, box, mono_lcm, precedes
from .algebra.poly import MultiPoly, sum_polys
from .algebra.scalar import ONE, ZERO
from .algebra import poly_det
from .errors import (ArityError, EmptyVarietyError, InputError,
                     InvariantViolation, NotZeroDimensionalError)


@dataclass(frozen=True)
class IdealPresentation:
    generators: tuple
    order: MonomialOrder = GREVLEX

    def __post_init__(self):
        gens = tuple(self.generators)
        object.__setattr__(self, "generators", gens)
        if not gens:
            raise InputError("at least one generator is required")
        n = gens[0].nvars
        if any(g.nvars != n for g in gens):
            raise ArityError("generators live in different numbers of variables")
        if len(gens) != n:
            raise InputError(f"expected exactly {n} generators in {n} variables, got {len(gens)}")
        if any(not g for g in gens):
            raise InputError("generators must be nonzero")

    @property
    def nvars(self):
        return len(self.generators)

    def vanishes_at(self, point):
        return all(not g(point) for g in self.generators)


@dataclass(frozen=True)
class GroebnerData:
    presentation: IdealPresentation
    basis: tuple
    cofactors: tuple
    standard_monomials: tuple

    @property
    def order(self):
        return self.presentation.order

    @property
    def nvars(self):
        return self.presentation.nvars

    @property
    def N(self):
        return len(self.standard_monomials)

    @cached_property
    def index(self):
        return {m: k for k, m in enumerate(self.standard_monomials)}

    @cached_property
    def _reducers(self):
        return [_Reducer(g, self.order) for g in self.basis]


@dataclass(frozen=True)
class TransformationData:
    """Separated polynomials ``q_j(s_j)`` with ``q = A p`` and ``detA = det A``."""

    q: tuple
    A: tuple
    detA: MultiPoly
    method: str = field(default="charpoly", compare=False)

    @property
    def degrees(self):
        return tuple(qj.degree() for qj in self.q)


class _Reducer:
    __slots__ = ("lm", "lc_inv", "terms")

    def __init__(self, g, order):
        self.lm, lc = g.leading_term(order)
        self.lc_inv = lc.inverse()
        self.terms = g._terms


def _neg_key(order):
    if order is GREVLEX:
        return lambda e: (-sum(e), tuple(reversed(e)))
    return lambda e: tuple(-x for x in e)


def _reduce(f_terms, reducers, order, track=False):
    """Full reduction of ``f`` by ``reducers``.

    Returns ``(remainder_terms, quotients)`` with ``f = rem + sum q_i g_i``;
    ``quotients`` maps reducer index to a raw term dict (``None`` if untracked).
    """
    nk = _neg_key(order)
    p = dict(f_terms)
    heap = [(nk(m), m) for m in p]
    heapq.heapify(heap)
    rem = {}
    quots = {} if track else None
    while heap:
        _, m = heapq.heappop(heap)
        c = p.pop(m, None)
        if c is None:
            continue
        for i, r in enumerate(reducers):
            if all(x <= y for x, y in zip(r.lm, m)):
                break
        else:
            rem[m] = c
            continue
        factor = c * r.lc_inv
        shift = tuple(y - x for x, y in zip(r.lm, m))
        if track:
            qi = quots.setdefault(i, {})
            qi[shift] = qi.get(shift, ZERO) + factor
        lm = r.lm
        for e, gc in r.terms.items():
            if e == lm:
                continue
            t = tuple(x + y for x, y in zip(e, shift))
            old = p.get(t)
            if old is None:
                p[t] = -(gc * factor)
                heapq.heappush(heap, (nk(t), t))
            else:
                v = old - gc * factor
                if v:
                    p[t] = v
                else:
                    del p[t]
    return rem, quots


def _combine(nvars, quots, cofactor_rows, n):
    """``sum_i quots[i] * cofactor_rows[i]`` as a length-``n`` list of polys."""
    out = []
    for k in range(n):
        parts = [MultiPoly._wrap(nvars, q) * cofactor_rows[i][k] for i, q in quots.items() if q]
        out.append(sum_polys(parts, nvars))
    return out


def _is_constant_terms(terms, nvars):
    return len(terms) == 1 and (0,) * nvars in terms


@lru_cache(maxsize=512)
def buchberger(pres):
    """Reduced Gröbner basis of ``(p)`` with cofactors back to the generators.

    Raises :class:`EmptyVarietyError` when the basis is ``{1}`` and
    :class:`NotZeroDimensionalError` when the quotient is infinite-dimensional.
    """
    order = pres.order
    n = pres.nvars
    key = order.key
    polys, cofs, lms, reducers = [], [], [], []

    def add(terms, cof):
        m = order.max(terms)
        lc_inv = terms[m].inverse()
        if lc_inv != ONE:
            terms = {e: c * lc_inv for e, c in terms.items()}
            cof = [c.scale(lc_inv) for c in cof]
        polys.append(terms)
        cofs.append(cof)
        lms.append(m)
        reducers.append(_Reducer(MultiPoly._wrap(n, terms), order))
        if _is_constant_terms(terms, n):
            raise EmptyVarietyError("the generators have no common zero (the ideal contains 1)")

    for k, g in enumerate(pres.generators):
        add(dict(g._terms), [MultiPoly.one(n) if j == k else MultiPoly.zero(n) for j in range(n)])

    pairs = set()
    for j in range(len(polys)):
        for i in range(j):
            pairs.add((i, j))

    def pair_key(ij):
        i, j = ij
        return (key(mono_lcm(lms[i], lms[j])), j, i)

    while pairs:
        i, j = min(pairs, key=pair_key)
        pairs.discard((i, j))
        lcm = mono_lcm(lms[i], lms[j])
        if all(a == 0 or b == 0 for a, b in zip(lms[i], lms[j])):
            continue
        if _chain_criterion(i, j, lcm, lms, pairs):
            continue
        si = tuple(a - b for a, b in zip(lcm, lms[i]))
        sj = tuple(a - b for a, b in zip(lcm, lms[j]))
        s = {}
        for e, c in polys[i].items():
            s[tuple(a + b for a, b in zip(e, si))] = c
        for e, c in polys[j].items():
            t = tuple(a + b for a, b in zip(e, sj))
            v = s.get(t, ZERO) - c
            if v:
                s[t] = v
            else:
                s.pop(t, None)
        rem, quots = _reduce(s, reducers, order, track=True)
        if not rem:
            continue
        # rem = si*g_i - sj*g_j - sum q_l g_l
        comb = {l: {m: -c for m, c in q.items()} for l, q in quots.items()}
        comb.setdefault(i, {})
        comb[i][si] = comb[i].get(si, ZERO) + ONE
        comb.setdefault(j, {})
        comb[j][sj] = comb[j].get(sj, ZERO) - ONE
        comb = {l: {m: c for m, c in q.items() if c} for l, q in comb.items()}
        new_cof = _combine(n, comb, cofs, n)
        add(rem, new_cof)
        new = len(polys) - 1
        for l in range(new):
            pairs.add((l, new))

    return _finish(pres, polys, cofs, lms)


def _chain_criterion(i, j, lcm, lms, pairs):
    for k in range(len(lms)):
        if k in (i, j):
            continue
        if not precedes(lms[k], lcm):
            continue
        if (min(i, k), max(i, k)) in pairs or (min(j, k), max(j, k)) in pairs:
            continue
        return True
    return False


def _finish(pres, polys, cofs, lms):
    order, n = pres.order, pres.nvars
    key = order.key
    idx = sorted(range(len(polys)), key=lambda k: (key(lms[k]), k))
    keep = []
    for k in idx:
        if any(precedes(lms[l], lms[k]) for l in keep):
            continue
        keep.append(k)
    basis, cofactors = [], []
    for k in keep:
        others = [l for l in keep if l != k]
        reducers = [_Reducer(MultiPoly._wrap(n, polys[l]), order) for l in others]
        rem, quots = _reduce(polys[k], reducers, order, track=True)
        if rem[lms[k]] != ONE:
            raise InvariantViolation("leading coefficient changed during inter-reduction")
        sub = _combine(n, {others[l]: q for l, q in quots.items()}, cofs, n)
        basis.append(MultiPoly._wrap(n, rem))
        cofactors.append(tuple(cofs[k][r] - sub[r] for r in range(n)))
    std = _standard_monomials([lms[k] for k in keep], n, order)
    return GroebnerData(pres, tuple(basis), tuple(cofactors), tuple(std))


def _standard_monomials(leading, n, order):
    bounds = []
    for v in range(n):
        pure = [m[v] for m in leading if all(x == 0 for j, x in enumerate(m) if j != v)]
        if not pure:
            raise NotZeroDimensionalError(
                f"no pure power of variable {v + 1} among the leading monomials; "
                "the zero set is not finite")
        bounds.append(min(pure) - 1)
    std = [e for e in box(bounds) if not any(precedes(m, e) for m in leading)]
    return order.sorted(std)


def groebner(pres):
    return buchberger(pres)


def normal_form(f, gb):
    """Return ``(nf, cofactors)`` with ``f = nf + sum_k cofactors[k] * p_k``."""
    if f.nvars != gb.nvars:
        raise ArityError(f"polynomial has {f.nvars} variables, ideal has {gb.nvars}")
    rem, quots = _reduce(f._terms, gb._reducers, gb.order, track=True)
    cof = _combine(gb.nvars, quots, gb.cofactors, gb.nvars)
    return MultiPoly._wrap(gb.nvars, rem), tuple(cof)


def reduce(f, gb):
    """Normal form without the certificate."""
    if f.nvars != gb.nvars:
        raise ArityError(f"polynomial has {f.nvars} variables, ideal has {gb.nvars}")
    rem, _ = _reduce(f._terms, gb._reducers, gb.order)
    return MultiPoly._wrap(gb.nvars, rem)


def coordinates(f, gb):
    """Coefficients of the normal form of ``f`` on the standard monomials."""
    nf = reduce(f, gb)
    return [nf.coeff(m) for m in gb.standard_monomials]


def from_coordinates(alpha, gb):
    return MultiPoly(gb.nvars, zip(gb.standard_monomials, alpha))


@lru_cache(maxsize=512)
def multiplication_matrix(var, gb):
    """Matrix of multiplication by ``s_var`` on the quotient; column k is ``s_var * s^beta_k``."""
    cols = []
    for m in gb.standard_monomials:
        shifted = tuple(x + (1 if j == var else 0) for j, x in enumerate(m))
        cols.append(coordinates(MultiPoly.monomial(shifted), gb))
    return tuple(tuple(row) for row in linalg.transpose(cols)) if cols else ()


def univariate_in_ideal(var, gb, method="charpoly"):
    """Monic ``q(s_var)`` lying in the ideal.

    ``charpoly`` (default) gives the characteristic polynomial of the
    multiplication matrix (degree N); ``minpoly`` the minimal polynomial.
    """
    mat = [list(r) for r in multiplication_matrix(var, gb)]
    if method == "charpoly":
        coeffs = linalg.charpoly(mat)
    elif method == "minpoly":
        one = [ONE if k == 0 else ZERO for k in range(gb.N)]
        if gb.standard_monomials[0] != (0,) * gb.nvars:
            raise InvariantViolation("constant monomial is not first in the standard basis")
        coeffs = linalg.krylov_minpoly(mat, one)
    else:
        raise ValueError(f"unknown method {method!r}")
    n = gb.nvars
    terms = []
    for k, c in enumerate(coeffs):
        e = [0] * n
        e[var] = k
        terms.append((tuple(e), c))
    return MultiPoly(n, terms)


@lru_cache(maxsize=512)
def transformation_data(gb, method="charpoly"):
    """Separated ``q`` and the matrix ``A`` with ``q = A p``, plus ``det A``."""
    pres = gb.presentation
    n = gb.nvars
    qs, rows = [], []
    for j in range(n):
        qj = univariate_in_ideal(j, gb, method)
        nf, cof = normal_form(qj, gb)
        if nf:
            raise InvariantViolation(f"q_{j + 1} does not reduce to zero")
        qs.append(qj)
        rows.append(tuple(cof))
    _verify_transformation(qs, rows, pres.generators)
    detA = poly_det([list(r) for r in rows], n, pres.order)
    return TransformationData(tuple(qs), tuple(rows), detA, method)


def _verify_transformation(qs, rows, gens):
    for qj, row in zip(qs, rows):
        total = sum_polys([a * p for a, p in zip(row, gens)], qj.nvars)
        if total != qj:
            raise InvariantViolation("transformation identity q = A p failed")


def shifted_transformation(td, shifts):
    """Another valid ``(q, A)``: ``q_j (s_j - c_j)`` and row j of A times ``(s_j - c_j)``."""
    n = td.q[0].nvars
    qs, rows = [], []
    for j, c in enumerate(shifts):
        lin = MultiPoly.variable(n, j) - c
        qs.append(td.q[j] * lin)
        rows.append(tuple(a * lin for a in td.A[j]))
    detA = poly_det([list(r) for r in rows], n)
    return TransformationData(tuple(qs), tuple(rows), detA, "shifted")


__all__ = [
    "IdealPresentation", "GroebnerData", "TransformationData", "buchberger",
    "groebner", "normal_form", "reduce", "coordinates", "from_coordinates",
    "multiplication_matrix", "univariate_in_ideal", "transformation_data",
    "shifted_transformation",
]
