"""Grothendieck residues for square zero-dimensional systems.

The global residue ``Res[h ds / p]`` is computed through the transformation
law: with separated ``q = A p``, the residue equals the coefficient of
``s^(d_q - 1)`` in the remainder of ``h * det A`` under successive Euclidean
division by ``q_1(s_1), ..., q_n(s_n)``.  Local residues at a rational zero
use the same data, localised by a truncated Taylor expansion.
"""

from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

from .algebra import linalg, poly_det
from .algebra.poly import (MultiPoly, embed, poly_diff, series_inverse_truncated,
                           sum_polys, univ_divmod)
from .algebra.scalar import ONE, ZERO, as_scalar
from .errors import ArityError, InvariantViolation, NodeNotAZeroError
from .idealcore import buchberger, coordinates, transformation_data


@dataclass(frozen=True)
class HeferMatrix:
    """``p_j(s) - p_j(z) = sum_l entries[j][l] * (s_l - z_l)``.

    Entries are polynomials in ``2n`` variables ordered ``s_1..s_n, z_1..z_n``.
    """

    entries: tuple
    det: MultiPoly
    var_order: tuple


@dataclass(frozen=True)
class ZeroPoint:
    coords: tuple

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(as_scalar(c) for c in self.coords))


class MembershipResult(NamedTuple):
    member: bool
    witness: tuple       # a standard monomial Phi with Res[Phi f] != 0, or None
    residues: tuple      # Res[s^beta_k f] for every standard monomial


def _coords(w):
    return w.coords if isinstance(w, ZeroPoint) else tuple(as_scalar(c) for c in w)


def jacobian_det(pres):
    n = pres.nvars
    rows = []
    for p in pres.generators:
        rows.append([poly_diff(p, tuple(1 if k == l else 0 for k in range(n))) for l in range(n)])
    return poly_det(rows, n)


# -- Hefer / Bezoutian matrices ---------------------------------------------

def _rename(p, src, dst):
    """Move the exponent of variable ``src`` onto variable ``dst``."""
    out = {}
    for e, c in p._terms.items():
        m = list(e)
        m[dst] += m[src]
        m[src] = 0
        m = tuple(m)
        v = out.get(m)
        out[m] = c if v is None else v + c
    return MultiPoly._wrap(p.nvars, {m: c for m, c in out.items() if c})


@lru_cache(maxsize=256)
def hefer_matrix(pres, var_order=None):
    """Bezoutian matrix built by telescoping over the variables in ``var_order``."""
    n = pres.nvars
    order = tuple(range(n)) if var_order is None else tuple(var_order)
    if sorted(order) != list(range(n)):
        raise ValueError(f"var_order must be a permutation of range({n})")
    N2 = 2 * n
    rows = []
    for p in pres.generators:
        cur = embed(p, N2, list(range(n)))
        row = [None] * n
        for l in order:
            nxt = _rename(cur, l, n + l)
            diff = MultiPoly.variable(N2, l) - MultiPoly.variable(N2, n + l)
            quo, rem = univ_divmod(cur - nxt, diff, l)
            if rem:
                raise InvariantViolation("telescoping difference is not divisible")
            row[l] = quo
            cur = nxt
        rows.append(tuple(row))
    for p, row in zip(pres.generators, rows):
        lhs = embed(p, N2, list(range(n))) - embed(p, N2, list(range(n, N2)))
        rhs = sum_polys([b * (MultiPoly.variable(N2, l) - MultiPoly.variable(N2, n + l))
                         for l, b in enumerate(row)], N2)
        if lhs != rhs:
            raise InvariantViolation("Hefer identity failed")
    det = poly_det([list(r) for r in rows], N2)
    return HeferMatrix(tuple(rows), det, order)


def split_sz(poly2n, n):
    """Split a polynomial in ``(s, z)`` into ``{z-exponent: polynomial in s}``."""
    parts = {}
    for e, c in poly2n._terms.items():
        parts.setdefault(e[n:], {})[e[:n]] = c
    return {g: MultiPoly._wrap(n, d) for g, d in parts.items()}


def bezoutian_matrix(gb, hefer):
    """Coefficients ``B[k][l]`` of ``det B_p`` modulo ``(p(s), p(z))`` on ``s^beta_k z^beta_l``."""
    n, N = gb.nvars, gb.N
    in_z = [dict() for _ in range(N)]
    for gamma, s_poly in split_sz(hefer.det, n).items():
        for k, a in enumerate(coordinates(s_poly, gb)):
            if a:
                in_z[k][gamma] = in_z[k].get(gamma, ZERO) + a
    return [coordinates(MultiPoly(n, d), gb) for d in in_z]


# -- the residue engine ------------------------------------------------------

def reduce_separated(f, qs):
    """Remainder of ``f`` under successive division by ``q_1(s_1), ..., q_n(s_n)``."""
    for j, qj in enumerate(qs):
        _, f = univ_divmod(f, qj, j)
    return f


class _TopCoefficients:
    """``lam(k)``: coefficient of ``x^(d-1)`` in ``x^k mod q(x)``, extended on demand."""

    def __init__(self, q_coeffs):
        self.c = q_coeffs[:-1]
        self.d = len(self.c)
        self.seq = [ONE if k == self.d - 1 else ZERO for k in range(self.d)]

    def __call__(self, k):
        seq, c, d = self.seq, self.c, self.d
        while len(seq) <= k:
            m = len(seq)
            acc = ZERO
            for i in range(d):
                if c[i]:
                    acc = acc - c[i] * seq[m - d + i]
            seq.append(acc)
        return seq[k]


class ResidueEngine:
    """Global and local residue functionals for one ``(p, q, A)`` triple."""

    def __init__(self, pres, td):
        self.pres = pres
        self.td = td
        self.n = pres.nvars
        self.R = reduce_separated(td.detA, td.q)
        self.top = []
        for j, qj in enumerate(td.q):
            d = qj.degree_in(j)
            coeffs = [qj.coeff(tuple(k if i == j else 0 for i in range(self.n))) for k in range(d + 1)]
            self.top.append(_TopCoefficients(coeffs))
        self._mono_cache = {}
        self._local = {}

    def monomial_residue(self, gamma):
        """``Res[s^gamma ds / p]``."""
        v = self._mono_cache.get(gamma)
        if v is None:
            v = ZERO
            top = self.top
            for b, rb in self.R._terms.items():
                t = rb
                for j, (g, x) in enumerate(zip(gamma, b)):
                    lam = top[j](g + x)
                    if not lam:
                        t = None
                        break
                    t = t * lam
                if t is not None:
                    v = v + t
            self._mono_cache[gamma] = v
        return v

    def residue(self, h):
        if h.nvars != self.n:
            raise ArityError("polynomial and system have different numbers of variables")
        total = ZERO
        for a, ha in h._terms.items():
            r = self.monomial_residue(a)
            if r:
                total = total + ha * r
        return total

    # local residues ------------------------------------------------------
    def _kernel(self, w):
        k = self._local.get(w)
        if k is not None:
            return k
        if not self.pres.vanishes_at(w):
            raise NodeNotAZeroError(f"point {_fmt_point(w)} is not a common zero of the generators")
        n = self.n
        mult = []
        factors = []
        for j, qj in enumerate(self.td.q):
            m, r = _root_multiplicity(qj, j, w[j])
            if m == 0:
                raise InvariantViolation("zero of p is not a root of q_j")
            mult.append(m)
            factors.append(r)
        bound = tuple(m - 1 for m in mult)
        K = _shift_truncated(self.R, w, bound)
        for j, r in enumerate(factors):
            order = tuple(bound[j] if i == j else 0 for i in range(n))
            inv = series_inverse_truncated(r, w, order)
            K = _mul_box(K, inv, bound)
        k = (bound, K)
        self._local[w] = k
        return k

    def local_residue(self, h, w):
        w = _coords(w)
        if len(w) != self.n:
            raise ArityError("node has the wrong number of coordinates")
        bound, K = self._kernel(w)
        g = _shift_truncated(h, w, bound)
        total = ZERO
        for ell, c in g._terms.items():
            kc = K._terms.get(tuple(b - x for b, x in zip(bound, ell)))
            if kc:
                total = total + c * kc
        return total


def _fmt_point(w):
    return "(" + ", ".join(str(x) for x in w) + ")"


def _root_multiplicity(q, var, root):
    """Multiplicity of ``root`` as a root of ``q(s_var)`` and the cofactor ``q / (s - root)^m``."""
    n = q.nvars
    lin = MultiPoly.variable(n, var) - root
    m = 0
    while True:
        quo, rem = univ_divmod(q, lin, var)
        if rem:
            return m, q
        q = quo
        m += 1


def _shift_truncated(p, w, bound):
    """Taylor coefficients of ``p`` at ``w`` up to the box ``bound`` (in ``t = s - w``)."""
    terms = dict(p._terms)
    for j, wj in enumerate(w):
        bj = bound[j]
        out = {}
        powers = [ONE]
        for e, c in terms.items():
            k = e[j]
            while len(powers) <= k:
                powers.append(powers[-1] * wj)
            for r in range(min(k, bj) + 1):
                pw = powers[k - r]
                if not pw:
                    continue
                m = e[:j] + (r,) + e[j + 1:]
                v = c * (pw * _binom(k, r))
                old = out.get(m)
                out[m] = v if old is None else old + v
        terms = {m: c for m, c in out.items() if c}
    return MultiPoly._wrap(p.nvars, terms)


_BINOM = {}


def _binom(k, r):
    v = _BINOM.get((k, r))
    if v is None:
        from math import comb
        v = _BINOM[(k, r)] = comb(k, r)
    return v


def _mul_box(a, b, bound):
    acc = {}
    for ma, ca in a._terms.items():
        for mb, cb in b._terms.items():
            m = tuple(x + y for x, y in zip(ma, mb))
            if any(x > y for x, y in zip(m, bound)):
                continue
            c = ca * cb
            v = acc.get(m)
            acc[m] = c if v is None else v + c
    return MultiPoly._wrap(a.nvars, {m: c for m, c in acc.items() if c})


@lru_cache(maxsize=512)
def residue_engine(pres, td=None):
    gb = buchberger(pres)
    if td is None:
        td = transformation_data(gb)
    return ResidueEngine(pres, td)


# -- public operations -------------------------------------------------------

def global_residue(h, pres, td=None):
    """``Res[h ds / p]`` via the transformation law.

    ``td`` selects a particular :class:`TransformationData`; the value does
    not depend on that choice.
    """
    return residue_engine(pres, td).residue(h)


def global_residue_by_division(h, pres, td=None):
    """Same value as :func:`global_residue`, reducing ``h * det A`` term by term.

    Slower; kept as a literal cross-check of the factorised evaluation.
    """
    if td is None:
        td = transformation_data(buchberger(pres))
    rem = reduce_separated(h * td.detA, td.q)
    top = tuple(qj.degree() - 1 for qj in td.q)
    return rem.coeff(top)


def residue_vector_hefer(pres, var_order=None):
    """``Res[s^beta_k]`` for the standard monomials, from the Bezoutian alone.

    The Bezoutian coefficient matrix is the inverse of the residue pairing, so
    its inverse's column for the constant monomial is the residue functional.
    """
    gb = buchberger(pres)
    B = bezoutian_matrix(gb, hefer_matrix(pres, var_order))
    e0 = [ONE if k == 0 else ZERO for k in range(gb.N)]
    return linalg.solve(B, e0)


def global_residue_hefer(h, pres, var_order=None):
    gb = buchberger(pres)
    rho = residue_vector_hefer(pres, var_order)
    return linalg.dot(coordinates(h, gb), rho)


def local_residue(h, pres, w, td=None):
    """Contribution of the rational zero ``w`` to ``Res[h ds / p]``."""
    return residue_engine(pres, td).local_residue(h, w)


def local_multiplicity(pres, w):
    """Multiplicity of ``w`` as the local residue of the Jacobian determinant."""
    v = local_residue(jacobian_det(pres), pres, w)
    if not v.is_integer() or v.re < 1:
        raise InvariantViolation(f"local multiplicity came out as {v}")
    return int(v.re)


def membership_test(f, gb, pres=None):
    """Residue duality: ``f`` is in ``(p)`` iff ``Res[s^beta_k f] = 0`` for all k."""
    pres = gb.presentation if pres is None else pres
    eng = residue_engine(pres)
    residues = []
    witness = None
    for beta in gb.standard_monomials:
        r = ZERO
        for a, c in f._terms.items():
            v = eng.monomial_residue(tuple(x + y for x, y in zip(a, beta)))
            if v:
                r = r + c * v
        residues.append(r)
        if r and witness is None:
            witness = beta
    return MembershipResult(witness is None, witness, tuple(residues))


__all__ = [
    "HeferMatrix", "ZeroPoint", "MembershipResult", "jacobian_det", "hefer_matrix",
    "bezoutian_matrix", "split_sz", "reduce_separated", "ResidueEngine", "residue_engine",
    "global_residue", "global_residue_by_division", "residue_vector_hefer",
    "global_residue_hefer", "local_residue", "local_multiplicity", "membership_test",
]
