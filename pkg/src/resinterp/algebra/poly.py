"""Sparse multivariate polynomials over Q(i).

A :class:`MultiPoly` maps exponent tuples to nonzero :class:`GaussianRational`
coefficients.  Polynomials are immutable; every operation returns a new one.
"""

from math import comb, factorial
from types import MappingProxyType

from ..errors import ArityError, DivisionError, NonInvertibleError
from .order import GREVLEX, box, mono_mul, precedes
from .scalar import ONE, ZERO, GaussianRational, as_scalar


class MultiPoly:
    __slots__ = ("nvars", "_terms", "_hash")

    def __init__(self, nvars, terms=()):
        """Build from a mapping or an iterable of ``(exponents, coeff)`` pairs.

        Like terms are merged and zero coefficients dropped.
        """
        self.nvars = nvars
        self._terms = _canonical(nvars, terms.items() if hasattr(terms, "items") else terms)
        self._hash = None

    @classmethod
    def _wrap(cls, nvars, terms):
        # trusted: terms already canonical and owned by the new object
        obj = object.__new__(cls)
        obj.nvars = nvars
        obj._terms = terms
        obj._hash = None
        return obj

    # -- constructors ---------------------------------------------------
    @classmethod
    def zero(cls, nvars):
        return cls._wrap(nvars, {})

    @classmethod
    def constant(cls, nvars, c):
        c = as_scalar(c)
        return cls._wrap(nvars, {(0,) * nvars: c} if c else {})

    @classmethod
    def one(cls, nvars):
        return cls.constant(nvars, ONE)

    @classmethod
    def variable(cls, nvars, index):
        e = [0] * nvars
        e[index] = 1
        return cls._wrap(nvars, {tuple(e): ONE})

    @classmethod
    def monomial(cls, exponents, coeff=ONE):
        exponents = tuple(exponents)
        c = as_scalar(coeff)
        return cls._wrap(len(exponents), {exponents: c} if c else {})

    # -- views ----------------------------------------------------------
    @property
    def terms(self):
        return MappingProxyType(self._terms)

    def items(self):
        return self._terms.items()

    def monomials(self):
        return self._terms.keys()

    def coeff(self, exponents):
        return self._terms.get(tuple(exponents), ZERO)

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self):
        return not self._terms

    def is_constant(self):
        return not self._terms or (len(self._terms) == 1 and not any(next(iter(self._terms))))

    def constant_term(self):
        return self._terms.get((0,) * self.nvars, ZERO)

    def degree(self):
        """Total degree; ``-1`` for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=-1)

    def degree_in(self, var):
        return max((e[var] for e in self._terms), default=-1)

    def variables(self):
        """Indices of variables that actually occur."""
        return {j for e in self._terms for j, x in enumerate(e) if x}

    def leading_monomial(self, order=GREVLEX):
        return order.max(self._terms)

    def leading_term(self, order=GREVLEX):
        m = order.max(self._terms)
        return m, self._terms[m]

    def sorted_terms(self, order=GREVLEX, descending=True):
        return [(m, self._terms[m]) for m in order.sorted(self._terms, descending=descending)]

    # -- arithmetic -----------------------------------------------------
    def _check(self, other):
        if other.nvars != self.nvars:
            raise ArityError(f"arity mismatch: {self.nvars} vs {other.nvars} variables")

    def _lift(self, other):
        if isinstance(other, MultiPoly):
            self._check(other)
            return other
        try:
            return MultiPoly.constant(self.nvars, other)
        except TypeError:
            return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return MultiPoly._wrap(self.nvars, _add(dict(self._terms), other._terms, ONE))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return MultiPoly._wrap(self.nvars, _add(dict(self._terms), other._terms, -ONE))

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other - self

    def __neg__(self):
        return MultiPoly._wrap(self.nvars, {m: -c for m, c in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, MultiPoly):
            return poly_mul(self, other)
        try:
            c = as_scalar(other)
        except TypeError:
            return NotImplemented
        return self.scale(c)

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        result, base = MultiPoly.one(self.nvars), self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def scale(self, c):
        c = as_scalar(c)
        if not c:
            return MultiPoly.zero(self.nvars)
        return MultiPoly._wrap(self.nvars, {m: a * c for m, a in self._terms.items()})

    def mul_term(self, exponents, c):
        """Multiply by the single term ``c * s^exponents``."""
        if not c:
            return MultiPoly.zero(self.nvars)
        return MultiPoly._wrap(
            self.nvars, {mono_mul(m, exponents): a * c for m, a in self._terms.items()})

    def __call__(self, *point):
        if len(point) == 1 and isinstance(point[0], (tuple, list)):
            point = point[0]
        return evaluate(self, point)

    # -- equality -------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.nvars == other.nvars and self._terms == other._terms
        try:
            c = as_scalar(other)
        except TypeError:
            return NotImplemented
        return self.is_constant() and self.constant_term() == c

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self):
        from ..polyparse import format_poly
        return f"MultiPoly({self.nvars}, '{format_poly(self)}')"

    def __reduce__(self):
        return (MultiPoly, (self.nvars, list(self._terms.items())))


def _canonical(nvars, pairs):
    out = {}
    for e, c in pairs:
        e = tuple(int(x) for x in e)
        if len(e) != nvars:
            raise ArityError(f"exponent vector {e} has length {len(e)}, expected {nvars}")
        if any(x < 0 for x in e):
            raise ValueError(f"negative exponent in {e}")
        c = as_scalar(c)
        if e in out:
            c = out[e] + c
        out[e] = c
    return {e: c for e, c in out.items() if c}


def _add(acc, terms, factor):
    """In-place ``acc += factor * terms`` on raw dicts; returns ``acc``."""
    if factor == ONE:
        for m, c in terms.items():
            v = acc.get(m)
            if v is None:
                acc[m] = c
            else:
                v = v + c
                if v:
                    acc[m] = v
                else:
                    del acc[m]
    else:
        for m, c in terms.items():
            c = c * factor
            v = acc.get(m)
            if v is None:
                if c:
                    acc[m] = c
            else:
                v = v + c
                if v:
                    acc[m] = v
                else:
                    del acc[m]
    return acc


def poly_canonical(nvars, raw_terms):
    """Canonical polynomial from a raw list of ``(exponents, coeff)`` pairs."""
    return MultiPoly(nvars, raw_terms)


def poly_mul(a, b):
    a._check(b)
    if len(a._terms) > len(b._terms):
        a, b = b, a
    acc = {}
    bt = b._terms
    for ma, ca in a._terms.items():
        for mb, cb in bt.items():
            m = tuple(x + y for x, y in zip(ma, mb))
            c = ca * cb
            v = acc.get(m)
            acc[m] = c if v is None else v + c
    return MultiPoly._wrap(a.nvars, {m: c for m, c in acc.items() if c})


def evaluate(p, point):
    if len(point) != p.nvars:
        raise ArityError(f"point has {len(point)} coordinates, polynomial has {p.nvars} variables")
    point = [as_scalar(x) for x in point]
    powers = [dict() for _ in point]
    total = ZERO
    for e, c in p._terms.items():
        t = c
        for j, k in enumerate(e):
            if k:
                pk = powers[j].get(k)
                if pk is None:
                    pk = powers[j][k] = point[j] ** k
                t = t * pk
        total = total + t
    return total


def poly_diff(p, ell):
    """Mixed partial derivative ``d^|ell| p / ds^ell``."""
    ell = tuple(ell)
    if len(ell) != p.nvars:
        raise ArityError("derivative multi-index has wrong length")
    out = {}
    for e, c in p._terms.items():
        if not precedes(ell, e):
            continue
        f = 1
        for x, k in zip(e, ell):
            for t in range(k):
                f *= x - t
        out[tuple(x - k for x, k in zip(e, ell))] = c * f
    return MultiPoly._wrap(p.nvars, out)


def taylor_shift(p, w):
    """Return ``q`` with ``q(t) = p(t + w)``.

    The coefficient of ``t^l`` in the result is ``d^l p(w) / l!``.
    """
    if len(w) != p.nvars:
        raise ArityError(f"shift vector has {len(w)} entries, expected {p.nvars}")
    w = [as_scalar(x) for x in w]
    terms = dict(p._terms)
    for j, wj in enumerate(w):
        if not wj:
            continue
        powers = [ONE]
        out = {}
        for e, c in terms.items():
            k = e[j]
            while len(powers) <= k:
                powers.append(powers[-1] * wj)
            for r in range(k + 1):
                m = e[:j] + (r,) + e[j + 1:]
                v = c * (powers[k - r] * comb(k, r))
                if m in out:
                    out[m] = out[m] + v
                else:
                    out[m] = v
        terms = {m: c for m, c in out.items() if c}
    return MultiPoly._wrap(p.nvars, terms)


def truncate(p, bound):
    """Keep only the terms whose exponent is componentwise ``<= bound``."""
    return MultiPoly._wrap(p.nvars, {e: c for e, c in p._terms.items() if precedes(e, bound)})


def mul_truncated(a, b, bound):
    """Product of ``a`` and ``b`` with every term beyond ``bound`` discarded."""
    acc = {}
    for ma, ca in a._terms.items():
        if not precedes(ma, bound):
            continue
        for mb, cb in b._terms.items():
            m = tuple(x + y for x, y in zip(ma, mb))
            if not precedes(m, bound):
                continue
            c = ca * cb
            v = acc.get(m)
            acc[m] = c if v is None else v + c
    return MultiPoly._wrap(a.nvars, {m: c for m, c in acc.items() if c})


def coefficient_in(p, var):
    """Split ``p`` as ``sum_k c_k * s_var^k``; returns ``{k: c_k}``."""
    out = {}
    for e, c in p._terms.items():
        k = e[var]
        out.setdefault(k, {})[e[:var] + (0,) + e[var + 1:]] = c
    return {k: MultiPoly._wrap(p.nvars, d) for k, d in out.items()}


def univ_divmod(f, g, var):
    """Euclidean division of ``f`` by ``g`` as polynomials in ``s_var``.

    ``g`` must be monic in ``s_var`` (its top coefficient in that variable is
    the constant 1); the other variables ride along as coefficients.
    """
    f._check(g)
    d = g.degree_in(var)
    if d < 0:
        raise DivisionError("division by the zero polynomial")
    top = coefficient_in(g, var)[d]
    if top != ONE:
        raise DivisionError(f"divisor is not monic in variable {var + 1}")
    rest = {e: c for e, c in g._terms.items() if e[var] != d}
    rem = dict(f._terms)
    quo = {}
    while True:
        k = max((e[var] for e in rem), default=-1)
        if k < d:
            break
        shift = k - d
        lead = [(e, c) for e, c in rem.items() if e[var] == k]
        for e, c in lead:
            del rem[e]
            qe = e[:var] + (shift,) + e[var + 1:]
            quo[qe] = quo.get(qe, ZERO) + c
            for ge, gc in rest.items():
                m = tuple(x + y for x, y in zip(qe, ge))
                v = rem.get(m, ZERO) - c * gc
                if v:
                    rem[m] = v
                else:
                    rem.pop(m, None)
    return (MultiPoly._wrap(f.nvars, {e: c for e, c in quo.items() if c}),
            MultiPoly._wrap(f.nvars, rem))


def exact_div(f, g, order=GREVLEX):
    """``f / g`` when ``g`` divides ``f`` exactly; raises :class:`DivisionError` otherwise."""
    f._check(g)
    if not g:
        raise DivisionError("division by the zero polynomial")
    gm, gc = g.leading_term(order)
    ginv = gc.inverse()
    rem = dict(f._terms)
    quo = {}
    key = order.key
    while rem:
        m = max(rem, key=key)
        if not precedes(gm, m):
            raise DivisionError("polynomial division is not exact")
        qm = tuple(x - y for x, y in zip(m, gm))
        qc = rem[m] * ginv
        quo[qm] = qc
        for e, c in g._terms.items():
            t = tuple(x + y for x, y in zip(e, qm))
            v = rem.get(t, ZERO) - c * qc
            if v:
                rem[t] = v
            else:
                rem.pop(t, None)
    return MultiPoly._wrap(f.nvars, quo)


def series_inverse_truncated(u, w, order):
    """Taylor polynomial of ``1/u`` at ``w`` up to the box ``l <= order``.

    The result is expressed in the local coordinates ``t = s - w``: its
    coefficient at ``t^l`` is the Taylor coefficient of ``1/u`` of order ``l``.
    """
    order = tuple(order)
    if len(order) != u.nvars:
        raise ArityError("truncation order has wrong length")
    local = truncate(taylor_shift(u, w), order)
    u0 = local.constant_term()
    if not u0:
        raise NonInvertibleError("series inverse: polynomial vanishes at the expansion point")
    inv0 = u0.inverse()
    zero = (0,) * u.nvars
    tail = [(e, c) for e, c in local._terms.items() if e != zero]
    coeffs = {}
    for ell in sorted(box(order), key=sum):
        if ell == zero:
            coeffs[ell] = inv0
            continue
        acc = ZERO
        for e, c in tail:
            if precedes(e, ell):
                prev = coeffs.get(tuple(x - y for x, y in zip(ell, e)))
                if prev:
                    acc = acc + c * prev
        if acc:
            coeffs[ell] = -acc * inv0
    return MultiPoly._wrap(u.nvars, coeffs)


def embed(p, nvars, positions):
    """Re-express ``p`` in ``nvars`` variables, sending variable ``j`` to ``positions[j]``."""
    out = {}
    for e, c in p._terms.items():
        m = [0] * nvars
        for j, x in enumerate(e):
            m[positions[j]] += x
        out[tuple(m)] = c
    return MultiPoly._wrap(nvars, out)


def substitute(p, values):
    """Replace selected variables by scalars; ``values`` maps index -> scalar.

    Replaced variables keep their slot but no longer occur.
    """
    values = {j: as_scalar(v) for j, v in values.items()}
    out = {}
    for e, c in p._terms.items():
        m = list(e)
        for j, v in values.items():
            if e[j]:
                c = c * v ** e[j]
                m[j] = 0
        m = tuple(m)
        out[m] = out.get(m, ZERO) + c
    return MultiPoly._wrap(p.nvars, {m: c for m, c in out.items() if c})


def jet_polynomial(coefficients, node):
    """The polynomial ``sum_l a_l (s - node)^l / l!`` for a jet ``{l: a_l}``."""
    n = len(node)
    local = MultiPoly(n, [(ell, as_scalar(a) / _multifactorial(ell)) for ell, a in coefficients.items()])
    return taylor_shift(local, [-as_scalar(x) for x in node])


def _multifactorial(ell):
    f = 1
    for x in ell:
        f *= factorial(x)
    return f


def sum_polys(polys, nvars):
    acc = {}
    for p in polys:
        _add(acc, p._terms, ONE)
    return MultiPoly._wrap(nvars, acc)


__all__ = [
    "MultiPoly", "GaussianRational", "poly_canonical", "poly_mul", "poly_diff",
    "taylor_shift", "univ_divmod", "series_inverse_truncated", "exact_div",
    "truncate", "mul_truncated", "evaluate", "embed", "substitute",
    "coefficient_in", "jet_polynomial", "sum_polys",
]
