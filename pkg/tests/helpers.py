"""Random generators and independent oracles shared by the test modules."""

import itertools
import random
from fractions import Fraction

import sympy

from resinterp.algebra.order import box
from resinterp.algebra.poly import MultiPoly
from resinterp.algebra.scalar import GaussianRational, ONE
from resinterp.idealcore import IdealPresentation
from resinterp.interpolation import Jet, separated_system


def rand_scalar(rng, lo=-4, hi=4, complex_=False):
    re = Fraction(rng.randint(lo, hi), rng.choice((1, 1, 1, 2, 3)))
    im = rng.randint(lo, hi) if complex_ and rng.random() < 0.5 else 0
    return GaussianRational(re, im)


def rand_poly(rng, n, deg, density=0.5, complex_=False):
    terms = {}
    for e in box((deg,) * n):
        if sum(e) <= deg and rng.random() < density:
            terms[e] = rand_scalar(rng, complex_=complex_)
    return MultiPoly(n, terms)


def quasi_regular(rng, n, degs, complex_=False):
    """``p_j = s_j^d_j + (terms of total degree < d_j)``: N(p) = prod d_j, no zeros at infinity."""
    gens = []
    for j, d in enumerate(degs):
        terms = {tuple(d if k == j else 0 for k in range(n)): ONE}
        for e in box((d,) * n):
            if sum(e) < d and rng.random() < 0.5:
                terms[e] = rand_scalar(rng, complex_=complex_)
        gens.append(MultiPoly(n, terms))
    return IdealPresentation(tuple(gens))


DEGREE_SHAPES = {
    1: [(1,), (2,), (3,)],
    2: [(1, 2), (2, 2), (2, 3), (3, 3), (3, 2)],
    3: [(1, 2, 2), (2, 2, 2), (2, 1, 3), (2, 2, 3)],
}


def random_system(rng, n=None, complex_=False):
    n = n or rng.choice((1, 2, 3))
    return quasi_regular(rng, n, rng.choice(DEGREE_SHAPES[n]), complex_)


def unimodular(rng, n):
    """Random integer matrix with determinant +-1 (so its inverse is integral)."""
    while True:
        m = sympy.eye(n)
        for _ in range(2 * n):
            i, j = rng.sample(range(n), 2) if n > 1 else (0, 0)
            if i != j:
                m[i, :] = m[i, :] + rng.choice((-1, 1)) * m[j, :]
        if n == 1 or m != sympy.eye(n):
            return m


def linear_product_system(rng, n, degs, repeat=False):
    """``p_j = prod_k (L_j . s - c_jk)`` with ``L`` unimodular.

    Returns ``(pres, zeros)`` where ``zeros`` maps each zero to its multiplicity.
    """
    L = unimodular(rng, n)
    Linv = L.inv()
    roots = []
    for d in degs:
        vals = rng.sample(range(-4, 5), d)
        if repeat and d > 1 and rng.random() < 0.5:
            vals[-1] = vals[0]
        roots.append(vals)
    gens = []
    for j in range(n):
        lin = MultiPoly(n, {tuple(1 if k == l else 0 for k in range(n)): int(L[j, l])
                            for l in range(n)})
        pj = MultiPoly.one(n)
        for c in roots[j]:
            pj = pj * (lin - c)
        gens.append(pj)
    zeros = {}
    for choice in itertools.product(*[sorted(set(r)) for r in roots]):
        mult = 1
        for j, c in enumerate(choice):
            mult *= roots[j].count(c)
        w = Linv * sympy.Matrix(choice)
        zeros[tuple(GaussianRational(int(x)) for x in w)] = mult
    return IdealPresentation(tuple(gens)), zeros


def random_nodes(rng, n, count, max_mult=2, budget=16):
    """Distinct integer nodes with multiplicity vectors keeping N(p) <= budget."""
    while True:
        nodes = set()
        while len(nodes) < count:
            nodes.add(tuple(rng.randint(-3, 3) for _ in range(n)))
        nodes = sorted(nodes)
        mults = [tuple(rng.randint(1, max_mult) for _ in range(n)) for _ in nodes]
        N = 1
        for j in range(n):
            N *= sum(nu[j] for nu in mults)
        if N <= budget:
            return [tuple(GaussianRational(x) for x in w) for w in nodes], mults


def separated_zeros(nodes, mults):
    """All zeros of the separated system (a coordinate grid) with product multiplicities."""
    n = len(nodes[0])
    per_var = []
    for j in range(n):
        m = {}
        for w, nu in zip(nodes, mults):
            m[w[j]] = m.get(w[j], 0) + nu[j]
        per_var.append(m)
    zeros = {}
    for choice in itertools.product(*[list(m.items()) for m in per_var]):
        w = tuple(c for c, _ in choice)
        mult = 1
        for _, k in choice:
            mult *= k
        zeros[w] = mult
    return zeros


def random_jets(rng, nodes, mults, complex_=False, density=0.6):
    jets = []
    for w, nu in zip(nodes, mults):
        coeffs = {ell: rand_scalar(rng, complex_=complex_)
                  for ell in box(tuple(v - 1 for v in nu)) if rng.random() < density}
        jets.append(Jet(w, coeffs, tuple(v - 1 for v in nu)))
    return jets


def random_separated(rng, n=None, count=None):
    n = n or rng.choice((1, 2))
    count = count or rng.randint(1, 3)
    nodes, mults = random_nodes(rng, n, count)
    return separated_system(nodes, mults), nodes, mults


# -- sympy bridge (independent oracle) ---------------------------------------

def symbols(n):
    return sympy.symbols(f"s1:{n + 1}")


def to_sympy_scalar(c):
    return sympy.Rational(int(c.re.numerator), int(c.re.denominator)) + sympy.I * sympy.Rational(
        int(c.im.numerator), int(c.im.denominator))


def to_sympy(p, syms=None):
    syms = syms or symbols(p.nvars)
    expr = sympy.Integer(0)
    for e, c in p.items():
        term = to_sympy_scalar(c)
        for x, k in zip(syms, e):
            term *= x ** k
        expr += term
    return sympy.expand(expr)


def from_sympy_scalar(v):
    v = sympy.nsimplify(v)
    re, im = v.as_real_imag()
    re, im = sympy.Rational(re), sympy.Rational(im)
    return GaussianRational(Fraction(int(re.p), int(re.q)), Fraction(int(im.p), int(im.q)))


def from_sympy(expr, n, syms=None):
    syms = syms or symbols(n)
    poly = sympy.Poly(sympy.expand(expr), *syms)
    return MultiPoly(n, {tuple(m): from_sympy_scalar(c) for m, c in poly.terms()})


def seeded(seed):
    return random.Random(seed)


# one line per acceptance criterion, printed in the pytest terminal summary
ACCEPTANCE = []
