import pytest
import sympy

from resinterp.algebra import linalg
from resinterp.algebra.order import LEX
from resinterp.algebra.poly import MultiPoly, sum_polys
from resinterp.algebra.scalar import ONE, ZERO, GaussianRational
from resinterp.errors import ArityError, EmptyVarietyError, InputError, NotZeroDimensionalError
from resinterp.idealcore import (IdealPresentation, buchberger, coordinates, from_coordinates,
                                 multiplication_matrix, normal_form, reduce, shifted_transformation,
                                 transformation_data, univariate_in_ideal)
from resinterp.polyparse import format_poly, parse_poly

from helpers import (from_sympy, linear_product_system, quasi_regular, rand_poly,
                     random_system, seeded, symbols, to_sympy)


def system(*texts, order=None):
    n = len(texts)
    names = tuple(f"s{k + 1}" for k in range(n))
    gens = tuple(parse_poly(t, names) for t in texts)
    return IdealPresentation(gens) if order is None else IdealPresentation(gens, order)


def P(text, n=2):
    return parse_poly(text, tuple(f"s{k + 1}" for k in range(n)))


def sympy_groebner(pres):
    syms = symbols(pres.nvars)
    order = "lex" if pres.order is LEX else "grevlex"
    G = sympy.groebner([to_sympy(g, syms) for g in pres.generators], *syms, order=order,
                       domain="QQ_I")
    out = set()
    for g in G.exprs:
        poly = sympy.Poly(g, *syms)
        out.add(from_sympy(sympy.expand(g / poly.coeffs(order=order)[0]), pres.nvars, syms))
    return out


# -- worked examples ---------------------------------------------------------

def test_groebner_of_squares():
    gb = buchberger(system("s1^2", "s2^2"))
    assert set(gb.basis) == {P("s1^2"), P("s2^2")}
    assert gb.standard_monomials == ((0, 0), (0, 1), (1, 0), (1, 1))
    assert gb.N == 4


def test_groebner_of_tilted_system():
    gb = buchberger(system("s1^2 - s2", "s2^2"))
    assert gb.N == 4
    assert gb.standard_monomials == ((0, 0), (0, 1), (1, 0), (1, 1))
    assert {g.leading_monomial() for g in sympy_groebner(gb.presentation)} == \
        {g.leading_monomial() for g in gb.basis}


def test_empty_variety():
    with pytest.raises(EmptyVarietyError):
        buchberger(system("s1", "s1 + 1"))


def test_not_zero_dimensional():
    with pytest.raises(NotZeroDimensionalError):
        buchberger(system("s1*s2", "s1^2"))


def test_presentation_validation():
    with pytest.raises(InputError):
        IdealPresentation((P("s1"),))
    with pytest.raises(InputError):
        IdealPresentation((P("s1"), MultiPoly.zero(2)))
    with pytest.raises(ArityError):
        IdealPresentation((P("s1"), P("s1", 1)))


def test_normal_form_examples():
    gb = buchberger(system("s1^2", "s2^2"))
    nf, cof = normal_form(P("s1^3 + s1*s2"), gb)
    assert nf == P("s1*s2")
    assert cof == (P("s1"), MultiPoly.zero(2))
    nf, cof = normal_form(P("s1^2"), gb)
    assert not nf and cof == (MultiPoly.one(2), MultiPoly.zero(2))
    for m in gb.standard_monomials:
        nf, cof = normal_form(MultiPoly.monomial(m), gb)
        assert nf == MultiPoly.monomial(m) and not any(cof)


def test_coordinates_examples():
    gb = buchberger(system("s1^2", "s2^2"))
    assert coordinates(P("1 + s1 + s1^2"), gb) == [ONE, ZERO, ONE, ZERO]
    assert coordinates(P("s1^2*s2 + 4*s2^2"), gb) == [ZERO] * 4
    gb2 = buchberger(system("s1^2 - s2", "s2^2"))
    assert coordinates(P("s1*s2 + s2^2"), gb2) == [ZERO, ZERO, ZERO, ONE]


def test_multiplication_matrix_examples():
    gb = buchberger(system("s1^2", "s2^2"))
    M1 = [list(r) for r in multiplication_matrix(0, gb)]
    assert any(any(r) for r in M1)
    assert linalg.matmul(M1, M1) == linalg.zeros(4, 4)
    # the column for the constant monomial holds the coordinates of s1
    assert [row[0] for row in M1] == coordinates(P("s1"), gb)


def test_univariate_examples():
    gb = buchberger(system("s1^2", "s2^2"))
    q1 = univariate_in_ideal(0, gb)
    assert q1 == P("s1^4")
    assert not reduce(q1, gb)
    gb2 = buchberger(system("s1 - 2", "s2"))
    assert univariate_in_ideal(0, gb2) == P("s1 - 2")


def test_transformation_examples():
    td = transformation_data(buchberger(system("s1^2", "s2^2")))
    assert td.q == (P("s1^4"), P("s2^4"))
    assert td.detA == P("s1^2*s2^2")
    td = transformation_data(buchberger(system("s1^2 - s2", "s2^2")))
    assert td.q[0] == P("s1^4")
    assert td.detA == P("s1^2*s2^2 + s2^3")
    td = transformation_data(buchberger(system("s1 - 3", "s2 + 1/2")))
    assert td.q == (P("s1 - 3"), P("s2 + 1/2"))
    assert td.A == ((MultiPoly.one(2), MultiPoly.zero(2)), (MultiPoly.zero(2), MultiPoly.one(2)))
    assert td.detA == MultiPoly.one(2)


# -- properties ---------------------------------------------------------------

def random_systems(seed, count, complex_=False):
    rng = seeded(seed)
    return rng, [random_system(rng, complex_=complex_) for _ in range(count)]


def test_basis_matches_sympy_groebner():
    rng, systems = random_systems(31, 25, complex_=True)
    for pres in systems:
        assert set(buchberger(pres).basis) == sympy_groebner(pres)
    for _ in range(10):
        pres, _ = linear_product_system(rng, 2, (2, 2))
        for order in (None, LEX):
            if order is not None:
                pres = IdealPresentation(pres.generators, order)
            assert set(buchberger(pres).basis) == sympy_groebner(pres)


def test_cofactors_reconstruct_basis():
    _, systems = random_systems(32, 30, complex_=True)
    for pres in systems:
        gb = buchberger(pres)
        for g, row in zip(gb.basis, gb.cofactors):
            assert sum_polys([a * p for a, p in zip(row, pres.generators)], pres.nvars) == g


def test_normal_form_certificate_and_support():
    rng, systems = random_systems(33, 30)
    for pres in systems:
        gb = buchberger(pres)
        f = rand_poly(rng, pres.nvars, 5, complex_=True)
        nf, cof = normal_form(f, gb)
        assert nf + sum_polys([a * p for a, p in zip(cof, pres.generators)], pres.nvars) == f
        assert set(nf.monomials()) <= set(gb.standard_monomials)
        assert nf == reduce(f, gb) == from_coordinates(coordinates(f, gb), gb)


def test_normal_form_is_a_ring_homomorphism():
    rng, systems = random_systems(34, 30)
    for pres in systems:
        gb = buchberger(pres)
        f, g = rand_poly(rng, pres.nvars, 3), rand_poly(rng, pres.nvars, 3)
        assert reduce(f * g, gb) == reduce(reduce(f, gb) * reduce(g, gb), gb)
        assert reduce(f + 3 * g, gb) == reduce(f, gb) + 3 * reduce(g, gb)


def test_membership_of_ideal_elements():
    rng, systems = random_systems(35, 20)
    for pres in systems:
        gb = buchberger(pres)
        f = sum_polys([rand_poly(rng, pres.nvars, 2) * p for p in pres.generators], pres.nvars)
        assert not reduce(f, gb)


def test_bezout_bound_and_exact_count():
    rng = seeded(36)
    for _ in range(30):
        n = rng.randint(1, 3)
        degs = tuple(rng.randint(1, 3 if n < 3 else 2) for _ in range(n))
        pres = quasi_regular(rng, n, degs)
        expected = 1
        for d in degs:
            expected *= d
        # no zeros at infinity, so the Bezout bound is attained
        assert buchberger(pres).N == expected
    for _ in range(20):
        n = 2
        gens = (rand_poly(rng, n, 2, density=0.7), rand_poly(rng, n, 2, density=0.7))
        try:
            pres = IdealPresentation(gens)
            gb = buchberger(pres)
        except (InputError, EmptyVarietyError, NotZeroDimensionalError):
            continue
        assert gb.N <= gens[0].degree() * gens[1].degree()


def test_multiplication_matrices_commute_and_represent_products():
    rng, systems = random_systems(37, 20)
    for pres in systems:
        gb = buchberger(pres)
        mats = [[list(r) for r in multiplication_matrix(j, gb)] for j in range(pres.nvars)]
        for a in mats:
            for b in mats:
                assert linalg.matmul(a, b) == linalg.matmul(b, a)
        f = rand_poly(rng, pres.nvars, 3)
        for j, M in enumerate(mats):
            lhs = linalg.matvec(M, coordinates(f, gb))
            assert lhs == coordinates(f * MultiPoly.variable(pres.nvars, j), gb)


def test_transformation_identity_and_membership():
    rng, systems = random_systems(38, 25, complex_=True)
    for pres in systems:
        gb = buchberger(pres)
        for method in ("charpoly", "minpoly"):
            td = transformation_data(gb, method)
            for j, (qj, row) in enumerate(zip(td.q, td.A)):
                assert set(qj.variables()) <= {j}
                assert qj.leading_term()[1] == ONE
                assert not reduce(qj, gb)
                assert sum_polys([a * p for a, p in zip(row, pres.generators)], pres.nvars) == qj
            # det A checked pointwise against scalar elimination
            for _ in range(3):
                pt = [GaussianRational(rng.randint(-5, 5), rng.randint(-5, 5)) for _ in range(pres.nvars)]
                assert linalg.det([[a(pt) for a in row] for row in td.A]) == td.detA(pt)
        shifted = shifted_transformation(td, [ONE] * pres.nvars)
        for qj, row in zip(shifted.q, shifted.A):
            assert sum_polys([a * p for a, p in zip(row, pres.generators)], pres.nvars) == qj


def test_minpoly_divides_charpoly():
    _, systems = random_systems(39, 15)
    for pres in systems:
        gb = buchberger(pres)
        for j in range(pres.nvars):
            mp = univariate_in_ideal(j, gb, "minpoly")
            cp = univariate_in_ideal(j, gb, "charpoly")
            assert mp.degree() <= cp.degree() == gb.N
            x = symbols(pres.nvars)[j]
            assert sympy.rem(to_sympy(cp), to_sympy(mp), x) == 0


def test_determinism():
    texts = ("s1^2 + s1*s2 - 3", "s2^2 - s1 + 1/2")
    a = buchberger(system(*texts))
    buchberger.cache_clear()
    b = buchberger(system(*texts))
    assert a is not b
    assert [format_poly(g) for g in a.basis] == [format_poly(g) for g in b.basis]
    assert a.standard_monomials == b.standard_monomials
    assert a.cofactors == b.cofactors


def test_lex_order_basis():
    gb = buchberger(system("s1^2 - s2", "s2^2 - 1", order=LEX))
    assert gb.standard_monomials == ((0, 0), (0, 1), (1, 0), (1, 1))
    assert set(gb.basis) == sympy_groebner(gb.presentation)
