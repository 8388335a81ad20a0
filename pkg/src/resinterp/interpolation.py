"""Residue pairing, Lagrange interpolators and the two multipoint problems.

The Noetherian problem (``flavor="noetherian"``) prescribes a linear combination of the
Noetherian functionals at rational zeros of ``p``; it is encoded by jets
``a`` whose germ ``h_w = sum_l a_l (s - w)^l / l!`` is paired with ``f``
through local residues.  The derivative problem (``flavor="derivative"``) prescribes
``sum a_l d^l f(w)`` directly.  Either way the solution set is all functions,
nothing, or an affine hyperplane ``lambda . alpha[f] = c`` in the
coordinates ``alpha[f]`` of ``f`` on the standard monomial basis.
"""

from dataclasses import dataclass, field
from math import factorial

from .algebra import linalg
from .algebra.order import GREVLEX, LEX, box, precedes
from .algebra.poly import MultiPoly, evaluate, jet_polynomial, poly_diff, taylor_shift
from .algebra.scalar import ONE, ZERO, as_scalar
from .errors import (IllPosedFunctionalError, InputError, InvariantViolation,
                     NodeNotAZeroError, NonInvertibleError)
from .idealcore import IdealPresentation, buchberger, coordinates, from_coordinates, reduce
from .residuecore import hefer_matrix, local_residue, residue_engine, split_sz

NOETHERIAN = "noetherian"
DERIVATIVE = "derivative"


@dataclass(frozen=True)
class QpMatrix:
    entries: tuple
    basis: tuple

    def rows(self):
        return [list(r) for r in self.entries]

    def __len__(self):
        return len(self.basis)


@dataclass(frozen=True)
class Jet:
    """Truncated Taylor data ``{l: a_l}`` at ``node``; support satisfies ``l <= bound``."""

    node: tuple
    coefficients: tuple
    bound: tuple = None

    def __post_init__(self):
        node = tuple(as_scalar(x) for x in self.node)
        items = self.coefficients.items() if hasattr(self.coefficients, "items") else self.coefficients
        coeffs = {}
        for ell, a in items:
            ell = tuple(int(x) for x in ell)
            if len(ell) != len(node) or any(x < 0 for x in ell):
                raise InputError(f"jet index {ell} does not fit a node in {len(node)} variables")
            coeffs[ell] = coeffs.get(ell, ZERO) + as_scalar(a)
        coeffs = tuple(sorted((e, a) for e, a in coeffs.items() if a))
        bound = self.bound
        if bound is None:
            bound = tuple(max((e[j] for e, _ in coeffs), default=0) for j in range(len(node)))
        bound = tuple(int(x) for x in bound)
        for e, _ in coeffs:
            if not precedes(e, bound):
                raise InputError(f"jet index {e} exceeds the bound {bound}")
        object.__setattr__(self, "node", node)
        object.__setattr__(self, "coefficients", coeffs)
        object.__setattr__(self, "bound", bound)

    def as_dict(self):
        return dict(self.coefficients)

    def is_zero(self):
        return not self.coefficients

    def polynomial(self):
        """``sum_l a_l (s - node)^l / l!``."""
        return jet_polynomial(self.as_dict(), self.node)


@dataclass(frozen=True)
class InterpolationProblem:
    pres: IdealPresentation
    jets: tuple
    c: object
    flavor: str = NOETHERIAN
    multiplicities: tuple = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "jets", tuple(self.jets))
        object.__setattr__(self, "c", as_scalar(self.c))
        if self.flavor not in (NOETHERIAN, DERIVATIVE):
            raise InputError(f"unknown flavor {self.flavor!r}")
        seen = set()
        for jet in self.jets:
            if len(jet.node) != self.pres.nvars:
                raise InputError("jet node has the wrong number of coordinates")
            if jet.node in seen:
                raise InputError(f"two jets share the node {jet.node}")
            seen.add(jet.node)
            if not self.pres.vanishes_at(jet.node):
                raise NodeNotAZeroError(
                    "jet node (" + ", ".join(map(str, jet.node)) + ") is not a zero of the system")

    @property
    def gb(self):
        return buchberger(self.pres)


@dataclass(frozen=True)
class SolutionSet:
    variant: str            # "all_functions" | "empty" | "hyperplane"
    c: object
    lam: tuple = None
    basis: tuple = None

    def __post_init__(self):
        object.__setattr__(self, "c", as_scalar(self.c))
        if self.variant == "hyperplane":
            if self.lam is None or not any(self.lam):
                raise InvariantViolation("hyperplane needs a nonzero covector")
        elif self.variant == "all_functions":
            if self.c:
                raise InvariantViolation("all_functions requires c = 0")
        elif self.variant == "empty":
            if not self.c:
                raise InvariantViolation("empty requires c != 0")
        else:
            raise ValueError(f"unknown variant {self.variant!r}")


# -- residue quadratic form --------------------------------------------------

def qp_matrix(gb, pres=None, td=None):
    """``Q[k1][k2] = Res[s^(beta_k1 + beta_k2) ds / p]`` on the standard basis."""
    pres = gb.presentation if pres is None else pres
    eng = residue_engine(pres, td)
    basis = gb.standard_monomials
    N = len(basis)
    rows = [[ZERO] * N for _ in range(N)]
    for a in range(N):
        for b in range(a, N):
            v = eng.monomial_residue(tuple(x + y for x, y in zip(basis[a], basis[b])))
            rows[a][b] = rows[b][a] = v
    if not linalg.det(rows):
        raise InvariantViolation("residue pairing is degenerate; the system is not quasi-regular")
    return QpMatrix(tuple(map(tuple, rows)), basis)


def separated_system(nodes, multiplicities, order=GREVLEX):
    """``p_j(s_j) = prod_l (s_j - node_l[j])^(nu_l[j])``."""
    nodes = [tuple(as_scalar(x) for x in w) for w in nodes]
    if not nodes:
        raise InputError("at least one node is required")
    n = len(nodes[0])
    if len(set(nodes)) != len(nodes):
        raise InputError("node list contains duplicate points")
    if len(multiplicities) != len(nodes):
        raise InputError("one multiplicity vector per node is required")
    gens = []
    for j in range(n):
        pj = MultiPoly.one(n)
        for w, nu in zip(nodes, multiplicities):
            if len(w) != n or len(nu) != n:
                raise InputError("nodes and multiplicities must all have length n")
            if nu[j] < 1:
                raise InputError("multiplicities must be positive")
            pj = pj * (MultiPoly.variable(n, j) - w[j]) ** int(nu[j])
        gens.append(pj)
    return IdealPresentation(tuple(gens), order)


def _univariate_coeffs(p, j):
    d = p.degree_in(j)
    n = p.nvars
    return [p.coeff(tuple(k if i == j else 0 for i in range(n))) for k in range(d + 1)]


def _geometric_residues(coeffs, kmax):
    """``Res[x^k / p(x)]`` for ``k <= kmax`` by expanding ``1/(1 + u)`` about infinity.

    With ``p = x^d (1 + u)`` and ``u = sum_i c_(d-i) x^-i`` the residue of
    ``x^k / p`` is the coefficient of ``x^(d-1)`` in ``x^k * sum_m (-u)^m``,
    i.e. the ``(k - d + 1)``-th coefficient ``g`` of the series ``1/(1+u)``.
    """
    d = len(coeffs) - 1
    g = [ONE]
    for m in range(1, max(kmax - d + 2, 1)):
        acc = ZERO
        for i in range(1, min(m, d) + 1):
            c = coeffs[d - i]
            if c:
                acc = acc - c * g[m - i]
        g.append(acc)
    return [g[k - d + 1] if k >= d - 1 else ZERO for k in range(kmax + 1)]


def qp_matrix_euclid(nodes, multiplicities):
    """Residue pairing of the separated system on the lex-ordered box basis."""
    pres = separated_system(nodes, multiplicities, LEX)
    n = pres.nvars
    degs = [p.degree_in(j) for j, p in enumerate(pres.generators)]
    basis = tuple(box([d - 1 for d in degs]))
    per_var = [_geometric_residues(_univariate_coeffs(p, j), 2 * (degs[j] - 1))
               for j, p in enumerate(pres.generators)]
    N = len(basis)
    rows = [[ZERO] * N for _ in range(N)]
    for a in range(N):
        for b in range(a, N):
            v = ONE
            for j in range(n):
                v = v * per_var[j][basis[a][j] + basis[b][j]]
                if not v:
                    break
            rows[a][b] = rows[b][a] = v
    return QpMatrix(tuple(map(tuple, rows)), basis)


def basis_permutation(src, dst):
    """``perm`` with ``dst[k] == src[perm[k]]``."""
    pos = {m: k for k, m in enumerate(src)}
    if set(pos) != set(dst) or len(src) != len(dst):
        raise InputError("the two bases do not consist of the same monomials")
    return [pos[m] for m in dst]


def permute_matrix(Q, basis):
    """Re-express ``Q`` on ``basis`` (a reordering of ``Q.basis``)."""
    perm = basis_permutation(Q.basis, basis)
    rows = tuple(tuple(Q.entries[perm[a]][perm[b]] for b in range(len(perm))) for a in range(len(perm)))
    return QpMatrix(rows, tuple(basis))


# -- Lagrange interpolators --------------------------------------------------

def lagrange_poly(f, gb):
    """``sum_k alpha_k[f] s^beta_k``, the interpolant of ``f`` on the zeros."""
    return reduce(f, gb)


def lagrange_poly_hefer(f, gb, var_order=None):
    """Same interpolant obtained as ``Res_s[f(s) det B(s, z) ds / p(s)]`` reduced in ``z``."""
    pres = gb.presentation
    n = gb.nvars
    eng = residue_engine(pres)
    hef = hefer_matrix(pres, var_order)
    lag = {}
    for gamma, b in split_sz(hef.det, n).items():
        v = eng.residue(f * b)
        if v:
            lag[gamma] = v
    return reduce(MultiPoly(n, lag), gb)


def noetherian_covector(jets, gb, pres=None):
    """``lambda_k = sum_j Res_(w_j)[s^beta_k h_j]`` with ``h_j`` the jet germs."""
    pres = gb.presentation if pres is None else pres
    lam = [ZERO] * gb.N
    for jet in jets:
        if jet.is_zero():
            continue
        h = jet.polynomial()
        for k, beta in enumerate(gb.standard_monomials):
            v = local_residue(h.mul_term(beta, ONE), pres, jet.node)
            lam[k] = lam[k] + v
    return lam


def lagrange_jets(jets, gb, pres=None, Qp=None):
    """Polynomial on the standard basis congruent to every jet germ at its node.

    Zeros carrying no jet get the zero germ.
    """
    pres = gb.presentation if pres is None else pres
    if Qp is None:
        Qp = qp_matrix(gb, pres)
    v = noetherian_covector(jets, gb, pres)
    try:
        alpha = linalg.solve(Qp.rows(), v)
    except NonInvertibleError:
        raise InvariantViolation("residue pairing is singular") from None
    return from_coordinates(alpha, gb)


def tau_coefficients(jets, nodes, multiplicities, var_order=None):
    """Coefficients of the jet interpolant built from the separated Bezoutian kernel.

    Returns ``(basis, tau)`` with ``basis`` the lex-ordered box of exponents.
    """
    pres = separated_system(nodes, multiplicities, LEX)
    n = pres.nvars
    degs = [p.degree_in(j) for j, p in enumerate(pres.generators)]
    basis = tuple(box([d - 1 for d in degs]))
    parts = split_sz(hefer_matrix(pres, var_order).det, n)
    tau = {m: ZERO for m in basis}
    for jet in jets:
        if jet.is_zero():
            continue
        if not pres.vanishes_at(jet.node):
            raise NodeNotAZeroError("jet node is not one of the interpolation nodes")
        h = jet.polynomial()
        for gamma, b in parts.items():
            if gamma not in tau:
                raise InvariantViolation("Bezoutian kernel leaves the box basis")
            tau[gamma] = tau[gamma] + local_residue(h * b, pres, jet.node)
    return basis, [tau[m] for m in basis]


def euclid_pairing_covector(jets, nodes, multiplicities):
    """``Q^euclid . tau(a)`` on the lex box basis.

    This is the covector the separated-system construction pairs with the
    coordinates ``alpha`` of ``f``; it coincides with
    :func:`noetherian_covector` for the same jets.
    """
    Q = qp_matrix_euclid(nodes, multiplicities)
    basis, tau = tau_coefficients(jets, nodes, multiplicities)
    return basis, linalg.matvec(Q.rows(), tau)


def _taylor_functional(jet, t):
    """``sum_l a_l l! t_l`` for Taylor coefficients ``t`` at the jet's node."""
    total = ZERO
    for ell, a in jet.coefficients:
        c = t.coeff(ell)
        if c:
            f = 1
            for x in ell:
                f *= factorial(x)
            total = total + a * c * f
    return total


def check_annihilates(jets, pres):
    """Raise unless every jet's derivative functional kills the ideal ``(p)``.

    The functional at ``w`` only sees Taylor coefficients up to its bound, so
    testing ``(s - w)^gamma p_m`` for ``gamma <= bound`` is conclusive.
    """
    n = pres.nvars
    for jet in jets:
        if jet.is_zero():
            continue
        top = tuple(max(e[j] for e, _ in jet.coefficients) for j in range(n))
        shifted = [taylor_shift(p, jet.node) for p in pres.generators]
        for m, pt in enumerate(shifted):
            for gamma in box(top):
                if _taylor_functional(jet, pt.mul_term(gamma, ONE)):
                    raise IllPosedFunctionalError(
                        f"derivative data at ({', '.join(map(str, jet.node))}) does not vanish on "
                        f"multiples of generator {m + 1}; the jet order exceeds the multiplicity")


def derivative_covector(jets, gb, pres=None):
    """``lambda_k = sum_j sum_l a_jl d^l[s^beta_k](w_j)`` after checking well-posedness."""
    pres = gb.presentation if pres is None else pres
    check_annihilates(jets, pres)
    lam = [ZERO] * gb.N
    for k, beta in enumerate(gb.standard_monomials):
        mono = MultiPoly.monomial(beta)
        acc = ZERO
        for jet in jets:
            for ell, a in jet.coefficients:
                v = evaluate(poly_diff(mono, ell), jet.node)
                if v:
                    acc = acc + a * v
        lam[k] = acc
    return lam


def solve_problem(prob):
    gb = prob.gb
    if prob.flavor == NOETHERIAN:
        lam = noetherian_covector(prob.jets, gb, prob.pres)
    else:
        lam = derivative_covector(prob.jets, gb, prob.pres)
    if not any(lam):
        if prob.c:
            return SolutionSet("empty", prob.c)
        return SolutionSet("all_functions", prob.c)
    return SolutionSet("hyperplane", prob.c, tuple(lam), gb.standard_monomials)


def verify_solution(f, sol, gb):
    if sol.variant == "all_functions":
        return True
    if sol.variant == "empty":
        return False
    alpha = coordinates(f, gb)
    return linalg.dot(sol.lam, alpha) == sol.c


def problem_from_nodes(nodes, multiplicities, jets, c, flavor=DERIVATIVE, order=GREVLEX):
    """Problem whose ideal is the separated system through ``nodes``."""
    pres = separated_system(nodes, multiplicities, order)
    jets = tuple(jets)
    if flavor == DERIVATIVE:
        nodes_t = [tuple(as_scalar(x) for x in w) for w in nodes]
        for jet in jets:
            if jet.node not in nodes_t:
                raise InputError("jet node is not among the interpolation nodes")
            nu = multiplicities[nodes_t.index(jet.node)]
            for ell, _ in jet.coefficients:
                if any(x > v - 1 for x, v in zip(ell, nu)):
                    raise IllPosedFunctionalError(
                        f"derivative order {ell} exceeds the multiplicity {tuple(nu)} at the node")
    return InterpolationProblem(pres, jets, c, flavor, tuple(tuple(nu) for nu in multiplicities))


__all__ = [
    "QpMatrix", "Jet", "InterpolationProblem", "SolutionSet", "NOETHERIAN", "DERIVATIVE",
    "qp_matrix", "separated_system", "qp_matrix_euclid", "basis_permutation", "permute_matrix",
    "lagrange_poly", "lagrange_poly_hefer", "noetherian_covector", "lagrange_jets",
    "tau_coefficients", "euclid_pairing_covector", "check_annihilates", "derivative_covector",
    "solve_problem", "verify_solution", "problem_from_nodes",
]
