"""Monomial orders with variable priority s1 > s2 > ... > sn.

Monomials are plain tuples of non-negative ints.
"""

import enum


def grevlex_key(e):
    return (sum(e), tuple(-x for x in reversed(e)))


def lex_key(e):
    return e


class MonomialOrder(enum.Enum):
    GREVLEX = "grevlex"
    LEX = "lex"

    @property
    def key(self):
        """Sort key: ``a`` precedes ``b`` iff ``key(a) < key(b)``."""
        return grevlex_key if self is MonomialOrder.GREVLEX else lex_key

    def max(self, monomials):
        return max(monomials, key=self.key)

    def sorted(self, monomials, descending=False):
        return sorted(monomials, key=self.key, reverse=descending)

    @classmethod
    def parse(cls, name):
        try:
            return cls(name)
        except ValueError:
            raise ValueError(f"unknown monomial order {name!r}; expected 'grevlex' or 'lex'") from None


GREVLEX = MonomialOrder.GREVLEX
LEX = MonomialOrder.LEX


def mono_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def mono_div(a, b):
    return tuple(x - y for x, y in zip(a, b))


def mono_divides(a, b):
    """True when ``s^a`` divides ``s^b``."""
    return all(x <= y for x, y in zip(a, b))


def mono_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def precedes(a, b):
    """The componentwise partial order: ``a_j <= b_j`` for every j."""
    return all(x <= y for x, y in zip(a, b))


def box(bound):
    """All exponent vectors ``e`` with ``e <= bound`` componentwise, lex-ascending."""
    out = [()]
    for b in bound:
        out = [e + (k,) for e in out for k in range(b + 1)]
    return out
