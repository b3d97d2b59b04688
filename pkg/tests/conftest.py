import itertools
from fractions import Fraction

import pytest

from semitoric import crystal, reparam, rootdata


@pytest.fixture(scope="session")
def a2():
    return rootdata.validate_cartan("A2")


@pytest.fixture(scope="session")
def a3():
    return rootdata.validate_cartan("A3")


@pytest.fixture(scope="session")
def b2():
    c = rootdata.validate_cartan("B2")
    reparam.ensure_moves(c)
    return c


@pytest.fixture(scope="session")
def a2_crystal(a2):
    return crystal.generate(a2, (1, 2, 1), (1, 1))


@pytest.fixture(scope="session")
def b2_crystal(b2):
    return crystal.generate(b2, (1, 2, 1, 2), (1, 1))


def weyl_dim(c, lam):
    """Weyl dimension formula, with positive roots found by reflecting simple roots (test-side oracle)."""
    n = c.n
    a = c.a
    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    roots, frontier = set(simple), list(simple)
    while frontier:
        r = frontier.pop()
        for i in range(n):
            # s_i(r) = r - <r, alpha_i^vee> alpha_i, with <alpha_j, alpha_i^vee> = a[i][j]
            k = sum(r[j] * a[i][j] for j in range(n))
            s = tuple(r[j] - (k if j == i else 0) for j in range(n))
            if all(x >= 0 for x in s) and s not in roots:
                roots.add(s)
                frontier.append(s)
    d = c.d
    num = den = Fraction(1)
    for r in roots:
        # <mu, r^vee> for mu in fundamental-weight coordinates, r^vee = sum r_i d_i alpha_i^vee / (r, r)/2
        norm = sum(r[i] * r[j] * d[i] * a[i][j] for i in range(n) for j in range(n)) // 2
        lam_r = sum(lam[i] * r[i] * d[i] for i in range(n))
        rho_r = sum(r[i] * d[i] for i in range(n))
        num *= Fraction(lam_r + rho_r, norm)
        den *= Fraction(rho_r, norm)
    return int(num / den)


def small_weights(n, top=2):
    return [lam for lam in itertools.product(range(top + 1), repeat=n) if any(lam)]
