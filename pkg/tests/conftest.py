import random
from fractions import Fraction

import pytest

from qgforms import catalog, hopf
from qgforms.forms import MultilinearForm
from qgforms.ncpoly import Alphabet, NCPoly


def random_form(rng: random.Random, dim: int, arity: int,
                density: float = 0.4) -> MultilinearForm:
    import itertools
    entries = {}
    for idx in itertools.product(range(dim), repeat=arity):
        if rng.random() < density:
            num = rng.randint(-6, 6)
            den = rng.randint(1, 4)
            if num:
                entries[idx] = Fraction(num, den)
    return MultilinearForm(dim, arity, entries)


@pytest.fixture(scope="session")
def eps2():
    return catalog.signature_form(2)


@pytest.fixture(scope="session")
def eps3():
    return catalog.signature_form(3)


@pytest.fixture(scope="session")
def ef_pair():
    e = MultilinearForm(2, 2, {(0, 1): 1, (1, 0): -1})
    f = MultilinearForm(2, 2, {(0, 1): 1, (1, 0): -3})
    return e, f


@pytest.fixture(scope="session")
def hef_eps(eps2):
    return hopf.build_Hef(eps2, eps2)


@pytest.fixture(scope="session")
def hef_ef(ef_pair):
    return hopf.build_Hef(*ef_pair)


def ast_presentation(p12, lam) -> hopf.Presentation:
    """Quantum-GL style presentation from the straightening relations plus
    the two determinant-defining relations, used by the equivalence suite."""
    p12, lam = Fraction(p12), Fraction(lam)
    e_q, f_p = catalog.ast_forms({(0, 1): p12}, lam)
    n = 2
    p = [[Fraction(1), p12], [1 / p12, Fraction(1)]]
    alphabet = Alphabet(
        [f"u_{i}_{j}" for i in range(n) for j in range(n)] + ["D", "DInv"])

    def u(i, j):
        return NCPoly.generator(alphabet, f"u_{i}_{j}")

    rels = []
    for j in range(n):
        for i in range(j):
            for b in range(n):
                for a in range(n):
                    lhs = u(j, b) * u(i, a)
                    if b > a:
                        rhs = (u(i, a) * u(j, b)).scale(p[j][i] * p[a][b]) + \
                              (u(i, b) * u(j, a)).scale((lam - 1) * p[j][i])
                    else:
                        rhs = (u(i, a) * u(j, b)).scale(lam * p[j][i] * p[a][b])
                    rels.append(lhs - rhs)
    for i in range(n):
        for b in range(n):
            for a in range(b):
                rels.append(u(i, b) * u(i, a) - (u(i, a) * u(i, b)).scale(p[a][b]))
    det = NCPoly.generator(alphabet, "D")
    e_def = NCPoly(alphabet)
    for ivec, v in e_q.entries.items():
        e_def = e_def + (u(ivec[0], 0) * u(ivec[1], 1)).scale(v)
    rels.append(e_def - det)
    f_def = NCPoly(alphabet)
    for ivec, v in f_p.entries.items():
        f_def = f_def + (u(0, ivec[0]) * u(1, ivec[1])).scale(v)
    rels.append(f_def - det)
    rels.append(NCPoly.monomial(alphabet, alphabet.word(["D", "DInv"]))
                - NCPoly.one(alphabet))
    rels.append(NCPoly.monomial(alphabet, alphabet.word(["DInv", "D"]))
                - NCPoly.one(alphabet))
    one = Fraction(1)
    cop = {}
    for i in range(n):
        for j in range(n):
            cop[f"u_{i}_{j}"] = [(one, (f"u_{i}_{k}",), (f"u_{k}_{j}",))
                                 for k in range(n)]
    cop["D"] = [(one, ("D",), ("D",))]
    cop["DInv"] = [(one, ("DInv",), ("DInv",))]
    counit = {f"u_{i}_{j}": Fraction(1 if i == j else 0)
              for i in range(n) for j in range(n)}
    counit["D"] = counit["DInv"] = Fraction(1)
    return hopf.Presentation("ast", n, n, alphabet, rels, cop, counit,
                             e=e_q, f=f_p)
