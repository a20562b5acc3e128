"""
Levi module tests
"""

from fractions import Fraction

import numpy as np
import pytest

from steinbasis.feasibility import SlabSelection
from steinbasis.levi import FlatPerturbation, Levi
from steinbasis.poly import Poly4

X, Y, U, V = (Poly4.variable(name) for name in ("x", "y", "u", "v"))

ALPHAS = [Fraction(0), Fraction(1, 4), Fraction(1, 2), Fraction(3, 4), Fraction(9, 10)]

def testRho():
    rho = (Fraction(1, 2) + X * X + Y * Y) * V * V
    levi = Levi.matrix(rho, Fraction(1, 3))

    assert levi.zz == 4 * V * V
    assert levi.ww == 2 * (Fraction(1, 2) + X * X + Y * Y)
    assert levi.zw.re == 4 * Y * V
    assert levi.zw.im == 4 * X * V
    assert Levi.det(levi) == 8 * V * V * (Fraction(1, 2) - X * X - Y * Y)

@pytest.mark.parametrize("alpha", ALPHAS)
def testTrivial(alpha):
    assert Levi.ww(U * U + V * V) == 4
    assert Levi.ww(X ** 6 * Y * Y) == 0
    assert Levi.matrix(Poly4(), alpha).det16() == 0

    zw = Levi.zw(X ** 4 + X * Y ** 3, alpha)
    assert not zw.re and not zw.im

@pytest.mark.parametrize("alpha", ALPHAS)
def testZwSquare(alpha):
    zw = Levi.zw(U * U, alpha)

    assert zw.re == -2 * (alpha + 1) * X
    assert zw.im == 2 * (alpha - 1) * Y

@pytest.mark.parametrize("alpha", ALPHAS)
@pytest.mark.parametrize("m", range(1, 7))
def testSlabRegression(alpha, m):
    # zz(y^2m u^2) = b2 u^2 + b1 u + b0 + 2(alpha+1)^2 x^2 y^2m
    b2, b1, b0 = SlabSelection(alpha, m).triple()
    expected = b2 * U * U + b1 * U + b0 + 2 * (alpha + 1) ** 2 * X * X * Y ** (2 * m)

    assert Levi.zz(Y ** (2 * m) * U * U, alpha) == expected

@pytest.mark.parametrize("alpha", ALPHAS)
def testIdentity(alpha):
    # |z|^2 + |w|^2 with Re w = u + q(x, y)
    f = X * X + Y * Y + (U + Levi.quadratic(alpha)) ** 2 + V * V
    levi = Levi.matrix(f, alpha)

    assert levi.zz == 4
    assert levi.ww == 4
    assert not levi.zw.re and not levi.zw.im
    assert np.allclose(levi.evalf((0.1, -0.2, 0.01, 0.02)), np.eye(2))

@pytest.mark.parametrize("alpha", ALPHAS)
def testLinearity(alpha):
    f, g = X ** 2 * U ** 3 + Y * V, U ** 4 - X * Y * U * V
    assert Levi.zz(f + g, alpha) == Levi.zz(f, alpha) + Levi.zz(g, alpha)
    assert Levi.zw(f + g, alpha) == Levi.zw(f, alpha) + Levi.zw(g, alpha)

@pytest.mark.parametrize("alpha", ALPHAS)
def testExact(alpha):
    f = U ** 4 + X * X * U ** 3 + (1 + X * X + Y * Y) * V * V + X * Y * U * V
    levi = Levi.matrix(f, alpha)
    zz, ww, zw = Levi.exact(f, alpha)

    # Back to model coordinates with s = u + q(x, y)
    shift = U + Levi.quadratic(alpha)
    assert zz.substitute("u", shift) == levi.zz
    assert ww.substitute("u", shift) == levi.ww
    assert zw.re.substitute("u", shift) == levi.zw.re
    assert zw.im.substitute("u", shift) == levi.zw.im

def randomPoly(generator):
    """
    Random polynomial of weighted degree <= 14, x and y of weight 1, u and v of weight 2.
    """

    terms = {}
    for i, j, k, l in np.ndindex(15, 15, 8, 8):
        if i + j + 2 * k + 2 * l <= 14 and generator.uniform() < 0.1:
            terms[(i, j, k, l)] = Fraction(int(generator.integers(-9, 10)), 16)

    return Poly4(terms)

def testOracleOrder():
    generator = np.random.default_rng(0)

    for _ in range(30):
        f = randomPoly(generator)
        alpha = Fraction(int(generator.integers(0, 10)), 10)
        levi = Levi.matrix(f, alpha)

        for point in generator.uniform(-0.2, 0.2, size=(10, 4)):
            symbolic = levi.evalf(point)
            errors = [np.max(np.abs(Levi.numeric(f, alpha, Levi.lift(point, alpha), h) - symbolic))
                      for h in (2e-3, 1e-3, 5e-4)]

            # Exact up to rounding
            if errors[-1] < 1e-7:
                continue

            for coarse, fine in zip(errors, errors[1:]):
                assert 3.2 <= coarse / fine <= 4.8

def testOracleAccuracy():
    f = U ** 6 + X * X * U ** 5 + Fraction(1, 7) * X ** 4 * Y * Y * U ** 3 + (1 + X * X + Y * Y) * V * V
    alpha = Fraction(1, 4)
    point = (0.1, -0.05, 0.004, -0.003)

    symbolic = Levi.matrix(f, alpha).evalf(point)
    numeric = Levi.numeric(f, alpha, Levi.lift(point, alpha), 1e-4)

    assert np.allclose(numeric, symbolic, atol=1e-6)

def testOracleErrors():
    with pytest.raises(ValueError):
        Levi.numeric(U * U, 0, (0, 0, 0, 0), 0)

    with pytest.raises(ValueError):
        Levi.numeric(U * U, 0, (1e20, 0, 0, 0), 1e-4)

def testFlat():
    tau = FlatPerturbation(X ** 4)
    f = U * U + V * V

    plain = Levi.numeric(f, 0, (0, 0, 0, 0), 1e-3)
    perturbed = Levi.numeric(f, 0, (0, 0, 0, 0), 1e-3, tau)

    assert np.allclose(plain, perturbed, atol=1e-5)
    assert np.isclose(float(tau.evalf(0.5, 1.0)), 0.0625)

@pytest.mark.parametrize("tau", [X ** 3, X ** 4 * U, Y * Y])
def testFlatRejects(tau):
    with pytest.raises(ValueError):
        FlatPerturbation(tau)

def testFlatExact():
    # Levi data of u^2 + v^2 with tau: u = Re w - q - tau
    tau = FlatPerturbation(X ** 4 + Y ** 4)
    f = U * U + V * V

    zz, ww, _ = Levi.exact(f, 0, tau)
    assert ww == 4
    assert zz.restrict(x=0, y=0, u=0, v=0) == 0
