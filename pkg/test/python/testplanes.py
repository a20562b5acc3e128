"""
Planes module tests
"""

from fractions import Fraction

import mpmath
import numpy as np
import pytest

from steinbasis.feasibility import Feasibility
from steinbasis.planes import PlaneUnion, Planes

@pytest.mark.parametrize("B, kind, square", [(["0", "1", "1", "0"], PlaneUnion.HYPERBOLIC, 1),
                                             (["2", "0", "0", "-2"], PlaneUnion.HYPERBOLIC, 4),
                                             (["0", "0", "0", "0"], PlaneUnion.HYPERBOLIC, 0),
                                             (["0", "2", "-2", "0"], PlaneUnion.ELLIPTIC, 4),
                                             (["0", "1/2", "-1/2", "0"], PlaneUnion.ELLIPTIC, Fraction(1, 4)),
                                             (["1", "0", "0", "1"], PlaneUnion.UNSUPPORTED, 0)])
def testNormalize(B, kind, square):
    union = Planes.normalize(B)

    assert union.kind == kind
    assert union.square == square

def testLabels():
    assert Planes.normalize(["0", "2", "-2", "0"]).label == Planes.WEINSTOCK
    assert Planes.normalize(["0", "1/2", "-1/2", "0"]).label == Planes.CONVEX
    assert not Planes.normalize(["0", "1/2", "-1/2", "0"]).mapped()
    assert "trace" in Planes.normalize(["1", "0", "0", "1"]).label

@pytest.mark.parametrize("B", [["0", "1", "-1", "0"], ["0", "1", "0", "0"], ["0", "1", "1"], ["0.5", "0", "0", "0"]])
def testNormalizeRejects(B):
    with pytest.raises(ValueError):
        Planes.normalize(B)

def testNormalForms():
    with pytest.raises(ValueError):
        Planes.elliptic(1)

    with pytest.raises(ValueError):
        Planes.hyperbolic("-1")

    union = Planes.hyperbolic("1")
    with mpmath.workdps(30):
        assert abs(union.theta() - mpmath.pi / 4) < mpmath.mpf(10) ** -25
        assert abs(union.alpha() - 1 / mpmath.sqrt(2)) < mpmath.mpf(10) ** -25

@pytest.mark.parametrize("union", [Planes.hyperbolic(mu) for mu in ("0", "1/2", "1", "2", "10")] +
                                  [Planes.elliptic(square) for square in (4, 25)])
def testImage(union):
    residual = Planes.verify(union, samples=1000, precision=50)
    doubled = Planes.verify(union, samples=1000, precision=100)

    assert residual < mpmath.mpf(10) ** -40
    assert doubled <= residual * mpmath.mpf(10) ** -10

@pytest.mark.parametrize("B", [["0", "1", "1", "0"], ["1", "2", "3", "-1"], ["0", "3", "-1", "0"]])
def testImageGeneral(B):
    union = Planes.normalize(B)
    assert Planes.verify(union, samples=200, precision=50) < mpmath.mpf(10) ** -40

def testVerifyErrors():
    union = Planes.hyperbolic("1")

    with pytest.raises(ValueError):
        Planes.verify(union, samples=0)

    with pytest.raises(ValueError):
        Planes.verify(union, precision=20)

    with pytest.raises(ValueError):
        Planes.psi(Planes.elliptic(Fraction(1, 4)), 0, 0)

@pytest.mark.parametrize("mu", ["1/2", "1", "3"])
def testKernel(mu):
    residual, determinant = Planes.kernel(Planes.hyperbolic(mu))

    assert residual < 1e-12
    assert determinant > 0

def testApproximation():
    alpha = Planes.approximation(Planes.hyperbolic("1"))

    assert alpha.denominator <= 1000
    assert abs(float(alpha) - 2 ** -0.5) < 1e-3

    assert Planes.approximation(Planes.hyperbolic("0")) < 1

def testModel():
    union = Planes.hyperbolic("1")
    constants = Planes.floats(union)

    # Points of R^2 map onto the surface u = v = 0
    generator = np.random.default_rng(0)
    points = generator.uniform(-1, 1, size=(50, 2)).astype(complex)

    model = Planes.model(constants, points)
    assert np.allclose(model[:, 2:], 0, atol=1e-12)

def testGradient():
    union = Planes.hyperbolic("1")
    solution = Feasibility.slabSolution(Planes.approximation(union))

    phi, function = Planes.field(union, solution, 1)
    constants = Planes.floats(union)
    point = np.array([0.01 + 0.02j, -0.015 + 0.005j])

    # Chain rule gradient against central differences in the four real coordinates
    h, numeric = 1e-7, []
    for k in range(2):
        for step in (1, 1j):
            offset = np.zeros(2, dtype=complex)
            offset[k] = h * step
            numeric.append((function(point + offset) - function(point - offset)) / (2 * h))

    expected = np.sqrt(np.sum(np.square(numeric)))
    assert np.isclose(Planes.gradient(phi, constants, point), expected, rtol=1e-4)

def testFieldRejects():
    solution = Feasibility.degree6(Fraction(1, 4))

    with pytest.raises(ValueError):
        Planes.field(Planes.elliptic(4), solution, 1)

def testTodict():
    data = Planes.hyperbolic("1").todict(20)

    assert data["kind"] == PlaneUnion.HYPERBOLIC
    assert data["square"] == "1/1"
    assert data["alpha"].startswith("0.7071067811")
    assert "mu" not in Planes.normalize(["1", "0", "0", "1"]).todict()
