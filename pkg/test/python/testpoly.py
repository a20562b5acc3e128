"""
Poly module tests
"""

from fractions import Fraction

import numpy as np
import pytest

from steinbasis.poly import ComplexPoly, Poly4, Scalar

X, Y, U, V = (Poly4.variable(name) for name in ("x", "y", "u", "v"))

@pytest.mark.parametrize("text, value", [("1/4", Fraction(1, 4)), ("-3/6", Fraction(-1, 2)), ("7", Fraction(7)),
                                         (" 2 / 3 ", Fraction(2, 3))])
def testParse(text, value):
    assert Scalar.parse(text) == value

@pytest.mark.parametrize("text", ["0.5", "1e-3", "1/0", "a/b", ""])
def testParseRejects(text):
    with pytest.raises(ValueError):
        Scalar.parse(text)

def testText():
    assert Scalar.text(Fraction(6, 8)) == "3/4"
    assert Scalar.text(2) == "2/1"

def testArithmetic():
    p = (X + Y) ** 2
    assert p == X * X + 2 * X * Y + Y * Y
    assert p - X * X - Y * Y == 2 * X * Y
    assert (X - X) == 0
    assert not Poly4()
    assert 1 - X == -(X - 1)
    assert Fraction(1, 2) * (X + X) == X

def testPowerRejectsNegative():
    with pytest.raises(ValueError):
        X ** -1

def testDiff():
    p = X ** 3 * Y * U ** 2 + V
    assert p.diff("x") == 3 * X * X * Y * U * U
    assert p.diff("u") == 2 * X ** 3 * Y * U
    assert p.diff("v") == 1
    assert p.diff(1) == X ** 3 * U * U

def testSerialize():
    p = U ** 2 + Fraction(1, 3) * X * X - Y
    text = p.serialize()

    # Weighted degree first
    assert text == "-1/1*x^0*y^1*u^0*v^0 + 1/3*x^2*y^0*u^0*v^0 + 1/1*x^0*y^0*u^2*v^0"
    assert Poly4.parse(text) == p
    assert Poly4().serialize() == "0"
    assert Poly4.parse("0") == Poly4()

def testParseRejectsTerm():
    with pytest.raises(ValueError):
        Poly4.parse("x^2")

def testWeights():
    p = X ** 2 * U + V ** 3 + Y
    assert p.degree() == 6
    assert [degree for degree, _ in p.weightedParts()] == [1, 4, 6]
    assert p.variables() == ("x", "y", "u", "v")
    assert Poly4().degree() == -1

def testRestrictSubstitute():
    p = X * X * U + Y * V
    assert p.restrict(u=0, v=0) == 0
    assert p.restrict(x=2) == 4 * U + Y * V
    assert p.substitute("u", U - X) == X * X * U - X ** 3 + Y * V
    assert (X * X * U).divide("x", 2) == U

    with pytest.raises(ValueError):
        X.divide("y")

def testEven():
    assert (X * X + U ** 4).even()
    assert not (X * Y).even()
    assert (X * U).even(("y", "v"))

def testEvaluate():
    p = X * X * Y - Fraction(1, 3) * U + V
    point = (Fraction(1, 2), 3, Fraction(3, 4), -1)

    assert p.evaluate(point) == Fraction(3, 4) - Fraction(1, 4) - 1
    assert np.isclose(p.evalf(np.array([float(x) for x in point])), float(p.evaluate(point)))

    grid = np.zeros((3, 5, 4))
    assert p.evalf(grid).shape == (3, 5)
    assert Poly4().evalf(grid).shape == (3, 5)

def testComplexPoly():
    p = ComplexPoly(X, Y)
    assert p.normsq() == X * X + Y * Y
    assert p.conjugate() == ComplexPoly(X, -Y)
    assert p.evaluate((1, 2, 0, 0)) == (1, 2)
    assert p.evalf(np.array([1.0, 2.0, 0.0, 0.0])) == 1 + 2j
