"""
Roots module tests
"""

from fractions import Fraction

import pytest

from steinbasis.certify import Claims, RootCountError, Sturm

def testCreate():
    p = Sturm.create(1, 0, -2)

    assert p.degree() == 2
    assert Sturm.value(p, 3) == 7
    assert Sturm.value(p, "1/2") == Fraction(-7, 4)
    assert Sturm.text(p) == ["1/1", "0/1", "-2/1"]

def testSequence():
    chain = Sturm.sequence(Sturm.create(1, 0, -2))

    assert [p.degree() for p in chain] == [2, 1, 0]
    assert Sturm.text(chain[-1]) == ["2/1"]

def testCount():
    # (a - 1)(a - 2)(a - 3)
    p = Sturm.create(1, -6, 11, -6)

    assert Sturm.count(p, 0, 10) == 3
    assert Sturm.count(p, Fraction(3, 2), Fraction(5, 2)) == 1
    assert Sturm.count(p, 4, 5) == 0

    # Closed interval counts endpoint roots, the open one does not
    assert Sturm.count(p, 1, 2) == 2
    assert Sturm.inside(p, 1, 2) == 0

def testIsolate():
    claim = Sturm.isolate(Sturm.create(1, 0, -2), "1", "2")
    assert claim.signs == (-1, 1)

    lo, hi = Sturm.refine(claim, 40)
    assert lo * lo < 2 < hi * hi
    assert 0 < hi - lo <= Fraction(1, 2 ** 40)

    with pytest.raises(RootCountError):
        Sturm.isolate(Sturm.create(1, 0, -2), "-2", "2")

    with pytest.raises(RootCountError):
        Sturm.isolate(Sturm.create(1, -6, 11, -6), "1", "2")

    with pytest.raises(ValueError):
        Sturm.isolate(Sturm.create(1, 0, -2), "2", "1")

def testClaims():
    claims = Claims.claims()

    assert (claims["q6"].lo, claims["q6"].hi) == (Fraction(43, 100), Fraction(44, 100))
    assert (claims["q8"].lo, claims["q8"].hi) == (Fraction(41, 100), Fraction(42, 100))
    assert Sturm.value(Claims.Q, Fraction(52, 100)) < 0
    assert all(claim.count == 1 for claim in claims.values())

    data = claims["q8"].todict()
    assert data["poly"] == ["37/1", "4/1", "-8/1"]
    assert data["interval"] == ["41/100", "21/50"]

def testFeasibility():
    passed, failures = Claims.feasibility(200)

    assert passed
    assert failures == []

def testReduced():
    assert Claims.reduced().degree() == 4
    assert Sturm.value(Claims.reduced(), Fraction(1, 4)) > 0
    assert Claims.combined().degree() == 7

def testInequality5():
    # The zero of 5a^2 + 2a - 2 is near 0.4633
    claim = Sturm.isolate(Claims.INEQUALITY5, "4633/10000", "4634/10000")
    assert claim.count == 1

    notes = Claims.notes()
    assert len(notes) == 1
    assert "(23/50, 47/100)" in notes[0]
