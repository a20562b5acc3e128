"""
Certify module tests
"""

from fractions import Fraction

import pytest

from steinbasis.certify import Certificates, Certify, Domination, Grid, PositivityCertificate
from steinbasis.poly import Poly4

X, Y, U, V = (Poly4.variable(name) for name in ("x", "y", "u", "v"))

def testExponent():
    assert Domination.exponent(Fraction(1, 4)) == 2
    assert Domination.exponent(1) == 0

    for radius in (Fraction(3, 8), Fraction(0), Fraction(2)):
        with pytest.raises(ValueError):
            Domination.exponent(radius)

def testSumOfSquares():
    ledger = Domination.run(X * X + Y * Y)

    assert ledger.plans == [] and ledger.unmatched == []
    assert ledger.radius() == Fraction(1, 4)
    assert ledger.verdict() == "strict"
    assert ledger.verify()

def testSingle():
    # x^3 is dominated by x^2 with weight 1
    ledger = Domination.run(X * X - X ** 3)

    assert ledger.verdict() == "strict"
    assert ledger.radius() == Fraction(1, 4)
    assert ledger.margin(2) > 0
    assert ledger.verify()

def testPair():
    # |xy| <= (x^2 + y^2)/2
    ledger = Domination.run(X * X - X * Y + Y * Y)

    assert ledger.verdict() == "strict"
    assert len(ledger.plans) == 1
    assert ledger.plans[0].second is not None
    assert ledger.verify()

def testSquare():
    # (x - y)^2 leaves no slack
    assert Domination.run((X - Y) ** 2).verdict() == "failed"

def testNonnegative():
    ledger = Domination.run(X * X, ("x", "y"))
    assert ledger.verdict() == "nonnegative"

def testCertificate():
    certificate = Certificates.create("p", X * X + Y * Y + U * U - X * Y * U, ("x", "y", "u"))

    assert certificate.verdict == PositivityCertificate.STRICT
    assert certificate.radius == Fraction(1, 4)
    assert certificate.unmatched() == []
    assert certificate.recheck()

def testCertificateFailed():
    certificate = Certificates.create("p", (X - Y) ** 2)

    assert not certificate.strict()
    assert certificate.verdict == PositivityCertificate.FAILED
    assert certificate.radius is None

def testCertificateDocument():
    certificate = Certificates.create("p", X * X - X * Y + Y * Y + U ** 2 - X * X * U, depth=4)
    data = certificate.todict()

    assert data["name"] == "p"
    assert len(data["annuli"]) == 5
    assert all(annulus["method"] == "domination" for annulus in data["annuli"])

    restored = PositivityCertificate.fromdict(data)
    assert restored.target == certificate.target
    assert restored.verdict == certificate.verdict
    assert restored.recheck()

def testTamper():
    certificate = Certificates.create("p", X * X - X * Y + Y * Y)
    data = certificate.todict()

    # Claimed margin no longer reproduces
    data["annuli"][0]["margin"] = "1/1"
    assert not PositivityCertificate.fromdict(data).recheck()

def testGrid():
    result = Grid.certify(X * X + Y * Y, (Fraction(1, 8), Fraction(1, 4)), Fraction(1, 4))

    assert result.verdict == "strict"
    assert result.margin > 0

def testGridFails():
    result = Grid.certify(X * X - Y * Y, (Fraction(1, 8), Fraction(1, 4)), Fraction(1, 4))

    assert result.verdict == "failed"
    assert result.failure is not None

def testGridErrors():
    with pytest.raises(ValueError):
        Grid.certify(X * X, (Fraction(1, 4), Fraction(1, 8)), Fraction(1, 4))

    with pytest.raises(ValueError):
        Grid.certify(X * X + U, (0, Fraction(1, 4)), Fraction(1, 4), variables=("x",))

def testSplit():
    K, L = Certify.split(2 * U * U + 4 * X * X * U ** 4 + 2 * V * V)

    assert K == 2 + 4 * X * X * U * U
    assert L == 2

    with pytest.raises(ValueError):
        Certify.split(U * V)

def testRadial():
    phi = (1 + X * X + Y * Y) * V * V + U * U + (X * X + Y * Y) * U ** 4
    K, L = Certify.radial(phi)

    assert K.strict()
    assert L.strict()

def testPsh():
    # |z|^2 + |w|^2 has Levi matrix 4I
    zz, det = Certify.psh(X * X + Y * Y + (U + Fraction(1, 2) * (X * X - Y * Y)) ** 2 + V * V, 0)

    assert zz.strict()
    assert det.strict()
