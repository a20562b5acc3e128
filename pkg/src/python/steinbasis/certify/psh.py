"""
Plurisubharmonicity certification module
"""

from fractions import Fraction

from ..levi import Levi
from ..poly import Poly4

from .certificate import Certificates

class Certify(object):
    """
    Certifies the Levi data and the radial property of candidate defining functions.
    """

    # Defaults: radius r0 = 1/4 with J = 8 dyadic annuli
    RADIUS = Fraction(1, 4)
    DEPTH = 8

    @staticmethod
    def psh(phi, alpha, radius=RADIUS, depth=DEPTH, spacing=None):
        """
        Certifies zz > 0 and det16 > 0 off the origin, which makes phi strictly plurisubharmonic on the punctured box.

        Args:
            phi: Poly4
            alpha: model parameter
            radius: requested radius
            depth: number of dyadic annuli
            spacing: optional grid spacing for annuli beyond the ledger radius

        Returns:
            (zz certificate, det16 certificate)
        """

        levi = Levi.matrix(phi, alpha)

        zz = Certificates.create("zz", levi.zz, ("x", "y", "u", "v"), radius, depth, spacing)
        det = Certificates.create("det16", levi.det16(), ("x", "y", "u", "v"), radius, depth, spacing)

        return (zz, det)

    @staticmethod
    def radial(phi, radius=RADIUS, depth=DEPTH):
        """
        Certifies u dphi/du + v dphi/dv > 0 off {u = v = 0} through the split u^2 K + v^2 L, with K > 0 off the origin
        and L > 0 everywhere.

        Args:
            phi: Poly4
            radius: requested radius
            depth: number of dyadic annuli

        Returns:
            (K certificate, L certificate)
        """

        u, v = Poly4.variable("u"), Poly4.variable("v")
        k, l = Certify.split(u * phi.diff("u") + v * phi.diff("v"))

        kcert = Certificates.create("radial-u", k, ("x", "y", "u"), radius, depth)
        lcert = Certificates.create("radial-v", l, (), radius, depth)

        return (kcert, lcert)

    @staticmethod
    def split(poly):
        """
        Writes poly = u^2 K + v^2 L with K free of v.

        Args:
            poly: Poly4

        Returns:
            (K, L)
        """

        kterms, lterms = {}, {}
        for (i, j, k, l), coef in poly.terms.items():
            if l >= 2:
                lterms[(i, j, k, l - 2)] = coef
            elif l == 0 and k >= 2:
                kterms[(i, j, k - 2, 0)] = coef
            else:
                raise ValueError("Radial derivative has a term outside u^2 K + v^2 L: %s" %
                                 Poly4({(i, j, k, l): coef}).serialize())

        return (Poly4(kterms), Poly4(lterms))
