"""
Certificate module
"""

from fractions import Fraction

from ..poly import Poly4, Scalar

from .domination import Domination, Ledger
from .grid import Grid

class PositivityCertificate(object):
    """
    Machine-checkable evidence that a polynomial is positive on a punctured weighted box. The box of radius r is split
    into dyadic annuli r*2^-j, each covered by the domination ledger or a certified grid. The ledger also covers the
    tail below the last annulus.
    """

    # Verdicts
    STRICT = "strict-positive-off-origin"
    NONNEGATIVE = "nonnegative"
    FAILED = "failed"

    def __init__(self, name, target, ledger, radius, annuli, grids=None, verdict=None):
        """
        Creates a certificate.

        Args:
            name: target name, e.g. zz or det16
            target: Poly4
            ledger: domination Ledger
            radius: certified radius
            annuli: list of annulus dicts with outer, inner, method and margin
            grids: list of GridResult for grid annuli
            verdict: certificate verdict
        """

        self.name = name
        self.target = target
        self.ledger = ledger
        self.radius = radius
        self.annuli = annuli
        self.grids = grids if grids else []
        self.verdict = verdict

    def strict(self):
        """
        Returns:
            True if the verdict is strict positivity off the origin
        """

        return self.verdict == PositivityCertificate.STRICT

    def rstar(self):
        """
        Largest dyadic radius where the ledger alone closes.

        Returns:
            Fraction or None
        """

        return self.ledger.radius()

    def unmatched(self):
        """
        Error monomials without any domination plan.

        Returns:
            list of exponent vectors
        """

        return [list(e) for e in self.ledger.unmatched]

    def recheck(self):
        """
        Re-runs every check from the stored fields and compares margins bit for bit.

        Returns:
            True if the certificate reproduces
        """

        if not self.ledger.verify():
            return False

        grids = iter(self.grids)
        for annulus in self.annuli:
            outer, inner = Fraction(annulus["outer"]), Fraction(annulus["inner"])
            if annulus["method"] == "domination":
                margin = self.ledger.margin(Domination.exponent(outer))
            else:
                stored = next(grids)
                result = Grid.certify(self.target, (inner, outer), stored.spacing, variables=stored.variables)
                margin = result.margin

            if margin != annulus["margin"]:
                return False

        return self.verdict == Certificates.verdict(self.ledger, self.annuli)

    def todict(self):
        """
        Serializable form.

        Returns:
            dict
        """

        return {
            "name": self.name,
            "target": self.target.serialize(),
            "verdict": self.verdict,
            "radius": Scalar.text(self.radius) if self.radius is not None else None,
            "rstar": Scalar.text(self.rstar()) if self.rstar() is not None else None,
            "annuli": [{"outer": Scalar.text(a["outer"]), "inner": Scalar.text(a["inner"]), "method": a["method"],
                        "margin": Scalar.text(a["margin"])} for a in self.annuli],
            "grids": [grid.todict() for grid in self.grids],
            "unmatched": self.unmatched(),
            "ledger": self.ledger.todict()
        }

    @staticmethod
    def fromdict(data):
        """
        Rebuilds a certificate from todict() output.

        Args:
            data: dict

        Returns:
            PositivityCertificate
        """

        target = Poly4.parse(data["target"])
        ledger = Ledger.fromdict(target, data["ledger"])

        annuli = [{"outer": Scalar.parse(a["outer"]), "inner": Scalar.parse(a["inner"]), "method": a["method"],
                   "margin": Scalar.parse(a["margin"])} for a in data["annuli"]]

        grids = []
        for grid in data["grids"]:
            result = Grid.certify(target, [Scalar.parse(r) for r in grid["annulus"]], Scalar.parse(grid["spacing"]),
                                  variables=grid["variables"])
            grids.append(result)

        radius = Scalar.parse(data["radius"]) if data["radius"] is not None else None
        return PositivityCertificate(data["name"], target, ledger, radius, annuli, grids, data["verdict"])

class Certificates(object):
    """
    Builds positivity certificates for single polynomials.
    """

    @staticmethod
    def create(name, poly, variables=None, radius=Fraction(1, 4), depth=8, spacing=None, refine=20):
        """
        Certifies poly > 0 on the punctured weighted box.

        Args:
            name: certificate name
            poly: Poly4
            variables: variables poly must be positive in, defaults to the variables of poly
            radius: requested radius, a power of two <= 1
            depth: number of dyadic annuli J
            spacing: optional grid spacing for annuli beyond the ledger radius
            refine: grid refinement depth

        Returns:
            PositivityCertificate
        """

        ledger = Domination.run(poly, variables, radius)
        rstar = ledger.radius()

        if rstar is None:
            return PositivityCertificate(name, poly, ledger, None, [], [], PositivityCertificate.FAILED)

        # Grid annuli cover [rstar, radius] when requested, otherwise the certified radius shrinks to rstar
        top = radius if spacing is not None else min(Fraction(radius), rstar)

        annuli, grids = [], []
        for j in range(depth + 1):
            outer = top / 2 ** j
            inner = outer / 2

            if outer <= rstar:
                annuli.append({"outer": outer, "inner": inner, "method": "domination",
                               "margin": ledger.margin(Domination.exponent(outer))})
            else:
                result = Grid.certify(poly, (inner, outer), spacing, refine, ledger.variables)
                grids.append(result)
                annuli.append({"outer": outer, "inner": inner, "method": "certified-grid", "margin": result.margin})

        verdict = Certificates.verdict(ledger, annuli)
        return PositivityCertificate(name, poly, ledger, top if verdict != PositivityCertificate.FAILED else None,
                                     annuli, grids, verdict)

    @staticmethod
    def verdict(ledger, annuli):
        """
        Combines the ledger verdict with the annulus margins.

        Args:
            ledger: Ledger
            annuli: annulus dicts

        Returns:
            verdict string
        """

        verdict = ledger.verdict()
        if verdict == "failed":
            return PositivityCertificate.FAILED

        if any(a["method"] == "certified-grid" and a["margin"] <= 0 for a in annuli):
            return PositivityCertificate.FAILED

        return PositivityCertificate.STRICT if verdict == "strict" else PositivityCertificate.NONNEGATIVE
