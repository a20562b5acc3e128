"""
Grid module
"""

import math

from fractions import Fraction
from itertools import product

from ..poly import VARIABLES, Scalar

class GridResult(object):
    """
    Outcome of a certified grid check over a weighted annulus.
    """

    def __init__(self, annulus, spacing, variables, margin, boxes, verdict, failure=None):
        self.annulus = annulus
        self.spacing = spacing
        self.variables = variables
        self.margin = margin
        self.boxes = boxes
        self.verdict = verdict
        self.failure = failure

    def todict(self):
        """
        Serializable form.

        Returns:
            dict
        """

        return {
            "annulus": [Scalar.text(r) for r in self.annulus],
            "spacing": Scalar.text(self.spacing),
            "variables": list(self.variables),
            "margin": Scalar.text(self.margin),
            "boxes": self.boxes,
            "verdict": self.verdict,
            "failure": [[Scalar.text(c) for c in x] for x in self.failure] if self.failure else None
        }

class Grid(object):
    """
    Certified grid check: the weighted annulus is covered by boxes and each box is accepted when the value at its
    center exceeds the half-widths times coefficient-sum bounds of the partial derivatives. Boxes that fail are split.
    """

    # Maximum number of boxes examined
    BOXES = 2000000

    @staticmethod
    def certify(poly, annulus, spacing, depth=20, variables=None, boxes=None):
        """
        Certifies poly > 0 on the weighted annulus r_in <= max(|x|, |y|, |u|^1/2, |v|^1/2) <= r_out.

        Args:
            poly: Poly4
            annulus: (r_in, r_out)
            spacing: relative initial cell size h, cells are h*r_out wide in x, y and h*r_out^2 in u, v
            depth: maximum refinement depth
            variables: annulus variables, defaults to the variables of poly
            boxes: optional box cap

        Returns:
            GridResult
        """

        inner, outer = Fraction(annulus[0]), Fraction(annulus[1])
        spacing = Fraction(spacing)
        if spacing <= 0 or not 0 <= inner < outer:
            raise ValueError("Invalid grid spacing %s or annulus (%s, %s)" % (spacing, inner, outer))

        variables = tuple(variables) if variables is not None else poly.variables()
        if any(name not in variables for name in poly.variables()):
            raise ValueError("Polynomial depends on variables outside %s" % (variables,))

        cap = boxes if boxes else Grid.BOXES
        indices = [VARIABLES.index(name) for name in variables]
        terms = Grid.terms(poly, indices)

        # Per variable scale: r for x, y and r^2 for u, v
        scales = [(outer if i < 2 else outer ** 2, inner if i < 2 else inner ** 2) for i in indices]

        # Initial cells
        stack = []
        axes = []
        for top, _ in scales:
            width = spacing * top
            count = math.ceil(2 * top / width)
            axes.append([(-top + (k + Fraction(1, 2)) * width, width / 2) for k in range(count)])

        for cell in product(*axes):
            stack.append((tuple(c for c, _ in cell), tuple(h for _, h in cell), 0))

        margin, examined = None, 0
        while stack:
            center, half, level = stack.pop()
            examined += 1

            if examined > cap:
                return GridResult((inner, outer), spacing, variables, margin or Fraction(0), examined, "failed", [center, half])

            # Skip boxes inside the open inner box
            if inner and all(abs(c) + h < low for c, h, (_, low) in zip(center, half, scales)):
                continue

            value, bound = Grid.bounds(terms, center, half)
            if value <= 0 and Grid.inside(center, scales):
                return GridResult((inner, outer), spacing, variables, value, examined, "failed", [center, half])

            if value - bound > 0:
                margin = value - bound if margin is None else min(margin, value - bound)
            elif level >= depth:
                return GridResult((inner, outer), spacing, variables, value - bound, examined, "failed", [center, half])
            else:
                stack.extend(Grid.split(center, half, level))

        return GridResult((inner, outer), spacing, variables, margin if margin is not None else Fraction(0), examined,
                          "strict" if margin is not None else "failed")

    @staticmethod
    def terms(poly, indices):
        """
        Integer form of poly restricted to the annulus variables.

        Args:
            poly: Poly4
            indices: variable indices

        Returns:
            (common denominator, list of (integer coefficient, exponents))
        """

        denominator = 1
        for coef in poly.terms.values():
            denominator = denominator * coef.denominator // math.gcd(denominator, coef.denominator)

        return (denominator, [(int(coef * denominator), tuple(e[i] for i in indices)) for e, coef in poly.terms.items()])

    @staticmethod
    def bounds(terms, center, half):
        """
        Value at the center and mean value bound over a box, in exact integer arithmetic.

        Args:
            terms: output of terms()
            center: box center
            half: box half-widths

        Returns:
            (value, bound) as Fractions
        """

        denominator, monomials = terms

        # Common dyadic denominator for all coordinates
        scale = 1
        for x in center + half:
            scale = scale * x.denominator // math.gcd(scale, x.denominator)

        c = [int(x * scale) for x in center]
        h = [int(x * scale) for x in half]
        top = [abs(x) + y for x, y in zip(c, h)]

        degree = max((sum(e) for _, e in monomials), default=0)

        value, bound = 0, 0
        for coef, exponents in monomials:
            shift = scale ** (degree - sum(exponents))

            term = coef
            for x, e in zip(c, exponents):
                term *= x ** e
            value += term * shift

            # sup |d/dx_k m| * h_k over the box
            for k, e in enumerate(exponents):
                if e:
                    part = abs(coef) * e * h[k] * top[k] ** (e - 1)
                    for m, f in enumerate(exponents):
                        if m != k:
                            part *= top[m] ** f
                    bound += part * shift

        total = denominator * scale ** degree
        return (Fraction(value, total), Fraction(bound, total))

    @staticmethod
    def inside(center, scales):
        """
        Tests if a point lies in the closed annulus.

        Args:
            center: point
            scales: per variable (outer, inner) bounds

        Returns:
            True if inside
        """

        return all(abs(c) <= top for c, (top, _) in zip(center, scales)) and \
               any(abs(c) >= low for c, (_, low) in zip(center, scales))

    @staticmethod
    def split(center, half, level):
        """
        Bisects a box along every axis.

        Returns:
            list of child boxes
        """

        quarter = tuple(h / 2 for h in half)

        children = []
        for signs in product((-1, 1), repeat=len(center)):
            children.append((tuple(c + s * q for c, s, q in zip(center, signs, quarter)), quarter, level + 1))

        return children
