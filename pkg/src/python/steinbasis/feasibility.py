"""
Feasibility module
"""

from fractions import Fraction

import numpy as np

from .certify import Certificates, Certify, Claims
from .levi import Levi
from .poly import Poly4, Scalar

# Coordinate polynomials
X, Y, U, V = (Poly4.variable(name) for name in ("x", "y", "u", "v"))

class InfeasibleError(ValueError):
    """
    Raised when a coefficient system has no solution. Carries the violated constraint name.
    """

    def __init__(self, constraint, message):
        super(InfeasibleError, self).__init__("%s: %s" % (constraint, message))
        self.constraint = constraint

class BudgetError(RuntimeError):
    """
    Raised when a halving or doubling search runs out of budget.
    """

class Constraint(object):
    """
    One exact equality or strict inequality of a coefficient ledger, stored as left and right hand sides.
    """

    def __init__(self, name, kind, left, right, degenerate=False):
        """
        Creates a constraint.

        Args:
            name: constraint name
            kind: "equality" or "inequality" (left > right, or left < right when kind is "less")
            left: left hand side
            right: right hand side
            degenerate: inequality allowed to hold with equality, both sides vanish identically
        """

        self.name = name
        self.kind = kind
        self.left = Fraction(left)
        self.right = Fraction(right)
        self.degenerate = degenerate

    def holds(self):
        """
        Returns:
            True if the constraint holds exactly
        """

        if self.kind == "equality":
            return self.left == self.right

        if self.degenerate and self.left == self.right == 0:
            return True

        return self.left > self.right if self.kind == "greater" else self.left < self.right

    def todict(self):
        return {"name": self.name, "kind": self.kind, "left": Scalar.text(self.left), "right": Scalar.text(self.right),
                "degenerate": self.degenerate, "holds": self.holds()}

class CoeffSolution(object):
    """
    Base class for solved coefficient sets. Subclasses define the family, the polynomial P and the constraint ledger.
    """

    family = None

    def __init__(self, alpha, M):
        self.alpha = Fraction(alpha)
        self.M = Fraction(M)
        self.certificates = {}
        self.notes = []

    def coefficients(self):
        """
        Named rational coefficients.

        Returns:
            dict of name -> Fraction
        """

        raise NotImplementedError

    def integers(self):
        """
        Named integer parameters.

        Returns:
            dict of name -> int
        """

        return {}

    def power(self):
        """
        Exponent 2n of u in the homogeneous part u^2n of P.

        Returns:
            int
        """

        raise NotImplementedError

    def base(self):
        """
        Everything in phi except the M(x^2+y^2)u^2n term.

        Returns:
            Poly4
        """

        raise NotImplementedError

    def correction(self):
        """
        The (x^2+y^2)u^2n term multiplied by M.

        Returns:
            Poly4
        """

        return (X * X + Y * Y) * U ** self.power()

    def phi(self, M=None):
        """
        Candidate defining function.

        Args:
            M: optional override of M

        Returns:
            Poly4
        """

        return self.base() + (self.M if M is None else Fraction(M)) * self.correction()

    def radius(self):
        """
        Smallest certified radius over the attached certificates.

        Returns:
            Fraction or None
        """

        radii = [c.radius for c in self.certificates.values()]
        if not radii or None in radii:
            return None

        return min(radii)

    def ledger(self):
        """
        Exact constraint ledger.

        Returns:
            list of Constraint
        """

        raise NotImplementedError

    def verify(self):
        """
        Returns:
            True if every ledger constraint holds exactly
        """

        return all(constraint.holds() for constraint in self.ledger())

    def violated(self):
        """
        Returns:
            names of violated constraints
        """

        return [constraint.name for constraint in self.ledger() if not constraint.holds()]

    def todict(self):
        """
        Certificate document fields.

        Returns:
            dict
        """

        return {
            "alpha": Scalar.text(self.alpha),
            "family": self.family,
            "coefficients": {name: Scalar.text(value) for name, value in self.coefficients().items()},
            "integers": self.integers(),
            "phi": self.phi().serialize()
        }

class CoeffSolutionL1(CoeffSolution):
    """
    Degree-6 construction for 0 <= alpha <= 13/25:
    P = u^6 + ((6a+c)x^2 - cy^2)u^5 + (Ax^4 + Bx^2y^2 + A'y^4)u^4 + Cx^4y^2u^3 + (Dx^6y^2 + Ex^4y^4)u^2 + eps(x^8+y^8)u^2
    and phi = P + M(x^2+y^2)u^6 + (1+x^2+y^2)v^2.
    """

    family = "L1"

    def __init__(self, alpha, M, c, A, Aprime, B, C, D, E, eps):
        super(CoeffSolutionL1, self).__init__(alpha, M)

        self.c, self.A, self.Aprime, self.B = Fraction(c), Fraction(A), Fraction(Aprime), Fraction(B)
        self.C, self.D, self.E, self.eps = Fraction(C), Fraction(D), Fraction(E), Fraction(eps)

    def coefficients(self):
        return {"c": self.c, "A": self.A, "Aprime": self.Aprime, "B": self.B, "C": self.C, "D": self.D, "E": self.E,
                "eps": self.eps, "M": self.M}

    def power(self):
        return 6

    def ptilde(self):
        """
        Unperturbed polynomial P~.

        Returns:
            Poly4
        """

        a, c = self.alpha, self.c
        x2, y2 = X * X, Y * Y

        return (U ** 6 + ((6 * a + c) * x2 - c * y2) * U ** 5 +
                (self.A * x2 * x2 + self.B * x2 * y2 + self.Aprime * y2 * y2) * U ** 4 +
                self.C * x2 * x2 * y2 * U ** 3 + (self.D * x2 ** 3 * y2 + self.E * x2 * x2 * y2 * y2) * U ** 2)

    def p(self):
        """
        P = P~ + eps(x^8 + y^8)u^2.

        Returns:
            Poly4
        """

        return self.ptilde() + self.eps * (X ** 8 + Y ** 8) * U ** 2

    def base(self):
        return self.p() + (1 + X * X + Y * Y) * V * V

    def ledger(self):
        a, c = self.alpha, self.c
        A, Ap, B, C, D, E = self.A, self.Aprime, self.B, self.C, self.D, self.E

        # Both sides of the u-odd guards vanish identically at alpha = 0
        zero = a == 0 and c == 0

        return [
            Constraint("1", "equality", 8 * (5 * a + 4) * A, 120 * a * (a + 1) ** 2 + 20 * c * (a + 1) ** 2 + 2 * C),
            Constraint("2", "equality", 40 * a * B, 120 * a * (a - 1) ** 2 - 80 * a * c + 12 * C),
            Constraint("3", "equality", 2 * (9 * a + 4) * D, 3 * (a + 1) ** 2 * C),
            Constraint("4", "equality", 6 * a * E, (a - 1) ** 2 * C),
            Constraint("Aprime", "equality", 8 * (4 - 5 * a) * Ap, 20 * c * (a - 1) ** 2),
            Constraint("5", "greater", 15 * (a + 1) ** 2 + 6 * A + B - 5 * c * (3 * a + 2), 30 * a * (3 * a + 2)),
            Constraint("6", "greater", 2 * A * (a - 1) ** 2 + 2 * B * (a + 1) ** 2 + 2 * Ap * (a + 1) ** 2 + 5 * D + 2 * E,
                       C * (7 * a + 2)),
            Constraint("7", "less", 25 * (6 * a + c) ** 2, 96 * A, zero),
            Constraint("8", "less", 9 * C ** 2, 32 * B * D, zero),
            Constraint("9", "less", 25 * c ** 2, 96 * Ap, c == 0),
            Constraint("positive", "greater", min(B, C, D, E) if not zero else min(B, E), 0),
            Constraint("eps", "greater", self.eps, 0),
            Constraint("M", "greater", self.M, 0)
        ]

class CoeffSolutionL11(CoeffSolution):
    """
    Degree-4 construction for 0 <= alpha <= 11/25:
    P = u^4 + a x^2u^3 + (Ax^4 + Bx^2y^2)u^2 + eps(x^4+y^4)u^2 and phi = M(x^2+y^2)u^4 + P + (1+x^2+y^2)v^2.
    """

    family = "L11"

    def __init__(self, alpha, M, a, A, B, eps):
        super(CoeffSolutionL11, self).__init__(alpha, M)
        self.a, self.A, self.B, self.eps = Fraction(a), Fraction(A), Fraction(B), Fraction(eps)

    def coefficients(self):
        return {"a": self.a, "A": self.A, "B": self.B, "eps": self.eps, "M": self.M}

    def power(self):
        return 4

    def base(self):
        x2, y2 = X * X, Y * Y
        p = U ** 4 + self.a * x2 * U ** 3 + (self.A * x2 * x2 + self.B * x2 * y2) * U ** 2 + self.eps * (x2 * x2 + y2 * y2) * U ** 2
        return p + (1 + x2 + y2) * V * V

    def ledger(self):
        return CoeffSolutionL11.constraints(self.alpha, self.a, self.A, self.B) + [
            Constraint("eps", "greater", self.eps, 0),
            Constraint("M", "greater", self.M, 0)
        ]

    @staticmethod
    def constraints(alpha, a, A, B):
        """
        Ledger of the degree-4 construction.

        Returns:
            list of Constraint
        """

        al = alpha
        return [
            Constraint("u3", "equality", a, 4 * al),
            Constraint("x4u", "equality", 2 * (5 * al + 4) * A, 3 * a * (al + 1) ** 2),
            Constraint("x2y2u", "equality", 20 * al * B, 6 * a * (al - 1) ** 2) if al else Constraint("x2y2u", "equality", 5 * B, 6),
            Constraint("x2u2", "greater", 12 * (al + 1) ** 2 + 12 * A + 2 * B, 24 * al * (3 * al + 2)),
            Constraint("radial", "less", 9 * a ** 2, 32 * A, al == 0)
        ]

class CoeffSolutionL3(CoeffSolution):
    """
    Construction for 1/2 < alpha < 1:
    phi = P + y^2m u^2 + x^2k u^2 + M(x^2+y^2)u^2n + (1+x^2+y^2)v^2 with
    P = u^2n + (ax^2 + cy^2)u^(2n-1) + (Ax^4 + Bx^2y^2 + Cy^4)u^(2n-2).
    """

    family = "L3"

    def __init__(self, alpha, M, m, n, k, a, c, A, B, C):
        super(CoeffSolutionL3, self).__init__(alpha, M)

        self.m, self.n, self.k = m, n, k
        self.a, self.c, self.A, self.B, self.C = Fraction(a), Fraction(c), Fraction(A), Fraction(B), Fraction(C)

    def coefficients(self):
        return {"a": self.a, "c": self.c, "A": self.A, "B": self.B, "C": self.C, "M": self.M}

    def integers(self):
        return {"m": self.m, "n": self.n, "k": self.k}

    def power(self):
        return 2 * self.n

    def p(self):
        """
        Homogeneous part P.

        Returns:
            Poly4
        """

        x2, y2, n = X * X, Y * Y, self.n
        return (U ** (2 * n) + (self.a * x2 + self.c * y2) * U ** (2 * n - 1) +
                (self.A * x2 * x2 + self.B * x2 * y2 + self.C * y2 * y2) * U ** (2 * n - 2))

    def base(self):
        x2, y2 = X * X, Y * Y
        return self.p() + y2 ** self.m * U * U + x2 ** self.k * U * U + (1 + x2 + y2) * V * V

    def ky(self):
        """
        Coefficient of y^2 u^(2n-2) in zz(P).

        Returns:
            Fraction
        """

        al, n = self.alpha, self.n
        return 12 * self.C + 2 * self.B + 2 * n * (2 * n - 1) * (al - 1) ** 2 - 2 * (2 * n - 1) * self.c * (3 * al - 2)

    def ledger(self):
        al, n = self.alpha, self.n
        a, c, A, B = self.a, self.c, self.A, self.B

        return [
            Constraint("m", "less", ((2 * self.m + 1) * al - 2 * self.m) ** 2, self.m * (2 * self.m - 1) * (al - 1) ** 2),
            Constraint("n", "greater", 2 * n, self.m + 2),
            Constraint("k", "greater", self.k + 2, 2 * n),
            Constraint("1", "greater", B, 0),
            Constraint("2", "greater", 8 * (2 * n - 2) * n * A, (2 * n - 1) ** 2 * a ** 2),
            Constraint("3", "equality", a + c, 2 * n * al),
            Constraint("4", "equality", (2 * n - 1) * a * (al + 1) ** 2, 2 * (5 * al + 4) * A),
            Constraint("5", "equality", (2 * n - 1) * (a * (al - 1) ** 2 + c * (al + 1) ** 2), 10 * al * B),
            Constraint("6", "greater", 12 * A + 2 * B + 2 * n * (2 * n - 1) * (al + 1) ** 2, 2 * (2 * n - 1) * a * (3 * al + 2)),
            Constraint("ky", "greater", self.ky(), 0),
            Constraint("positive", "greater", min(a, c, A, self.C), 0),
            Constraint("M", "greater", self.M, 0)
        ]

class SlabSelection(object):
    """
    Minimal m with ((2m+1)alpha - 2m)^2 < m(2m-1)(alpha-1)^2, which makes y^2m u^2 + delta v^2 plurisubharmonic near
    the origin.
    """

    def __init__(self, alpha, m, delta=Fraction(1)):
        self.alpha = Fraction(alpha)
        self.m = m
        self.delta = Fraction(delta)

    def phi(self):
        """
        Slab function y^2m u^2 + delta v^2.

        Returns:
            Poly4
        """

        return (Y * Y) ** self.m * U * U + self.delta * V * V

    def triple(self):
        """
        Quadratic-in-u coefficients of zz(y^2m u^2) restricted to x = 0.

        Returns:
            (b2, b1, b0)
        """

        m, al = self.m, self.alpha
        return (2 * m * (2 * m - 1) * Y ** (2 * m - 2), -4 * ((2 * m + 1) * al - 2 * m) * Y ** (2 * m),
                2 * (al - 1) ** 2 * Y ** (2 * m + 2))

class Feasibility(object):
    """
    Coefficient solvers for the quadratic model constructions.
    """

    # Halving and doubling budget
    BUDGET = 40

    @staticmethod
    def quadPosOk(b2, b1, b0, variables=None, radius=Fraction(1, 4)):
        """
        Tests b2 u^2 + b1 u + b0 > 0 off u = 0 through b2 > 0 and b1^2 < 4 b2 b0 off the origin of the region.

        Args:
            b2: Poly4
            b1: Poly4
            b0: Poly4
            variables: region variables, defaults to all variables of the triple
            radius: region radius

        Returns:
            True if both certificates are strict
        """

        b2, b1, b0 = (Poly4.coerce(b) for b in (b2, b1, b0))
        if variables is None:
            variables = tuple(sorted(set(b2.variables() + b1.variables() + b0.variables()), key="xyuv".index))

        leading = Certificates.create("b2", b2, variables, radius)
        if not leading.strict():
            return False

        discriminant = Certificates.create("discriminant", 4 * b2 * b0 - b1 * b1, variables, radius)
        return discriminant.strict()

    @staticmethod
    def mixedPosOk(k, a, gamma, delta, l, b, gamma1, delta1):
        """
        Exponent test making u^2k + a|x|^gamma|y|^delta u^l + b|x|^gamma1|y|^delta1 positive near the origin.
        The test for a variable is vacuous when both of its exponents vanish.

        Args:
            k: half the leading u power
            a: middle coefficient
            gamma: x exponent of the middle term
            delta: y exponent of the middle term
            l: u exponent of the middle term
            b: last coefficient
            gamma1: x exponent of the last term
            delta1: y exponent of the last term

        Returns:
            True if gamma1 < 2k gamma/(2k-l) and delta1 < 2k delta/(2k-l)
        """

        # pylint: disable=W0613
        if Fraction(b) <= 0 or not 0 < l < 2 * k:
            raise ValueError("Requires b > 0 and 0 < l < 2k, got b=%s, l=%s, k=%s" % (b, l, k))

        bound = Fraction(2 * k, 2 * k - l)
        for exponent, limit in ((gamma1, gamma), (delta1, delta)):
            if exponent == 0 and limit == 0:
                continue
            if not Fraction(exponent) < bound * limit:
                return False

        return True

    @staticmethod
    def selectM(alpha):
        """
        Minimal m for the slab function y^2m u^2.

        Args:
            alpha: 1/2 < alpha < 1

        Returns:
            SlabSelection
        """

        alpha = Fraction(alpha)
        if not Fraction(1, 2) < alpha < 1:
            raise ValueError("Slab selection requires 1/2 < alpha < 1, got %s" % alpha)

        m = 1
        while not ((2 * m + 1) * alpha - 2 * m) ** 2 < m * (2 * m - 1) * (alpha - 1) ** 2:
            m += 1

        return SlabSelection(alpha, m)

    @staticmethod
    def monotonicity(limit=1000):
        """
        Checks the slab bounds increase: 16m^2 + 8m - 9 > 0 and 2 < sqrt((2m+1)(m+1)) + sqrt((2m-1)m), both exactly.

        Args:
            limit: largest m checked

        Returns:
            list of m values failing either check
        """

        failures = []
        for m in range(1, limit + 1):
            first, second = (2 * m + 1) * (m + 1), (2 * m - 1) * m

            # 2 > sqrt(first) - sqrt(second) squared: first - second - 4 < 4 sqrt(second)
            gap = first - second - 4
            increasing = gap < 0 or gap * gap < 16 * second

            # 2 < sqrt(first) + sqrt(second) squared: 4 - first - second < 2 sqrt(first*second)
            rest = 4 - first - second
            overlap = rest < 0 or rest * rest < 4 * first * second

            if not (16 * m * m + 8 * m - 9 > 0 and increasing and overlap):
                failures.append(m)

        return failures

    @staticmethod
    def interval(alpha):
        """
        Open interval of C values satisfying inequalities 5-8 of the degree-6 construction with c = 0.

        Args:
            alpha: 0 < alpha <= 13/25

        Returns:
            (lower, upper) with upper None when unbounded
        """

        lower, upper, reasons = Fraction(0), None, {}
        for name in ("5", "6", "7", "8"):
            # Each inequality is affine in C: g(C) = g0 + g1*C > 0
            g0 = Feasibility.slack(alpha, name, Fraction(0))
            g1 = Feasibility.slack(alpha, name, Fraction(1)) - g0

            if g1 > 0:
                bound = -g0 / g1
                if bound >= lower:
                    lower, reasons["lower"] = bound, name
            elif g1 < 0:
                bound = -g0 / g1
                if upper is None or bound < upper:
                    upper, reasons["upper"] = bound, name
            elif g0 <= 0:
                raise InfeasibleError(name, "inequality %s fails for every C at alpha=%s" % (name, alpha))

        if upper is not None and upper <= lower:
            raise InfeasibleError("%s,%s" % (reasons.get("lower", "C>0"), reasons["upper"]),
                                  "empty C-interval (%s, %s) at alpha=%s" % (lower, upper, alpha))

        return (lower, upper)

    @staticmethod
    def slack(alpha, name, C):
        """
        Left minus right side of inequality 5, 6, 7 or 8 at a given C, with inequality 8 divided by C.

        Returns:
            Fraction
        """

        a = alpha
        A, B, D, E = Feasibility.derived(alpha, C)

        if name == "5":
            return 15 * (a + 1) ** 2 + 6 * A + B - 30 * a * (3 * a + 2)
        if name == "6":
            return 2 * A * (a - 1) ** 2 + 2 * B * (a + 1) ** 2 + 5 * D + 2 * E - C * (7 * a + 2)
        if name == "7":
            return 8 * A - 75 * a * a

        # 32BD - 9C^2 = C(32 B D/C - 9C), D/C is independent of C
        return 32 * B * Fraction(3 * (a + 1) ** 2, 2 * (9 * a + 4)) - 9 * C

    @staticmethod
    def derived(alpha, C):
        """
        A, B, D, E from equalities 1-4 with c = 0.

        Args:
            alpha: alpha > 0
            C: coefficient C

        Returns:
            (A, B, D, E)
        """

        a = alpha
        A = (60 * a * (a + 1) ** 2 + C) / (4 * (5 * a + 4))
        B = (30 * a * (a - 1) ** 2 + 3 * C) / (10 * a)
        D = 3 * (a + 1) ** 2 * C / (2 * (9 * a + 4))
        E = (a - 1) ** 2 * C / (6 * a)

        return (A, B, D, E)

    @staticmethod
    def solveL1(alpha, M=1, radius=Certify.RADIUS, depth=Certify.DEPTH, spacing=None):
        """
        Solves the degree-6 construction. C is the midpoint of the feasible interval of inequalities 5-8 and eps is halved
        until the Levi and radial certificates are strict. When the c = 0 path exhausts its budget, small c > 0 is tried.

        Args:
            alpha: 0 <= alpha <= 13/25
            M: coefficient of (x^2+y^2)u^6
            radius: certificate radius
            depth: certificate annulus depth

        Returns:
            CoeffSolutionL1
        """

        alpha, M = Scalar.parse(alpha), Scalar.parse(M)
        if not 0 <= alpha <= Fraction(13, 25):
            raise ValueError("Degree-6 construction requires 0 <= alpha <= 13/25, got %s" % alpha)
        if M <= 0:
            raise ValueError("M must be positive, got %s" % M)

        notes = []

        # 5a^2 + 2a - 2 changes sign near 0.4633, not 0.290
        if Fraction(29, 100) <= alpha and Claims.INEQUALITY5(alpha) < 0:
            notes.append("inequality 5 checked explicitly at alpha=%s: 5a^2+2a-2 < 0 up to its zero near 0.4633" %
                         Scalar.text(alpha))

        solution = Feasibility.degree6(alpha, M)

        try:
            return Feasibility.perturb(solution, notes, radius, depth, spacing)
        except BudgetError:
            # Fallback: continuity in small c > 0
            for c in (Fraction(1, 100), Fraction(1, 1000)):
                solution = Feasibility.withc(alpha, M, solution.C, c)
                if solution.verify():
                    try:
                        return Feasibility.perturb(solution, notes, radius, depth, spacing)
                    except BudgetError:
                        continue

            raise

    @staticmethod
    def degree6(alpha, M=1):
        """
        Degree-6 coefficients with c = 0 before perturbation. C is the midpoint of the feasible interval, or 1 (twice
        the lower bound when positive) when the interval is unbounded.

        Args:
            alpha: 0 <= alpha <= 13/25
            M: coefficient of (x^2+y^2)u^6

        Returns:
            CoeffSolutionL1 with eps = 0
        """

        alpha = Fraction(alpha)
        if alpha == 0:
            # Limit of C = kappa*alpha with kappa = 1
            return CoeffSolutionL1(alpha, M, 0, 0, 0, Fraction(33, 10), 0, 0, Fraction(1, 6), 0)

        lower, upper = Feasibility.interval(alpha)
        if upper is None:
            C = Fraction(1) if lower == 0 else 2 * lower
        else:
            C = (lower + upper) / 2

        A, B, D, E = Feasibility.derived(alpha, C)
        return CoeffSolutionL1(alpha, M, 0, A, 0, B, C, D, E, 0)

    @staticmethod
    def withc(alpha, M, C, c):
        """
        Degree-6 coefficients for c > 0.

        Returns:
            CoeffSolutionL1 with eps = 0
        """

        a = alpha
        A = (120 * a * (a + 1) ** 2 + 20 * c * (a + 1) ** 2 + 2 * C) / (8 * (5 * a + 4))
        B = (120 * a * (a - 1) ** 2 - 80 * a * c + 12 * C) / (40 * a)
        D = 3 * (a + 1) ** 2 * C / (2 * (9 * a + 4))
        E = (a - 1) ** 2 * C / (6 * a)
        Aprime = 20 * c * (a - 1) ** 2 / (8 * (4 - 5 * a))

        return CoeffSolutionL1(alpha, M, c, A, Aprime, B, C, D, E, 0)

    @staticmethod
    def perturb(solution, notes, radius, depth, spacing=None):
        """
        Halves eps from min(A, B, D, E)/1000 until the certificates are strict.

        Args:
            solution: L1 or L11 solution with eps = 0
            notes: notes to attach
            radius: certificate radius
            depth: certificate annulus depth

        Returns:
            solution with eps set and certificates attached
        """

        positive = [x for x in (solution.A, solution.B, getattr(solution, "D", 0), getattr(solution, "E", 0)) if x > 0]
        solution.eps = min(positive) / 1000

        for _ in range(Feasibility.BUDGET):
            if solution.verify() and Feasibility.certify(solution, radius, depth, spacing):
                solution.notes = notes
                print("Solved alpha=%s family=%s eps=%s" % (Scalar.text(solution.alpha), solution.family, solution.eps))
                return solution

            solution.eps /= 2

        raise BudgetError("eps halving budget of %d exhausted at alpha=%s" % (Feasibility.BUDGET, solution.alpha))

    @staticmethod
    def certify(solution, radius, depth, spacing=None):
        """
        Runs the Levi and radial certificates for a solution and attaches them.

        Returns:
            True if all certificates are strict
        """

        phi = solution.phi()

        zz, det = Certify.psh(phi, solution.alpha, radius, depth, spacing)
        if not (zz.strict() and det.strict()):
            return False

        radial, rest = Certify.radial(phi, radius, depth)
        solution.certificates = {"zz": zz, "det16": det, "radial-u": radial, "radial-v": rest}

        return radial.strict() and rest.strict()

    @staticmethod
    def solveL11(alpha, M=1, radius=Certify.RADIUS, depth=Certify.DEPTH, spacing=None):
        """
        Solves the degree-4 construction: a = 4 alpha, A = 6 alpha (alpha+1)^2/(5 alpha+4), B = 6(alpha-1)^2/5 cancel the
        odd u terms of zz(P), eps is halved until certification passes.

        Args:
            alpha: 0 <= alpha <= 11/25
            M: coefficient of (x^2+y^2)u^4

        Returns:
            CoeffSolutionL11
        """

        alpha, M = Scalar.parse(alpha), Scalar.parse(M)
        if alpha < 0 or alpha >= 1:
            raise ValueError("Degree-4 construction requires 0 <= alpha < 1, got %s" % alpha)

        a = 4 * alpha
        A = 6 * alpha * (alpha + 1) ** 2 / (5 * alpha + 4)
        B = Fraction(6, 5) * (alpha - 1) ** 2

        for constraint in CoeffSolutionL11.constraints(alpha, a, A, B):
            if not constraint.holds():
                raise InfeasibleError(constraint.name, "degree-4 ansatz infeasible at alpha=%s" % Scalar.text(alpha))

        return Feasibility.perturb(CoeffSolutionL11(alpha, M, a, A, B, 0), [], radius, depth, spacing)

    @staticmethod
    def solveL3(alpha, M=1, radius=Certify.RADIUS, depth=Certify.DEPTH, spacing=None):
        """
        Solves the slab construction. a is halved from 1 until inequalities 2 and 6 hold, C is doubled from 1 until the
        y^2 u^(2n-2) coefficient is positive and certification passes.

        Args:
            alpha: 1/2 < alpha < 1
            M: coefficient of (x^2+y^2)u^2n

        Returns:
            CoeffSolutionL3
        """

        alpha, M = Scalar.parse(alpha), Scalar.parse(M)

        solution = Feasibility.slabSolution(alpha, M)
        for _ in range(Feasibility.BUDGET):
            if solution.verify() and Feasibility.certify(solution, radius, depth, spacing):
                print("Solved alpha=%s family=L3 m=%d n=%d k=%d a=%s C=%s" %
                      (Scalar.text(alpha), solution.m, solution.n, solution.k, solution.a, solution.C))
                return solution

            solution.C *= 2

        raise BudgetError("C doubling budget exhausted at alpha=%s" % alpha)

    @staticmethod
    def slabSolution(alpha, M=1):
        """
        Slab construction coefficients with C = 1 before certification. a is halved from 1 until inequalities 1, 2 and
        6 hold.

        Args:
            alpha: 1/2 < alpha < 1
            M: coefficient of (x^2+y^2)u^2n

        Returns:
            CoeffSolutionL3
        """

        alpha = Fraction(alpha)
        m = Feasibility.selectM(alpha).m

        n, k = Feasibility.slabIntegers(m)

        a = Fraction(1)
        for _ in range(Feasibility.BUDGET):
            A, B, c = Feasibility.slab(alpha, n, a)
            solution = CoeffSolutionL3(alpha, M, m, n, k, a, c, A, B, 1)

            if all(x.holds() for x in solution.ledger() if x.name in ("1", "2", "6")):
                return solution

            a /= 2

        raise BudgetError("a halving budget exhausted at alpha=%s" % alpha)

    @staticmethod
    def slabIntegers(m):
        """
        Smallest n with 2n > m + 2 and 8n >= 5m + 6, then smallest k with k + 2 > 2n and 2k >= 5n - 5.

        The extra bounds keep the leftover weight of the y^4 u^(2n-3) plan against y^2 u^(2n-2) and y^(2m-2) u^2,
        2(2n-2-m)/(m-2), and of the x^2k u plan against x^2 u^(2n-2) and x^(2k+2), 2(k-2n+2)/(2n-2), at least 1/2.

        Args:
            m: slab exponent

        Returns:
            (n, k)
        """

        n = max((m + 4) // 2, (5 * m + 13) // 8)
        k = max(2 * n - 1, (5 * n - 4) // 2)

        return (n, k)

    @staticmethod
    def slab(alpha, n, a):
        """
        A, B and c of the slab construction from equalities 3-5.

        Returns:
            (A, B, c)
        """

        c = 2 * n * alpha - a
        A = (2 * n - 1) * a * (alpha + 1) ** 2 / (2 * (5 * alpha + 4))
        B = (2 * n - 1) * (a * (alpha - 1) ** 2 + c * (alpha + 1) ** 2) / (10 * alpha)

        return (A, B, c)

    @staticmethod
    def buildPhi(alpha, M=1, radius=Certify.RADIUS, depth=Certify.DEPTH, spacing=None):
        """
        Dispatches to the degree-6 construction for alpha <= 1/2 and the slab construction above.

        Args:
            alpha: 0 <= alpha < 1

        Returns:
            (phi, solution)
        """

        alpha = Scalar.parse(alpha)
        if not 0 <= alpha < 1:
            raise ValueError("Hyperbolic quadratic models require 0 <= alpha < 1, got %s" % alpha)

        if alpha <= Fraction(1, 2):
            solution = Feasibility.solveL1(alpha, M, radius, depth, spacing)
        else:
            solution = Feasibility.solveL3(alpha, M, radius, depth, spacing)

        return (solution.phi(), solution)

    @staticmethod
    def zeroset(phi):
        """
        Checks phi and its first partials vanish on u = v = 0.

        Args:
            phi: Poly4

        Returns:
            True if all vanish identically
        """

        parts = [phi] + [phi.diff(name) for name in ("x", "y", "u", "v")]
        return all(not part.restrict(u=0, v=0) for part in parts)

    @staticmethod
    def flatCheck(solution, tau, samples=64, seed=0, radius=None, budget=BUDGET):
        """
        Flat case check. Doubles M until the exact Levi matrix of phi, composed with the perturbed coordinates
        u = Re w - q(x, y) - tau(x, y), is positive definite at seeded rational sample points of the punctured box.

        Args:
            solution: CoeffSolution
            tau: FlatPerturbation
            samples: number of sample points
            seed: sampling seed
            radius: box radius, defaults to the smallest certified radius of the solution
            budget: doubling budget

        Returns:
            report dict
        """

        if radius is None:
            radius = solution.radius() or Certify.RADIUS

        radius = Fraction(radius)
        points = Feasibility.samples(samples, seed, radius)

        M = solution.M
        for _ in range(budget):
            zz, ww, zw = Levi.exact(solution.phi(M), solution.alpha, tau)

            failures = 0
            minimum = None
            for point in points:
                lifted = Feasibility.lift(point, solution.alpha, tau)

                a, d = zz.evaluate(lifted), ww.evaluate(lifted)
                re, im = zw.evaluate(lifted)
                det = a * d - re * re - im * im
                value = min(a, det)

                minimum = value if minimum is None else min(minimum, value)
                if value <= 0:
                    failures += 1

            if not failures:
                print("Flat check passed alpha=%s M=%s" % (Scalar.text(solution.alpha), Scalar.text(M)))
                return {"alpha": Scalar.text(solution.alpha), "tau": tau.tau.serialize() if tau else "0", "M": Scalar.text(M),
                        "radius": Scalar.text(radius), "samples": len(points), "seed": seed, "passed": True,
                        "minimum": Scalar.text(minimum)}

            M *= 2

        return {"alpha": Scalar.text(solution.alpha), "tau": tau.tau.serialize() if tau else "0", "M": Scalar.text(M),
                "radius": Scalar.text(radius), "samples": len(points), "seed": seed, "passed": False,
                "minimum": Scalar.text(minimum)}

    @staticmethod
    def samples(count, seed, radius):
        """
        Seeded dyadic rational points of the punctured weighted box |x|, |y| <= r, |u|, |v| <= r^2.

        Returns:
            list of 4-tuples of Fractions
        """

        generator = np.random.default_rng(seed)

        # Numerators over 2^16
        grid = generator.integers(-2 ** 16, 2 ** 16 + 1, size=(count, 4))

        points = []
        for row in grid:
            point = tuple(Fraction(int(k), 2 ** 16) * (radius if i < 2 else radius ** 2) for i, k in enumerate(row))
            if any(point):
                points.append(point)

        return points

    @staticmethod
    def lift(point, alpha, tau):
        """
        Exact holomorphic coordinates (x, y, s, t) of a model point.

        Returns:
            4-tuple of Fractions
        """

        x, y, u, v = point
        s = u + Levi.quadratic(alpha).evaluate((x, y, 0, 0))
        if tau:
            s += tau.tau.evaluate((x, y, 0, 0))

        return (x, y, s, v)
