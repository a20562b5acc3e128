"""
Roots module
"""

from fractions import Fraction

from sympy import QQ, Poly, Rational, Symbol, sturm

from ..poly import Scalar

class RootClaim(object):
    """
    Isolating interval holding exactly one real root.
    """

    def __init__(self, poly, lo, hi, signs, count):
        self.poly = poly
        self.lo = lo
        self.hi = hi
        self.signs = signs
        self.count = count

    def todict(self):
        """
        Serializable form.

        Returns:
            dict
        """

        return {"poly": Sturm.text(self.poly), "interval": [Scalar.text(self.lo), Scalar.text(self.hi)],
                "signs": list(self.signs), "count": self.count}

class RootCountError(ValueError):
    """
    Raised when an interval does not isolate exactly one root.
    """

    def __init__(self, poly, lo, hi, count):
        super(RootCountError, self).__init__("Expected exactly one root of %s in (%s, %s), found %d" %
                                             (Sturm.text(poly), lo, hi, count))
        self.count = count

class Sturm(object):
    """
    Exact root counting and isolation for univariate polynomials over QQ.
    """

    # Polynomial variable
    A = Symbol("a")

    @staticmethod
    def create(*coefs):
        """
        Builds a polynomial in a over QQ.

        Args:
            coefs: coefficients, highest degree first

        Returns:
            sympy Poly
        """

        return Poly.from_list([Sturm.rational(c) for c in coefs], Sturm.A, domain=QQ)

    @staticmethod
    def rational(value):
        """
        Converts an int, Fraction or "p/q" string to a sympy Rational.
        """

        value = Scalar.parse(value)
        return Rational(value.numerator, value.denominator)

    @staticmethod
    def value(poly, x):
        """
        Exact value of poly at x.

        Args:
            poly: sympy Poly
            x: rational point

        Returns:
            Fraction
        """

        value = Rational(poly.eval(Sturm.rational(x)))
        return Fraction(int(value.p), int(value.q))

    @staticmethod
    def text(poly):
        """
        Coefficients highest degree first as "p/q" strings.

        Returns:
            list of strings
        """

        return [Scalar.text(Fraction(int(c.p), int(c.q))) for c in (Rational(c) for c in poly.all_coeffs())]

    @staticmethod
    def sequence(poly):
        """
        Sturm chain p, p', -rem(p, p'), ...

        Args:
            poly: sympy Poly

        Returns:
            list of sympy Poly
        """

        return sturm(poly)

    @staticmethod
    def count(poly, lo, hi):
        """
        Number of distinct real roots in [lo, hi].

        Args:
            poly: sympy Poly
            lo: lower endpoint
            hi: upper endpoint

        Returns:
            int
        """

        return int(poly.count_roots(Sturm.rational(lo), Sturm.rational(hi)))

    @staticmethod
    def inside(poly, lo, hi):
        """
        Number of distinct real roots in the open interval (lo, hi).

        Returns:
            int
        """

        ends = sum(1 for x in (lo, hi) if not Sturm.value(poly, x))
        return Sturm.count(poly, lo, hi) - ends

    @staticmethod
    def isolate(poly, lo, hi):
        """
        Certifies that (lo, hi) isolates exactly one root of poly.

        Args:
            poly: sympy Poly
            lo: rational lower endpoint
            hi: rational upper endpoint

        Returns:
            RootClaim
        """

        lo, hi = Scalar.parse(lo), Scalar.parse(hi)
        if lo >= hi:
            raise ValueError("Empty interval (%s, %s)" % (lo, hi))

        signs = (Sturm.sign(Sturm.value(poly, lo)), Sturm.sign(Sturm.value(poly, hi)))
        count = Sturm.inside(poly, lo, hi)

        if count != 1 or signs[0] == signs[1] or 0 in signs:
            raise RootCountError(poly, lo, hi, count)

        return RootClaim(poly, lo, hi, signs, count)

    @staticmethod
    def refine(claim, iterations=128):
        """
        Shrinks an isolating interval below width 2^-iterations.

        Args:
            claim: RootClaim
            iterations: log2 of the target width

        Returns:
            (lo, hi) rational bracket
        """

        bracket = claim.poly.refine_root(Sturm.rational(claim.lo), Sturm.rational(claim.hi),
                                         eps=Rational(1, 2 ** iterations), check_sqf=True)

        lo, hi = sorted(Fraction(int(Rational(x).p), int(Rational(x).q)) for x in bracket)
        return (lo, hi)

    @staticmethod
    def sign(value):
        """
        Sign of a rational.

        Returns:
            -1, 0 or 1
        """

        return (value > 0) - (value < 0)

class Claims(object):
    """
    Root and sign claims behind the degree-6 construction's feasibility regimes.
    """

    # q6 = 495a^3 + 518a^2 - 64a - 112
    Q6 = Sturm.create(495, 518, -64, -112)

    # q8 = 37a^2 + 4a - 8
    Q8 = Sturm.create(37, 4, -8)

    # q = 225a^3 + 62a^2 - 64a - 16
    Q = Sturm.create(225, 62, -64, -16)

    # 5a^2 + 2a - 2
    INEQUALITY5 = Sturm.create(5, 2, -2)

    @staticmethod
    def claims():
        """
        Isolates the three stated roots.

        Returns:
            dict of name -> RootClaim
        """

        return {
            "q6": Sturm.isolate(Claims.Q6, "43/100", "44/100"),
            "q8": Sturm.isolate(Claims.Q8, "41/100", "42/100"),
            "q": Sturm.isolate(Claims.Q, "52/100", "10")
        }

    @staticmethod
    def combined():
        """
        Polynomial 30a(3a+2)(5a^2+2a-2)(37a^2+4a-8) - 80a(a-1)^2(a+1)^2(5a+2) whose negativity closes the C-interval
        above the q6 root.

        Returns:
            sympy Poly
        """

        a = Sturm.create(1, 0)

        left = 30 * a * (3 * a + 2) * Claims.INEQUALITY5 * Claims.Q8
        right = 80 * a * (a - 1) ** 2 * (a + 1) ** 2 * (5 * a + 2)

        return left - right

    @staticmethod
    def reduced():
        """
        Reduction 5(a-4)q of the combined condition.

        Returns:
            sympy Poly
        """

        return Sturm.create(5, -20) * Claims.Q

    @staticmethod
    def feasibility(samples=1000):
        """
        Checks the combined condition is negative on (0.44, 0.52) and the reduced one positive on (0, 0.52), on a
        rational sample and by Sturm root counts.

        Args:
            samples: sample count per interval

        Returns:
            (passed, list of counterexample descriptions)
        """

        failures = []

        checks = [(Claims.combined(), Fraction(44, 100), Fraction(52, 100), -1, "combined"),
                  (Claims.reduced(), Fraction(0), Fraction(52, 100), 1, "reduced")]

        for poly, lo, hi, sign, name in checks:
            for k in range(1, samples + 1):
                a = lo + (hi - lo) * Fraction(k, samples + 1)
                if Sturm.sign(Sturm.value(poly, a)) != sign:
                    failures.append("%s: wrong sign at alpha=%s" % (name, Scalar.text(a)))
                    break

            # No root strictly inside
            count = Sturm.inside(poly, lo, hi)
            if count:
                failures.append("%s: %d roots in (%s, %s)" % (name, count, Scalar.text(lo), Scalar.text(hi)))

        return (not failures, failures)

    @staticmethod
    def notes():
        """
        Discrepancies found while checking the stated regime boundaries.

        Returns:
            list of strings
        """

        notes = []

        # The positive zero of 5a^2 + 2a - 2 lies in (0.46, 0.47), above the q6 root
        claim = Sturm.isolate(Claims.INEQUALITY5, "46/100", "47/100")
        q6 = Claims.claims()["q6"]
        if claim.lo > q6.hi:
            notes.append("positive zero of 5a^2+2a-2 lies in (%s, %s), above the q6 root in (%s, %s)" %
                         (Scalar.text(claim.lo), Scalar.text(claim.hi), Scalar.text(q6.lo), Scalar.text(q6.hi)))

        return notes
