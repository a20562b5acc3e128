"""
Poly module
"""

import re

from fractions import Fraction

import numpy as np

# Variable names and weighted grading: x, y have weight 1 and u, v have weight 2
VARIABLES = ("x", "y", "u", "v")
WEIGHTS = (1, 1, 2, 2)

class Scalar(object):
    """
    Exact rational helpers shared across the package.
    """

    # p/q, optional sign, integers only
    PATTERN = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")

    @staticmethod
    def parse(text):
        """
        Parses a rational string "p/q" or "p". Decimal strings are rejected.

        Args:
            text: input string

        Returns:
            Fraction
        """

        if isinstance(text, (int, Fraction)):
            return Fraction(text)

        match = Scalar.PATTERN.match(str(text))
        if not match:
            raise ValueError("Expected a rational of the form p/q, got '%s'" % text)

        num, den = int(match.group(1)), int(match.group(2)) if match.group(2) else 1
        if den == 0:
            raise ValueError("Zero denominator in '%s'" % text)

        return Fraction(num, den)

    @staticmethod
    def text(value):
        """
        Formats a rational as "p/q".

        Args:
            value: Fraction or int

        Returns:
            string
        """

        value = Fraction(value)
        return "%d/%d" % (value.numerator, value.denominator)

    @staticmethod
    def index(var):
        """
        Resolves a variable name or index to its position in (x, y, u, v).

        Args:
            var: variable name or index

        Returns:
            int
        """

        if isinstance(var, int) and 0 <= var < 4:
            return var
        if var in VARIABLES:
            return VARIABLES.index(var)

        raise ValueError("Unknown variable %s" % var)

class Poly4(object):
    """
    Sparse exact polynomial in the nonholomorphic coordinates (x, y, u, v). Instances are treated as immutable.
    """

    # coef*x^i*y^j*u^k*v^l
    TERM = re.compile(r"^([+-]?\d+(?:/\d+)?)\*x\^(\d+)\*y\^(\d+)\*u\^(\d+)\*v\^(\d+)$")

    def __init__(self, terms=None):
        """
        Builds a polynomial from an exponent -> coefficient mapping. Zero coefficients are dropped.

        Args:
            terms: dict of (i, j, k, l) -> coefficient
        """

        self.terms = {}
        if terms:
            for exponents, coef in terms.items():
                coef = Fraction(coef)
                if coef:
                    self.terms[tuple(exponents)] = coef

    @staticmethod
    def constant(value):
        """
        Constant polynomial.

        Args:
            value: rational value

        Returns:
            Poly4
        """

        return Poly4({(0, 0, 0, 0): value})

    @staticmethod
    def variable(name):
        """
        Coordinate polynomial for one of x, y, u, v.

        Args:
            name: variable name

        Returns:
            Poly4
        """

        exponents = [0, 0, 0, 0]
        exponents[Scalar.index(name)] = 1
        return Poly4({tuple(exponents): 1})

    @staticmethod
    def monomial(coef, i=0, j=0, k=0, l=0):
        """
        Single term coef*x^i*y^j*u^k*v^l.

        Returns:
            Poly4
        """

        return Poly4({(i, j, k, l): coef})

    @staticmethod
    def coerce(value):
        """
        Converts scalars to constant polynomials.

        Args:
            value: Poly4, int or Fraction

        Returns:
            Poly4
        """

        if isinstance(value, Poly4):
            return value
        if isinstance(value, (int, Fraction)):
            return Poly4.constant(value)

        return NotImplemented

    def __add__(self, other):
        other = Poly4.coerce(other)
        if other is NotImplemented:
            return other

        terms = dict(self.terms)
        for exponents, coef in other.terms.items():
            terms[exponents] = terms.get(exponents, 0) + coef

        return Poly4(terms)

    __radd__ = __add__

    def __neg__(self):
        return Poly4({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = Poly4.coerce(other)
        if other is NotImplemented:
            return other

        return self + (-other)

    def __rsub__(self, other):
        return Poly4.coerce(other) - self

    def __mul__(self, other):
        other = Poly4.coerce(other)
        if other is NotImplemented:
            return other

        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                exponents = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2], e1[3] + e2[3])
                terms[exponents] = terms.get(exponents, 0) + c1 * c2

        return Poly4(terms)

    __rmul__ = __mul__

    def __pow__(self, power):
        if not isinstance(power, int) or power < 0:
            raise ValueError("Only nonnegative integer powers supported")

        result, base = Poly4.constant(1), self
        while power:
            if power & 1:
                result = result * base
            base = base * base
            power >>= 1

        return result

    def __eq__(self, other):
        other = Poly4.coerce(other)
        if other is NotImplemented:
            return False

        return self.terms == other.terms

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __repr__(self):
        return "Poly4(%s)" % self.serialize()

    def coefficient(self, i=0, j=0, k=0, l=0):
        """
        Coefficient of x^i*y^j*u^k*v^l.

        Returns:
            Fraction
        """

        return self.terms.get((i, j, k, l), Fraction(0))

    def diff(self, var):
        """
        Formal partial derivative.

        Args:
            var: variable name or index

        Returns:
            Poly4
        """

        index = Scalar.index(var)

        terms = {}
        for exponents, coef in self.terms.items():
            if exponents[index]:
                reduced = list(exponents)
                reduced[index] -= 1
                terms[tuple(reduced)] = coef * exponents[index]

        return Poly4(terms)

    def evaluate(self, point):
        """
        Exact value at a rational point.

        Args:
            point: 4 rational coordinates (x, y, u, v)

        Returns:
            Fraction
        """

        point = [Fraction(p) for p in point]

        total = Fraction(0)
        for (i, j, k, l), coef in self.terms.items():
            total += coef * point[0] ** i * point[1] ** j * point[2] ** k * point[3] ** l

        return total

    def evalf(self, points):
        """
        Vectorized floating point evaluation.

        Args:
            points: array with trailing dimension 4, real or complex

        Returns:
            array of values with the leading shape of points
        """

        points = np.asarray(points)
        points = points.astype(complex if np.iscomplexobj(points) else float)
        if not self.terms:
            return np.zeros(points.shape[:-1], dtype=points.dtype)

        exponents, coefs = self.arrays()

        # Monomial values, shape (..., terms)
        monomials = np.prod(points[..., None, :] ** exponents, axis=-1)
        return monomials @ coefs

    def arrays(self):
        """
        Exponent matrix and float coefficient vector of this polynomial.

        Returns:
            (exponents, coefficients)
        """

        keys = sorted(self.terms)
        exponents = np.array(keys, dtype=int).reshape(-1, 4)
        coefs = np.array([float(self.terms[k]) for k in keys])

        return exponents, coefs

    @staticmethod
    def weight(exponents):
        """
        Weighted degree of an exponent vector.

        Args:
            exponents: (i, j, k, l)

        Returns:
            i + j + 2k + 2l
        """

        return sum(w * e for w, e in zip(WEIGHTS, exponents))

    def degree(self):
        """
        Maximal weighted degree, -1 for the zero polynomial.
        """

        return max((Poly4.weight(e) for e in self.terms), default=-1)

    def weightedParts(self):
        """
        Splits this polynomial into quasi-homogeneous slices.

        Returns:
            list of (weighted degree, Poly4) sorted by degree
        """

        slices = {}
        for exponents, coef in self.terms.items():
            slices.setdefault(Poly4.weight(exponents), {})[exponents] = coef

        return [(degree, Poly4(slices[degree])) for degree in sorted(slices)]

    def variables(self):
        """
        Names of the variables this polynomial depends on.

        Returns:
            tuple of names in (x, y, u, v) order
        """

        return tuple(name for index, name in enumerate(VARIABLES) if any(e[index] for e in self.terms))

    def restrict(self, **values):
        """
        Substitutes rational values for some variables.

        Args:
            values: variable name -> rational value

        Returns:
            Poly4
        """

        values = {Scalar.index(name): Fraction(value) for name, value in values.items()}

        terms = {}
        for exponents, coef in self.terms.items():
            reduced = list(exponents)
            for index, value in values.items():
                coef *= value ** exponents[index]
                reduced[index] = 0

            reduced = tuple(reduced)
            terms[reduced] = terms.get(reduced, 0) + coef

        return Poly4(terms)

    def substitute(self, var, poly):
        """
        Replaces a variable with a polynomial.

        Args:
            var: variable name
            poly: replacement Poly4

        Returns:
            Poly4
        """

        index = Scalar.index(var)

        # Cache powers of the replacement
        powers = [Poly4.constant(1)]

        result = Poly4()
        for exponents, coef in self.terms.items():
            while len(powers) <= exponents[index]:
                powers.append(powers[-1] * poly)

            reduced = list(exponents)
            reduced[index] = 0
            result = result + Poly4({tuple(reduced): coef}) * powers[exponents[index]]

        return result

    def divide(self, var, power=1):
        """
        Exact division by var^power.

        Args:
            var: variable name
            power: exponent

        Returns:
            Poly4
        """

        index = Scalar.index(var)

        terms = {}
        for exponents, coef in self.terms.items():
            if exponents[index] < power:
                raise ValueError("%s is not divisible by %s^%d" % (self.serialize(), VARIABLES[index], power))

            reduced = list(exponents)
            reduced[index] -= power
            terms[tuple(reduced)] = coef

        return Poly4(terms)

    def even(self, variables=VARIABLES):
        """
        Tests if every monomial has even degree in the given variables.

        Args:
            variables: variable names

        Returns:
            True if even
        """

        indices = [Scalar.index(v) for v in variables]
        return all(e[i] % 2 == 0 for e in self.terms for i in indices)

    def order(self):
        """
        Deterministic graded-lex term order: increasing weighted degree, then decreasing exponents.

        Returns:
            sorted list of exponent tuples
        """

        return sorted(self.terms, key=lambda e: (Poly4.weight(e), tuple(-x for x in e)))

    def serialize(self):
        """
        Byte-stable text form, terms joined by " + " as coef*x^i*y^j*u^k*v^l.

        Returns:
            string
        """

        if not self.terms:
            return "0"

        return " + ".join("%s*x^%d*y^%d*u^%d*v^%d" % ((Scalar.text(self.terms[e]),) + e) for e in self.order())

    @staticmethod
    def parse(text):
        """
        Parses the serialize() text form.

        Args:
            text: serialized polynomial

        Returns:
            Poly4
        """

        text = text.strip()
        if text == "0":
            return Poly4()

        terms = {}
        for token in text.split(" + "):
            match = Poly4.TERM.match(token.strip())
            if not match:
                raise ValueError("Unable to parse term '%s'" % token)

            exponents = tuple(int(match.group(x)) for x in range(2, 6))
            terms[exponents] = terms.get(exponents, 0) + Scalar.parse(match.group(1))

        return Poly4(terms)

class ComplexPoly(object):
    """
    Complex polynomial re + i*im with real and imaginary Poly4 parts.
    """

    def __init__(self, re, im=None):
        self.re = re
        self.im = im if im is not None else Poly4()

    def __add__(self, other):
        return ComplexPoly(self.re + other.re, self.im + other.im)

    def __sub__(self, other):
        return ComplexPoly(self.re - other.re, self.im - other.im)

    def __eq__(self, other):
        return isinstance(other, ComplexPoly) and self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __repr__(self):
        return "ComplexPoly(%s, %s)" % (self.re.serialize(), self.im.serialize())

    def conjugate(self):
        """
        Complex conjugate.

        Returns:
            ComplexPoly
        """

        return ComplexPoly(self.re, -self.im)

    def normsq(self):
        """
        |p|^2 = re^2 + im^2 as a real polynomial.

        Returns:
            Poly4
        """

        return self.re * self.re + self.im * self.im

    def evaluate(self, point):
        """
        Exact value at a rational point.

        Returns:
            (real part, imaginary part)
        """

        return (self.re.evaluate(point), self.im.evaluate(point))

    def evalf(self, points):
        """
        Vectorized floating point evaluation.

        Returns:
            complex array
        """

        return self.re.evalf(points) + 1j * self.im.evalf(points)
