"""
Planes module
"""

from fractions import Fraction

import mpmath
import numpy as np

from tqdm import tqdm

from .feasibility import BudgetError, Feasibility
from .poly import Scalar

class PlaneUnion(object):
    """
    Union M(B) of R^2 and the real span A(B) of the columns of B + iI, for a real 2x2 matrix B with B - iI invertible.
    Normal forms are kept exactly through mu^2: diag(mu, -mu) for hyperbolic unions and [[0, nu], [-nu, 0]] for
    elliptic unions.
    """

    # Kinds
    HYPERBOLIC = "hyperbolic"
    ELLIPTIC = "elliptic"
    UNSUPPORTED = "unsupported"

    def __init__(self, kind, square, B=None, label=None):
        """
        Creates a plane union.

        Args:
            kind: hyperbolic, elliptic or unsupported
            square: exact mu^2 (hyperbolic) or nu^2 (elliptic)
            B: optional original 2x2 rational matrix, row major
            label: classification label
        """

        self.kind = kind
        self.square = Fraction(square)
        self.B = B
        self.label = label

    def mu(self):
        """
        Normal form parameter at the current mpmath precision.

        Returns:
            mpf
        """

        return mpmath.sqrt(mpmath.mpf(self.square.numerator) / self.square.denominator)

    def theta(self):
        """
        Returns:
            arcsin(sqrt(1/(1+mu^2))) for hyperbolic unions, arcsin(1/nu) for elliptic unions
        """

        if self.kind == PlaneUnion.HYPERBOLIC:
            return mpmath.asin(mpmath.sqrt(1 / (1 + self.mu() ** 2)))

        return mpmath.asin(1 / self.mu())

    def alpha(self):
        """
        Returns:
            cos(theta) for hyperbolic unions, 1/cos(theta) for elliptic unions
        """

        if self.kind == PlaneUnion.HYPERBOLIC:
            return mpmath.cos(self.theta())

        return 1 / mpmath.cos(self.theta())

    def mapped(self):
        """
        Returns:
            True if an explicit map onto a quadratic model exists
        """

        return self.kind == PlaneUnion.HYPERBOLIC or (self.kind == PlaneUnion.ELLIPTIC and self.square > 1)

    def conjugator(self):
        """
        Real matrix Q with Q^-1 B Q in normal form, identity without B.

        Returns:
            2x2 nested list of mpf
        """

        if self.B is None:
            return [[mpmath.mpf(1), mpmath.mpf(0)], [mpmath.mpf(0), mpmath.mpf(1)]]

        a, b, c, _ = (mpmath.mpf(x.numerator) / x.denominator for x in self.B)
        mu = self.mu()

        if self.kind == PlaneUnion.ELLIPTIC:
            # Columns p, q with B p = -nu q and B q = nu p
            return [[b, mpmath.mpf(0)], [-a, mu]]

        if mu == 0:
            return [[mpmath.mpf(1), mpmath.mpf(0)], [mpmath.mpf(0), mpmath.mpf(1)]]

        # Eigenvectors for mu and -mu
        if b != 0:
            first, second = (b, mu - a), (b, -mu - a)
        elif c != 0:
            first, second = (mu + a, c), (-mu + a, c)
        elif a > 0:
            first, second = (1, 0), (0, 1)
        else:
            first, second = (0, 1), (1, 0)

        return [[mpmath.mpf(first[0]), mpmath.mpf(second[0])], [mpmath.mpf(first[1]), mpmath.mpf(second[1])]]

    def todict(self, precision=50):
        """
        Serializable classification.

        Args:
            precision: digits for derived reals

        Returns:
            dict
        """

        data = {"kind": self.kind, "label": self.label, "square": Scalar.text(self.square),
                "B": [Scalar.text(x) for x in self.B] if self.B else None}

        if self.mapped():
            with mpmath.workdps(precision):
                data.update({"mu": mpmath.nstr(self.mu(), precision), "theta": mpmath.nstr(self.theta(), precision),
                             "alpha": mpmath.nstr(self.alpha(), precision)})

        return data

class Planes(object):
    """
    Normal forms of unions of two totally real planes and their maps onto quadratic models.
    """

    # Labels
    WEINSTOCK = "non-polynomially-convex (Weinstock)"
    CONVEX = "polynomially convex, outside class"

    @staticmethod
    def normalize(B):
        """
        Classifies M(B) up to real conjugation of B.

        Args:
            B: 4 rationals (row major) or "p/q" strings

        Returns:
            PlaneUnion
        """

        B = [Scalar.parse(x) for x in B]
        if len(B) != 4:
            raise ValueError("B must have 4 entries, got %d" % len(B))

        a, b, c, d = B

        # det(B^2 + I) = det(B - iI) det(B + iI) = |det(B - iI)|^2
        trace, det = a + d, a * d - b * c
        if (det - 1) ** 2 + trace ** 2 == 0:
            raise ValueError("B - iI is singular for B = %s" % [Scalar.text(x) for x in B])

        if trace != 0:
            return PlaneUnion(PlaneUnion.UNSUPPORTED, 0, B, "out of scope: trace B != 0")

        # Trace zero: B^2 = (a^2 + bc) I
        square = a * a + b * c
        if square > 0:
            return PlaneUnion(PlaneUnion.HYPERBOLIC, square, B, PlaneUnion.HYPERBOLIC)

        if square == 0:
            if any(B):
                raise ValueError("Trace zero B = %s is nilpotent, not diagonalizable over R" %
                                 [Scalar.text(x) for x in B])

            return PlaneUnion(PlaneUnion.HYPERBOLIC, 0, B, PlaneUnion.HYPERBOLIC)

        return Planes.elliptic(-square, B)

    @staticmethod
    def hyperbolic(mu):
        """
        Hyperbolic normal form diag(mu, -mu).

        Args:
            mu: rational mu >= 0

        Returns:
            PlaneUnion
        """

        mu = Scalar.parse(mu)
        if mu < 0:
            raise ValueError("mu must be nonnegative, got %s" % mu)

        return PlaneUnion(PlaneUnion.HYPERBOLIC, mu * mu, None, PlaneUnion.HYPERBOLIC)

    @staticmethod
    def elliptic(square, B=None):
        """
        Elliptic normal form [[0, nu], [-nu, 0]] from nu^2.

        Args:
            square: nu^2
            B: optional original matrix

        Returns:
            PlaneUnion
        """

        square = Fraction(square)
        if square == 1:
            raise ValueError("B - iI is singular for nu = 1")
        if square <= 0:
            raise ValueError("nu must be positive, got nu^2 = %s" % square)

        return PlaneUnion(PlaneUnion.ELLIPTIC, square, B, Planes.WEINSTOCK if square > 1 else Planes.CONVEX)

    @staticmethod
    def constants(union):
        """
        Map constants at the current precision.

        Args:
            union: PlaneUnion

        Returns:
            (e^{i theta/2}, second component factor)
        """

        theta = union.theta()
        half = mpmath.expj(theta / 2)

        if union.kind == PlaneUnion.HYPERBOLIC:
            return (half, -mpmath.sin(theta) ** 2)

        return (half, mpmath.tan(theta) * mpmath.sin(theta) / 2)

    @staticmethod
    def psi(union, z, w):
        """
        Map onto the quadratic model: (i e^{-i theta/2} z + i e^{i theta/2} w, -sin^2(theta) zw) for hyperbolic unions and
        (i e^{-i theta/2} z + i e^{i theta/2} w, tan(theta) sin(theta) (z^2 + w^2)/2) for elliptic unions.

        Args:
            union: PlaneUnion with a map
            z: first coordinate
            w: second coordinate

        Returns:
            (Z, W)
        """

        if not union.mapped():
            raise ValueError("No quadratic model map for %s" % union.label)

        half, factor = Planes.constants(union)

        Z = 1j * (mpmath.conj(half) * z + half * w)
        W = factor * z * w if union.kind == PlaneUnion.HYPERBOLIC else factor * (z * z + w * w)

        return (Z, W)

    @staticmethod
    def points(union, count, seed):
        """
        Seeded points of M(B), alternating between R^2 and A(B), mapped to normal form coordinates.

        Args:
            union: PlaneUnion
            count: number of points
            seed: sampling seed

        Returns:
            list of (z, w) mpc pairs
        """

        generator = np.random.default_rng(seed)
        coordinates = generator.uniform(-1, 1, size=(count, 2))

        B = [mpmath.mpf(x.numerator) / x.denominator for x in union.B] if union.B else None
        if B is None:
            mu = union.mu()
            B = [mu, 0, 0, -mu] if union.kind == PlaneUnion.HYPERBOLIC else [0, mu, -mu, 0]

        Q = union.conjugator()
        det = Q[0][0] * Q[1][1] - Q[0][1] * Q[1][0]

        points = []
        for k, (s, t) in enumerate(coordinates):
            s, t = mpmath.mpf(s), mpmath.mpf(t)
            if k % 2 == 0:
                z, w = mpmath.mpc(s), mpmath.mpc(t)
            else:
                # (B + iI)(s, t)
                z = B[0] * s + B[1] * t + 1j * s
                w = B[2] * s + B[3] * t + 1j * t

            # Q^-1 (z, w)
            points.append(((Q[1][1] * z - Q[0][1] * w) / det, (-Q[1][0] * z + Q[0][0] * w) / det))

        return points

    @staticmethod
    def verify(union, samples=1000, precision=50, seed=0):
        """
        Maximum residual |W - alpha |Z|^2/2 - Z^2/4 - conj(Z)^2/4| of sampled points of M(B) mapped through psi.

        Args:
            union: PlaneUnion with a map
            samples: sample count
            precision: digits, at least 30
            seed: sampling seed

        Returns:
            max residual as mpf
        """

        if samples < 1:
            raise ValueError("Sample count must be positive, got %d" % samples)
        if precision < 30:
            raise ValueError("Precision underflow: %d digits requested, at least 30 required" % precision)

        with mpmath.workdps(precision):
            alpha = union.alpha()

            residual = mpmath.mpf(0)
            for z, w in Planes.points(union, samples, seed):
                Z, W = Planes.psi(union, z, w)
                model = alpha * Z * mpmath.conj(Z) / 2 + Z * Z / 4 + mpmath.conj(Z) ** 2 / 4
                residual = max(residual, abs(W - model))

            return +residual

    @staticmethod
    def approximation(union, denominator=1000):
        """
        Rational approximation of alpha used to build the defining function.

        Returns:
            Fraction in [0, 1)
        """

        with mpmath.workdps(30):
            alpha = Fraction(mpmath.nstr(union.alpha(), 25)).limit_denominator(denominator)

        return min(alpha, 1 - Fraction(1, denominator))

    @staticmethod
    def field(union, solution, N):
        """
        Pulled back defining function (phi + N(x^2+y^2)u^2n) o psi over normal form coordinates, with model
        coordinates taken for the exact alpha = cos(theta).

        Args:
            union: hyperbolic PlaneUnion
            solution: CoeffSolution
            N: correction coefficient

        Returns:
            (phi, callable of an (..., 2) complex array)
        """

        if union.kind != PlaneUnion.HYPERBOLIC:
            raise ValueError("Pullback requires a hyperbolic plane union, got %s" % union.label)

        phi = solution.phi() + Fraction(N) * solution.correction()
        constants = Planes.floats(union)

        def function(points):
            return phi.evalf(Planes.model(constants, points))

        return (phi, function)

    @staticmethod
    def floats(union):
        """
        Double precision map constants.

        Returns:
            (alpha, e^{i theta/2}, -sin^2(theta))
        """

        with mpmath.workdps(30):
            half, factor = Planes.constants(union)
            return (float(union.alpha()), complex(half), float(factor))

    @staticmethod
    def model(constants, points):
        """
        Model coordinates (x, y, u, v) of psi(z, w).

        Args:
            constants: output of floats()
            points: (..., 2) complex array of (z, w)

        Returns:
            (..., 4) float array
        """

        alpha, half, factor = constants
        points = np.asarray(points, dtype=complex)
        z, w = points[..., 0], points[..., 1]

        Z = 1j * (np.conj(half) * z + half * w)
        W = factor * z * w

        x, y = Z.real, Z.imag
        u = W.real - 0.5 * (alpha + 1) * x ** 2 - 0.5 * (alpha - 1) * y ** 2

        return np.stack([x, y, u, W.imag], axis=-1)

    @staticmethod
    def gradient(phi, constants, points):
        """
        Euclidean gradient norm of phi o psi by the chain rule through the holomorphic map.

        Args:
            phi: Poly4
            constants: output of floats()
            points: (..., 2) complex array of (z, w)

        Returns:
            array of gradient norms
        """

        alpha, half, factor = constants
        points = np.asarray(points, dtype=complex)
        z, w = points[..., 0], points[..., 1]

        model = Planes.model(constants, points)
        x, y = model[..., 0], model[..., 1]
        fx, fy, fu, fv = (phi.diff(name).evalf(model) for name in ("x", "y", "u", "v"))

        # Gradients in the real coordinates of Z and W, packed as complex numbers
        gZ = (fx - (alpha + 1) * x * fu) + 1j * (fy - (alpha - 1) * y * fu)
        gW = fu + 1j * fv

        # Holomorphic derivatives of psi
        Zz, Zw = 1j * np.conj(half), 1j * half
        Wz, Ww = factor * w, factor * z

        gz = np.conj(Zz) * gZ + np.conj(Wz) * gW
        gw = np.conj(Zw) * gZ + np.conj(Ww) * gW

        return np.sqrt(np.abs(gz) ** 2 + np.abs(gw) ** 2)

    @staticmethod
    def critical(union, samples, seed):
        """
        Seeded points z = e^{i theta} w of the critical set with |w| spread over 10^-3 to 10^-1.

        Returns:
            (samples, 2) complex array
        """

        generator = np.random.default_rng(seed)
        _, half, _ = Planes.floats(union)

        radii = 10.0 ** generator.uniform(-3, -1, size=samples)
        w = radii * np.exp(2j * np.pi * generator.uniform(0, 1, size=samples))

        return np.stack([half * half * w, w], axis=-1)

    @staticmethod
    def kernel(union, samples=100, seed=0):
        """
        Applies Dpsi at (e^{i theta} w, w) to (e^{i theta/2}, -e^{-i theta/2}) and evaluates det Dpsi off the critical
        set.

        Returns:
            (max kernel residual, min |det Dpsi| off the critical set)
        """

        _, half, factor = Planes.floats(union)
        points = Planes.critical(union, samples, seed)

        residual, determinant = 0.0, np.inf
        for z, w in points:
            direction = np.array([half, -np.conj(half)])
            jacobian = np.array([[1j * np.conj(half), 1j * half], [factor * w, factor * z]])
            residual = max(residual, float(np.max(np.abs(jacobian @ direction))))

            # Shift off the critical set
            z = z + abs(w)
            jacobian = np.array([[1j * np.conj(half), 1j * half], [factor * w, factor * z]])
            determinant = min(determinant, abs(np.linalg.det(jacobian)))

        return (residual, determinant)

    @staticmethod
    def check(union, solution, N=None, samples=200, seed=0, eta=1e-10, budget=Feasibility.BUDGET, quiet=True):
        """
        Gradient check of the pulled back defining function on the critical set: |grad| >= eta |p|^4 at every sample
        off M(B). With N=None, N tries 0 and then doubles from 1 until the check passes.

        Args:
            union: hyperbolic PlaneUnion
            solution: CoeffSolution built for the rational approximation of alpha
            N: correction coefficient or None for automatic search
            samples: sample count
            seed: sampling seed
            eta: gradient threshold
            budget: doubling budget
            quiet: disables progress output

        Returns:
            report dict
        """

        points = Planes.critical(union, samples, seed)
        constants = Planes.floats(union)

        # Samples on M(B) itself are excluded
        model = Planes.model(constants, points)
        off = np.abs(model[..., 2]) + np.abs(model[..., 3]) > 1e-30
        points = points[off]

        scale = eta * np.sum(np.abs(points) ** 2, axis=-1) ** 2

        candidates = [Fraction(N)] if N is not None else [Fraction(0)] + [Fraction(2) ** k for k in range(budget)]
        for value in tqdm(candidates, disable=quiet):
            phi, _ = Planes.field(union, solution, value)
            norms = Planes.gradient(phi, constants, points)

            failures = int(np.sum(norms < scale))
            if not failures:
                residual, determinant = Planes.kernel(union, seed=seed)
                return {"N": Scalar.text(value), "samples": int(len(points)), "minimum": float(np.min(norms / scale)),
                        "passed": True, "kernel": residual, "determinant": determinant}

        if N is None:
            raise BudgetError("N doubling budget of %d exhausted" % budget)

        return {"N": Scalar.text(N), "samples": int(len(points)), "minimum": float(np.min(norms / scale)),
                "passed": False, "failures": failures}

    @staticmethod
    def pullback(union, M=1, N=None, samples=200, seed=0, eta=1e-10, radius=None, depth=None):
        """
        Builds the defining function for the rational approximation of alpha = cos(theta) and runs the pullback
        gradient check.

        Args:
            union: hyperbolic PlaneUnion
            M: coefficient of the construction
            N: correction coefficient or None for automatic search
            samples: sample count
            seed: sampling seed
            eta: gradient threshold
            radius: certificate radius
            depth: certificate depth

        Returns:
            (solution, report)
        """

        alpha = Planes.approximation(union)
        print("Building phi for alpha=%s (cos(theta) approximation)" % Scalar.text(alpha))

        kwargs = {}
        if radius is not None:
            kwargs["radius"] = radius
        if depth is not None:
            kwargs["depth"] = depth

        _, solution = Feasibility.buildPhi(alpha, M, **kwargs)
        report = Planes.check(union, solution, N, samples, seed, eta)
        report["alpha"] = Scalar.text(alpha)

        return (solution, report)

