"""
Levi module
"""

from fractions import Fraction

import numpy as np

from .poly import ComplexPoly, Poly4

# Coordinate polynomials
X, Y, U, V = (Poly4.variable(name) for name in ("x", "y", "u", "v"))

class LeviMatrix(object):
    """
    Levi data of a Poly4 at parameter alpha. Entries are scaled by 4: zz = 4 d2/dz dzbar, ww = 4 d2/dw dwbar
    and zw = 4 d2/dz dwbar.
    """

    def __init__(self, zz, ww, zw, alpha):
        self.zz = zz
        self.ww = ww
        self.zw = zw
        self.alpha = Fraction(alpha)

    def det16(self):
        """
        Determinant polynomial zz*ww - |zw|^2, equal to 16 times the Levi determinant.

        Returns:
            Poly4
        """

        return self.zz * self.ww - self.zw.normsq()

    def evalf(self, point):
        """
        Evaluates the unscaled 2x2 Hermitian Levi matrix at a model point.

        Args:
            point: (x, y, u, v)

        Returns:
            complex 2x2 array
        """

        point = np.asarray(point, dtype=float)

        zz, ww = self.zz.evalf(point) / 4, self.ww.evalf(point) / 4
        zw = self.zw.evalf(point) / 4

        return np.array([[zz, zw], [np.conj(zw), ww]], dtype=complex)

class FlatPerturbation(object):
    """
    Real perturbation tau(x, y) of order at least 4 at the origin.
    """

    def __init__(self, tau):
        """
        Validates and stores tau.

        Args:
            tau: Poly4 in x, y only
        """

        if any(e[2] or e[3] for e in tau.terms):
            raise ValueError("Flat perturbation must depend on x, y only: %s" % tau.serialize())

        if any(e[0] + e[1] < 4 for e in tau.terms):
            raise ValueError("Flat perturbation must vanish to order 4: %s" % tau.serialize())

        self.tau = tau

    def evalf(self, x, y):
        """
        Evaluates tau.

        Args:
            x: x coordinates
            y: y coordinates

        Returns:
            array of values
        """

        x, y = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
        zeros = np.zeros_like(x)

        return self.tau.evalf(np.stack([x, y, zeros, zeros], axis=-1))

class Levi(object):
    """
    Levi operators in the nonholomorphic coordinates x, y, u = Re w - q(x, y) - tau, v = Im w of the quadratic
    model w = (alpha/2) z zbar + (z^2 + zbar^2)/4.
    """

    @staticmethod
    def zz(f, alpha):
        """
        4 d2f/dz dzbar for the quadratic model (tau = 0).

        Args:
            f: Poly4
            alpha: model parameter

        Returns:
            Poly4
        """

        alpha = Fraction(alpha)

        fu = f.diff("u")
        fuu = fu.diff("u")

        # Laplacian in (x, y)
        result = f.diff("x").diff("x") + f.diff("y").diff("y")

        # First order u terms
        result = result - 2 * (alpha + 1) * X * fu.diff("x") - 2 * (alpha - 1) * Y * fu.diff("y") - 2 * alpha * fu

        # Second order u term
        return result + ((alpha + 1) ** 2 * X * X + (alpha - 1) ** 2 * Y * Y) * fuu

    @staticmethod
    def ww(f):
        """
        4 d2f/dw dwbar, the Laplacian in (u, v).

        Args:
            f: Poly4

        Returns:
            Poly4
        """

        return f.diff("u").diff("u") + f.diff("v").diff("v")

    @staticmethod
    def zw(f, alpha):
        """
        4 d2f/dz dwbar for the quadratic model.

        Args:
            f: Poly4
            alpha: model parameter

        Returns:
            ComplexPoly
        """

        alpha = Fraction(alpha)

        fu, fv = f.diff("u"), f.diff("v")
        fuu, fuv = fu.diff("u"), fu.diff("v")

        re = fu.diff("x") - (alpha + 1) * X * fuu + fv.diff("y") - (alpha - 1) * Y * fuv
        im = fv.diff("x") - (alpha + 1) * X * fuv - fu.diff("y") + (alpha - 1) * Y * fuu

        return ComplexPoly(re, im)

    @staticmethod
    def matrix(f, alpha):
        """
        Builds the full Levi data of f.

        Args:
            f: Poly4
            alpha: model parameter

        Returns:
            LeviMatrix
        """

        return LeviMatrix(Levi.zz(f, alpha), Levi.ww(f), Levi.zw(f, alpha), alpha)

    @staticmethod
    def det(matrix):
        """
        Determinant polynomial of a LeviMatrix.

        Args:
            matrix: LeviMatrix

        Returns:
            Poly4 equal to 16 times the Levi determinant
        """

        return matrix.det16()

    @staticmethod
    def quadratic(alpha):
        """
        Quadratic part q(x, y) = (alpha+1)x^2/2 + (alpha-1)y^2/2 of the model, so that Re w = q on the surface.

        Args:
            alpha: model parameter

        Returns:
            Poly4
        """

        alpha = Fraction(alpha)
        return Fraction(1, 2) * ((alpha + 1) * X * X + (alpha - 1) * Y * Y)

    @staticmethod
    def holomorphic(f, alpha, tau=None):
        """
        Rewrites f(x, y, u, v) in the real holomorphic coordinates (x, y, s, t), z = x + iy, w = s + it.
        The s and t coordinates occupy the u and v slots of the result.

        Args:
            f: Poly4
            alpha: model parameter
            tau: optional FlatPerturbation

        Returns:
            Poly4
        """

        shift = Levi.quadratic(alpha)
        if tau:
            shift = shift + tau.tau

        return f.substitute("u", U - shift)

    @staticmethod
    def exact(f, alpha, tau=None):
        """
        Exact scaled Levi data of f in holomorphic coordinates, valid with a flat perturbation.

        Args:
            f: Poly4
            alpha: model parameter
            tau: optional FlatPerturbation

        Returns:
            (zz, ww, zw) with entries over (x, y, s, t)
        """

        g = Levi.holomorphic(f, alpha, tau)

        gx, gy = g.diff("x"), g.diff("y")
        zz = gx.diff("x") + gy.diff("y")
        ww = g.diff("u").diff("u") + g.diff("v").diff("v")
        zw = ComplexPoly(gx.diff("u") + gy.diff("v"), gx.diff("v") - gy.diff("u"))

        return (zz, ww, zw)

    @staticmethod
    def numeric(field, alpha, point, h, tau=None):
        """
        Central difference Levi matrix in honest holomorphic coordinates.

        Args:
            field: Poly4 in model coordinates or a callable of stacked (x, y, s, t) points
            alpha: model parameter
            point: (x, y, s, t) point in holomorphic coordinates
            h: finite difference step
            tau: optional FlatPerturbation

        Returns:
            unscaled 2x2 Hermitian matrix of floats
        """

        if h <= 0:
            raise ValueError("Finite difference step must be positive, got %s" % h)

        point = np.asarray(point, dtype=float)
        if np.any(point + h == point):
            raise ValueError("Step underflow: h=%g at point %s" % (h, point))

        function = Levi.function(field, alpha, tau)

        # Stencil offsets for the full Hessian
        eye = np.eye(4) * h
        offsets = [np.zeros(4)]
        for i in range(4):
            offsets.extend([eye[i], -eye[i]])
            for j in range(i + 1, 4):
                offsets.extend([eye[i] + eye[j], eye[i] - eye[j], -eye[i] + eye[j], -eye[i] - eye[j]])

        values = iter(function(point + np.array(offsets)))

        center = next(values)
        hessian = np.zeros((4, 4))
        for i in range(4):
            plus, minus = next(values), next(values)
            hessian[i, i] = (plus - 2 * center + minus) / h ** 2
            for j in range(i + 1, 4):
                pp, pm, mp, mm = next(values), next(values), next(values), next(values)
                hessian[i, j] = hessian[j, i] = (pp - pm - mp + mm) / (4 * h ** 2)

        zz = (hessian[0, 0] + hessian[1, 1]) / 4
        ww = (hessian[2, 2] + hessian[3, 3]) / 4
        zw = (hessian[0, 2] + hessian[1, 3] + 1j * (hessian[0, 3] - hessian[1, 2])) / 4

        return np.array([[zz, zw], [np.conj(zw), ww]], dtype=complex)

    @staticmethod
    def function(field, alpha, tau=None):
        """
        Vectorized scalar field over holomorphic coordinates (x, y, s, t).

        Args:
            field: Poly4 in model coordinates or callable
            alpha: model parameter
            tau: optional FlatPerturbation

        Returns:
            callable of an (N, 4) array
        """

        if callable(field) and not isinstance(field, Poly4):
            return field

        a = float(alpha)

        def function(points):
            x, y, s, t = points[..., 0], points[..., 1], points[..., 2], points[..., 3]

            # Graph coordinates over the model surface
            u = s - 0.5 * (a + 1) * x ** 2 - 0.5 * (a - 1) * y ** 2
            if tau:
                u = u - tau.evalf(x, y)

            return field.evalf(np.stack([x, y, u, t], axis=-1))

        return function

    @staticmethod
    def lift(point, alpha, tau=None):
        """
        Maps a model point (x, y, u, v) to holomorphic coordinates (x, y, s, t).

        Args:
            point: model point
            alpha: model parameter
            tau: optional FlatPerturbation

        Returns:
            array (x, y, s, t)
        """

        x, y, u, v = (float(p) for p in point)

        s = u + 0.5 * (float(alpha) + 1) * x ** 2 + 0.5 * (float(alpha) - 1) * y ** 2
        if tau:
            s += float(tau.evalf(x, y))

        return np.array([x, y, s, v])
