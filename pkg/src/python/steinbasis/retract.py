"""
Retract module
"""

import csv
import os

from multiprocessing import Pool

import numpy as np

from tqdm import tqdm

from .feasibility import BudgetError

# Multiprocessing helper methods
# pylint: disable=W0603
FLOW = None

def create(phi, options):
    """
    Multiprocessing helper method. Stores phi, its flow operators and the flow options in a global to be accessed in
    a new subprocess.

    Args:
        phi: Poly4
        options: keyword arguments for Retract.flow
    """

    global FLOW

    FLOW = (phi, Retract.operators(phi), options)

def flow(args):
    """
    Multiprocessing helper method. Runs one descent flow.

    Args:
        args: (start point, level)

    Returns:
        FlowTrace
    """

    global FLOW

    point, level = args
    phi, operators, options = FLOW

    return Retract.flow(phi, point, cap=level, operators=operators, **options)

class FlowTrace(object):
    """
    Trajectory of a descent flow towards {u = v = 0}.
    """

    def __init__(self, start, step, points, values, converged):
        self.start = start
        self.step = step
        self.points = points
        self.values = values
        self.converged = converged

    def terminal(self):
        """
        Returns:
            last point of the trajectory
        """

        return self.points[-1]

    def distance(self):
        """
        Returns:
            distance sqrt(u^2 + v^2) of the terminal point to {u = v = 0}
        """

        return float(np.hypot(self.points[-1][2], self.points[-1][3]))

    def decreasing(self):
        """
        Returns:
            True if phi is strictly decreasing along the trajectory
        """

        return all(b < a for a, b in zip(self.values, self.values[1:]))

    def todict(self):
        return {"start": [float(x) for x in self.start], "step": self.step, "steps": len(self.points) - 1,
                "terminal": [float(x) for x in self.terminal()], "distance": self.distance(),
                "converged": self.converged}

class Retract(object):
    """
    Descent flows of a defining function onto its zero set {u = v = 0}, checking that sublevel sets retract onto it.
    """

    # Smallest accepted step
    MINSTEP = 2.0 ** -60

    @staticmethod
    def inside(point, radius):
        """
        Tests if a point lies in the weighted box |x|, |y| <= r, |u|, |v| <= r^2.

        Returns:
            True if inside
        """

        radius = float(radius)
        return abs(point[0]) <= radius and abs(point[1]) <= radius and abs(point[2]) <= radius ** 2 and \
               abs(point[3]) <= radius ** 2

    @staticmethod
    def operators(phi):
        """
        Polynomials evaluated during a flow: phi, its gradient and the diagonal of its Hessian.

        Args:
            phi: Poly4

        Returns:
            (phi, gradient list, hessian diagonal list)
        """

        gradient = [phi.diff(name) for name in ("x", "y", "u", "v")]
        diagonal = [g.diff(name) for g, name in zip(gradient, ("x", "y", "u", "v"))]

        return (phi, gradient, diagonal)

    @staticmethod
    def direction(operators, point, metric):
        """
        Descent direction -D grad(phi). The diagonal metric scales each coordinate by the inverse modulus of the
        matching second derivative, the Euclidean metric uses D = I.

        Returns:
            direction array
        """

        _, gradient, diagonal = operators
        grad = np.array([float(g.evalf(point)) for g in gradient])

        if metric == "euclidean":
            return -grad

        scale = np.array([abs(float(h.evalf(point))) for h in diagonal])
        scale = np.maximum(scale, 1e-300)

        return -grad / scale

    @staticmethod
    def flow(phi, start, step=1.0, tol=1e-6, steps=500, radius=0.25, cap=None, metric="diagonal", operators=None):
        """
        Explicit descent along -D grad(phi) with step halving on any phi increase. Steps leaving the box are rejected
        like increases.

        The default metric is diagonal. The constructed functions grow like u^p in u with p = 4, 6 or 2n, so a
        Euclidean step moves u by a multiple of u^(p-1) and the flow stalls far from {u = v = 0} within the step budget.
        Dividing by the Hessian diagonal moves u by a multiple of u. The Euclidean metric still decreases phi strictly.

        Args:
            phi: Poly4
            start: start point (x, y, u, v)
            step: initial step
            tol: terminal distance to {u = v = 0}
            steps: maximum number of accepted steps
            radius: certified box radius
            cap: optional bound phi(start) < cap
            metric: "diagonal" or "euclidean"
            operators: optional precomputed operators()

        Returns:
            FlowTrace
        """

        start = np.asarray(start, dtype=float)
        if not Retract.inside(start, radius):
            raise ValueError("Start point %s lies outside the certified box of radius %s" % (start.tolist(), radius))

        operators = operators if operators else Retract.operators(phi)

        value = float(phi.evalf(start))
        if cap is not None and not value < cap:
            raise ValueError("phi(start) = %g is not below %g" % (value, cap))

        points, values = [start], [value]
        point, h = start, step

        for _ in range(steps):
            if np.hypot(point[2], point[3]) < tol:
                break

            direction = Retract.direction(operators, point, metric)

            # Backtracking
            while h >= Retract.MINSTEP:
                trial = point + h * direction
                if Retract.inside(trial, radius):
                    current = float(phi.evalf(trial))
                    if current < value:
                        break
                h /= 2

            if h < Retract.MINSTEP:
                break

            point, value = trial, current
            points.append(point)
            values.append(value)

            # Let the step grow back after an accepted step
            h = min(2 * h, step)

        return FlowTrace(start, step, points, values, bool(np.hypot(point[2], point[3]) < tol))

    @staticmethod
    def sample(phi, eps, count, seed, radius=0.25):
        """
        Rejection samples the open sublevel set {phi < eps} inside the weighted box.

        Returns:
            (accepted points, rejected count)
        """

        generator = np.random.default_rng(seed)
        radius = float(radius)
        scale = np.array([radius, radius, radius ** 2, radius ** 2])

        accepted, rejected, attempts = [], 0, 0
        while len(accepted) < count:
            attempts += 1
            if attempts > 1000 * count:
                raise BudgetError("Unable to sample %d points with phi < %g" % (count, eps))

            point = generator.uniform(-1, 1, size=4) * scale

            # Points with phi = eps or above are excluded
            if float(phi.evalf(point)) < eps:
                accepted.append(point)
            else:
                rejected += 1

        return (accepted, rejected)

    @staticmethod
    def basisScan(phi, eps, samples=1000, seed=0, radius=0.25, tol=1e-6, steps=500, metric="diagonal", quiet=True,
                  jobs=None):
        """
        Samples each sublevel set, checks nesting between consecutive levels and that every sampled point flows to
        {u = v = 0}. Flows are independent and run on a worker pool, traces keep the sample order.

        Args:
            phi: Poly4
            eps: list of levels
            samples: samples per level
            seed: sampling seed
            radius: certified box radius
            tol: terminal distance
            steps: step budget per flow
            metric: flow metric
            quiet: disables progress bars
            jobs: worker processes, defaults to the cpu count

        Returns:
            (report dict, list of FlowTrace)
        """

        eps = sorted(float(e) for e in eps)
        options = {"tol": tol, "steps": steps, "radius": radius, "metric": metric}

        levels, traces, passed = [], [], True
        with Pool(jobs or os.cpu_count(), initializer=create, initargs=(phi, options)) as pool:
            for index, level in enumerate(eps):
                points, rejected = Retract.sample(phi, level, samples, seed + index, radius)

                # Points of lower levels belong to every higher level
                nested = all(float(phi.evalf(p)) < higher for p in points for higher in eps[index + 1:])

                converged, decreasing = 0, 0
                for trace in tqdm(pool.imap(flow, [(point, level) for point in points]), total=len(points),
                                  disable=quiet):
                    traces.append(trace)

                    converged += trace.converged
                    decreasing += trace.decreasing()

                ok = nested and converged == len(points) and decreasing == len(points)
                passed = passed and ok

                levels.append({"eps": level, "samples": len(points), "rejected": rejected, "nested": nested,
                               "converged": converged, "decreasing": decreasing, "passed": ok})
                print("Level eps=%g: %d/%d flows converged" % (level, converged, len(points)))

        return ({"levels": levels, "passed": passed}, traces)

    @staticmethod
    def radial(phi, lines=1000, seed=0, radius=0.25, points=16):
        """
        Checks phi(x, y, tu, tv) is strictly increasing in t on (0, 1] along sampled lines.

        Args:
            phi: Poly4
            lines: number of lines
            seed: sampling seed
            radius: certified box radius
            points: t samples per line

        Returns:
            (passed, number of failing rays)
        """

        generator = np.random.default_rng(seed)
        radius = float(radius)
        scale = np.array([radius, radius, radius ** 2, radius ** 2])
        t = np.arange(1, points + 1) / points

        starts = generator.uniform(-1, 1, size=(lines, 4)) * scale

        # Shape (lines, points, 4)
        grid = np.repeat(starts[:, None, :], points, axis=1)
        grid[..., 2] *= t
        grid[..., 3] *= t

        values = phi.evalf(grid)
        failures = int(np.sum(np.any(np.diff(values, axis=1) <= 0, axis=1) | (values[:, 0] <= 0)))

        return (failures == 0, failures)

    @staticmethod
    def dump(traces, path):
        """
        Writes trajectories as CSV rows of trajectory index, step index, x, y, u, v and phi.

        Args:
            traces: list of FlowTrace
            path: output file
        """

        with open(path, "w", newline="") as output:
            writer = csv.writer(output, delimiter=",", quotechar='"', quoting=csv.QUOTE_MINIMAL)
            writer.writerow(["trajectory", "step", "x", "y", "u", "v", "phi"])

            for index, trace in enumerate(traces):
                for step, (point, value) in enumerate(zip(trace.points, trace.values)):
                    writer.writerow([index, step] + ["%.17g" % x for x in point] + ["%.17g" % value])
