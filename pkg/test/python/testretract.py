"""
Retract module tests
"""

import csv

import numpy as np
import pytest

from steinbasis.feasibility import Feasibility
from steinbasis.poly import Poly4
from steinbasis.retract import FlowTrace, Retract

X, Y, U, V = (Poly4.variable(name) for name in ("x", "y", "u", "v"))

# Positive off {u = v = 0}, radially increasing in (u, v)
PHI = U ** 4 + V * V + (X * X + Y * Y) * U * U
CONE = (1 + X * X + Y * Y) * (U * U + V * V)

@pytest.fixture(scope="module")
def constructed():
    """
    Degree-6 defining function at alpha = 1/4.
    """

    return Feasibility.buildPhi("1/4")[0]

@pytest.mark.parametrize("start", [(0.05, 0.05, 0.01, 0.01), (0.05, 0.05, -0.01, 0.01), (-0.1, 0.2, 0.03, -0.02)])
def testFlow(start):
    trace = Retract.flow(PHI, start)

    assert trace.converged
    assert trace.distance() < 1e-6
    assert trace.decreasing()
    assert all(Retract.inside(point, 0.25) for point in trace.points)

def testFlowEuclidean():
    trace = Retract.flow(CONE, (0.1, -0.1, 0.02, 0.01), metric="euclidean")

    assert trace.converged
    assert trace.decreasing()

def testFlowOnZeroSet():
    trace = Retract.flow(PHI, (0.1, 0.1, 0.0, 0.0))

    assert trace.converged
    assert len(trace.points) == 1
    assert trace.todict()["steps"] == 0

def testFlowErrors():
    with pytest.raises(ValueError):
        Retract.flow(PHI, (0.3, 0, 0, 0))

    with pytest.raises(ValueError):
        Retract.flow(PHI, (0.1, 0.1, 0.01, 0.01), cap=1e-6)

def testFlowBudget():
    # A single step can not reach the tolerance
    trace = Retract.flow(PHI, (0.05, 0.05, 0.01, 0.01), steps=1)

    assert not trace.converged
    assert len(trace.points) == 2

def testInside():
    assert Retract.inside((0.25, -0.25, 0.0625, -0.0625), 0.25)
    assert not Retract.inside((0.0, 0.0, 0.07, 0.0), 0.25)

def testSample():
    points, rejected = Retract.sample(CONE, 1e-3, 50, 0)

    assert len(points) == 50
    assert rejected > 0
    assert all(float(CONE.evalf(p)) < 1e-3 for p in points)

def testBasisScan():
    report, traces = Retract.basisScan(CONE, [1e-3, 1e-4], samples=20)

    assert report["passed"]
    assert [level["eps"] for level in report["levels"]] == [1e-4, 1e-3]
    assert all(level["nested"] and level["converged"] == 20 for level in report["levels"])
    assert len(traces) == 40

def testRadial():
    passed, failures = Retract.radial(CONE, lines=200)
    assert passed and failures == 0

    passed, failures = Retract.radial(V * V - U * U, lines=200)
    assert not passed and failures > 0

def testDump(tmp_path):
    traces = [Retract.flow(CONE, (0.1, 0.0, 0.01, 0.0)), Retract.flow(PHI, (0.05, 0.05, 0.01, 0.01))]

    path = tmp_path / "flows.csv"
    Retract.dump(traces, str(path))

    with open(path, newline="") as f:
        rows = list(csv.reader(f))

    assert rows[0] == ["trajectory", "step", "x", "y", "u", "v", "phi"]
    assert len(rows) == 1 + sum(len(trace.points) for trace in traces)
    assert {row[0] for row in rows[1:]} == {"0", "1"}

def testTrace():
    trace = FlowTrace(np.zeros(4), 1.0, [np.array([0, 0, 3e-1, 4e-1])], [1.0], False)

    assert np.isclose(trace.distance(), 0.5)
    assert trace.decreasing()
    assert trace.todict()["terminal"] == [0.0, 0.0, 0.3, 0.4]

def testBasisScanOrder():
    report, traces = Retract.basisScan(CONE, [1e-3], samples=20, jobs=2)
    points, _ = Retract.sample(CONE, 1e-3, 20, 0)

    assert report["passed"]
    assert all(np.array_equal(trace.start, point) for trace, point in zip(traces, points))

@pytest.mark.parametrize("start", [(0.05, 0.05, 0.01, 0.01), (0.05, 0.05, -0.01, 0.01)])
def testFlowConstructed(constructed, start):
    trace = Retract.flow(constructed, start)

    assert trace.converged
    assert trace.distance() < 1e-6
    assert trace.decreasing()

def testFlowConstructedEuclidean(constructed):
    trace = Retract.flow(constructed, (0.05, 0.05, 0.01, 0.01), metric="euclidean")

    assert len(trace.points) > 1
    assert trace.decreasing()
    assert trace.values[-1] < trace.values[0]

def testBasisScanConstructed(constructed):
    report, traces = Retract.basisScan(constructed, [1e-3], samples=1000)

    assert report["passed"]
    assert report["levels"][0]["converged"] == 1000
    assert len(traces) == 1000

def testRadialConstructed(constructed):
    passed, failures = Retract.radial(constructed, lines=1000)
    assert passed and failures == 0
