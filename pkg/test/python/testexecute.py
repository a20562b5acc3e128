"""
Execute module tests
"""

import json
import os

import jsonschema
import pytest

import steinbasis

from steinbasis.certify import PositivityCertificate
from steinbasis.execute import Config, main
from steinbasis.planes import Planes

def validate(path, command):
    """
    Loads a report and validates it against the command schema.
    """

    with open(path, "r") as f:
        document = json.load(f)

    with open(os.path.join(os.path.dirname(steinbasis.__file__), "schemas", "%s.json" % command), "r") as f:
        jsonschema.validate(document, json.load(f))

    return document

def testDefaults():
    config = Config.resolve(Config.parser().parse_args(["roots"]))

    assert config["command"] == "roots"
    assert config["radius"] == "1/4"
    assert config["depth"] == 8

def testRoots(tmp_path):
    path = str(tmp_path / "roots.json")
    assert main(["roots", "--output", path, "--quiet"]) == 0

    document = validate(path, "roots")
    assert document["passed"]
    assert sorted(document["claims"]) == ["q", "q6", "q8"]
    assert document["notes"]

@pytest.mark.parametrize("alpha", ["1/1", "-1/4", "0.25", "3/2"])
def testConstructUsage(alpha, tmp_path):
    assert main(["construct", "--alpha=%s" % alpha, "--emit-certificate", str(tmp_path / "out.json")]) == 3

def testUsage():
    with pytest.raises(SystemExit) as error:
        main(["planes"])

    assert error.value.code == 3

    with pytest.raises(SystemExit) as error:
        main(["unknown"])

    assert error.value.code == 3

def testVerifyMissing(tmp_path):
    assert main(["verify", str(tmp_path / "missing.json"), "--output", str(tmp_path / "verify.json")]) == 3

def testPlanesElliptic(tmp_path):
    path = str(tmp_path / "planes.json")
    assert main(["planes", "--mu", "2", "--elliptic", "--samples", "50", "--output", path]) == 0

    document = validate(path, "planes")
    assert document["union"]["kind"] == "elliptic"
    assert document["union"]["label"] == Planes.WEINSTOCK
    assert document["residual"]["passed"]

def testPlanesHyperbolic(tmp_path):
    path = str(tmp_path / "planes.json")
    assert main(["planes", "--B", "0,1,1,0", "--samples", "50", "--output", path]) == 0

    document = validate(path, "planes")
    assert document["union"]["kind"] == "hyperbolic"
    assert document["union"]["alpha"].startswith("0.70710678")

def testPlanesUnsupported(tmp_path):
    path = str(tmp_path / "planes.json")
    assert main(["planes", "--B", "1,0,0,1", "--output", path]) == 0

    document = validate(path, "planes")
    assert document["union"]["kind"] == "unsupported"
    assert "residual" not in document

def testPlanesPullbackElliptic(tmp_path):
    assert main(["planes", "--mu", "2", "--elliptic", "--pullback", "--samples", "10",
                 "--output", str(tmp_path / "planes.json")]) == 3

def testConstruct(tmp_path):
    path = str(tmp_path / "alpha.json")
    assert main(["construct", "--alpha", "1/4", "--emit-certificate", path]) == 0

    document = validate(path, "construct")
    assert document["verdict"] == PositivityCertificate.STRICT
    assert document["solution"]["family"] == "L1"
    assert document["zeroset"]
    assert all(constraint["holds"] for constraint in document["ledger"])

    report = str(tmp_path / "verify.json")
    assert main(["verify", path, "--output", report]) == 0
    assert validate(report, "verify")["passed"]

def testConstructSlab(tmp_path):
    path = str(tmp_path / "alpha.json")
    assert main(["construct", "--alpha", "3/4", "--emit-certificate", path]) == 0

    document = validate(path, "construct")
    assert document["verdict"] == PositivityCertificate.STRICT
    assert document["solution"]["family"] == "L3"
    assert document["solution"]["integers"]["m"] == 2

def testVerifyTampered(tmp_path):
    path = str(tmp_path / "alpha.json")
    assert main(["construct", "--alpha", "1/4", "--emit-certificate", path]) == 0

    with open(path, "r") as f:
        document = json.load(f)

    # Stored targets no longer match the Levi data of the altered phi
    document["solution"]["phi"] = document["solution"]["phi"] + " + 1/1*x^2*y^0*u^0*v^0"

    with open(path, "w") as f:
        json.dump(document, f)

    assert main(["verify", path, "--output", str(tmp_path / "verify.json")]) == 2

def testRetract(tmp_path):
    path = str(tmp_path / "retract.json")
    flows = str(tmp_path / "flows.csv")
    assert main(["retract", "--alpha", "1/4", "--samples", "20", "--jobs", "2", "--csv", flows, "--output", path,
                 "--quiet"]) == 0

    document = validate(path, "retract")
    assert document["passed"]
    assert document["config"]["jobs"] == 2
    assert document["scan"]["levels"][0]["converged"] == 20
    assert os.path.exists(flows)
