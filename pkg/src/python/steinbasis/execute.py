"""
Execute module
"""

import argparse
import os
import sys

from multiprocessing import Pool

from tqdm import tqdm

from .certify import Certify, Claims, PositivityCertificate, Sturm
from .feasibility import BudgetError, Feasibility, InfeasibleError
from .levi import FlatPerturbation, Levi
from .paths import Paths
from .planes import PlaneUnion, Planes
from .poly import Poly4, Scalar
from .retract import Retract

# Multiprocessing helper methods
# pylint: disable=W0603
CONFIG = None

def create(config):
    """
    Multiprocessing helper method. Stores the run configuration in a global to be accessed in a new subprocess.

    Args:
        config: run configuration
    """

    global CONFIG

    CONFIG = config
    Execute.configure(config)

def construct(alpha):
    """
    Multiprocessing helper method. Builds and certifies the defining function for a single alpha.

    Args:
        alpha: alpha string

    Returns:
        (alpha, sweep row)
    """

    global CONFIG

    # pylint: disable=W0703
    try:
        document = Execute.solve(dict(CONFIG, alpha=alpha))
        return (alpha, {"alpha": alpha, "family": document["solution"]["family"], "verdict": document["verdict"],
                        "notes": document["notes"], "error": None})
    except Exception as e:
        return (alpha, {"alpha": alpha, "family": None, "verdict": PositivityCertificate.FAILED, "notes": [],
                        "error": "%s: %s" % (type(e).__name__, e)})

class Parser(argparse.ArgumentParser):
    """
    Argument parser that exits with the usage error code.
    """

    def error(self, message):
        self.print_usage(sys.stderr)
        print("%s: error: %s" % (self.prog, message), file=sys.stderr)
        sys.exit(Execute.USAGE)

class Config(object):
    """
    Run configuration defaults and command line parsing.
    """

    # Tunables, overridden by command line flags
    DEFAULTS = {
        "M": "1",
        "radius": "1/4",
        "depth": 8,
        "grid": None,
        "budget": 40,
        "precision": 50,
        "eta": 1e-10,
        "tol": 1e-6,
        "steps": 500,
        "samples": 1000,
        "seed": 0,
        "jobs": None,
        "quiet": False
    }

    @staticmethod
    def parser():
        """
        Builds the command line parser.

        Returns:
            Parser
        """

        parser = Parser(prog="steinbasis", description="Certified plurisubharmonic defining functions near flat "
                                                       "hyperbolic complex points")
        commands = parser.add_subparsers(dest="command", metavar="command")
        commands.required = True

        def common(command):
            command.add_argument("--M", help="coefficient of (x^2+y^2)u^2n, p/q")
            command.add_argument("--radius", help="certificate radius, a power of two <= 1, p/q")
            command.add_argument("--depth", type=int, help="number of dyadic annuli")
            command.add_argument("--grid", help="certified grid spacing for annuli beyond the ledger radius, p/q")
            command.add_argument("--budget", type=int, help="halving and doubling budget")
            command.add_argument("--seed", type=int, help="sampling seed")
            command.add_argument("--quiet", action="store_true", default=None, help="disable progress bars")
            command.add_argument("--output", help="output file, defaults under ~/.steinbasis/<command>/")

        command = commands.add_parser("construct", help="build and certify phi for one alpha")
        command.add_argument("--alpha", required=True, help="model parameter 0 <= alpha < 1, p/q")
        command.add_argument("--emit-certificate", dest="emit", help="certificate output file")
        common(command)

        command = commands.add_parser("verify", help="re-check an emitted certificate")
        command.add_argument("path", help="certificate file")
        common(command)

        command = commands.add_parser("sweep", help="construct over a list of alphas")
        command.add_argument("--alphas", required=True, help="comma separated alphas, p/q")
        command.add_argument("--jobs", type=int, help="worker processes")
        common(command)

        command = commands.add_parser("roots", help="check the root and sign claims of the degree-6 regimes")
        common(command)

        command = commands.add_parser("planes", help="classify a union of totally real planes")
        group = command.add_mutually_exclusive_group(required=True)
        group.add_argument("--B", help="matrix entries a,b,c,d row major, p/q")
        group.add_argument("--mu", help="normal form parameter, p/q")
        command.add_argument("--elliptic", action="store_true", help="rotation normal form [[0, mu], [-mu, 0]]")
        command.add_argument("--pullback", action="store_true", help="run the pullback gradient check")
        command.add_argument("--N", help="pullback correction coefficient, automatic when omitted")
        command.add_argument("--precision", type=int, help="digits for image verification")
        command.add_argument("--samples", type=int, help="sample count")
        command.add_argument("--eta", type=float, help="gradient threshold")
        common(command)

        command = commands.add_parser("retract", help="flow sublevel sets onto the zero set")
        command.add_argument("--alpha", required=True, help="model parameter, p/q")
        command.add_argument("--eps", default="1/1000", help="comma separated levels, p/q")
        command.add_argument("--samples", type=int, help="samples per level")
        command.add_argument("--tol", type=float, help="terminal distance")
        command.add_argument("--steps", type=int, help="steps per flow")
        command.add_argument("--metric", choices=["diagonal", "euclidean"], default="diagonal", help="flow metric")
        command.add_argument("--csv", help="trajectory CSV output file")
        command.add_argument("--jobs", type=int, help="worker processes")
        common(command)

        command = commands.add_parser("flat", help="numeric check with a flat perturbation tau(x, y)")
        command.add_argument("--alpha", required=True, help="model parameter, p/q")
        command.add_argument("--tau", default="0", help="serialized perturbation, e.g. 1/1*x^4*y^0*u^0*v^0")
        command.add_argument("--samples", type=int, help="sample count")
        common(command)

        return parser

    @staticmethod
    def resolve(args):
        """
        Merges parsed arguments over the defaults.

        Args:
            args: parsed argparse namespace

        Returns:
            run configuration dict
        """

        config = dict(Config.DEFAULTS)
        for key, value in vars(args).items():
            if value is not None:
                config[key] = value

        # Validate rationals early
        for key in ("M", "radius", "grid", "alpha", "N"):
            if config.get(key) is not None:
                Scalar.parse(config[key])

        return config

class Execute(object):
    """
    Runs subcommands and writes their JSON reports.
    """

    # Exit codes
    OK = 0
    FAILED = 2
    USAGE = 3

    @staticmethod
    def configure(config):
        """
        Applies process wide settings.

        Args:
            config: run configuration
        """

        Feasibility.BUDGET = config["budget"]

    @staticmethod
    def kwargs(config):
        """
        Solver keyword arguments from a run configuration.

        Returns:
            dict
        """

        return {"radius": Scalar.parse(config["radius"]), "depth": config["depth"],
                "spacing": Scalar.parse(config["grid"]) if config.get("grid") else None}

    @staticmethod
    def solve(config):
        """
        Builds and certifies phi for config["alpha"].

        Args:
            config: run configuration

        Returns:
            certificate document
        """

        alpha = Scalar.parse(config["alpha"])
        if not 0 <= alpha < 1:
            raise ValueError("alpha must satisfy 0 <= alpha < 1, got %s" % config["alpha"])

        phi, solution = Feasibility.buildPhi(alpha, Scalar.parse(config["M"]), **Execute.kwargs(config))

        for note in solution.notes:
            print("NOTE: %s" % note)

        certificates = {name: cert.todict() for name, cert in sorted(solution.certificates.items())}
        strict = solution.certificates and all(cert.strict() for cert in solution.certificates.values())

        return {
            "config": Execute.echo(config),
            "solution": solution.todict(),
            "ledger": [constraint.todict() for constraint in solution.ledger()],
            "certificates": certificates,
            "zeroset": Feasibility.zeroset(phi),
            "verdict": PositivityCertificate.STRICT if strict else PositivityCertificate.FAILED,
            "notes": solution.notes
        }

    @staticmethod
    def echo(config):
        """
        Serializable copy of a run configuration.

        Returns:
            dict
        """

        return {key: value for key, value in sorted(config.items()) if key not in ("output", "emit", "csv")}

    @staticmethod
    def construct(config):
        """
        construct subcommand.

        Returns:
            (exit code, document)
        """

        document = Execute.solve(config)

        path = config.get("emit") or Paths.resolve(config.get("output"), "construct",
                                                   "alpha-%s.json" % config["alpha"].replace("/", "_"))
        Paths.save(document, path)

        print("Wrote certificate to %s" % path)
        print("Verdict: %s" % document["verdict"])

        return (Execute.OK if document["verdict"] == PositivityCertificate.STRICT else Execute.FAILED, document)

    @staticmethod
    def verify(config):
        """
        verify subcommand. Rebuilds every stored certificate, re-runs its checks and compares the stored targets with
        the Levi and radial data recomputed from the stored phi.

        Returns:
            (exit code, document)
        """

        stored = Paths.load(config["path"])

        phi = Poly4.parse(stored["solution"]["phi"])
        alpha = Scalar.parse(stored["solution"]["alpha"])
        levi = Levi.matrix(phi, alpha)

        u, v = Poly4.variable("u"), Poly4.variable("v")
        k, l = Certify.split(u * phi.diff("u") + v * phi.diff("v"))

        expected = {"zz": levi.zz, "det16": levi.det16(), "radial-u": k, "radial-v": l}

        results = {}
        for name, data in sorted(stored["certificates"].items()):
            certificate = PositivityCertificate.fromdict(data)

            target = name not in expected or certificate.target == expected[name]
            reproduced = certificate.recheck()
            results[name] = {"target": target, "reproduced": reproduced, "verdict": certificate.verdict}

            print("Certificate %s: target %s, reproduced %s, verdict %s" %
                  (name, "ok" if target else "MISMATCH", reproduced, certificate.verdict))

        passed = bool(results) and all(r["target"] and r["reproduced"] and r["verdict"] == PositivityCertificate.STRICT
                                       for r in results.values())

        document = {"config": Execute.echo(config), "path": config["path"], "certificates": results, "passed": passed}
        return (Execute.OK if passed else Execute.FAILED, document)

    @staticmethod
    def sweep(config):
        """
        sweep subcommand. Alphas are processed by a worker pool, rows keep the input order.

        Returns:
            (exit code, document)
        """

        alphas = [alpha.strip() for alpha in config["alphas"].split(",") if alpha.strip()]
        for alpha in alphas:
            Scalar.parse(alpha)

        jobs = config.get("jobs") or os.cpu_count()

        rows = []
        with Pool(jobs, initializer=create, initargs=(config,)) as pool:
            for alpha, row in tqdm(pool.imap(construct, alphas), total=len(alphas), disable=Execute.quiet(config)):
                print("alpha=%s family=%s verdict=%s" % (alpha, row["family"], row["verdict"]))
                if row["error"]:
                    print("ERROR: alpha=%s %s" % (alpha, row["error"]))

                rows.append(row)

        passed = all(row["verdict"] == PositivityCertificate.STRICT for row in rows)
        return (Execute.OK if passed else Execute.FAILED, {"config": Execute.echo(config), "rows": rows,
                                                           "passed": passed})

    @staticmethod
    def roots(config):
        """
        roots subcommand.

        Returns:
            (exit code, document)
        """

        claims, errors = {}, []

        # pylint: disable=W0703
        try:
            for name, claim in Claims.claims().items():
                claims[name] = claim.todict()
                lo, hi = Sturm.refine(claim, 32)
                print("Root of %s in (%s, %s), refined to %.10f" % (name, Scalar.text(claim.lo), Scalar.text(claim.hi),
                                                                   float((lo + hi) / 2)))
        except Exception as e:
            errors.append(str(e))

        passed, failures = Claims.feasibility()
        notes = Claims.notes()

        for note in notes:
            print("NOTE: %s" % note)

        document = {"config": Execute.echo(config), "claims": claims, "combined": {"passed": passed,
                                                                                  "failures": failures},
                    "errors": errors, "notes": notes, "passed": passed and not errors}

        return (Execute.OK if document["passed"] else Execute.FAILED, document)

    @staticmethod
    def planes(config):
        """
        planes subcommand.

        Returns:
            (exit code, document)
        """

        if config.get("B"):
            union = Planes.normalize(config["B"].split(","))
        elif config.get("elliptic"):
            mu = Scalar.parse(config["mu"])
            union = Planes.elliptic(mu * mu)
        else:
            union = Planes.hyperbolic(config["mu"])

        precision = config["precision"]
        document = {"config": Execute.echo(config), "union": union.todict(precision), "passed": True}
        print("Classification: %s" % union.label)

        if union.mapped():
            samples = config["samples"]
            residual = Planes.verify(union, samples, precision, config["seed"])
            doubled = Planes.verify(union, samples, 2 * precision, config["seed"])

            # Residual must sit near the working precision and shrink with it
            passed = residual < 10.0 ** (10 - precision) and (doubled == 0 or residual == 0 or residual / doubled >= 1e10)

            document["residual"] = {"precision": precision, "value": float(residual), "doubled": float(doubled),
                                    "passed": bool(passed)}
            document["passed"] = bool(passed)
            print("Image residual %.3e at %d digits, %.3e at %d digits" % (residual, precision, doubled, 2 * precision))

        if config.get("pullback"):
            if union.kind != PlaneUnion.HYPERBOLIC:
                raise ValueError("Pullback check requires a hyperbolic plane union")

            N = Scalar.parse(config["N"]) if config.get("N") else None
            _, report = Planes.pullback(union, Scalar.parse(config["M"]), N, min(config["samples"], 200),
                                        config["seed"], config["eta"], **Execute.kwargs(config))

            document["pullback"] = report
            document["passed"] = document["passed"] and report["passed"]
            print("Pullback gradient check N=%s passed=%s" % (report["N"], report["passed"]))

        return (Execute.OK if document["passed"] else Execute.FAILED, document)

    @staticmethod
    def retract(config):
        """
        retract subcommand.

        Returns:
            (exit code, document)
        """

        phi, solution = Feasibility.buildPhi(config["alpha"], Scalar.parse(config["M"]), **Execute.kwargs(config))

        radius = solution.radius()
        if radius is None:
            raise InfeasibleError("radius", "no certified radius for alpha=%s" % config["alpha"])

        eps = [float(Scalar.parse(e)) for e in config["eps"].split(",")]
        report, traces = Retract.basisScan(phi, eps, config["samples"], config["seed"], radius, config["tol"],
                                           config["steps"], config["metric"], Execute.quiet(config), config.get("jobs"))

        lines, failures = Retract.radial(phi, config["samples"], config["seed"], radius)
        print("Radial lines: %d failures" % failures)

        if config.get("csv"):
            Retract.dump(traces, config["csv"])
            print("Wrote trajectories to %s" % config["csv"])

        document = {"config": Execute.echo(config), "radius": Scalar.text(radius), "scan": report,
                    "radial": {"passed": lines, "failures": failures}, "passed": report["passed"] and lines}

        return (Execute.OK if document["passed"] else Execute.FAILED, document)

    @staticmethod
    def flat(config):
        """
        flat subcommand.

        Returns:
            (exit code, document)
        """

        tau = Poly4.parse(config["tau"])
        tau = FlatPerturbation(tau) if tau else None

        _, solution = Feasibility.buildPhi(config["alpha"], Scalar.parse(config["M"]), **Execute.kwargs(config))
        report = Feasibility.flatCheck(solution, tau, min(config["samples"], 256), config["seed"])

        document = {"config": Execute.echo(config), "report": report, "passed": report["passed"]}
        return (Execute.OK if report["passed"] else Execute.FAILED, document)

    @staticmethod
    def quiet(config):
        """
        Returns:
            True if progress bars are disabled
        """

        return bool(config.get("quiet")) or not sys.stdout.isatty()

    @staticmethod
    def run(config):
        """
        Runs a subcommand and writes its report.

        Args:
            config: run configuration

        Returns:
            exit code
        """

        Execute.configure(config)

        action = getattr(Execute, config["command"])
        code, document = action(config)

        if config["command"] != "construct":
            path = Paths.resolve(config.get("output"), config["command"], "%s.json" % config["command"])
            Paths.save(document, path)
            print("Wrote report to %s" % path)

        return code

def main(argv=None):
    """
    Command line entry point.

    Args:
        argv: optional argument list

    Returns:
        exit code
    """

    args = Config.parser().parse_args(argv)

    try:
        config = Config.resolve(args)
        return Execute.run(config)
    except (InfeasibleError, BudgetError) as e:
        print("ERROR: %s" % e)
        return Execute.FAILED
    except (ValueError, FileNotFoundError) as e:
        print("ERROR: %s" % e)
        return Execute.USAGE

if __name__ == "__main__":
    sys.exit(main())
