"""
Domination module
"""

import math

from fractions import Fraction

import numpy as np

from ..poly import VARIABLES, WEIGHTS, Poly4, Scalar

class Plan(object):
    """
    Weighted AM-GM bound for one error monomial. A single plan bounds |m_beta| <= r^w m_i, a pair plan bounds
    |m_beta| <= r^w (lambda s^(q-p) m_i + (1-lambda) s^(-p) m_j) with lambda = p/q.
    """

    def __init__(self, error, coef, first, second=None, lam=Fraction(1), s=Fraction(1), weight=Fraction(0)):
        self.error = tuple(error)
        self.coef = Fraction(coef)
        self.first = tuple(first)
        self.second = tuple(second) if second is not None else None
        self.lam = Fraction(lam)
        self.s = Fraction(s)
        self.weight = Fraction(weight)

    def critical(self):
        """
        Critical plans gain nothing from shrinking the region.

        Returns:
            True if the plan weight is zero
        """

        return self.weight == 0

    def charges(self):
        """
        Radius independent charges of this plan.

        Returns:
            list of (positive exponents, charge)
        """

        size = abs(self.coef)
        if self.second is None:
            return [(self.first, size)]

        p, q = self.lam.numerator, self.lam.denominator
        return [(self.first, size * self.lam * self.s ** (q - p)), (self.second, size * (1 - self.lam) / self.s ** p)]

    def factor(self, exponent):
        """
        Upper bound for r^weight at r = 2^-exponent.

        Args:
            exponent: dyadic radius exponent

        Returns:
            Fraction
        """

        return Fraction(1, 2 ** math.floor(exponent * self.weight))

    def valid(self):
        """
        Checks the exponent identity of this plan exactly.

        Returns:
            True if error = lambda*first + (1-lambda)*second + d with d >= 0 and weight(d) = weight
        """

        if not 0 < self.lam <= 1 or self.s <= 0:
            return False

        second = self.second if self.second is not None else (0, 0, 0, 0)
        if self.second is None and self.lam != 1:
            return False

        rest = [b - self.lam * f - (1 - self.lam) * g for b, f, g in zip(self.error, self.first, second)]
        if any(r < 0 for r in rest):
            return False

        return sum(w * r for w, r in zip(WEIGHTS, rest)) == self.weight

    def todict(self):
        """
        Serializable form.

        Returns:
            dict
        """

        return {
            "error": list(self.error),
            "coef": Scalar.text(self.coef),
            "first": list(self.first),
            "second": list(self.second) if self.second is not None else None,
            "lambda": Scalar.text(self.lam),
            "s": Scalar.text(self.s),
            "weight": Scalar.text(self.weight)
        }

    @staticmethod
    def fromdict(data):
        """
        Rebuilds a plan from todict() output.

        Args:
            data: dict

        Returns:
            Plan
        """

        return Plan(data["error"], Scalar.parse(data["coef"]), data["first"], data["second"],
                    Scalar.parse(data["lambda"]), Scalar.parse(data["s"]), Scalar.parse(data["weight"]))

class Ledger(object):
    """
    Budget ledger charging every error monomial of a polynomial to its positive even monomials.
    """

    def __init__(self, target, variables, plans, unmatched, exponent, start):
        self.target = target
        self.variables = tuple(variables)
        self.plans = plans
        self.unmatched = unmatched
        self.exponent = exponent
        self.start = start

    def radius(self):
        """
        Largest dyadic radius at which the ledger closes.

        Returns:
            Fraction or None when it never closes
        """

        return Fraction(1, 2 ** self.exponent) if self.exponent is not None else None

    def totals(self, exponent):
        """
        Total charge per positive monomial at radius 2^-exponent.

        Args:
            exponent: dyadic radius exponent

        Returns:
            dict of positive exponents -> charge
        """

        totals = {}
        for plan in self.plans:
            factor = plan.factor(exponent)
            for monomial, charge in plan.charges():
                totals[monomial] = totals.get(monomial, 0) + charge * factor

        return totals

    def slack(self, exponent):
        """
        Remaining coefficient of each positive monomial after all charges.

        Args:
            exponent: dyadic radius exponent

        Returns:
            dict of positive exponents -> remaining coefficient
        """

        totals = self.totals(exponent)
        return {e: c - totals.get(e, 0) for e, c in Domination.positive(self.target)}

    def closes(self, exponent):
        """
        Tests if every positive monomial keeps a strictly positive remainder.

        Args:
            exponent: dyadic radius exponent

        Returns:
            True if closed
        """

        if self.unmatched:
            return False

        slack = self.slack(exponent)
        return all(value > 0 for value in slack.values()) and all(e in slack for e in self.totals(exponent))

    def margin(self, exponent):
        """
        Minimum remaining coefficient.

        Args:
            exponent: dyadic radius exponent

        Returns:
            Fraction, 0 when there are no positive monomials
        """

        slack = self.slack(exponent)
        return min(slack.values()) if slack else Fraction(0)

    def covered(self):
        """
        Tests if the positive side contains a pure even power of each variable or a positive constant.

        Returns:
            True if the remainder is positive off the origin
        """

        positive = [e for e, _ in Domination.positive(self.target)]
        if (0, 0, 0, 0) in positive:
            return True

        # Positivity everywhere needs the constant term
        if not self.variables:
            return False

        for name in self.variables:
            index = VARIABLES.index(name)
            if not any(e[index] > 0 and sum(e) == e[index] for e in positive):
                return False

        return True

    def verdict(self):
        """
        Strict when the ledger closes and the remainder is positive off the origin, nonnegative when it closes
        without strictness and failed otherwise.

        Returns:
            verdict string
        """

        if not self.target:
            return "nonnegative"

        if self.exponent is None:
            return "failed"

        return "strict" if self.covered() else "nonnegative"

    def verify(self):
        """
        Re-checks this ledger from its own fields.

        Returns:
            True if every plan is valid, every error is charged exactly once and the ledger closes at its radius
        """

        errors = {e: c for c, e in Domination.errors(self.target)}
        charged = {}
        for plan in self.plans:
            if not plan.valid() or errors.get(plan.error) != plan.coef:
                return False
            charged[plan.error] = charged.get(plan.error, 0) + 1

        if self.exponent is None:
            return self.verdict() != "strict"

        return charged == {e: 1 for e in errors} and self.closes(self.exponent)

    def todict(self):
        """
        Serializable form.

        Returns:
            dict
        """

        return {
            "variables": list(self.variables),
            "exponent": self.exponent,
            "start": self.start,
            "unmatched": [list(e) for e in self.unmatched],
            "plans": [plan.todict() for plan in self.plans]
        }

    @staticmethod
    def fromdict(target, data):
        """
        Rebuilds a ledger for target from todict() output.

        Args:
            target: Poly4
            data: dict

        Returns:
            Ledger
        """

        return Ledger(target, data["variables"], [Plan.fromdict(x) for x in data["plans"]],
                      [tuple(e) for e in data["unmatched"]], data["exponent"], data["start"])

class Domination(object):
    """
    Monomial domination: bounds every monomial that is not a positive even power by weighted AM-GM splits onto
    positive even monomials over the weighted box |x|, |y| <= r, |u|, |v| <= r^2.
    """

    # Tolerance for floating point plan screening, exact values are recomputed
    TOLERANCE = 1e-9

    @staticmethod
    def positive(poly):
        """
        Positive side: monomials with all exponents even and positive coefficient.

        Args:
            poly: Poly4

        Returns:
            list of (exponents, coefficient) in term order
        """

        return [(e, poly.terms[e]) for e in poly.order() if poly.terms[e] > 0 and all(x % 2 == 0 for x in e)]

    @staticmethod
    def errors(poly):
        """
        Error side: every other monomial.

        Args:
            poly: Poly4

        Returns:
            list of (coefficient, exponents) in term order
        """

        return [(poly.terms[e], e) for e in poly.order() if not (poly.terms[e] > 0 and all(x % 2 == 0 for x in e))]

    @staticmethod
    def run(poly, variables=None, radius=Fraction(1, 4), depth=64):
        """
        Builds a domination ledger for poly and finds the largest dyadic radius <= radius where it closes.

        Args:
            poly: Poly4
            variables: variables the result must be positive in, defaults to the variables of poly
            radius: largest radius considered, a power of two <= 1
            depth: number of radius halvings searched

        Returns:
            Ledger
        """

        start = Domination.exponent(radius)
        variables = tuple(variables) if variables is not None else poly.variables()

        positive = Domination.positive(poly)
        errors = Domination.errors(poly)

        # Remaining exact and float budgets per positive monomial
        exponents = np.array([e for e, _ in positive], dtype=float).reshape(-1, 4)
        budgets = [c for _, c in positive]

        plans, unmatched, critical, regular = [], [], [], []
        for coef, error in errors:
            candidates = Domination.candidates(error, exponents)
            if candidates is None:
                unmatched.append(error)
            elif np.any(candidates[:, 3] > Domination.TOLERANCE):
                regular.append((coef, error, candidates[candidates[:, 3] > Domination.TOLERANCE]))
            else:
                critical.append((coef, error, candidates))

        # Critical errors first, hardest first
        critical.sort(key=lambda x: -Domination.hardness(x[0], x[2], budgets))
        for coef, error, candidates in critical:
            plan = Domination.allocate(coef, error, candidates, positive, budgets, critical=True)
            if plan:
                plans.append(plan)
            else:
                unmatched.append(error)

        for coef, error, candidates in regular:
            plan = Domination.allocate(coef, error, candidates, positive, budgets, critical=False)
            if plan:
                plans.append(plan)
            else:
                unmatched.append(error)

        ledger = Ledger(poly, variables, plans, unmatched, None, start)

        # Search for the largest closing radius
        if not unmatched:
            for exponent in range(start, start + depth + 1):
                if ledger.closes(exponent):
                    ledger.exponent = exponent
                    break

        return ledger

    @staticmethod
    def exponent(radius):
        """
        Exponent e with radius = 2^-e.

        Args:
            radius: power of two <= 1

        Returns:
            int
        """

        radius = Fraction(radius)
        if radius <= 0 or radius > 1 or radius.numerator != 1 or radius.denominator & (radius.denominator - 1):
            raise ValueError("Radius must be a power of two <= 1, got %s" % radius)

        return radius.denominator.bit_length() - 1

    @staticmethod
    def candidates(error, exponents):
        """
        Screens all single and pair plans for an error monomial.

        Args:
            error: error exponents
            exponents: (P, 4) positive exponents

        Returns:
            (K, 4) array of (i, j, lambda, weight) rows with j = -1 for singles, None when no plan exists
        """

        if not len(exponents):
            return None

        beta = np.array(error, dtype=float)
        weights = np.array(WEIGHTS, dtype=float)
        wpos = exponents @ weights
        wbeta = beta @ weights

        # Single plans
        singles = np.where(np.all(exponents <= beta, axis=1))[0]
        rows = [np.column_stack([singles, -np.ones(len(singles)), np.ones(len(singles)), wbeta - wpos[singles]])]

        # Pair plans: beta - lam*a_i - (1-lam)*a_j >= 0 componentwise for some lam in (0, 1)
        first, second = exponents[:, None, :], exponents[None, :, :]
        diff = first - second
        num = beta - second

        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = num / diff

        upper = np.minimum(np.where(diff > 0, ratio, np.inf).min(axis=-1), 1.0)
        lower = np.maximum(np.where(diff < 0, ratio, -np.inf).max(axis=-1), 0.0)
        blocked = np.any((diff == 0) & (num < 0), axis=-1)

        dw = wpos[:, None] - wpos[None, :]

        # Prefer the endpoint that maximizes the leftover weight
        lam = np.where(dw > 0, lower, np.where(dw < 0, upper, (lower + upper) / 2))
        other = np.where(dw > 0, upper, lower)

        tol = Domination.TOLERANCE
        degenerate = (lam < tol) | (lam > 1 - tol)
        lam = np.where(degenerate, other, lam)

        feasible = (~blocked) & (lower <= upper + tol) & (lam > tol) & (lam < 1 - tol)
        np.fill_diagonal(feasible, False)

        weight = wbeta - wpos[None, :] - lam * dw
        i, j = np.where(feasible)
        rows.append(np.column_stack([i, j, lam[i, j], weight[i, j]]))

        rows = np.concatenate(rows).astype(float)
        return rows if len(rows) else None

    @staticmethod
    def capacity(candidates, budgets):
        """
        Log of the largest error coefficient each plan can absorb from the given budgets.

        Args:
            candidates: (K, 4) screened plans
            budgets: remaining exact budgets

        Returns:
            (K,) array of floats, -inf where a budget is exhausted
        """

        logs = np.array([Domination.log(b) if b > 0 else -np.inf for b in budgets] + [0.0])

        i, j, lam = candidates[:, 0].astype(int), candidates[:, 1].astype(int), candidates[:, 2]
        single = j < 0

        # Singles use only the first budget, index -1 hits the padding entry
        with np.errstate(divide="ignore", invalid="ignore"):
            pair = lam * (logs[i] - np.log(lam)) + (1 - lam) * (logs[j] - np.log(np.where(single, 1.0, 1 - lam)))

        return np.where(single, logs[i], pair)

    @staticmethod
    def hardness(coef, candidates, budgets):
        """
        Ratio of an error coefficient to its best capacity, in logs.

        Returns:
            float
        """

        return Domination.log(abs(coef)) - np.max(Domination.capacity(candidates, budgets))

    @staticmethod
    def allocate(coef, error, candidates, positive, budgets, critical):
        """
        Picks the best plan for one error. Critical plans are charged to the budgets immediately, the others
        depend on the radius and are settled by the closing search.

        Args:
            coef: error coefficient
            error: error exponents
            candidates: screened plans
            positive: list of (exponents, coefficient)
            budgets: remaining exact budgets, updated in place
            critical: if the error has only weight zero plans

        Returns:
            Plan or None
        """

        capacity = Domination.capacity(candidates, budgets)
        score = capacity - Domination.log(abs(coef))
        if not critical:
            score = score / candidates[:, 3]

        # Best plans first, fall back to the next one when exact recomputation rejects a screened plan
        for k in np.argsort(-score, kind="stable"):
            if capacity[k] == -np.inf:
                break

            plan = Domination.plan(coef, error, candidates[k], positive, budgets)
            if plan and plan.critical() == critical:
                if critical:
                    indices = [int(candidates[k][0]), int(candidates[k][1])]
                    for index, (_, charge) in zip(indices, plan.charges()):
                        budgets[index] -= charge

                return plan

        return None

    @staticmethod
    def plan(coef, error, row, positive, budgets):
        """
        Exact plan for a screened candidate row.

        Args:
            coef: error coefficient
            error: error exponents
            row: (i, j, lambda, weight)
            positive: list of (exponents, coefficient)
            budgets: remaining budgets

        Returns:
            Plan or None if the exact check rejects the row
        """

        i, j = int(row[0]), int(row[1])
        first = positive[i][0]

        if j < 0:
            plan = Plan(error, coef, first, weight=Poly4.weight(error) - Poly4.weight(first))
            return plan if plan.valid() else None

        second = positive[j][0]
        lam = Domination.exactLambda(error, first, second)
        if lam is None:
            return None

        weight = Poly4.weight(error) - lam * Poly4.weight(first) - (1 - lam) * Poly4.weight(second)

        # Balance the two charges against the remaining budgets: s^q = (1-lam) b_i / (lam b_j)
        p, q = lam.numerator, lam.denominator
        if budgets[i] <= 0 or budgets[j] <= 0:
            return None

        logs = (Domination.log(1 - lam) + Domination.log(budgets[i]) - Domination.log(lam) - Domination.log(budgets[j])) / q
        s = Fraction(math.exp(min(max(logs, -600.0), 600.0)))

        plan = Plan(error, coef, first, second, lam, s, weight)
        return plan if plan.valid() else None

    @staticmethod
    def exactLambda(error, first, second):
        """
        Exact lambda for a pair plan using the same endpoint rule as the screening pass.

        Args:
            error: error exponents
            first: first positive exponents
            second: second positive exponents

        Returns:
            Fraction or None if infeasible
        """

        lower, upper = Fraction(0), Fraction(1)
        for b, f, g in zip(error, first, second):
            diff, num = f - g, b - g
            if diff > 0:
                upper = min(upper, Fraction(num, diff))
            elif diff < 0:
                lower = max(lower, Fraction(num, diff))
            elif num < 0:
                return None

        if lower > upper:
            return None

        dw = Poly4.weight(first) - Poly4.weight(second)
        lam = lower if dw > 0 else upper if dw < 0 else (lower + upper) / 2
        if lam in (0, 1):
            lam = upper if dw > 0 else lower

        return lam if 0 < lam < 1 else None

    @staticmethod
    def log(value):
        """
        Natural log of a positive Fraction without float overflow.

        Args:
            value: positive Fraction

        Returns:
            float
        """

        value = Fraction(value)
        return math.log(value.numerator) - math.log(value.denominator)
