"""Upper bounds on the number of acyclic orientations.

gamma comes from the staircase x_1^{|C_1|-2} ... x_k^{|C_k|-2} of the
fundamental circuits; beta is the Kahale-Schulman degree product; the
classical bounds are prod(deg v + 1) and 2^q.
"""

from __future__ import annotations

import decimal
from dataclasses import dataclass, field
from decimal import Decimal
from fractions import Fraction
from math import comb, prod
from typing import Callable, Sequence

from .algebra import lower_ideal_by_degree, verify_nbc
from .chromatic import acyclic_count, f_h_vectors
from .families import phi_nt, theta_nt
from .graph import GraphError, OrderedGraph, fundamental_circuits
from .poly import unit

BETA_PRECISION = 40
SIG_DIGITS = 12


class BoundsError(GraphError):
    pass


# ---------------------------------------------------------------------------
# l-vector and gamma


@dataclass(frozen=True)
class LVector:
    values: tuple[int, ...]
    circuit_sizes: tuple[int, ...]

    def __getitem__(self, d: int) -> int:
        return self.values[d] if 0 <= d < len(self.values) else 0

    def __len__(self) -> int:
        return len(self.values)

    @property
    def top(self) -> int:
        return len(self.values) - 1

    def is_symmetric(self) -> bool:
        return self.values == self.values[::-1]

    def is_unimodal(self) -> bool:
        v = self.values
        peak = v.index(max(v))
        return all(a <= b for a, b in zip(v[:peak], v[1:peak + 1])) and all(
            a >= b for a, b in zip(v[peak:], v[peak + 1:])
        )


def staircase_polynomial(sizes: Sequence[int]) -> tuple[int, ...]:
    """Coefficients of prod (1 + y + ... + y^{s-2}) over the sizes s."""
    coeffs = [1]
    for s in sizes:
        if s < 2:
            raise BoundsError(f"fundamental circuit of size {s}: loops have no staircase factor")
        width = s - 1
        out = [0] * (len(coeffs) + width - 1)
        for i, c in enumerate(coeffs):
            for j in range(width):
                out[i + j] += c
        coeffs = out
    return tuple(coeffs)


def l_vector(g: OrderedGraph) -> LVector:
    if not g.is_standard:
        raise BoundsError("l-vector needs a standard ordering")
    sizes = tuple(len(c) for c in fundamental_circuits(g))
    return LVector(staircase_polynomial(sizes), sizes)


def gamma_from_l(lv: LVector, p: int) -> int:
    return sum(lv[d] << (p - d - 1) for d in range(p))


def gamma_bound(g: OrderedGraph, lv: LVector | None = None) -> int:
    """sum_{d < p} l_d 2^{p-d-1}."""
    return gamma_from_l(lv or l_vector(g), g.p)


def gamma_by_enumeration(g: OrderedGraph) -> int:
    """gamma again, counting the staircase monomials one by one."""
    sizes = [len(c) for c in fundamental_circuits(g)]
    gens = [unit(g.k, i, s - 1) for i, s in enumerate(sizes, 1)]
    levels = lower_ideal_by_degree(g.k, gens)
    return sum(len(level) << (g.p - d - 1) for d, level in enumerate(levels) if d < g.p)


def binomial_l_bound(k: int, d: int) -> int:
    """Number of degree-d monomials in k variables; bounds every l_d."""
    if k == 0:
        return 1 if d == 0 else 0
    return comb(d + k - 1, k - 1)


# ---------------------------------------------------------------------------
# degree bounds


def fredman_bound(g: OrderedGraph) -> int:
    deg = g.degrees()
    return prod(deg[v] + 1 for v in range(1, g.p + 1))


def trivial_bound(g: OrderedGraph) -> int:
    return 1 << g.q


def beta_bound(g: OrderedGraph, precision: int = BETA_PRECISION) -> Decimal:
    """prod (deg v + 1) * prod over edges uw of exp(-1 / (2 (deg u + 1)(deg w + 1)))."""
    deg = g.degrees()
    with decimal.localcontext() as ctx:
        ctx.prec = precision
        exponent = Decimal(0)
        for u, w in g.edges:
            exponent -= Decimal(1) / (2 * (deg[u] + 1) * (deg[w] + 1))
        return Decimal(fredman_bound(g)) * exponent.exp()


def format_sig(x, digits: int = SIG_DIGITS) -> str:
    """A real number with ``digits`` significant digits, fixed notation when reasonable."""
    if isinstance(x, Fraction):
        with decimal.localcontext() as ctx:
            ctx.prec = BETA_PRECISION
            x = Decimal(x.numerator) / Decimal(x.denominator)
    x = Decimal(x)
    if x == 0:
        return "0"
    with decimal.localcontext() as ctx:
        ctx.prec = digits
        r = +x
    exp = r.adjusted()
    if -6 <= exp < digits:
        return f"{r:.{max(digits - 1 - exp, 0)}f}"
    return f"{r:.{digits - 1}e}"


# ---------------------------------------------------------------------------
# reports


@dataclass(frozen=True)
class BoundReport:
    p: int
    q: int
    k: int
    gamma: int
    beta: Decimal
    fredman: int
    two_q: int
    l_vector: tuple[int, ...]
    alpha: int | None = None
    h_vector: tuple[int, ...] | None = None
    certified: bool | None = None  # True when an NBC certificate backs alpha <= gamma

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "q": self.q,
            "k": self.k,
            "alpha": self.alpha,
            "gamma": self.gamma,
            "beta": format_sig(self.beta),
            "fredman": self.fredman,
            "two_q": self.two_q,
            "l_vector": list(self.l_vector),
            "h_vector": None if self.h_vector is None else list(self.h_vector),
            "certified": self.certified,
        }

    def violations(self) -> list[str]:
        """Bound inequalities that fail; empty for a consistent report."""
        bad = []
        if self.alpha is not None:
            if self.alpha > self.two_q:
                bad.append("alpha > 2^q")
            if self.alpha > self.fredman:
                bad.append("alpha > fredman")
            if self.certified and self.alpha > self.gamma:
                bad.append("alpha > gamma on a certified ordering")
        return bad


def bound_report(g: OrderedGraph, with_exact: bool = False, certify: bool = False) -> BoundReport:
    lv = l_vector(g)
    alpha = h = None
    if with_exact:
        if g.has_loop:
            alpha = 0
        else:
            h = f_h_vectors(g).h_vector
            alpha = acyclic_count(g)
    certified = verify_nbc(g).verified if certify else None
    return BoundReport(
        p=g.p,
        q=g.q,
        k=g.k,
        gamma=gamma_bound(g, lv),
        beta=beta_bound(g),
        fredman=fredman_bound(g),
        two_q=trivial_bound(g),
        l_vector=lv.values,
        alpha=alpha,
        h_vector=h,
        certified=certified,
    )


# ---------------------------------------------------------------------------
# family tables

CSV_HEADER = ("param", "p", "q", "k", "alpha", "gamma", "beta", "fredman", "two_q", "gamma_ratio", "beta_ratio")


@dataclass(frozen=True)
class FamilyRow:
    param: int
    report: BoundReport
    gamma_step: Fraction | None = None  # gamma(param) / gamma(previous param)
    beta_step: Decimal | None = None

    @property
    def gamma_ratio(self) -> Fraction | None:
        """gamma / alpha."""
        a = self.report.alpha
        return None if not a else Fraction(self.report.gamma, a)

    @property
    def beta_ratio(self) -> Fraction:
        """beta / gamma, exact up to the precision of beta."""
        return Fraction(self.report.beta) / self.report.gamma

    def csv_fields(self) -> list[str]:
        r = self.report
        return [
            str(self.param),
            str(r.p),
            str(r.q),
            str(r.k),
            "" if r.alpha is None else str(r.alpha),
            str(r.gamma),
            format_sig(r.beta),
            str(r.fredman),
            str(r.two_q),
            "" if self.gamma_ratio is None else format_sig(self.gamma_ratio),
            format_sig(self.beta_ratio),
        ]


@dataclass
class FamilyTable:
    family: str
    rows: list[FamilyRow]
    checks: dict[str, bool] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def to_csv(self) -> str:
        lines = [",".join(CSV_HEADER)]
        lines += [",".join(row.csv_fields()) for row in self.rows]
        return "\n".join(lines) + "\n"


FAMILY_BUILDERS: dict[str, tuple[Callable[[int], OrderedGraph], int, int]] = {
    # name: (builder, smallest parameter, largest parameter allowed)
    "theta_n3": (lambda n: theta_nt(n, 3), 1, 40),
    "theta_2t": (lambda t: theta_nt(2, t), 2, 40),
    "phi_n2": (lambda n: phi_nt(n, 2), 4, 60),
    "phi_4t": (lambda t: phi_nt(4, t), 1, 60),
}


def theta_2t_l(d: int, t: int) -> int:
    """l(d, t) for Theta_{2,t}: coefficient of y^d in (1 + y + y^2)^{t-1}."""
    return staircase_polynomial([4] * (t - 1))[d] if 0 <= d <= 2 * (t - 1) else 0


def family_asymptotics(family: str, params: Sequence[int], exact: bool = True) -> FamilyTable:
    """Bound table for one of theta_n3, theta_2t, phi_n2, phi_4t over ``params``."""
    if family not in FAMILY_BUILDERS:
        raise BoundsError(f"unknown family {family!r}; choose from {sorted(FAMILY_BUILDERS)}")
    build, lo, hi = FAMILY_BUILDERS[family]
    params = list(params)
    if not params:
        raise BoundsError("empty parameter range")
    if min(params) < lo or max(params) > hi:
        raise BoundsError(f"{family} parameters must lie in {lo}..{hi}")
    rows: list[FamilyRow] = []
    for x in params:
        g = build(x)
        rep = bound_report(g, with_exact=exact)
        gstep = bstep = None
        if rows and rows[-1].param == x - 1:
            prev = rows[-1].report
            gstep = Fraction(rep.gamma, prev.gamma)
            with decimal.localcontext() as ctx:
                ctx.prec = BETA_PRECISION
                bstep = rep.beta / prev.beta
        rows.append(FamilyRow(x, rep, gstep, bstep))

    table = FamilyTable(family, rows)
    checks = table.checks
    for row in rows:
        r = row.report
        if r.alpha is not None:
            checks[f"alpha<=gamma@{row.param}"] = r.alpha <= r.gamma
    if family == "theta_2t":
        for row in rows:
            t = row.param
            lv = row.report.l_vector
            checks[f"trinomial@{t}"] = lv == staircase_polynomial([4] * (t - 1))
            checks[f"recurrence@{t}"] = all(
                theta_2t_l(d, t + 1) == theta_2t_l(d, t) + theta_2t_l(d - 1, t) + theta_2t_l(d - 2, t)
                for d in range(0, 2 * t + 1)
            )
            if row.gamma_step is not None:
                checks[f"gamma_step>13/4@{t}"] = row.gamma_step > Fraction(13, 4)
    if family == "phi_4t":
        for row in rows:
            checks[f"gamma<=2*8^t@{row.param}"] = row.report.gamma <= 2 * 8 ** row.param
    if family in ("theta_n3", "phi_n2"):
        # Theta_{1,3} is three parallel edges with gamma = alpha; the trend starts at n = 2
        start = 2 if family == "theta_n3" else lo
        ratios = [row.gamma_ratio for row in rows if row.gamma_ratio is not None and row.param >= start]
        checks["gamma/alpha decreasing"] = all(a > b for a, b in zip(ratios, ratios[1:]))
    return table
