"""Closed forms for subgraph counts g_{m,k,i} in r-regular graphs.

The expressions are stored as text and evaluated with exact rationals. Variables: ``n`` (order), ``r`` (degree), ``c3`` (triangles,
g_{3,0,1}), ``c4`` (4-cycles, g_{4,0,1}), ``c5`` (5-cycles, g_{5,0,1}) and
``q`` (diamonds K4-e, g_{5,0,2}).

``PRINTED_FORMULAS`` is the published text. One entry is wrong: the triangle
term of g_{5,6,3} has ``-252*r**2`` where both the re-attachment equations and
brute-force counts require ``-282*r**2``. ``FORMULAS`` is the printed table
with that erratum applied and is what everything uses by default.
"""
from __future__ import annotations

import ast
import operator
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from .census import CensusTable, IndexMapping, census, default_index_map
from .graph import Graph, is_regular
from .matching import MatchingPolynomial, polynomial_from_coefficients

FormulaId = tuple[int, int, int]

PRINTED_FORMULAS: dict[FormulaId, str] = {
    (1, 2, 1): "n*r/2",
    (2, 2, 1): "n*(r-1)*r/2",
    (2, 4, 1): "n*r/8*(n*r-4*r+2)",
    (3, 2, 1): "n*(r-1)**2*r/2 - 3*c3",
    (3, 3, 1): "n*(r-2)*(r-1)*r/6",
    (3, 4, 1): "n*(r-1)*r*(n*r-6*r+4)/4 + 3*c3",
    (3, 6, 1): "n*r/48*(n**2*r**2-12*n*r**2+40*r**2+6*n*r-48*r+16) - c3",
    (4, 1, 1): "(3*r-6)*c3",
    (4, 2, 1): "(n*r/2-3*r+3)*c3",
    (4, 2, 2): "n*(r-1)**3*r/2 + (-6*r+9)*c3 - 4*c4",
    (4, 3, 1): "n*(r-2)*(r-1)**2*r/2 + (-6*r+12)*c3",
    (4, 4, 1): "n*(r-1)**2*r*(n*r-8*r+6)/4 + (-3*n*r/2+18*r-21)*c3 + 4*c4",
    (4, 4, 2): "n*(r-3)*(r-2)*(r-1)*r/24",
    (4, 4, 3): "n*(r-1)**2*r*(n*r-9*r+8)/8 + (6*r-9)*c3 + 2*c4",
    (4, 5, 1): "n*(r-2)*(r-1)*r*(n*r-8*r+6)/12 + (3*r-6)*c3",
    (4, 6, 1): (
        "n*(r-1)*r*(n**2*r**2-16*n*r**2+72*r**2+10*n*r-104*r+40)/16"
        " + (3*n*r/2-21*r+24)*c3 - 4*c4"
    ),
    (4, 8, 1): (
        "n*r/384*(n**3*r**3-24*n**2*r**3+208*n*r**3-672*r**3+12*n**2*r**2"
        "-240*n*r**2+1344*r**2+76*n*r-960*r+240) + (-n*r/2+6*r-6)*c3 + c4"
    ),
    (5, 1, 1): "(4*r-8)*c4 - 2*q",
    (5, 1, 2): "(3*r**2-9*r+6)*c3 - 4*q",
    (5, 2, 1): "(n*r/2-4*r+4)*c4 + q",
    (5, 2, 2): "n*(r-1)**4*r/2 + (-9*r**2+24*r-15)*c3 + (-8*r+12)*c4 - 5*c5 + 6*q",
    (5, 2, 3): "((n*r**2-9*r**2-n*r+21*r-12)/2)*c3 + 2*q",
    (5, 2, 4): "(3*r**2-12*r+12)*c3 - 2*q",
    (5, 2, 5): "((3*r**2-15*r+18)/2)*c3",
    (5, 3, 1): "n*(r-2)*(r-1)**3*r/2 + (-9*r**2+33*r-30)*c3 + (-8*r+16)*c4 + 4*q",
    (5, 3, 2): "n*(r-2)*(r-1)**3*r/2 + (-12*r**2+39*r-30)*c3 + (-4*r+8)*c4 + 8*q",
    (5, 3, 3): "(3*n*r**2/2-12*r**2-3*n*r+36*r-24)*c3 + 4*q",
    (5, 4, 1): (
        "n*(r-1)**3*r*(n*r-10*r+8)/4 + (-3*n*r**2+39*r**2+9*n*r/2-99*r+60)*c3"
        " + (-2*n*r+28*r-32)*c4 + 5*c5 - 14*q"
    ),
    (5, 4, 2): (
        "n*(r-1)**3*r*(n*r-12*r+12)/4 + ((-3*n*r**2+78*r**2+3*n*r-204*r+132)/2)*c3"
        " + (16*r-24)*c4 + 5*c5 - 14*q"
    ),
    (5, 4, 3): "n*(r-2)**2*(r-1)**2*r/8 + (-3*r**2+12*r-12)*c3 + q",
    (5, 4, 4): "n*(r-3)*(r-2)*(r-1)**2*r/6 + (-3*r**2+15*r-18)*c3",
    (5, 4, 5): "((n**2*r**2-16*n*r**2+72*r**2+14*n*r-144*r+72)/8)*c3 - 2*q",
    (5, 5, 1): (
        "n*(r-2)*(r-1)**2*r*(n*r-10*r+8)/4 + (-3*n*r**2+42*r**2+6*n*r-132*r+96)*c3"
        " + (8*r-16)*c4 - 12*q"
    ),
    (5, 5, 2): (
        "n*(r-2)*(r-1)**2*r*(n*r-12*r+12)/12 + (9*r**2-33*r+30)*c3 + (4*r-8)*c4 - 2*q"
    ),
    (5, 5, 3): "n*(r-4)*(r-3)*(r-2)*(r-1)*r/120",
    (5, 6, 1): "n*(r-3)*(r-2)*(r-1)*r*(n*r-10*r+8)/48 + ((6*r**2-30*r+36)/4)*c3",
    (5, 6, 2): (
        "n*(r-1)**2*r*(n**2*r**2-20*n*r**2+112*r**2+14*n*r-176*r+72)/16"
        " + ((-3*n**2*r**2+84*n*r**2-696*r**2-90*n*r+1584*r-888)/8)*c3"
        " + (2*n*r-32*r+36)*c4 - 5*c5 + 20*q"
    ),
    (5, 6, 3): (
        "n*(r-1)**2*r*(n**2*r**2-21*n*r**2+126*r**2+16*n*r-216*r+96)/16"
        " + ((18*n*r**2-252*r**2-24*n*r+714*r-444)/4)*c3"
        " + (n*r-28*r+36)*c4 - 5*c5 + 17*q"
    ),
    (5, 7, 1): (
        "n*(r-2)*(r-1)*r*(n**2*r**2-20*n*r**2+112*r**2+14*n*r-176*r+72)/48"
        " + (3*n*r**2/2-21*r**2-3*n*r+66*r-48)*c3 + (-4*r+8)*c4 + 4*q"
    ),
    (5, 8, 1): (
        "n*(r-1)*r*(n**3*r**3-30*n**2*r**3+328*n*r**3-1344*r**3+18*n**2*r**2"
        "-444*n*r**2+3072*r**2+160*n*r-2448*r+672)/96"
        " + ((3*n**2*r**2-100*n*r**2+888*r**2+106*n*r-1968*r+1080)/8)*c3"
        " + (-2*n*r+36*r-40)*c4 + 5*c5 - 20*q"
    ),
    (5, 10, 1): (
        "n*r/3840*(n**4*r**4-40*n**3*r**4+640*n**2*r**4-4960*n*r**4+16128*r**4"
        "+20*n**3*r**3-720*n**2*r**3+9440*n*r**3-46080*r**3+220*n**2*r**2"
        "-6400*n*r**2+51840*r**2+1520*n*r-26880*r+5376)"
        " + ((-5*n**2*r**2+140*n*r**2-1080*r**2-130*n*r+2160*r-1080)/40)*c3"
        " + (n*r/2-8*r+8)*c4 - c5 + 4*q"
    ),
}

ERRATA: dict[FormulaId, str] = {
    (5, 6, 3): PRINTED_FORMULAS[(5, 6, 3)].replace("-252*r**2", "-282*r**2"),
}

FORMULAS: dict[FormulaId, str] = {**PRINTED_FORMULAS, **ERRATA}

# Each equation: (lhs coefficient, lhs id, [(rhs coefficient, rhs id), ...])
EQUATIONS: list[tuple[str, FormulaId, list[tuple[int, FormulaId]]]] = [
    ("4*(r-2)", (4, 0, 1), [(1, (5, 1, 1)), (2, (5, 0, 2))]),
    ("1*(r-1)", (4, 1, 1), [(1, (5, 1, 2)), (4, (5, 0, 2))]),
    ("(n-4)*r", (4, 0, 1), [(2, (5, 2, 1)), (1, (5, 1, 1))]),
    ("2*(r-1)", (4, 2, 2), [(2, (5, 2, 2)), (2, (5, 1, 2)), (2, (5, 1, 1)), (10, (5, 0, 1))]),
    ("2*(r-1)", (4, 2, 1), [(2, (5, 2, 3)), (1, (5, 1, 2))]),
    ("2*(r-2)", (4, 1, 1), [(2, (5, 2, 4)), (4, (5, 0, 2))]),
    ("1*(r-3)", (4, 1, 1), [(2, (5, 2, 5))]),
    ("2*(r-2)", (4, 2, 2), [(2, (5, 3, 1)), (2, (5, 1, 1)), (2, (5, 2, 4))]),
    ("2*(r-1)", (4, 3, 1), [(2, (5, 3, 2)), (2, (5, 1, 2)), (2, (5, 2, 4)), (2, (5, 1, 1))]),
    ("3*(r-2)", (4, 2, 1), [(1, (5, 3, 3)), (1, (5, 1, 2))]),
    ("2*(r-1)", (4, 4, 1), [(2, (5, 4, 1)), (2, (5, 3, 3)), (8, (5, 2, 1)), (2, (5, 2, 2))]),
    ("4*(r-1)", (4, 4, 3), [(2, (5, 4, 2)), (6, (5, 2, 3)), (2, (5, 2, 2)), (1, (5, 3, 1))]),
    ("1*(r-2)", (4, 3, 1), [(4, (5, 4, 3)), (2, (5, 2, 4))]),
    ("1*(r-3)", (4, 3, 1), [(3, (5, 4, 4)), (2, (5, 2, 5))]),
    ("(n-5)*r", (4, 2, 1), [(4, (5, 4, 5)), (2, (5, 2, 3)), (1, (5, 3, 3))]),
    ("3*(r-1)", (4, 5, 1), [(1, (5, 5, 1)), (2, (5, 3, 3)), (1, (5, 3, 1))]),
    ("2*(r-2)", (4, 4, 3), [(3, (5, 5, 2)), (1, (5, 3, 1)), (2, (5, 4, 3))]),
    ("1*(r-4)", (4, 4, 2), [(5, (5, 5, 3))]),
    ("1*(r-3)", (4, 5, 1), [(4, (5, 6, 1)), (1, (5, 4, 4))]),
    ("2*(r-1)", (4, 6, 1), [(2, (5, 6, 2)), (6, (5, 4, 5)), (2, (5, 4, 1))]),
    ("4*(r-1)", (4, 6, 1), [(4, (5, 6, 3)), (2, (5, 4, 1)), (1, (5, 5, 1)), (2, (5, 4, 2))]),
    ("1*(r-2)", (4, 6, 1), [(3, (5, 7, 1)), (1, (5, 5, 1))]),
    ("8*(r-1)", (4, 8, 1), [(2, (5, 8, 1)), (2, (5, 6, 2))]),
    ("(n-8)*r", (4, 8, 1), [(10, (5, 10, 1)), (2, (5, 8, 1))]),
]

FREE_IDS = {(3, 0, 1): "c3", (4, 0, 1): "c4", (5, 0, 1): "c5", (5, 0, 2): "q"}

MATCHING_IDS = {0: (0, 0, 1), 1: (1, 2, 1), 2: (2, 4, 1), 3: (3, 6, 1), 4: (4, 8, 1), 5: (5, 10, 1)}

MAX_ASSEMBLY_ORDER = 11


class FormulaError(ValueError):
    pass


@dataclass(frozen=True)
class RegularParams:
    n: int
    r: int
    c3: int = 0
    c4: int = 0
    c5: int = 0
    q: int = 0

    def __post_init__(self) -> None:
        if self.n < 0 or self.r < 0:
            raise ValueError("n and r must be nonnegative")
        if (self.n * self.r) % 2:
            raise ValueError(f"n*r must be even (n={self.n}, r={self.r})")
        if min(self.c3, self.c4, self.c5, self.q) < 0:
            raise ValueError("structure counts must be nonnegative")
        if self.r < 2 and (self.c3 or self.c4 or self.c5 or self.q):
            raise ValueError("graphs of degree below 2 have no cycles")

    @classmethod
    def from_census(cls, table: CensusTable, n: int, r: int) -> "RegularParams":
        if table.max_edges < 5:
            raise ValueError("structure counts need a census through five edges")
        return cls(n, r, table["K3"], table["C4"], table["C5"], table["K4-e"])

    @classmethod
    def from_graph(cls, g: Graph) -> "RegularParams":
        r = _require_regular(g)
        return cls.from_census(census(g), g.n, r)

    def env(self) -> dict[str, Fraction]:
        return {k: Fraction(getattr(self, k)) for k in ("n", "r", "c3", "c4", "c5", "q")}


def _require_regular(g: Graph) -> int:
    r = is_regular(g)
    if r is None:
        raise FormulaError("graph is not regular")
    return r


_BINOPS = {
    ast.Add: operator.add,
    ast.Sub: operator.sub,
    ast.Mult: operator.mul,
    ast.Div: operator.truediv,
    ast.Pow: operator.pow,
}


@lru_cache(maxsize=None)
def _parse(expr: str) -> ast.expr:
    return ast.parse(expr, mode="eval").body


def evaluate(expr: str, env: dict[str, Fraction]) -> Fraction:
    """Exact evaluation of an arithmetic expression over Fractions."""

    def ev(node: ast.expr) -> Fraction:
        if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            return _BINOPS[type(node.op)](ev(node.left), ev(node.right))
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            val = ev(node.operand)
            return -val if isinstance(node.op, ast.USub) else val
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return Fraction(node.value)
        if isinstance(node, ast.Name):
            return env[node.id]
        raise FormulaError(f"unsupported syntax in {expr!r}")

    return ev(_parse(expr))


def closed_form(fid: FormulaId, p: RegularParams, formulas: Optional[dict] = None) -> Fraction:
    """Value of the published expression for g_{m,k,i} at ``p``.

    The free counts and g_{0,0,1} = 1 are also accepted so that every index
    appearing in the equations can be evaluated.
    """
    fid = tuple(fid)
    if fid == (0, 0, 1):
        return Fraction(1)
    if fid in FREE_IDS:
        return Fraction(getattr(p, FREE_IDS[fid]))
    try:
        expr = (FORMULAS if formulas is None else formulas)[fid]
    except KeyError:
        raise FormulaError(f"no published formula for g{fid}") from None
    return evaluate(expr, p.env())


@dataclass(frozen=True)
class Residual:
    fid: FormulaId
    closed_form: Fraction
    census: Optional[int]  # None when no class could be identified with fid

    @property
    def residual(self) -> Optional[Fraction]:
        return None if self.census is None else self.closed_form - self.census

    @property
    def ok(self) -> bool:
        return self.census is not None and self.residual == 0

    def record(self) -> dict:
        return {
            "formula": "g_{%d,%d,%d}" % self.fid,
            "closed_form": str(self.closed_form),
            "census": self.census,
            "residual": None if self.residual is None else str(self.residual),
        }


@dataclass(frozen=True)
class EquationResidual:
    index: int  # 1-based position in EQUATIONS
    lhs: Fraction
    rhs: Optional[Fraction]
    missing: tuple[FormulaId, ...] = ()

    @property
    def residual(self) -> Optional[Fraction]:
        return None if self.rhs is None else self.lhs - self.rhs

    @property
    def ok(self) -> bool:
        return not self.missing and self.residual == 0

    def record(self) -> dict:
        return {
            "equation": self.index,
            "lhs": str(self.lhs),
            "rhs": None if self.rhs is None else str(self.rhs),
            "residual": None if self.residual is None else str(self.residual),
            "missing": ["g_{%d,%d,%d}" % f for f in self.missing],
        }


def census_value(table: CensusTable, fid: FormulaId, mapping: IndexMapping) -> Optional[int]:
    if tuple(fid) == (0, 0, 1):
        return 1
    cls = mapping.by_id.get(tuple(fid))
    return None if cls is None else table[cls]


def verify_formulas(
    g: Graph,
    table: Optional[CensusTable] = None,
    mapping: Optional[IndexMapping] = None,
    formulas: Optional[dict] = None,
) -> list[Residual]:
    """Residual of every closed form against the brute-force census.

    ``formulas`` defaults to the corrected table; pass ``PRINTED_FORMULAS`` to
    check the published text as is.
    """
    r = _require_regular(g)
    table = census(g) if table is None else table
    mapping = default_index_map() if mapping is None else mapping
    p = RegularParams.from_census(table, g.n, r)
    formulas = FORMULAS if formulas is None else formulas
    return [
        Residual(fid, closed_form(fid, p, formulas), census_value(table, fid, mapping))
        for fid in formulas
    ]


def verify_linear_system(
    g: Graph, table: Optional[CensusTable] = None, mapping: Optional[IndexMapping] = None
) -> list[EquationResidual]:
    """Both sides of every re-attachment equation, from census counts only."""
    r = _require_regular(g)
    table = census(g) if table is None else table
    mapping = default_index_map() if mapping is None else mapping
    env = {"n": Fraction(g.n), "r": Fraction(r)}
    out = []
    for idx, (coef, lhs_id, terms) in enumerate(EQUATIONS, start=1):
        ids = [lhs_id] + [fid for _, fid in terms]
        vals = {fid: census_value(table, fid, mapping) for fid in ids}
        missing = tuple(fid for fid, v in vals.items() if v is None)
        lhs = evaluate(coef, env) * (vals[lhs_id] or 0)
        rhs = None if missing else sum((Fraction(c * vals[fid]) for c, fid in terms), Fraction(0))
        out.append(EquationResidual(idx, lhs, rhs, missing))
    return out


def system_consistency(p: RegularParams, formulas: Optional[dict] = None) -> list[Fraction]:
    """Residuals of the equations with every count replaced by its closed form."""
    env = {"n": Fraction(p.n), "r": Fraction(p.r)}
    return [
        evaluate(coef, env) * closed_form(lhs_id, p, formulas)
        - sum((c * closed_form(fid, p, formulas) for c, fid in terms), Fraction(0))
        for coef, lhs_id, terms in EQUATIONS
    ]


def _as_count(value: Fraction, what: str) -> int:
    if value.denominator != 1:
        raise FormulaError(f"{what} evaluates to non-integer {value}")
    if value < 0:
        raise FormulaError(f"{what} evaluates to negative {value}; parameters are inconsistent")
    return int(value)


def assemble_polynomial(p: RegularParams) -> MatchingPolynomial:
    """Matching polynomial of an r-regular graph from its structure counts."""
    if p.n > MAX_ASSEMBLY_ORDER:
        raise FormulaError(
            f"n={p.n}: matchings of size {p.n // 2} have no closed form (n <= {MAX_ASSEMBLY_ORDER})"
        )
    rho = [
        _as_count(closed_form(MATCHING_IDS[m], p), "g_{%d,%d,%d}" % MATCHING_IDS[m])
        for m in range(p.n // 2 + 1)
    ]
    return MatchingPolynomial(p.n, tuple(rho))


def theorem_pol(p: RegularParams) -> MatchingPolynomial:
    """Displayed matching polynomial of a cubic graph on ten vertices."""
    if (p.n, p.r) != (10, 3):
        raise FormulaError(f"only defined for n=10, r=3 (got n={p.n}, r={p.r})")
    coeffs = {
        10: 1,
        8: -15,
        6: 75,
        4: -145 + p.c3,
        2: 90 - 3 * p.c3 + p.c4,
        0: -18 + 3 * p.c3 + p.c4 + p.c5 - 4 * p.q,
    }
    return polynomial_from_coefficients(10, coeffs)
