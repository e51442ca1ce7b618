import random
from fractions import Fraction

import pytest
import sympy

from matchpoly.catalog import generate_regular, load_catalog_graphs, random_regular
from matchpoly.census import default_index_map
from matchpoly.formulas import (
    EQUATIONS,
    ERRATA,
    FORMULAS,
    FREE_IDS,
    PRINTED_FORMULAS,
    FormulaError,
    RegularParams,
    assemble_polynomial,
    closed_form,
    evaluate,
    system_consistency,
    theorem_pol,
    verify_formulas,
    verify_linear_system,
)
from matchpoly.graph import (
    complete_bipartite_graph,
    complete_graph,
    cycle_graph,
    disjoint_union,
    path_graph,
    petersen_graph,
)
from matchpoly.matching import matching_polynomial

SYMBOLS = sympy.symbols("n r c3 c4 c5 q")
N, R, C3 = SYMBOLS[0], SYMBOLS[1], SYMBOLS[2]


def symbolic(fid, table):
    if fid == (0, 0, 1):
        return sympy.Integer(1)
    if fid in FREE_IDS:
        return sympy.Symbol(FREE_IDS[fid])
    return sympy.sympify(table[fid], locals={s.name: s for s in SYMBOLS})


def symbolic_residuals(table):
    out = []
    for coef, lhs, terms in EQUATIONS:
        lhs_v = sympy.sympify(coef, locals={"n": N, "r": R}) * symbolic(lhs, table)
        rhs_v = sum(c * symbolic(fid, table) for c, fid in terms)
        out.append(sympy.expand(lhs_v - rhs_v))
    return out


def test_table_shape():
    assert len(PRINTED_FORMULAS) == 41
    assert len(EQUATIONS) == 24
    assert set(ERRATA) == {(5, 6, 3)}
    assert sum(1 for m, _, _ in FORMULAS if m == 5) == 24


def test_corrected_table_solves_every_equation_symbolically():
    assert all(res == 0 for res in symbolic_residuals(FORMULAS))


def test_printed_table_fails_only_one_equation_symbolically():
    res = symbolic_residuals(PRINTED_FORMULAS)
    bad = {i + 1: e for i, e in enumerate(res) if e != 0}
    assert list(bad) == [21]
    assert sympy.simplify(bad[21] + 30 * C3 * R**2) == 0


def test_evaluate_is_exact():
    env = {"n": Fraction(10), "r": Fraction(3)}
    assert evaluate("n*r/2", env) == 15
    assert evaluate("(n-1)/4", env) == Fraction(9, 4)
    with pytest.raises(FormulaError):
        evaluate("__import__('os')", env)


def test_closed_form_examples():
    p = RegularParams(10, 3, 0, 0, 12, 0)
    assert closed_form((1, 2, 1), p) == 15
    assert closed_form((2, 4, 1), p) == 75
    assert closed_form((5, 10, 1), p) == 6
    assert closed_form((5, 0, 1), p) == 12
    assert closed_form((0, 0, 1), p) == 1
    k4 = RegularParams(4, 3, 4, 3, 0, 6)
    assert closed_form((3, 6, 1), k4) == 0
    with pytest.raises(FormulaError):
        closed_form((6, 12, 1), p)


def test_headline_five_matching_formula_reduces():
    expr = FORMULAS[(5, 10, 1)]
    s = sympy.sympify(expr, locals={x.name: x for x in SYMBOLS})
    c3, c4, c5, q = SYMBOLS[2:]
    assert sympy.expand(s.subs({N: 10, R: 3})) == 18 - 3 * c3 - c4 - c5 + 4 * q


def test_params_validation():
    with pytest.raises(ValueError):
        RegularParams(5, 3, 0, 0, 0, 0)
    with pytest.raises(ValueError):
        RegularParams(4, 1, 1, 0, 0, 0)
    with pytest.raises(ValueError):
        RegularParams(4, 3, -1, 0, 0, 0)
    p = RegularParams.from_graph(complete_graph(4))
    assert (p.c3, p.c4, p.c5, p.q) == (4, 3, 0, 6)


def _all_ok(g, formulas=None):
    res = verify_formulas(g, formulas=formulas)
    eqs = verify_linear_system(g)
    return [r for r in res if not r.ok], [e for e in eqs if not e.ok]


@pytest.mark.parametrize(
    "g",
    [petersen_graph(), complete_graph(4), complete_bipartite_graph(3, 3), complete_graph(6)],
    ids=["petersen", "K4", "K33", "K6"],
)
def test_residuals_vanish_on_named_graphs(g):
    assert _all_ok(g) == ([], [])


def test_residuals_vanish_on_cycle_unions():
    for g in [cycle_graph(7), disjoint_union(cycle_graph(3), cycle_graph(3)), disjoint_union(cycle_graph(3), cycle_graph(5))]:
        assert _all_ok(g) == ([], [])


def test_residuals_vanish_on_random_regular():
    rng = random.Random(7)
    for _ in range(20):
        r = rng.choice([4, 5])
        n = rng.choice([k for k in range(r + 1, 13) if k * r % 2 == 0])
        assert _all_ok(random_regular(n, r, rng)) == ([], [])


def test_printed_table_passes_without_triangles():
    bad, _ = _all_ok(petersen_graph(), PRINTED_FORMULAS)
    assert bad == []
    bad, _ = _all_ok(complete_graph(4), PRINTED_FORMULAS)
    assert [r.fid for r in bad] == [(5, 6, 3)]


def test_verify_rejects_irregular():
    with pytest.raises(ValueError):
        verify_formulas(path_graph(4))


def test_system_consistency_corrected_table():
    for p in [RegularParams(10, 3, 0, 0, 12, 0), RegularParams(4, 3, 4, 3, 0, 6), RegularParams(12, 5, 7, 2, 9, 1)]:
        assert all(v == 0 for v in system_consistency(p))
    assert any(v != 0 for v in system_consistency(RegularParams(4, 3, 4, 3, 0, 6), PRINTED_FORMULAS))


def test_assemble_polynomial_examples():
    assert str(assemble_polynomial(RegularParams(10, 3, 0, 0, 12, 0))) == "x^10-15x^8+75x^6-145x^4+90x^2-6"
    for g in generate_regular(8, 3) + generate_regular(9, 4):
        assert assemble_polynomial(RegularParams.from_graph(g)) == matching_polynomial(g)


def test_assemble_polynomial_errors():
    with pytest.raises(FormulaError, match="n <= 11"):
        assemble_polynomial(RegularParams(12, 3, 0, 0, 0, 0))
    with pytest.raises(FormulaError, match="negative"):
        assemble_polynomial(RegularParams(10, 3, 0, 0, 40, 0))


def test_theorem_pol():
    p = RegularParams(10, 3, 0, 0, 12, 0)
    assert str(theorem_pol(p)) == "x^10-15x^8+75x^6-145x^4+90x^2-6"
    for g in load_catalog_graphs():
        q = RegularParams.from_graph(g)
        assert theorem_pol(q) == matching_polynomial(g) == assemble_polynomial(q)
    with pytest.raises(FormulaError):
        theorem_pol(RegularParams(8, 3, 0, 0, 0, 0))


def test_default_mapping_covers_equation_ids():
    ids = {fid for _, lhs, terms in EQUATIONS for fid in [lhs] + [f for _, f in terms]}
    ids.discard((0, 0, 1))
    assert ids <= set(default_index_map().by_id)
