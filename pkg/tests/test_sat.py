import random
import re

import pytest

from idcodes import sat, solve, verify

import oracles

ONE = sat.CnfFormula(3, [(1, -2, 3)])


def test_reduction_sizes():
    g, k, names = sat.reduce_3sat(ONE)
    assert (g.n, k) == (20, 10)
    assert g.num_edges == 3 * 6 + 1 + 3
    assert names["alpha1"] == 18 and names["beta1"] == 19 and names["xbar2"] == 7


def test_variable_gadget():
    g, _, _ = sat.reduce_3sat(sat.CnfFormula(1, []))
    assert g.n == 6 and g.edges() == [(0, 3), (0, 4), (1, 3), (1, 4), (2, 3), (4, 5)]


def test_layout_file_is_one_based():
    text = sat.format_layout(sat.layout(ONE))
    assert text.splitlines()[0] == "x1 1" and text.splitlines()[-1] == "beta1 20"


def test_dimacs_round_trip():
    text = "c hi\np cnf 4 2\n1 -2 3 0\n-1 2 4 0\n"
    f = sat.parse_dimacs(text)
    assert f.clauses == ((1, -2, 3), (-1, 2, 4))
    assert sat.parse_dimacs(sat.format_dimacs(f)) == f


def test_dimacs_clause_may_span_lines():
    assert sat.parse_dimacs("p cnf 3 1\n1 2\n3 0\n").clauses == ((1, 2, 3),)


@pytest.mark.parametrize("text", [
    "1 2 3 0\n",
    "p cnf 3 1\n1 2 0\n",
    "p cnf 3 1\n1 2 4 0\n",
    "p cnf 3 1\n1 1 2 0\n",
    "p cnf 3 2\n1 2 3 0\n",
    "p cnf 3 1\n1 2 3\n",
    "p cnf 3 1\n1 2 x 0\n",
    "p dnf 3 1\n1 2 3 0\n",
])
def test_dimacs_errors(text):
    with pytest.raises(sat.SatError):
        sat.parse_dimacs(text)


def test_code_from_assignment():
    f = sat.CnfFormula(4, [(1, 2, 3), (-1, -3, 4), (2, -3, -4)])
    g, k, names = sat.reduce_3sat(f)
    assignment = sat.brute_sat(f)
    code = sat.code_from_assignment(f, assignment)
    assert code.bit_count() == k
    assert verify.is_identifying(g, code, 1)
    required = [v for name, v in names.items() if re.fullmatch(r"(alpha|b|c)\d+", name)]
    assert all(code >> v & 1 for v in required)
    assert sat.assignment_from_code(f, code) == assignment
    with pytest.raises(sat.SatError):
        sat.code_from_assignment(f, [False] * 4)


def test_optimal_codes_decode():
    rng = random.Random(11)
    for _ in range(10):
        clauses = []
        for _ in range(rng.randint(1, 3)):
            vars_ = rng.sample(range(1, 5), 3)
            clauses.append(tuple(v if rng.random() < 0.5 else -v for v in vars_))
        f = sat.CnfFormula(4, clauses)
        g, k, _ = sat.reduce_3sat(f)
        rep = solve.min_id_code(g, 1)
        assert rep.optimum == k
        assert f.satisfied_by(sat.assignment_from_code(f, rep.certificate))


def test_decode_rejects_bad_codes():
    g, k, _ = sat.reduce_3sat(ONE)
    with pytest.raises(sat.SatError):
        sat.assignment_from_code(ONE, g.vertex_mask)
    with pytest.raises(sat.SatError):
        sat.assignment_from_code(ONE, 1)


def test_reduced_graphs_are_twin_free():
    for f in sat.all_formulas(3, 2):
        g, _, _ = sat.reduce_3sat(f)
        assert g.twin_pair(1) is None


def test_unsat_example_has_no_small_code():
    f = sat.unsat_example()
    assert sat.brute_sat(f) is None
    g, k, _ = sat.reduce_3sat(f)
    assert solve.min_id_code(g, 1).optimum > k


def test_brute_sat():
    assert sat.brute_sat(ONE) == [False, False, False]
    assert sat.brute_sat(sat.CnfFormula(3, [(1, 2, 3)])) == [False, False, True]
    assert sat.brute_sat(sat.CnfFormula(2, [])) == [False, False]
    with pytest.raises(sat.SatError):
        sat.brute_sat(sat.CnfFormula(21, []))


def test_brute_sat_agrees_with_oracle():
    for f in sat.all_formulas(3, 3)[::7]:
        assert (sat.brute_sat(f) is not None) == oracles.satisfiable(f.num_vars, f.clauses)


def test_formula_validation():
    with pytest.raises(sat.SatError):
        sat.CnfFormula(3, [(1, 2)])
    with pytest.raises(sat.SatError):
        ONE.satisfied_by([True])
