import random
from fractions import Fraction

import pytest

from helpers import random_formula
from qptrees.formula import (
    Box,
    LanguageError,
    OpenFormulaError,
    Var,
    parse_formula,
)
from qptrees.godel import (
    chain_correspondence,
    evenly_spaced,
    godel_eval,
    make_truth_values,
    parse_truth_values,
)
from qptrees.suite import QEM

LC_INSTANCE = parse_formula("(p -> q) | (q -> p)")
HALF = Fraction(1, 2)


def test_truth_value_set_validation():
    assert make_truth_values(["0", "1/2", "1"]) == (0, HALF, 1)
    with pytest.raises(ValueError):
        make_truth_values(["0", "1/2"])  # missing 1
    with pytest.raises(ValueError):
        make_truth_values(["1/2", "1"])  # missing 0
    with pytest.raises(ValueError):
        make_truth_values(["0", "1", "3/2"])
    assert parse_truth_values("0, 1/3 ,1") == (0, Fraction(1, 3), 1)
    with pytest.raises(ValueError):
        parse_truth_values("0,1/0,1")


def test_evenly_spaced():
    assert evenly_spaced(1) == (0, 1)
    assert evenly_spaced(4) == (0, Fraction(1, 4), HALF, Fraction(3, 4), 1)


def test_implication_clause():
    v3 = make_truth_values(["0", "1/2", "1"])
    assert godel_eval({"p": HALF, "q": 1}, parse_formula("p -> q"), v3) == 1
    assert godel_eval({"p": 1, "q": HALF}, parse_formula("p -> q"), v3) == HALF
    assert godel_eval({"p": HALF, "q": HALF}, parse_formula("p -> q"), v3) == 1


def test_min_max_and_negation():
    v3 = make_truth_values(["0", "1/2", "1"])
    assert godel_eval({"p": HALF, "q": 1}, parse_formula("p & q"), v3) == HALF
    assert godel_eval({"p": HALF, "q": 1}, parse_formula("p | q"), v3) == 1
    assert godel_eval({"p": HALF}, parse_formula("~p"), v3) == 0
    assert godel_eval({"p": 0}, parse_formula("~p"), v3) == 1
    assert godel_eval({}, parse_formula("bot"), v3) == 0


def test_quantified_excluded_middle_on_three_values():
    assert godel_eval({}, QEM, ["0", "1/2", "1"]) == HALF


def test_quantifiers_attain_min_and_max():
    v4 = make_truth_values(["0", "1/3", "2/3", "1"])
    assert godel_eval({}, parse_formula("exists p p"), v4) == 1
    assert godel_eval({}, parse_formula("forall p p"), v4) == 0
    assert godel_eval({}, parse_formula("exists p (p & ~~p)"), v4) == 1


def test_linearity_instance_always_one():
    rng = random.Random(61)
    for _ in range(200):
        k = rng.randint(1, 6)
        values = evenly_spaced(k)
        valuation = {v: rng.choice(values) for v in ("p", "q")}
        assert godel_eval(valuation, LC_INSTANCE, values) == 1


def test_linearity_schema_always_one():
    # (A -> B) | (B -> A) for random subformulas A, B and irregular sets
    from qptrees.formula import Implies, Or

    rng = random.Random(62)
    for _ in range(100):
        values = random_values(rng)
        a = random_formula(rng, 2, quantifiers=1)
        b = random_formula(rng, 2, quantifiers=1)
        schema = Or(Implies(a, b), Implies(b, a))
        valuation = {v: rng.choice(values) for v in ("p", "q", "r")}
        assert godel_eval(valuation, schema, values) == 1


def random_values(rng):
    extra = {Fraction(rng.randint(1, 99), 100) for _ in range(rng.randint(0, 4))}
    return make_truth_values({0, 1} | extra)


def test_closure_under_evaluation():
    rng = random.Random(63)
    for _ in range(100):
        values = random_values(rng)
        f = random_formula(rng, 3, quantifiers=2)
        valuation = {v: rng.choice(values) for v in ("p", "q", "r")}
        assert godel_eval(valuation, f, values) in values


def test_exact_rationals_not_floats():
    got = godel_eval({"p": Fraction(1, 3)}, Var("p"), ["0", "1/3", "1"])
    assert isinstance(got, Fraction) and got == Fraction(1, 3)


def test_valuation_must_map_into_the_set():
    with pytest.raises(ValueError):
        godel_eval({"p": HALF}, Var("p"), ["0", "1"])


def test_unbound_and_modal_errors():
    from qptrees.formula import UnboundVariableError

    with pytest.raises(UnboundVariableError):
        godel_eval({}, Var("p"), ["0", "1"])
    with pytest.raises(LanguageError):
        godel_eval({}, Box(Var("p")), ["0", "1"])


def test_chain_correspondence_k1():
    assert chain_correspondence(1, QEM) == (True, True)


def test_chain_correspondence_k2():
    assert chain_correspondence(2, QEM) == (False, False)


def test_chain_correspondence_linearity():
    closed_lc = parse_formula("forall p forall q ((p -> q) | (q -> p))")
    for k in range(1, 6):
        assert chain_correspondence(k, closed_lc) == (True, True)


def test_chain_correspondence_agrees_on_random_formulas():
    rng = random.Random(64)
    for _ in range(60):
        k = rng.randint(1, 5)
        f = random_formula(rng, 3, closed=True, quantifiers=2)
        a, b = chain_correspondence(k, f)
        assert a == b


def test_chain_correspondence_input_checks():
    with pytest.raises(OpenFormulaError):
        chain_correspondence(2, Var("p"))
    with pytest.raises(ValueError):
        chain_correspondence(0, QEM)


def test_order_isomorphic_sets_same_tautologies():
    # only the order structure of the truth-value set matters
    rng = random.Random(65)
    regular = evenly_spaced(3)
    irregular = make_truth_values(["0", "1/10", "9/10", "1"])
    for _ in range(80):
        f = random_formula(rng, 3, closed=True, quantifiers=2)
        assert (godel_eval({}, f, regular) == 1) == (godel_eval({}, f, irregular) == 1)
