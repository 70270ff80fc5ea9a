"""Exact evaluation of propositionally quantified Goedel-Dummett logics over
finite truth-value sets.

Truth values are exact rationals from a finite set V with 0 and 1 included;
conjunction is min, disjunction max, implication is 1 when the antecedent
does not exceed the consequent and the consequent's value otherwise, and the
propositional quantifiers take the min/max over all of V (attained, since V
is finite).  Everything is computed with Fraction, never floats: the case
split in the implication clause has to be exact.

Only finite V is supported.  Infinite truth-value sets can only be
approximated by finite truncations here, and truncation genuinely changes
the resulting logic, so no such approximation is done implicitly.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

from .formula import (
    INT,
    And,
    Bottom,
    Box,
    Diamond,
    Exists,
    Forall,
    Formula,
    Implies,
    LanguageError,
    OpenFormulaError,
    Or,
    UnboundVariableError,
    Var,
    free_vars,
    is_modal,
    print_formula,
)
from .kripke import chain
from .semantics import validates

ONE = Fraction(1)
ZERO = Fraction(0)

TruthValueSet = tuple  # strictly sorted tuple of Fractions with 0 and 1


def make_truth_values(values: Iterable) -> TruthValueSet:
    """Validate and sort a finite truth-value set."""
    vs = sorted({Fraction(v) for v in values})
    if any(v < 0 or v > 1 for v in vs):
        raise ValueError("truth values must lie in [0, 1]")
    if not vs or vs[0] != 0 or vs[-1] != 1:
        raise ValueError("a truth-value set must contain 0 and 1")
    return tuple(vs)


def parse_truth_values(text: str) -> TruthValueSet:
    """Parse a comma-separated list of rationals such as "0,1/3,1/2,1"."""
    parts = [p.strip() for p in text.split(",")]
    try:
        return make_truth_values(Fraction(p) for p in parts)
    except ZeroDivisionError:
        raise ValueError(f"bad truth value in {text!r}") from None


def evenly_spaced(k: int) -> TruthValueSet:
    """The k+1 equally spaced values 0, 1/k, ..., 1."""
    if k < 1:
        raise ValueError("need k >= 1")
    return make_truth_values(Fraction(i, k) for i in range(k + 1))


def _eval(f: Formula, val: dict, values: TruthValueSet) -> Fraction:
    if isinstance(f, Var):
        try:
            return val[f.name]
        except KeyError:
            raise UnboundVariableError(f"no value assigned to {f.name!r}") from None
    if isinstance(f, Bottom):
        return ZERO
    if isinstance(f, And):
        return min(_eval(f.left, val, values), _eval(f.right, val, values))
    if isinstance(f, Or):
        return max(_eval(f.left, val, values), _eval(f.right, val, values))
    if isinstance(f, Implies):
        a = _eval(f.left, val, values)
        b = _eval(f.right, val, values)
        return ONE if a <= b else b
    if isinstance(f, (Forall, Exists)):
        pick = min if isinstance(f, Forall) else max
        sentinel = object()
        saved = val.get(f.var, sentinel)
        try:
            return pick(_eval_with(f.body, val, values, f.var, w) for w in values)
        finally:
            if saved is sentinel:
                val.pop(f.var, None)
            else:
                val[f.var] = saved
    if isinstance(f, (Box, Diamond)):
        raise LanguageError("modal operators have no many-valued reading here")
    raise TypeError(f"not a formula node: {f!r}")


def _eval_with(f, val, values, var, w):
    val[var] = w
    return _eval(f, val, values)


def godel_eval(valuation: Mapping[str, object], f: Formula, values) -> Fraction:
    """The exact truth value of `f` under `valuation` over the set `values`.

    All images of the valuation must belong to the truth-value set; free
    variables of `f` must be covered.
    """
    if is_modal(f):
        raise LanguageError("modal operators have no many-valued reading here")
    vs = make_truth_values(values)
    val = {}
    for name, w in valuation.items():
        x = Fraction(w)
        if x not in vs:
            raise ValueError(f"valuation of {name!r} is {x}, not a truth value")
        val[name] = x
    return _eval(f, val, vs)


def chain_correspondence(k: int, f: Formula) -> tuple[bool, bool]:
    """Check a closed formula against the two faces of linearity at size k.

    First component: `f` holds in every Kripke model on the k-element chain
    (a closed formula needs no valuation, and there is exactly one chain of
    each size).  Second component: `f` evaluates to 1 over the k+1 equally
    spaced truth values.  The k+1 upward-closed subsets of the chain match
    the k+1 truth values order for order, so the components always agree.
    """
    if k < 1:
        raise ValueError("need k >= 1")
    if is_modal(f):
        raise LanguageError("expected an intuitionistic formula")
    if free_vars(f):
        raise OpenFormulaError(
            f"expected a closed formula, got {print_formula(f)!r}"
        )
    on_chain = validates(chain(k, INT), f)
    many_valued = godel_eval({}, f, evenly_spaced(k)) == ONE
    return on_chain, many_valued
