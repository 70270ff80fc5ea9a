"""Forcing and extensions for both logics.

Propositional quantifiers are evaluated by exhaustive enumeration: over all
upward-closed subsets of the worlds in intuitionistic mode, over all subsets
in S4 mode.  Evaluation computes the extension of each subformula bottom-up
as a bit vector (one pass per subformula at a fixed assignment) and memoizes
subformula extensions keyed by the assignment restricted to their free
variables, so quantifier nesting does not re-evaluate closed parts.
"""

from __future__ import annotations

from dataclasses import dataclass

from .formula import (
    INT,
    S4,
    And,
    Bottom,
    Box,
    Diamond,
    Exists,
    Forall,
    Formula,
    Implies,
    LanguageError,
    Or,
    UnboundVariableError,
    Var,
    free_vars,
    is_modal,
)
from .kripke import Model


@dataclass(frozen=True)
class Extension:
    """The set of worlds at which a formula holds in a fixed model."""

    formula: Formula
    worlds: frozenset


def _ext(m: Model, f: Formula, val: dict, memo: dict, s4: bool) -> int:
    try:
        key = (f,) + tuple((v, val[v]) for v in sorted(free_vars(f)))
    except KeyError as missing:
        raise UnboundVariableError(
            f"no proposition assigned to variable {missing.args[0]!r}"
        ) from None
    cached = memo.get(key)
    if cached is not None:
        return cached

    up = m._up
    full = m._full
    n = len(m.worlds)

    if isinstance(f, Var):
        result = val[f.name]
    elif isinstance(f, Bottom):
        result = 0
    elif isinstance(f, And):
        result = _ext(m, f.left, val, memo, s4) & _ext(m, f.right, val, memo, s4)
    elif isinstance(f, Or):
        result = _ext(m, f.left, val, memo, s4) | _ext(m, f.right, val, memo, s4)
    elif isinstance(f, Implies):
        a = _ext(m, f.left, val, memo, s4)
        b = _ext(m, f.right, val, memo, s4)
        if s4:
            result = (full & ~a) | b
        else:
            # h is in the extension iff no successor of h satisfies the
            # antecedent without the consequent.
            bad = a & ~b
            result = 0
            for i in range(n):
                if not up[i] & bad:
                    result |= 1 << i
    elif isinstance(f, (Forall, Exists)):
        propositions = m._subset_masks() if s4 else m._upset_masks()
        p = f.var
        sentinel = object()
        saved = val.get(p, sentinel)
        if isinstance(f, Forall):
            result = full
            for mask in propositions:
                val[p] = mask
                result &= _ext(m, f.body, val, memo, s4)
                if not result:
                    break
        else:
            result = 0
            for mask in propositions:
                val[p] = mask
                result |= _ext(m, f.body, val, memo, s4)
                if result == full:
                    break
        if saved is sentinel:
            del val[p]
        else:
            val[p] = saved
    elif isinstance(f, Box):
        if not s4:
            raise LanguageError("box encountered in intuitionistic evaluation")
        b = _ext(m, f.body, val, memo, s4)
        result = 0
        for i in range(n):
            if not up[i] & ~b:
                result |= 1 << i
    elif isinstance(f, Diamond):
        if not s4:
            raise LanguageError("dia encountered in intuitionistic evaluation")
        b = _ext(m, f.body, val, memo, s4)
        result = 0
        for i in range(n):
            if up[i] & b:
                result |= 1 << i
    else:
        raise TypeError(f"not a formula node: {f!r}")

    memo[key] = result
    return result


def _extension_mask(m: Model, f: Formula, s4: bool) -> int:
    return _ext(m, f, dict(m._val_masks), {}, s4)


def _require_mode(m: Model, mode: str):
    if m.mode != mode:
        raise ValueError(f"model is in {m.mode!r} mode, expected {mode!r}")


def extension_int(m: Model, f: Formula) -> Extension:
    """Worlds at which `f` holds intuitionistically; always upward closed."""
    _require_mode(m, INT)
    if is_modal(f):
        raise LanguageError("box/dia encountered in intuitionistic evaluation")
    mask = _extension_mask(m, f, s4=False)
    assert m._closure(mask) == mask, "intuitionistic extension not upward closed"
    return Extension(f, m._set_of(mask))


def extension_s4(m: Model, f: Formula) -> Extension:
    """Worlds at which `f` holds under the S4 reading."""
    _require_mode(m, S4)
    return Extension(f, m._set_of(_extension_mask(m, f, s4=True)))


def forces_int(m: Model, world, f: Formula) -> bool:
    """Does `f` hold at `world` in the intuitionistic model `m`?"""
    _require_mode(m, INT)
    if is_modal(f):
        raise LanguageError("box/dia encountered in intuitionistic evaluation")
    i = m.index_of(world)
    mask = _extension_mask(m, f, s4=False)
    assert m._closure(mask) == mask, "intuitionistic extension not upward closed"
    return bool(mask >> i & 1)


def forces_s4(m: Model, world, f: Formula) -> bool:
    """Does `f` hold at `world` in the S4 model `m`?"""
    _require_mode(m, S4)
    i = m.index_of(world)
    return bool(_extension_mask(m, f, s4=True) >> i & 1)


def validates(m: Model, f: Formula) -> bool:
    """Truth at the root, under the model's own mode."""
    if m.mode == INT:
        return forces_int(m, m.root, f)
    return forces_s4(m, m.root, f)
