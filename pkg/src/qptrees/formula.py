"""AST, parser, and printer for the two object languages.

The intuitionistic language has variables, `bot`, `&`, `|`, `->` and the
propositional quantifiers `forall p` / `exists p`.  The modal (S4) language
adds the unary operators `box` and `dia`.  Negation is not a node of its
own: `~A` is sugar for `A -> bot` both when parsing and when printing.

Concrete grammar (ASCII only)::

    formula := impl
    impl    := or ("->" impl)?             # right associative
    or      := and ("|" and)*
    and     := unary ("&" unary)*
    unary   := "~" unary | "box" unary | "dia" unary
             | "forall" ident unary | "exists" ident unary | atom
    atom    := ident | "bot" | "(" formula ")"
    ident   := [a-z][a-zA-Z0-9_]*          # keywords excluded
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache

INT = "int"
S4 = "s4"
LANGUAGES = (INT, S4)

_KEYWORDS = frozenset({"bot", "forall", "exists", "box", "dia"})
_IDENT = re.compile(r"[a-z][a-zA-Z0-9_]*")


class FormulaSyntaxError(ValueError):
    """Malformed concrete syntax; `offset` is the byte position of the fault."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte {offset})")
        self.offset = offset


class LanguageError(ValueError):
    """Modal syntax used where only the intuitionistic language is allowed,
    or more generally a formula whose language does not match the requested
    evaluation mode."""


class UnboundVariableError(ValueError):
    """A propositional variable has no entry in the relevant assignment."""


class OpenFormulaError(ValueError):
    """An operation that requires a closed formula was given an open one."""


def _check_name(name: str) -> str:
    if not isinstance(name, str) or _IDENT.fullmatch(name) is None or name in _KEYWORDS:
        raise ValueError(f"invalid variable name: {name!r}")
    return name


@dataclass(frozen=True)
class Var:
    name: str

    def __post_init__(self):
        _check_name(self.name)


@dataclass(frozen=True)
class Bottom:
    pass


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Implies:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Forall:
    var: str
    body: "Formula"

    def __post_init__(self):
        _check_name(self.var)


@dataclass(frozen=True)
class Exists:
    var: str
    body: "Formula"

    def __post_init__(self):
        _check_name(self.var)


@dataclass(frozen=True)
class Box:
    body: "Formula"


@dataclass(frozen=True)
class Diamond:
    body: "Formula"


Formula = Var | Bottom | And | Or | Implies | Forall | Exists | Box | Diamond


def neg(f: Formula) -> Formula:
    """Negation as the standard abbreviation: ~A is A -> bot."""
    return Implies(f, Bottom())


@lru_cache(maxsize=None)
def free_vars(f: Formula) -> frozenset[str]:
    """Free propositional variables of `f`; quantifiers bind."""
    if isinstance(f, Var):
        return frozenset((f.name,))
    if isinstance(f, Bottom):
        return frozenset()
    if isinstance(f, (And, Or, Implies)):
        return free_vars(f.left) | free_vars(f.right)
    if isinstance(f, (Forall, Exists)):
        return free_vars(f.body) - {f.var}
    if isinstance(f, (Box, Diamond)):
        return free_vars(f.body)
    raise TypeError(f"not a formula node: {f!r}")


@lru_cache(maxsize=None)
def is_modal(f: Formula) -> bool:
    """True if `f` contains a box or diamond anywhere."""
    if isinstance(f, (Box, Diamond)):
        return True
    if isinstance(f, (And, Or, Implies)):
        return is_modal(f.left) or is_modal(f.right)
    if isinstance(f, (Forall, Exists)):
        return is_modal(f.body)
    if isinstance(f, (Var, Bottom)):
        return False
    raise TypeError(f"not a formula node: {f!r}")


def language_of(f: Formula) -> str:
    """The smallest language the formula belongs to.

    Formulas without modal operators belong to both languages; they are
    reported as intuitionistic and may be read in S4 mode as well.
    """
    return S4 if is_modal(f) else INT


# --- parsing -------------------------------------------------------------


def _byte_offset(text: str, i: int) -> int:
    return len(text[:i].encode("utf-8"))


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c in " \t\r\n":
            i += 1
            continue
        if c in "()&|~":
            tokens.append((c, c, i))
            i += 1
            continue
        if c == "-":
            if text.startswith("->", i):
                tokens.append(("->", "->", i))
                i += 2
                continue
            raise FormulaSyntaxError("expected '->'", _byte_offset(text, i))
        m = _IDENT.match(text, i)
        if m is not None:
            word = m.group()
            kind = word if word in _KEYWORDS else "ident"
            tokens.append((kind, word, i))
            i = m.end()
            continue
        raise FormulaSyntaxError(f"unexpected character {c!r}", _byte_offset(text, i))
    tokens.append(("end", "", n))
    return tokens


class _Parser:
    def __init__(self, text: str, lang: str):
        self.text = text
        self.lang = lang
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self) -> str:
        return self.tokens[self.pos][0]

    def next(self) -> tuple[str, str, int]:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def fail(self, message: str):
        offset = self.tokens[self.pos][2]
        raise FormulaSyntaxError(message, _byte_offset(self.text, offset))

    def formula(self) -> Formula:
        f = self.impl()
        if self.peek() != "end":
            self.fail(f"unexpected {self.tokens[self.pos][1]!r} after formula")
        return f

    def impl(self) -> Formula:
        left = self.disj()
        if self.peek() == "->":
            self.next()
            return Implies(left, self.impl())
        return left

    def disj(self) -> Formula:
        f = self.conj()
        while self.peek() == "|":
            self.next()
            f = Or(f, self.conj())
        return f

    def conj(self) -> Formula:
        f = self.unary()
        while self.peek() == "&":
            self.next()
            f = And(f, self.unary())
        return f

    def unary(self) -> Formula:
        kind = self.peek()
        if kind == "~":
            self.next()
            return neg(self.unary())
        if kind in ("box", "dia"):
            _, word, offset = self.next()
            if self.lang != S4:
                raise LanguageError(
                    f"{word!r} is not part of the intuitionistic language "
                    f"(byte {_byte_offset(self.text, offset)})"
                )
            body = self.unary()
            return Box(body) if kind == "box" else Diamond(body)
        if kind in ("forall", "exists"):
            self.next()
            if self.peek() != "ident":
                self.fail("expected a variable after quantifier")
            _, name, _ = self.next()
            body = self.unary()
            return Forall(name, body) if kind == "forall" else Exists(name, body)
        return self.atom()

    def atom(self) -> Formula:
        kind = self.peek()
        if kind == "ident":
            _, name, _ = self.next()
            return Var(name)
        if kind == "bot":
            self.next()
            return Bottom()
        if kind == "(":
            self.next()
            f = self.impl()
            if self.peek() != ")":
                self.fail("expected ')'")
            self.next()
            return f
        self.fail("expected a formula")


def parse_formula(text: str, lang: str = INT) -> Formula:
    """Parse `text` in the given language ("int" or "s4").

    Raises FormulaSyntaxError on malformed input and LanguageError when a
    modal operator appears under the intuitionistic language tag.
    """
    if lang not in LANGUAGES:
        raise ValueError(f"unknown language tag {lang!r}")
    return _Parser(text, lang).formula()


# --- printing ------------------------------------------------------------

# Precedence contexts: 1 implication, 2 disjunction, 3 conjunction,
# 4 prefix operators and quantifiers, 5 atoms.


def _print(f: Formula, ctx: int) -> str:
    if isinstance(f, Var):
        return f.name
    if isinstance(f, Bottom):
        return "bot"
    if isinstance(f, Implies) and isinstance(f.right, Bottom):
        return "~" + _print(f.left, 4)
    if isinstance(f, Implies):
        s, prec = _print(f.left, 2) + " -> " + _print(f.right, 1), 1
    elif isinstance(f, Or):
        s, prec = _print(f.left, 2) + " | " + _print(f.right, 3), 2
    elif isinstance(f, And):
        s, prec = _print(f.left, 3) + " & " + _print(f.right, 4), 3
    elif isinstance(f, Forall):
        s, prec = f"forall {f.var} " + _print(f.body, 4), 4
    elif isinstance(f, Exists):
        s, prec = f"exists {f.var} " + _print(f.body, 4), 4
    elif isinstance(f, Box):
        s, prec = "box " + _print(f.body, 4), 4
    elif isinstance(f, Diamond):
        s, prec = "dia " + _print(f.body, 4), 4
    else:
        raise TypeError(f"not a formula node: {f!r}")
    return "(" + s + ")" if prec < ctx else s


def print_formula(f: Formula) -> str:
    """Render `f` with minimal parentheses; reparsing yields `f` again."""
    return _print(f, 1)
