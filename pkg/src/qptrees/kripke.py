"""Finite Kripke structures and proposition enumeration.

Two flavours of structure are supported:

* tree models, whose worlds are finite words over the naturals closed under
  word prefixes; the order is the prefix order and the root is the empty
  word;
* general finite posets with a least element, whose worlds are opaque
  string labels.

Worlds are stored sorted (lexicographically for words, string order for
labels) and propositions are handled internally as bit vectors over that
ordering, which fixes all enumeration orders.  Models are immutable after
construction and safe to share between threads.
"""

from __future__ import annotations

import json
from itertools import combinations
from typing import Iterable, Iterator

from .formula import INT, S4

NodeId = tuple[int, ...] | str  # tree nodes are words, poset nodes are labels

MODES = (INT, S4)


class ModelError(ValueError):
    """Base class for model construction and lookup failures."""


class ModelFormatError(ModelError):
    """The model description is malformed (bad JSON, bad shapes, bad types)."""


class NoLeastElementError(ModelError):
    """The order has no unique least element."""


class NotAPartialOrderError(ModelError):
    """The supplied edges are cyclic, so their closure is not antisymmetric."""


class NotPrefixClosedError(ModelError):
    """A word set declared as a tree is not closed under word prefixes."""


class ValuationNotPropositionError(ModelError):
    """An intuitionistic valuation image is not upward closed."""


class UnknownWorldError(ModelError):
    """A world id does not belong to the model."""


def _is_word(w) -> bool:
    return isinstance(w, tuple) and all(
        isinstance(i, int) and not isinstance(i, bool) and i >= 0 for i in w
    )


class Model:
    """A finite Kripke structure with root, order, valuation, and mode.

    `mode` is "int" (valuation images must be upward closed) or "s4"
    (arbitrary subsets).  Use :meth:`tree`, :meth:`poset`, or
    :func:`load_model` to build one.
    """

    __slots__ = (
        "kind", "mode", "worlds", "root", "valuation",
        "_index", "_up", "_full", "_val_masks", "_upsets",
    )

    def __init__(self, kind, mode, worlds, up, valuation):
        # Internal constructor: `worlds` sorted, `up` the reflexive order as
        # one successor bitmask per world.  Factories validate everything else.
        if mode not in MODES:
            raise ModelFormatError(f"unknown mode {mode!r}")
        self.kind = kind
        self.mode = mode
        self.worlds = tuple(worlds)
        self._up = tuple(up)
        self._full = (1 << len(self.worlds)) - 1
        self._index = {w: i for i, w in enumerate(self.worlds)}
        root_index = None
        for i, mask in enumerate(self._up):
            if mask == self._full:
                root_index = i
                break
        if root_index is None:
            raise NoLeastElementError("the order has no least element")
        self.root = self.worlds[root_index]
        self._upsets = None
        self.valuation = {}
        self._val_masks = {}
        for var in sorted(valuation or {}):
            mask = self._mask_of(valuation[var])
            if mode == INT and self._closure(mask) != mask:
                raise ValuationNotPropositionError(
                    f"valuation of {var!r} is not upward closed"
                )
            self.valuation[var] = self._set_of(mask)
            self._val_masks[var] = mask

    # -- factories ---------------------------------------------------------

    @classmethod
    def tree(cls, words: Iterable, valuation=None, mode: str = INT) -> "Model":
        """Build a tree model from a prefix-closed set of words."""
        ws = []
        for w in words:
            t = tuple(w)
            if not _is_word(t):
                raise ModelFormatError(f"not a word over the naturals: {w!r}")
            ws.append(t)
        if not ws:
            raise NoLeastElementError("a model needs at least one world")
        sorted_ws = sorted(ws)
        if len(set(sorted_ws)) != len(sorted_ws):
            raise ModelFormatError("duplicate worlds")
        have = set(sorted_ws)
        for w in sorted_ws:
            if w and w[:-1] not in have:
                raise NotPrefixClosedError(f"missing prefix of {w!r}")
        up = []
        for i, w in enumerate(sorted_ws):
            mask = 0
            for j, v in enumerate(sorted_ws):
                if v[: len(w)] == w:
                    mask |= 1 << j
            up.append(mask)
        return cls("tree", mode, sorted_ws, up, valuation)

    @classmethod
    def poset(cls, worlds: Iterable[str], edges, valuation=None, mode: str = INT) -> "Model":
        """Build a poset model; the order is the reflexive-transitive closure
        of `edges`, which must be acyclic and have a unique least element."""
        ws = list(worlds)
        for w in ws:
            if not isinstance(w, str) or not w:
                raise ModelFormatError(f"poset worlds must be nonempty strings: {w!r}")
        if not ws:
            raise NoLeastElementError("a model needs at least one world")
        sorted_ws = sorted(ws)
        if len(set(sorted_ws)) != len(sorted_ws):
            raise ModelFormatError("duplicate worlds")
        index = {w: i for i, w in enumerate(sorted_ws)}
        n = len(sorted_ws)
        up = [1 << i for i in range(n)]
        for e in edges:
            pair = tuple(e)
            if len(pair) != 2:
                raise ModelFormatError(f"edge is not a pair: {e!r}")
            a, b = pair
            if a not in index or b not in index:
                raise ModelFormatError(f"edge mentions unknown world: {e!r}")
            up[index[a]] |= 1 << index[b]
        # Warshall closure over bitmasks.
        for k in range(n):
            bit = 1 << k
            for i in range(n):
                if up[i] & bit:
                    up[i] |= up[k]
        for i, j in combinations(range(n), 2):
            if up[i] >> j & 1 and up[j] >> i & 1:
                raise NotAPartialOrderError(
                    f"cycle through {sorted_ws[i]!r} and {sorted_ws[j]!r}"
                )
        return cls("poset", mode, sorted_ws, up, valuation)

    # -- derived models ------------------------------------------------------

    def with_mode(self, mode: str) -> "Model":
        """The same structure reinterpreted in another mode."""
        return Model(self.kind, mode, self.worlds, self._up, self.valuation)

    def with_valuation(self, valuation) -> "Model":
        """The same structure with the valuation replaced wholesale."""
        return Model(self.kind, self.mode, self.worlds, self._up, valuation)

    def with_assignment(self, var: str, proposition) -> "Model":
        """The model that differs only in what it assigns to `var`."""
        valuation = dict(self.valuation)
        valuation[var] = frozenset(proposition)
        return Model(self.kind, self.mode, self.worlds, self._up, valuation)

    # -- lookups -------------------------------------------------------------

    def index_of(self, world) -> int:
        if isinstance(world, list):
            world = tuple(world)
        try:
            return self._index[world]
        except KeyError:
            raise UnknownWorldError(f"unknown world id: {world!r}") from None

    def above(self, world) -> frozenset:
        """All worlds greater than or equal to `world`."""
        return self._set_of(self._up[self.index_of(world)])

    def leaves(self) -> frozenset:
        """Worlds with no strict successor."""
        return frozenset(
            w for i, w in enumerate(self.worlds) if self._up[i] == 1 << i
        )

    # -- bitmask helpers (internal) -------------------------------------------

    def _mask_of(self, worlds) -> int:
        mask = 0
        for w in worlds:
            mask |= 1 << self.index_of(w)
        return mask

    def _set_of(self, mask: int) -> frozenset:
        return frozenset(
            self.worlds[i] for i in range(len(self.worlds)) if mask >> i & 1
        )

    def _closure(self, mask: int) -> int:
        acc = 0
        m = mask
        while m:
            i = (m & -m).bit_length() - 1
            acc |= self._up[i]
            m &= m - 1
        return acc

    def _linear_extension(self) -> list[int]:
        # Indices ordered so smaller elements come first; ties broken by index.
        n = len(self.worlds)
        preds = [0] * n
        for j in range(n):
            for i in range(n):
                if i != j and self._up[i] >> j & 1:
                    preds[j] |= 1 << i
        order, placed = [], 0
        while len(order) < n:
            for i in range(n):
                if not placed >> i & 1 and not preds[i] & ~placed:
                    order.append(i)
                    placed |= 1 << i
                    break
        return order

    def _upset_masks(self) -> tuple[int, ...]:
        """All upward-closed subsets as bitmasks, ascending.

        Enumerated by descending a linear extension from the maximal elements
        and branching on membership only when all strict successors are
        already in, so the cost is proportional to the number of upsets
        rather than to the full powerset.
        """
        if self._upsets is None:
            order = self._linear_extension()
            up = self._up
            found = []

            def descend(k: int, mask: int):
                if k < 0:
                    found.append(mask)
                    return
                i = order[k]
                descend(k - 1, mask)
                if up[i] & ~mask == 1 << i:
                    descend(k - 1, mask | 1 << i)

            descend(len(order) - 1, 0)
            self._upsets = tuple(sorted(found))
        return self._upsets

    def _subset_masks(self) -> range:
        return range(1 << len(self.worlds))

    # -- misc ----------------------------------------------------------------

    def to_obj(self) -> dict:
        """A JSON-ready description in the model file format."""
        obj = {"kind": self.kind}
        if self.kind == "tree":
            obj["worlds"] = [list(w) for w in self.worlds]
        else:
            obj["worlds"] = list(self.worlds)
            n = len(self.worlds)
            cover = []
            for i in range(n):
                for j in range(n):
                    if i == j or not self._up[i] >> j & 1:
                        continue
                    between = self._up[i] & ~(1 << i) & ~(1 << j)
                    if not any(
                        between >> k & 1 and self._up[k] >> j & 1 for k in range(n)
                    ):
                        cover.append([self.worlds[i], self.worlds[j]])
            obj["edges"] = cover
        obj["valuation"] = {
            var: [list(w) if self.kind == "tree" else w for w in sorted(image)]
            for var, image in self.valuation.items()
        }
        obj["mode"] = self.mode
        return obj

    def __eq__(self, other) -> bool:
        if not isinstance(other, Model):
            return NotImplemented
        return (
            self.kind == other.kind
            and self.mode == other.mode
            and self.worlds == other.worlds
            and self._up == other._up
            and self.valuation == other.valuation
        )

    def __hash__(self):
        return hash((self.kind, self.mode, self.worlds, self._up))

    def __repr__(self):
        return (
            f"Model(kind={self.kind!r}, mode={self.mode!r}, "
            f"worlds={len(self.worlds)}, root={self.root!r})"
        )


def chain(n: int, mode: str = INT) -> Model:
    """The linear tree with exactly `n` worlds."""
    if n < 1:
        raise ValueError("a chain needs at least one world")
    return Model.tree([(0,) * i for i in range(n)], {}, mode)


# --- the model file format -------------------------------------------------


def load_model(text: str) -> Model:
    """Parse a model from its JSON description.

    Format::

        {"kind": "tree" | "poset",
         "worlds": [...],            tree: arrays of naturals, [] is the root
         "edges": [[a, b], ...],     posets only; ignored for trees
         "valuation": {"p": [...]},  optional
         "mode": "int" | "s4"}       optional, defaults to "int"
    """
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise ModelFormatError(f"invalid JSON: {e}") from None
    if not isinstance(obj, dict):
        raise ModelFormatError("model description must be a JSON object")
    kind = obj.get("kind")
    if kind not in ("tree", "poset"):
        raise ModelFormatError(f"kind must be 'tree' or 'poset', got {kind!r}")
    worlds = obj.get("worlds")
    if not isinstance(worlds, list):
        raise ModelFormatError("worlds must be a list")
    mode = obj.get("mode", INT)
    raw_val = obj.get("valuation", {})
    if not isinstance(raw_val, dict):
        raise ModelFormatError("valuation must be an object")

    def decode_world(w):
        if kind == "tree":
            if not isinstance(w, list):
                raise ModelFormatError(f"tree worlds are arrays of naturals: {w!r}")
            return tuple(w)
        return w

    decoded = [decode_world(w) for w in worlds]
    valuation = {}
    for var, image in raw_val.items():
        if not isinstance(image, list):
            raise ModelFormatError(f"valuation of {var!r} must be a list")
        valuation[var] = [decode_world(w) for w in image]
    try:
        if kind == "tree":
            m = Model.tree(decoded, valuation, mode)
        else:
            edges = obj.get("edges", [])
            if not isinstance(edges, list):
                raise ModelFormatError("edges must be a list")
            m = Model.poset(decoded, edges, valuation, mode)
    except UnknownWorldError as e:
        raise ModelFormatError(str(e)) from None
    return m


def dump_model(m: Model) -> str:
    """Serialize a model; loading the result reproduces the model exactly."""
    return json.dumps(m.to_obj(), separators=(",", ":"))


# --- proposition operations --------------------------------------------------


def enumerate_upsets(m: Model) -> Iterator[frozenset]:
    """All upward-closed subsets of the world set, each exactly once,
    ordered by their characteristic bit vector over the sorted worlds."""
    for mask in m._upset_masks():
        yield m._set_of(mask)


def enumerate_subsets(m: Model) -> Iterator[frozenset]:
    """All subsets of the world set in the same deterministic order."""
    for mask in m._subset_masks():
        yield m._set_of(mask)


def upward_closure(m: Model, worlds) -> frozenset:
    """The least upward-closed superset of `worlds`."""
    return m._set_of(m._closure(m._mask_of(worlds)))
