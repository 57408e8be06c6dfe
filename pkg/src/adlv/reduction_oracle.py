"""Dimensions of X_w(b) for all b by Deligne-Lusztig reduction over W~.

Each node of the reduction tree is a class of elements connected by
length-preserving sigma-twists ``w -> s w sigma(s)`` and ``w -> tau w
sigma(tau)^-1``.  Either some member admits a twist that drops the length by
two (a split into ``s x`` and ``s x sigma(s)``), or the whole class consists of
minimal-length elements and the answer is read off directly.
"""

from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass, field

from .affine_weyl import AffineElement, AffineWeylGroup
from .sigma_classes import ClassInvariant, class_leq, class_of_element, class_sort_key

__all__ = [
    "BudgetExhausted", "InvariantViolation", "Descent", "DimTable", "Oracle",
    "is_minimal", "DEFAULT_BUDGET",
]

DEFAULT_BUDGET = 10**7


class BudgetExhausted(RuntimeError):
    pass


class InvariantViolation(AssertionError):
    pass


@dataclass(frozen=True)
class Descent:
    """Result of exploring the length-preserving twist class of an element.

    ``kind`` is ``"minimal"`` or ``"split"``; for a split, ``element`` is the
    class member ``x`` with ``l(s x sigma(s)) = l(x) - 2`` and ``path`` the
    twist labels leading from the start element to ``x``.
    """
    kind: str
    element: AffineElement
    s: int | None = None
    path: tuple[str, ...] = ()
    members: tuple[AffineElement, ...] = field(default=(), repr=False)


@dataclass
class DimTable:
    """``{class: dim X_w(b)}``; absent classes are empty."""
    w: AffineElement
    entries: dict[ClassInvariant, int]

    def __contains__(self, b) -> bool:
        return b in self.entries

    def __getitem__(self, b) -> int:
        return self.entries[b]

    def get(self, b, default=None):
        return self.entries.get(b, default)

    def keys(self):
        return self.entries.keys()

    def items(self):
        return self.entries.items()

    def sorted_items(self, W: AffineWeylGroup):
        return sorted(self.entries.items(), key=lambda kv: class_sort_key(W, kv[0]))


def explore(W: AffineWeylGroup, w: AffineElement, policy: str = "first") -> Descent:
    """Breadth-first closure of ``w`` under length-preserving sigma-twists."""
    L = W.length(w)
    parent: dict[AffineElement, tuple[AffineElement, str] | None] = {w: None}
    order = [w]
    queue = deque([w])
    splits: list[tuple[AffineElement, int]] = []
    while queue:
        x = queue.popleft()
        for label, y in W.iter_sigma_twists(x):
            ly = W.length(y)
            if ly == L:
                if y not in parent:
                    parent[y] = (x, label)
                    order.append(y)
                    queue.append(y)
            elif ly < L:
                splits.append((x, int(label[1:])))
                if ly != L - 2 or not label.startswith("s"):
                    raise InvariantViolation(f"twist {label} of {x} changed length {L} -> {ly}")
        if splits and policy == "first":
            break
    if not splits:
        return Descent("minimal", w, members=tuple(order))
    x, s = splits[0] if policy == "first" else splits[-1]
    path = []
    cur = x
    while parent[cur] is not None:
        prev, label = parent[cur]
        path.append(label)
        cur = prev
    return Descent("split", x, s, tuple(reversed(path)), tuple(order))


def is_minimal(W: AffineWeylGroup, w: AffineElement) -> bool:
    return explore(W, w).kind == "minimal"


def find_descent(W: AffineWeylGroup, w: AffineElement, policy: str = "first") -> Descent:
    return explore(W, w, policy)


class Oracle:
    """Memoized reduction-tree evaluator for one group and one split policy.

    ``policy`` selects which eligible split is used: ``"first"`` takes the
    first member in breadth-first order and the first simple reflection in
    ``s_0, ..., s_n`` order; ``"last"`` explores the full class and takes the
    last one.
    """

    def __init__(self, W: AffineWeylGroup, policy: str = "first", budget: int | None = None):
        if policy not in ("first", "last"):
            raise ValueError(f"unknown policy {policy!r}")
        self.W = W
        self.policy = policy
        if budget is None:
            budget = int(os.environ.get("ADLV_BUDGET", DEFAULT_BUDGET))
        if budget < 1:
            raise ValueError("budget must be >= 1")
        self.budget = budget
        self._key: dict[AffineElement, AffineElement] = {}
        self._tables: dict[AffineElement, dict[ClassInvariant, int]] = {}
        self._minimal: dict[AffineElement, bool] = {}
        self._nodes = 0

    @property
    def nodes(self) -> int:
        return self._nodes

    def _charge(self, k: int) -> None:
        self._nodes += k
        if self._nodes > self.budget:
            raise BudgetExhausted(
                f"oracle budget of {self.budget} nodes exhausted; raise --budget or ADLV_BUDGET")

    def _explore_full(self, w: AffineElement) -> tuple[AffineElement, Descent]:
        d = explore(self.W, w, "last")
        members = d.members
        self._charge(len(members))
        key = min(members, key=self.W.sort_key)
        for m in members:
            self._key[m] = key
        self._minimal[key] = d.kind == "minimal"
        return key, d

    def descent(self, w: AffineElement) -> Descent:
        if self.policy == "first":
            return explore(self.W, w, "first")
        return explore(self.W, w, "last")

    def is_minimal(self, w: AffineElement) -> bool:
        key = self._key.get(w)
        if key is None:
            key, _ = self._explore_full(w)
        return self._minimal[key]

    def table_dict(self, w: AffineElement) -> dict[ClassInvariant, int]:
        key = self._key.get(w)
        if key is not None and key in self._tables:
            return self._tables[key]
        return self._compute(w)

    def _compute(self, w: AffineElement) -> dict[ClassInvariant, int]:
        W = self.W
        stack = [w]
        # iterative post-order to avoid deep recursion on long elements
        while stack:
            x = stack[-1]
            key = self._key.get(x)
            if key is None:
                key, full = self._explore_full(x)
            if key in self._tables:
                stack.pop()
                continue
            if self._minimal[key]:
                b = class_of_element(W, key, check=False)
                dim = W.length(key) - W.datum.pair_2rho(b.nu)
                if dim < 0:
                    raise InvariantViolation(f"minimal element {key} has negative dimension {dim}")
                self._tables[key] = {b: int(dim)}
                stack.pop()
                continue
            d = explore(W, key, self.policy)
            s = W.simple[d.s]
            c1 = W.mul(s, d.element)
            c2 = W.mul(c1, W.sigma(s))
            pending = []
            for c in (c1, c2):
                k = self._key.get(c)
                if k is None or k not in self._tables:
                    pending.append(c)
            if pending:
                stack.extend(pending)
                continue
            t1 = self._tables[self._key[c1]]
            t2 = self._tables[self._key[c2]]
            merged = dict(t1)
            for b, v in t2.items():
                if merged.get(b, -1) < v:
                    merged[b] = v
            self._tables[key] = {b: v + 1 for b, v in merged.items()}
            stack.pop()
        return self._tables[self._key[w]]

    def dim_table(self, w: AffineElement) -> DimTable:
        return DimTable(w, dict(self.table_dict(w)))

    def b_max(self, w: AffineElement) -> ClassInvariant:
        keys = list(self.table_dict(w))
        maxima = [b for b in keys if not any(b2 != b and class_leq(self.W, b, b2) for b2 in keys)]
        if len(maxima) != 1:
            raise InvariantViolation(f"table of {_fmt(self.W, w)} has {len(maxima)} maximal classes: {maxima}")
        return maxima[0]

    def is_cordial(self, w: AffineElement) -> bool:
        from .formulas import virtual_dim
        b = self.b_max(w)
        return self.table_dict(w)[b] == virtual_dim(self.W, w, b)


def _fmt(W: AffineWeylGroup, w: AffineElement) -> str:
    from .notation import format_element
    return format_element(W, w)


def is_cordial_oracle(oracle: Oracle, w: AffineElement) -> bool:
    return oracle.is_cordial(w)


def table_to_json(W: AffineWeylGroup, table: DimTable) -> dict:
    from .notation import format_element
    from .sigma_classes import class_to_json
    return {
        "w": format_element(W, table.w),
        "entries": [dict(class_to_json(W, b), dim=d) for b, d in table.sorted_items(W)],
    }
