"""Cycle decomposition of trace-T hyperbolic matrices and reduction to cycles.

H0 is the set of det-1, trace-T matrices with positive entries; H0_red the
subset whose largest entry sits on the diagonal.  H0_red splits into cycles
linked by conjugations with alternating powers of A_HAT and B_HAT, and every
SL(2,Z)-conjugacy class in trace T meets exactly one cycle.
"""

from __future__ import annotations

import heapq
import os
from dataclasses import dataclass
from functools import lru_cache

from .mat import A_HAT, B_HAT, I2, U_HAT, W_HAT, Mat2, conjugate, in_BT
from .quad import divisors

DEFAULT_SEARCH_BUDGET = 10**6

_BASES = {"A": A_HAT, "B": B_HAT}


class NotReducedError(ValueError):
    """Input matrix is not in H0_red."""


class ReductionError(RuntimeError):
    """Reduction search exhausted its budget; carries the best candidate found."""

    def __init__(self, msg: str, best: Mat2, conjugator: Mat2):
        super().__init__(msg)
        self.best = best
        self.conjugator = conjugator


def in_H0(b: Mat2) -> bool:
    return b.a > 0 and b.b > 0 and b.c > 0 and b.d > 0


def in_H0_red(b: Mat2) -> bool:
    return in_H0(b) and max(b.a, b.b, b.c, b.d) in (b.a, b.d)


@dataclass(frozen=True)
class Cycle:
    """elements[i] is sent to elements[i+1] by conjugation with base_i^q_i."""

    elements: tuple[Mat2, ...]
    operators: tuple[tuple[str, int], ...]

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, b: Mat2) -> bool:
        return b in self.elements

    @property
    def trace(self) -> int:
        return self.elements[0].trace

    def operator_matrix(self, i: int) -> Mat2:
        base, q = self.operators[i]
        return _BASES[base] ** q

    def index(self, b: Mat2) -> int:
        return self.elements.index(b)

    def element_set(self) -> frozenset[Mat2]:
        return frozenset(self.elements)


def operator_label(op: tuple[str, int]) -> str:
    base, q = op
    return base if q == 1 else f"{base}^{q}"


def cycle_step(b: Mat2) -> tuple[tuple[str, int], Mat2]:
    """One step of the reduced cycle through b: returns ((base, q), next)."""
    if not in_H0_red(b):
        raise NotReducedError(f"{b} is not in H0_red")
    if b.a < b.d:
        q = b.d // b.c if b.c != 1 else b.d - 1
        op = ("A", q)
    else:
        q = b.a // b.b if b.b != 1 else b.a - 1
        op = ("B", q)
    nxt = conjugate(_BASES[op[0]] ** q, b)
    return op, nxt


def _canonical_cycle(elements: list[Mat2], operators: list[tuple[str, int]]) -> Cycle:
    start = elements.index(min(elements))
    return Cycle(
        tuple(elements[start:] + elements[:start]),
        tuple(operators[start:] + operators[:start]),
    )


def cycle_of(b: Mat2) -> Cycle:
    """The cycle in H0_red containing b, rotated to start at its smallest element."""
    elements: list[Mat2] = []
    operators: list[tuple[str, int]] = []
    cur = b
    seen = set()
    while True:
        elements.append(cur)
        seen.add(cur)
        op, cur = cycle_step(cur)
        operators.append(op)
        if cur == b:
            break
        if cur in seen:
            raise ArithmeticError(f"cycle through {b} re-entered at {cur}")
    return _canonical_cycle(elements, operators)


def H0_red_elements(T: int) -> list[Mat2]:
    """All of H0_red for trace T, sorted.  Uses bc = ad - 1 and b, c <= max(a, d)."""
    if T < 3:
        raise ValueError(f"trace must be > 2, got {T}")
    out = []
    for a in range(1, T):
        d = T - a
        top = max(a, d)
        n = a * d - 1
        for b in divisors(n):
            c = n // b
            if b <= top and c <= top:
                out.append(Mat2(a, b, c, d))
    return sorted(out)


@lru_cache(maxsize=256)
def decompose_trace(T: int) -> tuple[Cycle, ...]:
    """Partition H0_red(T) into cycles, sorted by smallest member."""
    remaining = set(H0_red_elements(T))
    cycles = []
    for b in sorted(remaining):
        if b not in remaining:
            continue
        z = cycle_of(b)
        remaining.difference_update(z.elements)
        cycles.append(z)
    return tuple(sorted(cycles, key=lambda z: z.elements[0]))


def cycle_transpose(z: Cycle) -> Cycle:
    return cycle_of(min(b.transpose() for b in z.elements))


def cycle_bar(z: Cycle) -> Cycle:
    return cycle_of(min(conjugate(U_HAT, b) for b in z.elements))


def path_conjugator(z: Cycle, src: Mat2, dst: Mat2) -> Mat2:
    """Product of cycle operators along the path src -> dst, so dst = M src M^-1."""
    try:
        i = z.index(src)
        j = z.index(dst)
    except ValueError:
        raise ValueError(f"{src} or {dst} is not an element of the cycle") from None
    m = I2
    t = len(z)
    while i != j:
        m = z.operator_matrix(i) @ m
        i = (i + 1) % t
    return m


def _search_budget() -> int:
    raw = os.environ.get("OSCKIT_SEARCH_BUDGET")
    return int(raw) if raw else DEFAULT_SEARCH_BUDGET


def _weight(b: Mat2) -> int:
    return abs(b.a) + abs(b.b) + abs(b.c) + abs(b.d)


_MOVES = (A_HAT, A_HAT.inverse(), B_HAT, B_HAT.inverse(), W_HAT)


def _walk_H0_to_red(b: Mat2, conj: Mat2, budget: int) -> tuple[Mat2, Mat2]:
    # follow the (unreduced) H0 cycle; it always passes through H0_red
    steps = 0
    while not in_H0_red(b):
        nxt = conjugate(A_HAT, b)
        m = A_HAT
        if not in_H0(nxt):
            nxt = conjugate(B_HAT, b)
            m = B_HAT
        b, conj = nxt, m @ conj
        steps += 1
        if steps > budget:
            raise ReductionError("walk inside H0 did not reach H0_red", b, conj)
    return b, conj


def _best_first(b: Mat2, conj: Mat2, budget: int) -> tuple[Mat2, Mat2]:
    heap = [(_weight(b), 0, b, conj)]
    seen = {b}
    counter = 1
    best = (b, conj)
    popped = 0
    while heap:
        _, _, cur, cc = heapq.heappop(heap)
        popped += 1
        if _weight(cur) < _weight(best[0]):
            best = (cur, cc)
        if in_H0(cur):
            return cur, cc
        if popped > budget:
            break
        for m in _MOVES:
            nxt = conjugate(m, cur)
            if nxt not in seen:
                seen.add(nxt)
                heapq.heappush(heap, (_weight(nxt), counter, nxt, m @ cc))
                counter += 1
    raise ReductionError(
        f"reduction failed after {popped} states (budget {budget})", best[0], best[1]
    )


def reduce_to_cycle(b: Mat2, budget: int | None = None) -> tuple[Mat2, Mat2]:
    """Find (rep, C) with rep = C b C^-1 in H0_red and C in SL(2,Z).

    Greedy descent on the entry-wise absolute sum using A_HAT^{+-1},
    B_HAT^{+-1} and W_HAT; a bounded best-first search takes over if the
    descent stalls outside H0.  Output is verified before return.
    """
    if not in_BT(b):
        raise ValueError(f"{b} needs det 1 and trace > 2")
    if budget is None:
        budget = _search_budget()
    cur, conj = b, I2
    while not in_H0(cur):
        w = _weight(cur)
        best = None
        for m in _MOVES:
            nxt = conjugate(m, cur)
            if in_H0(nxt):
                best = (0, nxt, m)
                break
            nw = _weight(nxt)
            if nw < w and (best is None or nw < best[0]):
                best = (nw, nxt, m)
        if best is None:
            cur, conj = _best_first(cur, conj, budget)
            break
        cur, conj = best[1], best[2] @ conj
    cur, conj = _walk_H0_to_red(cur, conj, budget)
    if conjugate(conj, b) != cur or conj.det != 1 or not in_H0_red(cur):
        raise ReductionError("reduction produced an unverifiable result", cur, conj)
    return cur, conj
