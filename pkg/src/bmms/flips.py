"""Rank-reducing local search on the graph of correct schemes.

The one move family is the characteristic-2 flip: if two products agree on
one component, mass can be exchanged between the other two,

    a@b1@c1 + a@b2@c2  =  a@(b1+b2)@c1 + a@b2@(c1+c2),

which never changes what the scheme computes.  Reductions come for free:
a product whose component cancels to zero is dropped, and two products
agreeing on two components merge (their third components add).  A random
walk of flips plus these reductions is enough to find genuinely smaller
schemes, e.g. 8 -> 7 for 2x2 matrices; rank-increasing escape moves are
deliberately out of scope.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .gf2 import BitMatrix
from .scheme import Product, Scheme, normalize
from .verify import verify

SIDES = ("alpha", "beta", "gamma")


@dataclass(frozen=True)
class FlipMove:
    """Exchange between products k and l sharing ``shared_side``.

    With u, v the two non-shared sides in cyclic order, direction 0 means
    product k absorbs the u-sum and product l the v-sum; direction 1 swaps
    the roles of k and l.
    """

    k: int
    l: int
    shared_side: str
    direction: int


def _side_index(name: str) -> int:
    try:
        return SIDES.index(name)
    except ValueError:
        raise ValueError(f"unknown side {name!r}, expected one of {SIDES}") from None


def flip(s: Scheme, move: FlipMove) -> Scheme | None:
    """Apply a flip; returns the new scheme, or None if the move does not apply.

    The result always has the same rank, and verifies whenever the input
    verifies.  Applying the same move twice restores the original scheme.
    """
    k, l = move.k, move.l
    if k == l or not (0 <= k < s.rank and 0 <= l < s.rank):
        return None
    si = _side_index(move.shared_side)
    if move.direction == 1:
        k, l = l, k
    masks_k = [s.products[k].alpha, s.products[k].beta, s.products[k].gamma]
    masks_l = [s.products[l].alpha, s.products[l].beta, s.products[l].gamma]
    if masks_k[si] != masks_l[si]:
        return None
    u = (si + 1) % 3
    v = (si + 2) % 3
    new_k = list(masks_k)
    new_l = list(masks_l)
    new_k[u] = masks_k[u] + masks_l[u]
    new_l[v] = masks_l[v] + masks_k[v]
    products = list(s.products)
    products[k] = Product(*new_k)
    products[l] = Product(*new_l)
    return Scheme(s.n, s.m, s.p, tuple(products))


def find_moves(s: Scheme) -> list[FlipMove]:
    """Every applicable move: shared side x unordered pair x two directions."""
    moves = []
    for side in SIDES:
        for k in range(s.rank):
            mk = getattr(s.products[k], side)
            for l in range(k + 1, s.rank):
                if mk == getattr(s.products[l], side):
                    moves.append(FlipMove(k, l, side, 0))
                    moves.append(FlipMove(k, l, side, 1))
    return moves


def reduce_if_possible(s: Scheme) -> Scheme:
    """Normalize: drop zero-mask products, merge two-component duplicates."""
    return normalize(s)


@dataclass
class WalkStats:
    steps: int = 0
    reductions: int = 0
    restarts: int = 0
    best_rank: int = 0
    stopped: str = ""

    def as_dict(self) -> dict:
        return {"steps": self.steps, "reductions": self.reductions,
                "restarts": self.restarts, "best_rank": self.best_rank,
                "stopped": self.stopped}


@dataclass(frozen=True)
class WalkResult:
    best: Scheme
    stats: WalkStats


class SearchState:
    """Mutable random-walk state over flattened product masks.

    Keeps the current scheme as integer mask triples with per-side
    value-class indexes so a uniformly random applicable move can be drawn
    without rescanning all pairs, plus the best (lowest-rank, earliest)
    scheme seen.
    """

    def __init__(self, start: Scheme, seed: int):
        self.dims = start.dims
        self.rng = random.Random(seed)
        self.steps = 0
        self.reductions = 0
        self.restarts = 0
        self.best = start
        self.best_rank = start.rank
        self._start = start
        self.reset()

    def reset(self) -> None:
        n, m, p = self.dims
        self.prods: dict[int, list[int]] = {}
        self.classes = [{}, {}, {}]
        for prod in self._start.products:
            masks = [_flatten(prod.alpha), _flatten(prod.beta), _flatten(prod.gamma)]
            pid = len(self.prods)
            self.prods[pid] = masks
            for side in range(3):
                self.classes[side].setdefault(masks[side], {})[pid] = True

    # -- index maintenance ------------------------------------------------

    def _unlink(self, pid: int, side: int, value: int) -> None:
        members = self.classes[side][value]
        del members[pid]
        if not members:
            del self.classes[side][value]

    def _link(self, pid: int, side: int, value: int) -> None:
        self.classes[side].setdefault(value, {})[pid] = True

    def _remove(self, pid: int) -> None:
        masks = self.prods.pop(pid)
        for side in range(3):
            self._unlink(pid, side, masks[side])

    def _set_mask(self, pid: int, side: int, value: int) -> None:
        old = self.prods[pid][side]
        self._unlink(pid, side, old)
        self.prods[pid][side] = value
        self._link(pid, side, value)

    # -- moves -------------------------------------------------------------

    def move_count(self) -> int:
        total = 0
        for side in range(3):
            for members in self.classes[side].values():
                sz = len(members)
                total += sz * (sz - 1)
        return total

    def _draw_move(self, index: int):
        for side in range(3):
            for value, members in self.classes[side].items():
                sz = len(members)
                block = sz * (sz - 1)
                if index < block:
                    xs = list(members)
                    xi, rest = divmod(index, sz - 1)
                    yi = rest + (rest >= xi)
                    return side, xs[xi], xs[yi]
                index -= block
        raise AssertionError("move index out of range")

    def step(self) -> bool:
        """One uniformly random flip plus cascades; False when no move exists."""
        total = self.move_count()
        if total == 0:
            return False
        side, x, y = self._draw_move(self.rng.randrange(total))
        u = (side + 1) % 3
        v = (side + 2) % 3
        self._set_mask(x, u, self.prods[x][u] ^ self.prods[y][u])
        self._set_mask(y, v, self.prods[y][v] ^ self.prods[x][v])
        self.steps += 1
        self._settle([x, y])
        return True

    def _settle(self, touched: list[int]) -> None:
        """Apply all reductions reachable from just-changed products."""
        queue = list(touched)
        while queue:
            pid = queue.pop()
            if pid not in self.prods:
                continue
            masks = self.prods[pid]
            if 0 in masks:
                self._remove(pid)
                self._note_reduction()
                continue
            merged = True
            while merged and pid in self.prods:
                merged = False
                masks = self.prods[pid]
                partner = None
                shared = -1
                for side in range(3):
                    for other in self.classes[side].get(masks[side], ()):
                        if other == pid:
                            continue
                        others = self.prods[other]
                        common = sum(masks[t] == others[t] for t in range(3))
                        if common >= 2:
                            partner = other
                            shared = side
                            break
                    if partner is not None:
                        break
                if partner is not None:
                    om = self.prods[partner]
                    third = next(t for t in range(3) if masks[t] != om[t]) \
                        if any(masks[t] != om[t] for t in range(3)) else None
                    survivor = min(pid, partner)
                    loser = max(pid, partner)
                    if third is None:
                        # identical products cancel outright (x + x = 0)
                        self._remove(survivor)
                        self._remove(loser)
                        self._note_reduction()
                        self._note_reduction()
                    else:
                        # snapshot only after the merge leaves a valid state
                        value = masks[third] ^ om[third]
                        self._set_mask(survivor, third, value)
                        self._remove(loser)
                        if value == 0:
                            self._remove(survivor)
                            self._note_reduction()
                        self._note_reduction()
                        if value != 0:
                            queue.append(survivor)
                    merged = True

    def _note_reduction(self) -> None:
        self.reductions += 1
        if len(self.prods) < self.best_rank:
            self.best_rank = len(self.prods)
            self.best = self.current

    @property
    def rank(self) -> int:
        return len(self.prods)

    @property
    def current(self) -> Scheme:
        n, m, p = self.dims
        products = tuple(
            Product(_unflatten(masks[0], n, m), _unflatten(masks[1], m, p),
                    _unflatten(masks[2], n, p))
            for _, masks in sorted(self.prods.items())
        )
        return Scheme(n, m, p, products)


def _flatten(mask: BitMatrix) -> int:
    return sum(mask.row_bits(i) << (i * mask.cols) for i in range(mask.rows))


def _unflatten(value: int, rows: int, cols: int) -> BitMatrix:
    m = (1 << cols) - 1
    return BitMatrix(rows, cols, ((value >> (i * cols)) & m for i in range(rows)))


def random_walk(start: Scheme, budget: int, target_rank: int | None = None,
                seed: int = 0, restarts: int = 1,
                verify_each_step: bool = False) -> WalkResult:
    """Random flips with immediate reductions, restarts, and best tracking.

    Draws a uniformly random applicable move each step, keeps the earliest
    lowest-rank scheme seen, restarts from ``start`` every
    ``budget // restarts`` steps (or when no move applies), and stops at
    ``target_rank`` or budget exhaustion.  Fully deterministic per seed.
    ``verify_each_step`` re-checks the Brent equations after every flip
    (slow; for tests).
    """
    if budget < 0 or restarts < 1:
        raise ValueError("budget must be >= 0 and restarts >= 1")
    if not verify(start):
        raise ValueError("random_walk requires a verified start scheme")

    state = SearchState(start, seed)
    stats = WalkStats(best_rank=state.best_rank)
    cap = max(1, budget // restarts)
    in_segment = 0
    stats.stopped = "budget"
    while state.steps < budget:
        if target_rank is not None and state.best_rank <= target_rank:
            stats.stopped = "target"
            break
        progressed = in_segment < cap and state.step()
        if progressed:
            in_segment += 1
            if verify_each_step and not verify(state.current):
                raise AssertionError("flip walk produced a non-verifying scheme")
        else:
            if state.steps >= budget:
                break
            if in_segment == 0:
                stats.stopped = "stuck"
                break
            state.reset()
            state.restarts += 1
            in_segment = 0
    if target_rank is not None and state.best_rank <= target_rank:
        stats.stopped = "target"
    stats.steps = state.steps
    stats.reductions = state.reductions
    stats.restarts = state.restarts
    stats.best_rank = state.best_rank
    return WalkResult(state.best, stats)
