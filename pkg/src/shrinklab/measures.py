"""Exact minimizers for the size, width, and depth measures.

Decision trees are minimized by memoized recursion on the restricted truth
table.  Two-level formulas go through prime implicants (maximal constant-1
subcubes) followed by exact set cover, since any minimum-size or
minimum-literal DNF can be rewritten over prime implicants without
increasing either cost.  Decision lists and their orthogonal variants use a
memoized search over the set of points not yet covered: a clause may be
placed next exactly when the function is constant on the uncovered part of
its satisfying set.  All minimizers are pure; caches are keyed by truth
table, so concurrent callers share nothing mutable beyond memo entries.

Everything here is exponential and guarded by the caps in
:mod:`shrinklab.caps`; results beyond the exact budget are flagged inexact
and never feed verification.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Optional, Union

from .caps import CAPS, BudgetError
from .core import HypercubeFunction, complement, is_constant
from .dlists import BOTTOM, TOP, Clause, DecisionList, DnfFormula, Literal

STAR_DIGIT = 2
_INF = 10**9


@dataclass(frozen=True)
class MeasureResult:
    value: int
    exact: bool = True
    witness: object | None = None


@dataclass(frozen=True)
class DtLeaf:
    value: int


@dataclass(frozen=True)
class DtNode:
    var: int  # 1-based query variable
    low: "DtTree"
    high: "DtTree"


DtTree = Union[DtLeaf, DtNode]


def dt_tree_eval(tree: DtTree, x: int) -> int:
    while isinstance(tree, DtNode):
        tree = tree.high if (x >> (tree.var - 1)) & 1 else tree.low
    return tree.value


def dt_tree_leaves(tree: DtTree) -> int:
    if isinstance(tree, DtLeaf):
        return 1
    return dt_tree_leaves(tree.low) + dt_tree_leaves(tree.high)


def dt_tree_depth(tree: DtTree) -> int:
    if isinstance(tree, DtLeaf):
        return 0
    return 1 + max(dt_tree_depth(tree.low), dt_tree_depth(tree.high))


@dataclass(frozen=True)
class CnfWitness:
    """A CNF stored as the DNF of the complement (De Morgan dual).

    Evaluates to the original function; clause count and width match the
    stored dual formula.
    """

    dual: DnfFormula

    @property
    def size(self) -> int:
        return self.dual.size

    @property
    def width(self) -> int:
        return self.dual.width

    def evaluate(self, x: int) -> int:
        return 1 - self.dual.evaluate(x)


def _ensure_boolean(f: HypercubeFunction, what: str) -> None:
    if not f.is_boolean:
        raise ValueError(f"{what} requires a Boolean function")


def _check_cap(n: int, cap: int, what: str) -> None:
    if n > cap:
        raise BudgetError(f"{what} at n={n} exceeds cap {cap}")


def _canonical(outputs: tuple[int, ...]) -> tuple[int, ...]:
    """Relabel symbols by first occurrence; tree/list sizes are invariant."""
    relabel: dict[int, int] = {}
    out = []
    for v in outputs:
        if v not in relabel:
            relabel[v] = len(relabel)
        out.append(relabel[v])
    return tuple(out)


def _cofactors(outputs: tuple[int, ...], bit: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    lo_mask = (1 << bit) - 1
    half = len(outputs) >> 1
    zeros = []
    ones = []
    for y in range(half):
        idx = ((y & ~lo_mask) << 1) | (y & lo_mask)
        zeros.append(outputs[idx])
        ones.append(outputs[idx | (1 << bit)])
    return tuple(zeros), tuple(ones)


# -- decision trees -----------------------------------------------------------

_DT_SIZE: dict[tuple[int, ...], int] = {}
_DT_DEPTH: dict[tuple[int, ...], int] = {}


def _dt_size_value(n: int, outputs: tuple[int, ...]) -> int:
    if all(v == outputs[0] for v in outputs):
        return 1
    cached = _DT_SIZE.get(outputs)
    if cached is not None:
        return cached
    best = 1 << n
    for bit in range(n):
        zeros, ones = _cofactors(outputs, bit)
        total = _dt_size_value(n - 1, zeros) + _dt_size_value(n - 1, ones)
        if total < best:
            best = total
    _DT_SIZE[outputs] = best
    return best


def _dt_depth_value(n: int, outputs: tuple[int, ...]) -> int:
    if all(v == outputs[0] for v in outputs):
        return 0
    cached = _DT_DEPTH.get(outputs)
    if cached is not None:
        return cached
    best = n
    for bit in range(n):
        zeros, ones = _cofactors(outputs, bit)
        depth = 1 + max(_dt_depth_value(n - 1, zeros), _dt_depth_value(n - 1, ones))
        if depth < best:
            best = depth
    _DT_DEPTH[outputs] = best
    return best


def _shift_tree(tree: DtTree, removed_var: int) -> DtTree:
    """Restore original variable numbers after a cofactor removed one."""
    if isinstance(tree, DtLeaf):
        return tree
    var = tree.var if tree.var < removed_var else tree.var + 1
    return DtNode(var, _shift_tree(tree.low, removed_var), _shift_tree(tree.high, removed_var))


def _dt_witness(
    n: int,
    outputs: tuple[int, ...],
    cost: Callable[[int, tuple[int, ...]], int],
    node_cost: Callable[[int, int], int],
) -> DtTree:
    if all(v == outputs[0] for v in outputs):
        return DtLeaf(outputs[0])
    target = cost(n, outputs)
    for bit in range(n):
        zeros, ones = _cofactors(outputs, bit)
        if node_cost(cost(n - 1, zeros), cost(n - 1, ones)) == target:
            low = _dt_witness(n - 1, zeros, cost, node_cost)
            high = _dt_witness(n - 1, ones, cost, node_cost)
            return DtNode(bit + 1, _shift_tree(low, bit + 1), _shift_tree(high, bit + 1))
    raise AssertionError("no cofactor attains the memoized optimum")


def dt_size(f: HypercubeFunction, with_witness: bool = False, cap: int | None = None) -> MeasureResult:
    """Minimum number of leaves in a decision tree computing f."""
    _check_cap(f.n, CAPS.dt if cap is None else cap, "decision-tree minimization")
    value = _dt_size_value(f.n, _canonical(f.outputs))
    witness = None
    if with_witness:
        witness = _dt_witness(
            f.n, f.outputs,
            lambda n, o: _dt_size_value(n, _canonical(o)),
            lambda a, b: a + b,
        )
    return MeasureResult(value, True, witness)


def dt_depth(f: HypercubeFunction, with_witness: bool = False, cap: int | None = None) -> MeasureResult:
    """Minimum depth of a decision tree computing f."""
    _check_cap(f.n, CAPS.dt if cap is None else cap, "decision-tree minimization")
    value = _dt_depth_value(f.n, _canonical(f.outputs))
    witness = None
    if with_witness:
        witness = _dt_witness(
            f.n, f.outputs,
            lambda n, o: _dt_depth_value(n, _canonical(o)),
            lambda a, b: 1 + max(a, b),
        )
    return MeasureResult(value, True, witness)


# -- prime implicants and two-level covers ------------------------------------

@lru_cache(maxsize=None)
def _pow3(n: int) -> tuple[int, ...]:
    return tuple(3**j for j in range(n + 1))


@lru_cache(maxsize=32)
def _sat_masks(n: int) -> tuple[int, ...]:
    """Satisfying-set bitmask (over the 2^n points) per ternary clause code.

    Code digit d_j describes variable j+1: 0/1 fix it, 2 leaves it out.
    """
    patterns = [[0, 0] for _ in range(n)]
    for x in range(1 << n):
        for b in range(n):
            patterns[b][(x >> b) & 1] |= 1 << x
    full = (1 << (1 << n)) - 1
    masks = []
    for code in range(3**n):
        m = full
        c = code
        for b in range(n):
            d = c % 3
            c //= 3
            if d != STAR_DIGIT:
                m &= patterns[b][d]
        masks.append(m)
    return tuple(masks)


def _code_width(code: int, n: int) -> int:
    w = 0
    for _ in range(n):
        if code % 3 != STAR_DIGIT:
            w += 1
        code //= 3
    return w


def _clause_from_code(code: int, n: int) -> Clause:
    lits = []
    for j in range(n):
        d = code % 3
        code //= 3
        if d != STAR_DIGIT:
            lits.append(Literal(j + 1, d == 1))
    return Clause(tuple(lits))


def _prime_implicant_codes(f: HypercubeFunction) -> tuple[int, ...]:
    """Ternary codes of the maximal subcubes inside the ON-set."""
    n = f.n
    pow3 = _pow3(n)
    total = pow3[n]
    const_one = bytearray(total)
    by_stars: list[list[int]] = [[] for _ in range(n + 1)]
    for code in range(total):
        c = code
        stars = 0
        point = 0
        for j in range(n):
            d = c % 3
            c //= 3
            if d == STAR_DIGIT:
                stars += 1
            elif d == 1:
                point |= 1 << j
        by_stars[stars].append(code)
        if stars == 0:
            const_one[code] = 1 if f.outputs[point] == 1 else 0
    for s in range(1, n + 1):
        for code in by_stars[s]:
            c = code
            for j in range(n):
                if c % 3 == STAR_DIGIT:
                    const_one[code] = (
                        const_one[code - 2 * pow3[j]] and const_one[code - pow3[j]]
                    )
                    break
                c //= 3
    primes = []
    for code in range(total):
        if not const_one[code]:
            continue
        c = code
        maximal = True
        for j in range(n):
            d = c % 3
            c //= 3
            if d != STAR_DIGIT and const_one[code + (2 - d) * pow3[j]]:
                maximal = False
                break
        if maximal:
            primes.append(code)
    return tuple(primes)


def prime_implicants(f: HypercubeFunction, cap: int | None = None) -> set[Clause]:
    """All maximal subcubes contained in the ON-set, as clauses."""
    _ensure_boolean(f, "prime implicant extraction")
    _check_cap(f.n, CAPS.dnf if cap is None else cap, "prime implicant extraction")
    return {_clause_from_code(code, f.n) for code in _prime_implicant_codes(f)}


def _min_cover(universe: int, sets: list[int], costs: list[int]) -> tuple[int, tuple[int, ...]]:
    """Exact minimum-cost cover of the universe bitmask; branch and bound.

    Branches on the uncovered element with the fewest covering sets, prunes
    with cost-so-far + ceil(remaining / widest_cover) * cheapest_cost.
    """
    if universe == 0:
        return 0, ()
    order = sorted(
        range(len(sets)),
        key=lambda i: (costs[i], -(sets[i] & universe).bit_count(), i),
    )

    # Greedy incumbent: cheapest cost per newly covered point.
    incumbent: list[int] = []
    left = universe
    while left:
        pick = min(
            (i for i in order if sets[i] & left),
            key=lambda i: (costs[i] / (sets[i] & left).bit_count(), i),
        )
        incumbent.append(pick)
        left &= ~sets[pick]
    best_cost = sum(costs[i] for i in incumbent)
    best_pick = tuple(sorted(incumbent))
    min_cost = min(costs)

    covers_of: dict[int, list[int]] = {}
    for i in order:
        s = sets[i] & universe
        while s:
            bit = s & -s
            covers_of.setdefault(bit, []).append(i)
            s ^= bit

    def recurse(left: int, cost: int, chosen: list[int]) -> None:
        nonlocal best_cost, best_pick
        if left == 0:
            if cost < best_cost:
                best_cost = cost
                best_pick = tuple(sorted(chosen))
            return
        widest = max((sets[i] & left).bit_count() for i in order if sets[i] & left)
        if cost + -(-left.bit_count() // widest) * min_cost >= best_cost:
            return
        pick_candidates: Optional[list[int]] = None
        s = left
        while s:
            bit = s & -s
            cands = [i for i in covers_of[bit] if sets[i] & left]
            if pick_candidates is None or len(cands) < len(pick_candidates):
                pick_candidates = cands
                if len(cands) == 1:
                    break
            s ^= bit
        assert pick_candidates
        for i in sorted(
            pick_candidates, key=lambda i: (-(sets[i] & left).bit_count(), costs[i], i)
        ):
            chosen.append(i)
            recurse(left & ~sets[i], cost + costs[i], chosen)
            chosen.pop()

    recurse(universe, 0, [])
    return best_cost, best_pick


def _on_mask(f: HypercubeFunction) -> int:
    mask = 0
    for x, v in enumerate(f.outputs):
        if v == 1:
            mask |= 1 << x
    return mask


_DNF_SIZE: dict[tuple[int, ...], int] = {}
_L2_DNF: dict[tuple[int, ...], int] = {}


def _dnf_cover(f: HypercubeFunction, weighted: bool) -> tuple[int, tuple[int, ...]]:
    """Min clause count (or min total literals) of a prime-implicant cover."""
    on = _on_mask(f)
    if on == 0:
        return 0, ()
    codes = _prime_implicant_codes(f)
    masks = _sat_masks(f.n)
    sets = [masks[code] for code in codes]
    costs = [_code_width(code, f.n) if weighted else 1 for code in codes]
    cost, picked = _min_cover(on, sets, costs)
    return cost, tuple(codes[i] for i in picked)


def dnf_min_size(f: HypercubeFunction, with_witness: bool = False, cap: int | None = None) -> MeasureResult:
    """Minimum clause count of a DNF computing f (constant 0 needs none)."""
    _ensure_boolean(f, "DNF minimization")
    _check_cap(f.n, CAPS.dnf if cap is None else cap, "DNF minimization")
    value = _DNF_SIZE.get(f.outputs)
    if value is None or with_witness:
        value, picked = _dnf_cover(f, weighted=False)
        _DNF_SIZE[f.outputs] = value
        if with_witness:
            witness = DnfFormula(tuple(_clause_from_code(c, f.n) for c in sorted(picked)))
            return MeasureResult(value, True, witness)
    return MeasureResult(value, True, None)


def cnf_min_size(f: HypercubeFunction, with_witness: bool = False, cap: int | None = None) -> MeasureResult:
    """Minimum clause count of a CNF computing f, via CNF(f) = DNF(not f)."""
    _ensure_boolean(f, "CNF minimization")
    dual = dnf_min_size(complement(f), with_witness=with_witness, cap=cap)
    witness = CnfWitness(dual.witness) if dual.witness is not None else None
    return MeasureResult(dual.value, True, witness)


def dnf_width(f: HypercubeFunction, with_witness: bool = False, cap: int | None = None) -> MeasureResult:
    """Minimum over DNFs for f of the maximum clause width.

    Equals the maximum over ON-points of the least width of a prime
    implicant containing the point: any DNF covers each point by an
    implicant at least that wide, and picking one minimizer per point
    assembles a DNF attaining the maximum.
    """
    _ensure_boolean(f, "DNF width")
    _check_cap(f.n, CAPS.dnf if cap is None else cap, "DNF width")
    on = _on_mask(f)
    if on == 0:
        return MeasureResult(0, True, BOTTOM if with_witness else None)
    codes = _prime_implicant_codes(f)
    masks = _sat_masks(f.n)
    width_of = {code: _code_width(code, f.n) for code in codes}
    value = 0
    chosen: list[int] = []
    s = on
    while s:
        bit = s & -s
        s ^= bit
        best = min(
            (code for code in codes if masks[code] & bit),
            key=lambda code: (width_of[code], code),
        )
        value = max(value, width_of[best])
        if with_witness and best not in chosen:
            chosen.append(best)
    witness = None
    if with_witness:
        witness = DnfFormula(tuple(_clause_from_code(c, f.n) for c in sorted(chosen)))
    return MeasureResult(value, True, witness)


def cnf_width(f: HypercubeFunction, with_witness: bool = False, cap: int | None = None) -> MeasureResult:
    _ensure_boolean(f, "CNF width")
    dual = dnf_width(complement(f), with_witness=with_witness, cap=cap)
    witness = CnfWitness(dual.witness) if dual.witness is not None else None
    return MeasureResult(dual.value, True, witness)


def f2_size(f: HypercubeFunction, with_witness: bool = False, cap: int | None = None) -> MeasureResult:
    """Depth-2 formula size in depth-1 gates: min of DNF and CNF size."""
    a = dnf_min_size(f, with_witness=with_witness, cap=cap)
    b = cnf_min_size(f, with_witness=with_witness, cap=cap)
    return a if a.value <= b.value else b


def l2_leafsize(f: HypercubeFunction, with_witness: bool = False, cap: int | None = None) -> MeasureResult:
    """Depth-2 formula leaf-size: fewest literal occurrences over DNF/CNF.

    A minimum-literal two-level form may be assumed to use prime implicants
    (enlarging a clause never raises its width), so this is an exact weighted
    cover with clause cost equal to clause width, on both sides of the
    duality.
    """
    _ensure_boolean(f, "depth-2 leaf-size")
    _check_cap(f.n, CAPS.dnf if cap is None else cap, "depth-2 leaf-size")

    def side(g: HypercubeFunction) -> tuple[int, tuple[int, ...]]:
        if not with_witness:
            cached = _L2_DNF.get(g.outputs)
            if cached is not None:
                return cached, ()
        cost, picked = _dnf_cover(g, weighted=True)
        _L2_DNF[g.outputs] = cost
        return cost, picked

    dnf_cost, dnf_pick = side(f)
    cnf_cost, cnf_pick = side(complement(f))
    witness = None
    if with_witness:
        if dnf_cost <= cnf_cost:
            witness = DnfFormula(tuple(_clause_from_code(c, f.n) for c in sorted(dnf_pick)))
        else:
            witness = CnfWitness(
                DnfFormula(tuple(_clause_from_code(c, f.n) for c in sorted(cnf_pick)))
            )
    return MeasureResult(min(dnf_cost, cnf_cost), True, witness)


# -- ordered covers: decision lists and orthogonal variants -------------------

class _NodeBudget(Exception):
    pass


class _CoverSearch:
    """Memoized minimum ordered-cover search for one truth table.

    State is the set of points not yet covered (a bitmask over the 2^n
    inputs).  Candidate moves depend on the mode:

    * "dl":   any clause whose satisfying set meets the uncovered region in a
              nonempty constant set; the move removes that intersection.
              Candidates whose intersection is contained in another's are
              dominated and pruned (the optimum is monotone in the uncovered
              set, so the larger move is never worse).
    * "odl":  clauses whose whole satisfying set is uncovered and constant,
              so placed clauses stay pairwise disjoint and partition the cube.
    * "wodl": as "odl", except a constant remainder may be closed out by one
              final catch-all clause.
    """

    def __init__(
        self,
        n: int,
        outputs: tuple[int, ...],
        mode: str,
        max_width: int | None = None,
        node_budget: int | None = None,
    ):
        self.n = n
        self.outputs = outputs
        self.mode = mode
        self.node_budget = node_budget
        masks = _sat_masks(n)
        codes = range(len(masks)) if max_width is None else (
            c for c in range(len(masks)) if _code_width(c, n) <= max_width
        )
        # Widest subcubes first, so the first clause found per intersection
        # has the fewest literals; ties break on code for determinism.
        self.codes = sorted(codes, key=lambda c: (-masks[c].bit_count(), c))
        self.masks = masks
        self.symbol_mask: dict[int, int] = {}
        for x, v in enumerate(outputs):
            self.symbol_mask[v] = self.symbol_mask.get(v, 0) | (1 << x)
        self.full = (1 << (1 << n)) - 1
        self.memo: dict[int, int] = {}

    def constant_symbol(self, mask: int) -> Optional[int]:
        v = self.outputs[(mask & -mask).bit_length() - 1]
        return v if mask & ~self.symbol_mask[v] == 0 else None

    def candidates(self, uncovered: int) -> list[tuple[int, int]]:
        """(handled-points, clause-code) moves, deduplicated, widest first."""
        found: dict[int, int] = {}
        for code in self.codes:
            sat = self.masks[code]
            if self.mode == "dl":
                s = sat & uncovered
            else:
                if sat == 0 or sat & ~uncovered:
                    continue
                s = sat
            if s == 0 or s in found or self.constant_symbol(s) is None:
                continue
            found[s] = code
        moves = sorted(found.items(), key=lambda kv: (-kv[0].bit_count(), kv[1]))
        if self.mode == "dl":
            kept: list[tuple[int, int]] = []
            for s, code in moves:
                if not any(s & ~t == 0 for t, _ in kept):
                    kept.append((s, code))
            moves = kept
        return moves

    def best(self, uncovered: int) -> int:
        if uncovered == 0:
            return 0
        cached = self.memo.get(uncovered)
        if cached is not None:
            return cached
        if self.node_budget is not None and len(self.memo) >= self.node_budget:
            raise _NodeBudget
        result = _INF
        if self.mode == "wodl" and self.constant_symbol(uncovered) is not None:
            result = 1
        for s, _ in self.candidates(uncovered):
            sub = self.best(uncovered & ~s)
            if sub + 1 < result:
                result = sub + 1
        self.memo[uncovered] = result
        return result

    def solve(self) -> int:
        return self.best(self.full)

    def witness(self) -> DecisionList:
        """Rebuild one optimal list by walking the memoized values."""
        target = self.solve()
        if target >= _INF:
            raise AssertionError("witness requested for an infeasible search")
        entries: list[tuple[Clause, int]] = []
        uncovered = self.full
        while uncovered:
            goal = self.best(uncovered)
            if self.mode == "wodl" and goal == 1:
                sym = self.constant_symbol(uncovered)
                if sym is not None:
                    entries.append((TOP, sym))
                    uncovered = 0
                    break
            for s, code in self.candidates(uncovered):
                if 1 + self.best(uncovered & ~s) == goal:
                    entries.append((_clause_from_code(code, self.n), self.constant_symbol(s)))
                    uncovered &= ~s
                    break
            else:
                raise AssertionError("witness reconstruction lost the optimum")
        return DecisionList(self.n, tuple(entries))


_DL_SIZE_CACHE: dict[tuple[int, ...], int] = {}
_ODL_CACHE: dict[tuple[int, ...], int] = {}
_WODL_CACHE: dict[tuple[int, ...], int] = {}
_DL_WIDTH_CACHE: dict[tuple[int, ...], int] = {}


def _greedy_dl_upper(n: int, outputs: tuple[int, ...]) -> int:
    """Cover-size upper bound: repeatedly take the widest constant move."""
    search = _CoverSearch(n, outputs, "dl")
    uncovered = search.full
    count = 0
    while uncovered:
        s, _ = search.candidates(uncovered)[0]
        uncovered &= ~s
        count += 1
    return count


def dl_min_size(f: HypercubeFunction, with_witness: bool = False, cap: int | None = None) -> MeasureResult:
    """Minimum decision-list size; exact up to the cap.

    Beyond the exact cap but within the extended one, attempts the exact
    search under a node budget and falls back to a greedy cover flagged
    inexact.
    """
    exact_cap = CAPS.dl if cap is None else cap
    if f.n > max(CAPS.dl_extended, exact_cap):
        raise BudgetError(
            f"decision-list search at n={f.n} exceeds cap {max(CAPS.dl_extended, exact_cap)}"
        )
    outputs = _canonical(f.outputs)
    if f.n <= exact_cap:
        value = _DL_SIZE_CACHE.get(outputs)
        if value is None:
            value = _CoverSearch(f.n, outputs, "dl").solve()
            _DL_SIZE_CACHE[outputs] = value
        witness = _CoverSearch(f.n, f.outputs, "dl").witness() if with_witness else None
        return MeasureResult(value, True, witness)
    try:
        search = _CoverSearch(f.n, f.outputs, "dl", node_budget=CAPS.dl_nodes)
        value = search.solve()
        witness = search.witness() if with_witness else None
        return MeasureResult(value, True, witness)
    except _NodeBudget:
        return MeasureResult(_greedy_dl_upper(f.n, outputs), False, None)


def odl_min_size(f: HypercubeFunction, with_witness: bool = False, cap: int | None = None) -> MeasureResult:
    """Minimum orthogonal decision-list size (clauses partition the cube)."""
    _check_cap(f.n, CAPS.dl if cap is None else cap, "orthogonal-list search")
    outputs = _canonical(f.outputs)
    value = _ODL_CACHE.get(outputs)
    if value is None:
        value = _CoverSearch(f.n, outputs, "odl").solve()
        _ODL_CACHE[outputs] = value
    witness = _CoverSearch(f.n, f.outputs, "odl").witness() if with_witness else None
    return MeasureResult(value, True, witness)


def wodl_min_size(f: HypercubeFunction, with_witness: bool = False, cap: int | None = None) -> MeasureResult:
    """Minimum weakly orthogonal decision-list size (head clauses disjoint)."""
    _check_cap(f.n, CAPS.dl if cap is None else cap, "weakly-orthogonal-list search")
    outputs = _canonical(f.outputs)
    value = _WODL_CACHE.get(outputs)
    if value is None:
        value = _CoverSearch(f.n, outputs, "wodl").solve()
        _WODL_CACHE[outputs] = value
    witness = _CoverSearch(f.n, f.outputs, "wodl").witness() if with_witness else None
    return MeasureResult(value, True, witness)


def dl_width(f: HypercubeFunction, with_witness: bool = False, cap: int | None = None) -> MeasureResult:
    """Least w such that some decision list of width w computes f."""
    _check_cap(f.n, CAPS.dl if cap is None else cap, "decision-list width search")
    if is_constant(f) is not None:
        witness = DecisionList(f.n, ((TOP, f.outputs[0]),)) if with_witness else None
        return MeasureResult(0, True, witness)
    outputs = _canonical(f.outputs)
    value = _DL_WIDTH_CACHE.get(outputs)
    if value is None:
        for w in range(1, f.n + 1):
            if _CoverSearch(f.n, outputs, "dl", max_width=w).solve() < _INF:
                value = w
                break
        else:
            raise AssertionError("full-width lists always cover the cube")
        _DL_WIDTH_CACHE[outputs] = value
    witness = None
    if with_witness:
        witness = _CoverSearch(f.n, f.outputs, "dl", max_width=value).witness()
    return MeasureResult(value, True, witness)


# -- inequality chains ---------------------------------------------------------

@dataclass(frozen=True)
class ChainLeg:
    name: str
    lhs: int
    rhs: int

    @property
    def ok(self) -> bool:
        return self.lhs <= self.rhs


@dataclass(frozen=True)
class ChainReport:
    function: str
    values: dict[str, int]
    legs: tuple[ChainLeg, ...]

    @property
    def passed(self) -> bool:
        return all(leg.ok for leg in self.legs)

    def violations(self) -> tuple[ChainLeg, ...]:
        return tuple(leg for leg in self.legs if not leg.ok)


def measure_chain_check(f: HypercubeFunction, function_id: str | None = None) -> ChainReport:
    """Verify the standard inequality chains among the exact measures.

    Size chain (Boolean only): 1 <= DL <= min(DNF, CNF)+1 <= DNF+CNF <= DT.
    Width chain (Boolean only):
    0 <= DLw <= min(DNFw, CNFw, ceil(log2 DT)) <= DTdepth <= DNFw * CNFw.
    List chain (any alphabet): DL <= wODL <= ODL <= DT.
    """
    name = function_id or str(f)
    values: dict[str, int] = {
        "dt": dt_size(f).value,
        "dt_depth": dt_depth(f).value,
        "dl": dl_min_size(f).value,
        "dl_width": dl_width(f).value,
        "odl": odl_min_size(f).value,
        "wodl": wodl_min_size(f).value,
    }
    legs = [
        ChainLeg("1 <= DL", 1, values["dl"]),
        ChainLeg("DL <= wODL", values["dl"], values["wodl"]),
        ChainLeg("wODL <= ODL", values["wodl"], values["odl"]),
        ChainLeg("ODL <= DT", values["odl"], values["dt"]),
    ]
    if f.is_boolean:
        values["dnf"] = dnf_min_size(f).value
        values["cnf"] = cnf_min_size(f).value
        values["dnf_width"] = dnf_width(f).value
        values["cnf_width"] = cnf_width(f).value
        mid = min(values["dnf"], values["cnf"]) + 1
        log_dt = (values["dt"] - 1).bit_length()  # ceil(log2 dt) for dt >= 1
        width_mid = min(values["dnf_width"], values["cnf_width"], log_dt)
        legs += [
            ChainLeg("DL <= min(DNF,CNF)+1", values["dl"], mid),
            ChainLeg("min(DNF,CNF)+1 <= DNF+CNF", mid, values["dnf"] + values["cnf"]),
            ChainLeg("DNF+CNF <= DT", values["dnf"] + values["cnf"], values["dt"]),
            ChainLeg("0 <= DLwidth", 0, values["dl_width"]),
            ChainLeg("DLwidth <= min(DNFw,CNFw,ceil(log2 DT))", values["dl_width"], width_mid),
            ChainLeg("min(DNFw,CNFw,ceil(log2 DT)) <= DTdepth", width_mid, values["dt_depth"]),
            ChainLeg(
                "DTdepth <= DNFw*CNFw",
                values["dt_depth"],
                values["dnf_width"] * values["cnf_width"],
            ),
        ]
    return ChainReport(name, values, tuple(legs))


MEASURES: dict[str, Callable[..., MeasureResult]] = {
    "dt": dt_size,
    "dt_depth": dt_depth,
    "dl": dl_min_size,
    "dl_width": dl_width,
    "dnf": dnf_min_size,
    "cnf": cnf_min_size,
    "dnf_width": dnf_width,
    "cnf_width": cnf_width,
    "odl": odl_min_size,
    "wodl": wodl_min_size,
    "f2": f2_size,
    "l2": l2_leafsize,
}


def measure_value(name: str, f: HypercubeFunction) -> int:
    """Exact integer value of a named measure; raises on inexact results."""
    try:
        fn = MEASURES[name]
    except KeyError:
        raise ValueError(f"unknown measure {name!r}; choose from {sorted(MEASURES)}")
    result = fn(f)
    if not result.exact:
        raise BudgetError(f"{name} at n={f.n} is not exactly computable within budget")
    return result.value
