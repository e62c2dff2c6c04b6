"""Finite abelian groups presented by integer relation matrices.

A group is stored in invariant-factor form: a chain d1 | d2 | ... | dt with
every di >= 2, obtained from the Smith normal form of the relation matrix.
Elements are plain tuples of ints, one coordinate per invariant factor.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import gcd, lcm, prod


class InfiniteGroup(ValueError):
    """The relation lattice does not have full rank, so the quotient is infinite."""


Element = tuple[int, ...]


def _smith_normal_form(rows: list[list[int]], num_cols: int):
    """Return (diag, V) where U*A*V = D for unimodular U, V.

    Only the diagonal of D and the right transform V are needed: the coordinates
    of generator j in the quotient are row j of V. Exact integer arithmetic
    throughout (Python ints never overflow). Pivoting on minimal absolute value.
    """
    m = len(rows)
    a = [list(r) for r in rows]
    v = [[1 if i == j else 0 for j in range(num_cols)] for i in range(num_cols)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]

    def swap_cols(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    def add_row(src, dst, c):
        a[dst] = [x + c * y for x, y in zip(a[dst], a[src])]

    def add_col(src, dst, c):
        for r in a:
            r[dst] += c * r[src]
        for r in v:
            r[dst] += c * r[src]

    diag = []
    t = 0
    while t < min(m, num_cols):
        # locate a nonzero pivot of minimal absolute value in the submatrix
        best = None
        for i in range(t, m):
            for j in range(t, num_cols):
                x = a[i][j]
                if x != 0 and (best is None or abs(x) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            # clear column t, then row t; a smaller remainder becomes the new pivot
            dirty = False
            for i in range(t + 1, m):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    add_row(t, i, -q)
                    if a[i][t]:
                        swap_rows(t, i)
                        dirty = True
            for j in range(t + 1, num_cols):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    add_col(t, j, -q)
                    if a[t][j]:
                        swap_cols(t, j)
                        dirty = True
            if not dirty:
                break
        # pivot must divide every remaining entry
        p = a[t][t]
        fixed = False
        for i in range(t + 1, m):
            for j in range(t + 1, num_cols):
                if a[i][j] % p:
                    add_row(i, t, 1)
                    fixed = True
                    break
            if fixed:
                break
        if fixed:
            continue
        diag.append(abs(p))
        t += 1
    return diag, v


@dataclass(frozen=True)
class AbelianGroup:
    """A finite abelian group in invariant-factor form.

    invariant_factors: chain d1 | d2 | ... with di >= 2 (trivial group: empty).
    named_generators: generator name -> coordinate tuple.
    """

    invariant_factors: tuple[int, ...]
    named_generators: dict[str, Element] = field(default_factory=dict, compare=False)

    def __post_init__(self):
        for d, d2 in itertools.pairwise(self.invariant_factors):
            if d2 % d:
                raise ValueError(f"not a divisibility chain: {self.invariant_factors}")
        if any(d < 2 for d in self.invariant_factors):
            raise ValueError("invariant factors must be >= 2")

    @property
    def order(self) -> int:
        return prod(self.invariant_factors)

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)

    def __repr__(self):
        body = " x ".join(f"Z_{d}" for d in self.invariant_factors) or "Z_1"
        if self.named_generators:
            gens = ", ".join(f"{k}={v}" for k, v in self.named_generators.items())
            return f"<{body}; {gens}>"
        return f"<{body}>"

    # -- element arithmetic ------------------------------------------------

    def reduce(self, coords) -> Element:
        return tuple(c % d for c, d in zip(coords, self.invariant_factors))

    def identity(self) -> Element:
        return (0,) * self.rank

    def add(self, g: Element, h: Element) -> Element:
        return tuple((x + y) % d for x, y, d in zip(g, h, self.invariant_factors))

    def negate(self, g: Element) -> Element:
        return tuple((-x) % d for x, d in zip(g, self.invariant_factors))

    def scalar_multiply(self, k: int, g: Element) -> Element:
        return tuple((k * x) % d for x, d in zip(g, self.invariant_factors))

    def subtract(self, g: Element, h: Element) -> Element:
        return tuple((x - y) % d for x, y, d in zip(g, h, self.invariant_factors))

    def element_order(self, g: Element) -> int:
        return lcm(1, *(d // gcd(d, x) for x, d in zip(g, self.invariant_factors)))

    def elements(self):
        """All elements in lexicographic coordinate order."""
        return itertools.product(*(range(d) for d in self.invariant_factors))

    def cyclic_subgroup(self, g: Element) -> set[Element]:
        out = {self.identity()}
        x = g
        while x not in out:
            out.add(x)
            x = self.add(x, g)
        return out

    def subgroup_index(self, g: Element) -> int:
        return self.order // self.element_order(g)

    def intersection_order(self, g: Element, h: Element) -> int:
        gs = self.cyclic_subgroup(g)
        return sum(1 for x in self.cyclic_subgroup(h) if x in gs)

    def elements_of_order_two(self) -> list[Element]:
        halves = [(0,) if d % 2 else (0, d // 2) for d in self.invariant_factors]
        out = [g for g in itertools.product(*halves) if any(g)]
        out.sort()
        return out

    def generates(self, gens) -> bool:
        """Whether the given elements generate the whole group."""
        seen = {self.identity()}
        frontier = [self.identity()]
        while frontier:
            x = frontier.pop()
            for g in gens:
                y = self.add(x, g)
                if y not in seen:
                    seen.add(y)
                    frontier.append(y)
        return len(seen) == self.order


def group_from_relations(num_generators: int, relations, names=None) -> AbelianGroup:
    """Quotient Z^num_generators by the lattice spanned by the relation rows.

    Raises InfiniteGroup when the lattice has rank < num_generators. Generator j
    is mapped through the Smith change of basis and exposed under names[j]
    (default "a", "b", "c", ...).
    """
    rows = [list(r) for r in relations]
    for r in rows:
        if len(r) != num_generators:
            raise ValueError("relation row length must equal num_generators")
    diag, v = _smith_normal_form(rows, num_generators)
    if len(diag) < num_generators or 0 in diag:
        raise InfiniteGroup("relation lattice has rank < number of generators")
    keep = [i for i, d in enumerate(diag) if d >= 2]
    factors = tuple(diag[i] for i in keep)
    if names is None:
        names = [chr(ord("a") + j) for j in range(num_generators)]
    group = AbelianGroup(factors)
    named = {
        names[j]: group.reduce(tuple(v[j][i] for i in keep))
        for j in range(num_generators)
    }
    object.__setattr__(group, "named_generators", named)
    return group


def cyclic_group(n: int) -> AbelianGroup:
    return group_from_relations(1, [[n]])


def direct_product_group(orders, names=None) -> AbelianGroup:
    """Z_{orders[0]} x Z_{orders[1]} x ... with the obvious named generators."""
    k = len(orders)
    rels = [[orders[i] if j == i else 0 for j in range(k)] for i in range(k)]
    return group_from_relations(k, rels, names=names)
