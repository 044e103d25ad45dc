"""Free nilpotent Lie algebras on a Hall basis.

Hall trees are nested tuples: a generator is an int, a bracket is a pair
(u, v). The order is weight first, then lexicographic on the foliage (the
left-to-right sequence of generator leaves), which fixes the basis and the
structure constants byte for byte. A pair (u, v) is a Hall tree when u > v
and u is either a generator or a bracket (a, b) with b <= v; brackets are
therefore printed with the larger factor on the left, e.g. [a2, a1].
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Dict, Tuple

from .lie import LieAlgebra

Q = Fraction


def mobius(n: int) -> int:
    """Moebius function of a positive integer."""
    if n < 1:
        raise ValueError("mobius needs a positive integer")
    result = 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1
    if n > 1:
        result = -result
    return result


def witt_dim(d: int, t: int) -> int:
    """Dimension of the weight-t layer of the free Lie algebra on d
    generators: (1/t) * sum over divisors a of t of mobius(a) * d^(t/a)."""
    if d < 1 or t < 1:
        raise ValueError("witt_dim needs positive arguments")
    total = sum(mobius(a) * d ** (t // a) for a in range(1, t + 1)
                if t % a == 0)
    if total % t:
        raise ArithmeticError("Witt sum not divisible by the weight")
    return total // t


def tree_weight(tree) -> int:
    if isinstance(tree, int):
        return 1
    return tree_weight(tree[0]) + tree_weight(tree[1])


def tree_foliage(tree) -> tuple:
    if isinstance(tree, int):
        return (tree,)
    return tree_foliage(tree[0]) + tree_foliage(tree[1])


def tree_key(tree) -> tuple:
    return (tree_weight(tree), tree_foliage(tree))


def hall_trees(d: int, t: int) -> list:
    """Hall trees of weight at most t on d generators, in basis order."""
    if d < 1:
        raise ValueError("need at least one generator")
    layers = {1: sorted(range(d))}
    hall = set(range(d))
    for w in range(2, t + 1):
        found = []
        for w1 in range(1, w):
            w2 = w - w1
            for u in layers[w1]:
                for v in layers[w2]:
                    if tree_key(u) <= tree_key(v):
                        continue
                    if not isinstance(u, int) and tree_key(u[1]) > tree_key(v):
                        continue
                    found.append((u, v))
        layers[w] = sorted(found, key=tree_key)
        hall.update(layers[w])
    return [tree for w in range(1, t + 1) for tree in layers[w]]


class _HallContext:
    """Bracket rewriting inside a fixed truncated Hall set."""

    def __init__(self, d: int, t: int):
        self.t = t
        self.basis = hall_trees(d, t)
        self.hall_set = set(self.basis)
        self._memo: Dict[Tuple, Dict] = {}

    def product(self, u, v) -> dict:
        """[u, v] as {hall tree: coefficient}, truncated above weight t."""
        if tree_weight(u) + tree_weight(v) > self.t:
            return {}
        if u == v:
            return {}
        if tree_key(u) < tree_key(v):
            return {h: -c for h, c in self.product(v, u).items()}
        key = (u, v)
        if key in self._memo:
            return self._memo[key]
        if isinstance(u, int) or tree_key(u[1]) <= tree_key(v):
            result = {(u, v): Q(1)}
            if (u, v) not in self.hall_set:
                raise AssertionError("rewriting produced a non-Hall pair")
        else:
            # u = (a, b) with b > v: [[a,b],v] = [a,[b,v]] + [[a,v],b]
            a, b = u
            result = {}
            for h, c in self.product(b, v).items():
                for h2, c2 in self.product(a, h).items():
                    result[h2] = result.get(h2, Q(0)) + c * c2
            for h, c in self.product(a, v).items():
                for h2, c2 in self.product(h, b).items():
                    result[h2] = result.get(h2, Q(0)) + c * c2
            result = {h: c for h, c in result.items() if c != 0}
        self._memo[key] = result
        return result


@lru_cache(maxsize=None)
def free_nilpotent(d: int, t: int) -> LieAlgebra:
    """The free t-step nilpotent Lie algebra on d generators, basis a1..aN."""
    if d < 2:
        raise ValueError("free_nilpotent needs at least 2 generators")
    if t < 1:
        raise ValueError("free_nilpotent needs nilpotency class at least 1")
    ctx = _HallContext(d, t)
    index = {tree: i for i, tree in enumerate(ctx.basis)}
    n = len(ctx.basis)
    table = {}
    for i in range(n):
        for j in range(i + 1, n):
            prod = ctx.product(ctx.basis[i], ctx.basis[j])
            entry = {index[h]: c for h, c in prod.items() if c != 0}
            if entry:
                table[(i, j)] = entry
    labels = tuple(f"a{i + 1}" for i in range(n))
    return LieAlgebra(labels, table, provenance=f"free_nilpotent({d},{t})")


def layer_dims(d: int, t: int) -> tuple:
    """Dimensions of the graded layers of free_nilpotent(d, t)."""
    return tuple(witt_dim(d, w) for w in range(1, t + 1))
