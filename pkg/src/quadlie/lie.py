"""Lie algebras as structure-constant tables.

A LieAlgebra stores the nonzero brackets [e_i, e_j] for i < j; antisymmetry
is built into the representation and the Jacobi identity is checked by
``validate``. On top of the bracket sit the characteristic subspaces
(centre, derived and central series, radical, nilradical, Jacobson radical)
and the structural predicates used throughout the package.

Values are immutable once built; lazily computed reports are cached on the
instance, and recomputing them concurrently is harmless because every
computation is deterministic and side-effect free.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Optional, Sequence, Tuple

from .linalg import (Matrix, Q, RowSpace, Subspace, as_q, det, greedy_complement,
                     kernel, solve, vstack)

BracketTable = Dict[Tuple[int, int], Dict[int, Fraction]]


@dataclass(frozen=True)
class TypePair:
    """(dim of the derived algebra, dim of the centre)."""
    r: int
    s: int


@dataclass(frozen=True)
class SeriesReport:
    """Derived, lower central and upper central series, each to stabilization.

    ``derived[t]`` is the (t+1)-st derived term starting at the algebra,
    ``lower_central[t]`` likewise starts at the algebra, and
    ``upper_central[t]`` starts at the zero subspace (so index t holds the
    t-th upper-central term).
    """
    derived: Tuple[Subspace, ...]
    lower_central: Tuple[Subspace, ...]
    upper_central: Tuple[Subspace, ...]


def _normalize_table(dim: int, table) -> BracketTable:
    clean: BracketTable = {}
    for (i, j), comp in table.items():
        if not (0 <= i < dim and 0 <= j < dim):
            raise ValueError(f"bracket index out of range: ({i}, {j})")
        if i == j:
            if any(as_q(c) != 0 for c in comp.values()):
                raise ValueError(f"nonzero self-bracket at index {i}")
            continue
        sign = 1
        if i > j:
            i, j, sign = j, i, -1
        if (i, j) in clean:
            raise ValueError(f"duplicate bracket for pair ({i}, {j})")
        entry = {}
        for k, c in comp.items():
            if not 0 <= k < dim:
                raise ValueError(f"bracket target out of range: {k}")
            c = as_q(c) * sign
            if c != 0:
                entry[k] = c
        if entry:
            clean[(i, j)] = entry
    return clean


class LieAlgebra:
    """Finite-dimensional Lie algebra over the rationals."""

    __slots__ = ("labels", "table", "levi_hint", "provenance", "_cache")

    def __init__(self, labels: Sequence[str], table,
                 levi_hint: Optional[Subspace] = None,
                 provenance: Optional[str] = None):
        labels = tuple(labels)
        if len(set(labels)) != len(labels):
            raise ValueError("basis labels must be distinct")
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "table", _normalize_table(len(labels), table))
        if levi_hint is not None and levi_hint.ambient != len(labels):
            raise ValueError("levi_hint ambient dimension mismatch")
        object.__setattr__(self, "levi_hint", levi_hint)
        object.__setattr__(self, "provenance", provenance)
        object.__setattr__(self, "_cache", {})

    def __setattr__(self, name, value):
        raise AttributeError("LieAlgebra is immutable")

    @property
    def dim(self) -> int:
        return len(self.labels)

    def __repr__(self) -> str:
        tag = f", {self.provenance}" if self.provenance else ""
        return f"LieAlgebra(dim {self.dim}{tag})"

    def with_metadata(self, levi_hint=None, provenance=None) -> "LieAlgebra":
        return LieAlgebra(self.labels, self.table,
                          levi_hint if levi_hint is not None else self.levi_hint,
                          provenance if provenance is not None else self.provenance)

    def with_labels(self, labels: Sequence[str]) -> "LieAlgebra":
        return LieAlgebra(labels, self.table, self.levi_hint, self.provenance)

    def structure_constant(self, i: int, j: int, k: int) -> Q:
        return self.bracket_basis(i, j).get(k, Q(0))

    def bracket_basis(self, i: int, j: int) -> Dict[int, Q]:
        """[e_i, e_j] as a sparse {index: coefficient} map."""
        if i == j:
            return {}
        if i < j:
            return self.table.get((i, j), {})
        return {k: -c for k, c in self.table.get((j, i), {}).items()}

    def bracket(self, x: Sequence, y: Sequence) -> tuple:
        """[x, y] for coordinate vectors x, y."""
        x = [as_q(v) for v in x]
        y = [as_q(v) for v in y]
        if len(x) != self.dim or len(y) != self.dim:
            raise ValueError("vector length mismatch")
        out = [Q(0)] * self.dim
        for (i, j), comp in self.table.items():
            f = x[i] * y[j] - x[j] * y[i]
            if f != 0:
                for k, c in comp.items():
                    out[k] += f * c
        return tuple(out)

    def ad_basis(self, i: int) -> Matrix:
        """Matrix of ad(e_i) acting on column coordinate vectors."""
        cache = self._cache.setdefault("ad", {})
        if i not in cache:
            n = self.dim
            rows = [[Q(0)] * n for _ in range(n)]
            for j in range(n):
                for k, c in self.bracket_basis(i, j).items():
                    rows[k][j] = c
            cache[i] = Matrix(rows, n)
        return cache[i]

    def ad(self, x: Sequence) -> Matrix:
        """Matrix of ad(x) = [x, -]."""
        x = [as_q(v) for v in x]
        if len(x) != self.dim:
            raise ValueError("vector length mismatch")
        n = self.dim
        rows = [[Q(0)] * n for _ in range(n)]
        for (i, j), comp in self.table.items():
            if x[i] != 0:
                for k, c in comp.items():
                    rows[k][j] += x[i] * c
            if x[j] != 0:
                for k, c in comp.items():
                    rows[k][i] -= x[j] * c
        return Matrix(rows, n)

    def basis_vector(self, i: int) -> tuple:
        return tuple(Q(1) if j == i else Q(0) for j in range(self.dim))

    def full_space(self) -> Subspace:
        return Subspace.full(self.dim)

    def zero_space(self) -> Subspace:
        return Subspace.zero(self.dim)

    # ------------------------------------------------------------------
    # validation
    # ------------------------------------------------------------------

    def validate(self) -> list:
        """Diagnostics for the Lie axioms; an empty list means valid.

        Antisymmetry is structural in the pair table, so the diagnostics
        are the basis triples (i, j, k) violating the Jacobi identity.
        """
        bad = []
        n = self.dim
        for i in range(n):
            for j in range(i + 1, n):
                bij = self.bracket_basis(i, j)
                for k in range(j + 1, n):
                    acc = [Q(0)] * n
                    for m, c in bij.items():
                        for p, d in self.bracket_basis(m, k).items():
                            acc[p] += c * d
                    for m, c in self.bracket_basis(j, k).items():
                        for p, d in self.bracket_basis(m, i).items():
                            acc[p] += c * d
                    for m, c in self.bracket_basis(k, i).items():
                        for p, d in self.bracket_basis(m, j).items():
                            acc[p] += c * d
                    if any(v != 0 for v in acc):
                        bad.append(("jacobi", i, j, k))
        return bad

    # ------------------------------------------------------------------
    # subspace operations
    # ------------------------------------------------------------------

    def product_subspace(self, u: Subspace, v: Subspace) -> Subspace:
        """[U, V] = span of brackets of basis vectors."""
        if u.ambient != self.dim or v.ambient != self.dim:
            raise ValueError("ambient dimension mismatch")
        # against the full space the images are the columns of ad(b)
        if u.is_full() or v.is_full():
            small = v if u.is_full() else u
            rows = []
            for b in small.vectors():
                ad_b = self.ad(b).entries
                for i in range(self.dim):
                    col = tuple(ad_b[k][i] for k in range(self.dim))
                    if any(x != 0 for x in col):
                        rows.append(col)
            return Subspace.span(self.dim, rows)
        vecs = []
        for a in u.vectors():
            for b in v.vectors():
                w = self.bracket(a, b)
                if any(x != 0 for x in w):
                    vecs.append(w)
        return Subspace.span(self.dim, vecs)

    def derived_subalgebra(self) -> Subspace:
        if "derived1" not in self._cache:
            full = self.full_space()
            self._cache["derived1"] = self.product_subspace(full, full)
        return self._cache["derived1"]

    def center(self) -> Subspace:
        if "center" not in self._cache:
            if self.dim == 0:
                self._cache["center"] = self.zero_space()
            else:
                stacked = vstack([self.ad_basis(i) for i in range(self.dim)])
                self._cache["center"] = kernel(stacked)
        return self._cache["center"]

    def centralizer(self, u: Subspace) -> Subspace:
        """{x : [x, U] = 0}."""
        if u.ambient != self.dim:
            raise ValueError("ambient dimension mismatch")
        if u.is_zero():
            return self.full_space()
        mats = [self.ad(v) for v in u.vectors()]
        return kernel(vstack(mats))

    def series(self) -> SeriesReport:
        if "series" not in self._cache:
            full = self.full_space()
            derived = [full]
            while True:
                nxt = self.product_subspace(derived[-1], derived[-1])
                if nxt == derived[-1]:
                    break
                derived.append(nxt)
                if nxt.is_zero():
                    break
            lower = [full]
            while True:
                nxt = self.product_subspace(full, lower[-1])
                if nxt == lower[-1]:
                    break
                lower.append(nxt)
                if nxt.is_zero():
                    break
            upper = [self.zero_space()]
            while True:
                nxt = self._upper_step(upper[-1])
                if nxt == upper[-1]:
                    break
                upper.append(nxt)
                if nxt.is_full():
                    break
            self._cache["series"] = SeriesReport(tuple(derived), tuple(lower),
                                                 tuple(upper))
        return self._cache["series"]

    def _upper_step(self, z: Subspace) -> Subspace:
        """{x : [x, g] contained in z}."""
        ann = z.annihilator().basis
        if ann.rows == 0:
            return self.full_space()
        mats = [ann * self.ad_basis(i) for i in range(self.dim)]
        return kernel(vstack(mats))

    # ------------------------------------------------------------------
    # predicates
    # ------------------------------------------------------------------

    def is_abelian(self) -> bool:
        return not self.table

    def is_solvable(self) -> bool:
        return self.series().derived[-1].is_zero()

    def is_nilpotent(self) -> bool:
        return self.series().lower_central[-1].is_zero()

    def is_perfect(self) -> bool:
        return self.derived_subalgebra().is_full()

    # ------------------------------------------------------------------
    # trace form and radicals
    # ------------------------------------------------------------------

    def killing_gram(self) -> Matrix:
        """Gram matrix K(e_i, e_j) = trace(ad e_i * ad e_j)."""
        if "killing" not in self._cache:
            n = self.dim
            ads = [self.ad_basis(i) for i in range(n)]
            rows = [[Q(0)] * n for _ in range(n)]
            for i in range(n):
                ai = ads[i].entries
                for j in range(i, n):
                    aj = ads[j].entries
                    t = Q(0)
                    for p in range(n):
                        for q in range(n):
                            if ai[p][q] != 0 and aj[q][p] != 0:
                                t += ai[p][q] * aj[q][p]
                    rows[i][j] = t
                    rows[j][i] = t
            self._cache["killing"] = Matrix(rows, n)
        return self._cache["killing"]

    def killing_form(self):
        """The Killing form wrapped as a BilinearForm."""
        from .forms import BilinearForm
        return BilinearForm(self, self.killing_gram())

    def radical(self) -> Subspace:
        """Solvable radical: Killing-orthogonal of the derived algebra."""
        if "radical" not in self._cache:
            d = self.derived_subalgebra()
            if d.is_zero():
                self._cache["radical"] = self.full_space()
            else:
                m = d.basis * self.killing_gram()
                self._cache["radical"] = kernel(m)
        return self._cache["radical"]

    def nilradical(self) -> Subspace:
        """Largest nilpotent ideal, via the trace form on the associative
        envelope of ad(radical)."""
        if "nilradical" in self._cache:
            return self._cache["nilradical"]
        rad = self.radical()
        if rad.is_zero():
            self._cache["nilradical"] = rad
            return rad
        n = self.dim

        def sparse(m: Matrix) -> dict:
            return {p: {q: v for q, v in enumerate(row) if v != 0}
                    for p, row in enumerate(m.entries)
                    if any(v != 0 for v in row)}

        def smul(a: dict, b: dict) -> dict:
            out = {}
            for p, arow in a.items():
                orow = {}
                for q, av in arow.items():
                    brow = b.get(q)
                    if brow:
                        for r, bv in brow.items():
                            orow[r] = orow.get(r, Q(0)) + av * bv
                orow = {r: v for r, v in orow.items() if v != 0}
                if orow:
                    out[p] = orow
            return out

        def svec(a: dict) -> list:
            v = [Q(0)] * (n * n)
            for p, row in a.items():
                for q, val in row.items():
                    v[p * n + q] = val
            return v

        def strace(a: dict, b: dict) -> Q:
            t = Q(0)
            for p, arow in a.items():
                for q, av in arow.items():
                    bv = b.get(q, {}).get(p)
                    if bv:
                        t += av * bv
            return t

        gens = [sparse(self.ad(v)) for v in rad.vectors()]
        envelope = []
        rs = RowSpace(n * n)
        queue = []
        for g in gens:
            if rs.add(svec(g)):
                envelope.append(g)
                queue.append(g)
        while queue:
            b = queue.pop(0)
            for g in gens:
                p = smul(b, g)
                if p and rs.add(svec(p)):
                    envelope.append(p)
                    queue.append(p)
                if len(envelope) > n * n:
                    raise RuntimeError("envelope closure exceeded dimension bound")
        # x = sum t_r rad_r is in the nilradical iff trace(ad(x) b) = 0
        # for every b in the envelope
        rows = []
        for b in envelope:
            row = [strace(g, b) for g in gens]
            if any(x != 0 for x in row):
                rows.append(row)
        if not rows:
            coeff_space = Subspace.full(rad.dim)
        else:
            coeff_space = kernel(Matrix(rows, rad.dim))
        vecs = []
        for coeff in coeff_space.vectors():
            vec = [Q(0)] * n
            for c, basis_vec in zip(coeff, rad.vectors()):
                if c != 0:
                    for idx, x in enumerate(basis_vec):
                        vec[idx] += c * x
            vecs.append(vec)
        result = Subspace.span(n, vecs)
        self._cache["nilradical"] = result
        return result

    def jacobson_radical(self) -> Subspace:
        """[g, radical]; equals the intersection of all maximal ideals."""
        if "jacobson" not in self._cache:
            self._cache["jacobson"] = self.product_subspace(self.full_space(),
                                                            self.radical())
        return self._cache["jacobson"]

    def is_semisimple(self) -> bool:
        return det(self.killing_gram()) != 0

    def centroid(self) -> list:
        """Basis of {M : M ad(x) = ad(x) M for all x}."""
        n = self.dim
        if n == 0:
            return []
        rows = {}
        for t in range(n):
            a = self.ad_basis(t).entries
            for p in range(n):
                for q in range(n):
                    row = {}
                    for m in range(n):
                        if a[m][q] != 0:
                            row[p * n + m] = row.get(p * n + m, Q(0)) + a[m][q]
                        if a[p][m] != 0:
                            row[m * n + q] = row.get(m * n + q, Q(0)) - a[p][m]
                    row = {k: v for k, v in row.items() if v != 0}
                    if row:
                        key = _normalized_row_key(row)
                        rows[key] = row
        mat = _rows_to_matrix(rows.values(), n * n)
        ker = kernel(mat)
        return [Matrix.from_vector(v, n, n) for v in ker.vectors()]

    def is_simple(self) -> bool:
        """Semisimple with one-dimensional centroid.

        Over the rationals a simple algebra whose centroid is a proper field
        extension would be misjudged; every algebra built here is central.
        """
        return self.dim > 0 and self.is_semisimple() and len(self.centroid()) == 1

    # ------------------------------------------------------------------
    # ideals, quotients, sums
    # ------------------------------------------------------------------

    def is_ideal(self, u: Subspace) -> bool:
        return u.contains(self.product_subspace(self.full_space(), u))

    def ideal_closure(self, s: Subspace) -> Subspace:
        """Smallest ideal containing s (fixed point of U -> U + [g, U]).

        Worklist form: only vectors that enlarged the span are bracketed
        against the basis again, which reaches the same fixed point.
        """
        rs = RowSpace(self.dim)
        work = []
        for v in s.vectors():
            if rs.add(v):
                work.append(v)
        while work:
            v = work.pop()
            ad_v = self.ad(v).entries
            for i in range(self.dim):
                col = [ad_v[k][i] for k in range(self.dim)]
                if any(x != 0 for x in col) and rs.add(col):
                    work.append(col)
        return rs.subspace()

    def quotient(self, ideal: Subspace, check: bool = True) -> "LieAlgebra":
        """Quotient by an ideal, on the lexicographically first complement of
        standard basis vectors."""
        if check and not self.is_ideal(ideal):
            raise ValueError("quotient by a subspace that is not an ideal")
        comp = greedy_complement(ideal)
        m = len(comp)
        n = self.dim
        # columns: complement unit vectors then ideal basis rows
        cols = []
        for j in comp:
            e = [Q(0)] * n
            e[j] = Q(1)
            cols.append(e)
        cols.extend(list(v) for v in ideal.vectors())
        tmat = Matrix(cols, n).transpose()

        def project(vec):
            x = solve(tmat, vec)
            return x[:m]

        table = {}
        for a in range(m):
            for b in range(a + 1, m):
                w = self.bracket(self.basis_vector(comp[a]),
                                 self.basis_vector(comp[b]))
                coeffs = project(w)
                entry = {k: c for k, c in enumerate(coeffs) if c != 0}
                if entry:
                    table[(a, b)] = entry
        labels = tuple(self.labels[j] for j in comp)
        return LieAlgebra(labels, table, provenance="quotient")

    def subalgebra(self, u: Subspace, labels: Optional[Sequence[str]] = None
                   ) -> "LieAlgebra":
        """Restrict the bracket to a subspace closed under it."""
        vecs = u.vectors()
        k = len(vecs)
        tmat = Matrix([list(v) for v in vecs], self.dim).transpose()
        table = {}
        for a in range(k):
            for b in range(a + 1, k):
                w = self.bracket(vecs[a], vecs[b])
                coeffs = solve(tmat, w)
                if coeffs is None:
                    raise ValueError("subspace is not closed under the bracket")
                entry = {t: c for t, c in enumerate(coeffs) if c != 0}
                if entry:
                    table[(a, b)] = entry
        if labels is None:
            labels = tuple(f"u{i + 1}" for i in range(k))
        return LieAlgebra(labels, table, provenance="subalgebra")

    def type_pair(self) -> TypePair:
        return TypePair(self.derived_subalgebra().dim, self.center().dim)


def _normalized_row_key(row: dict) -> tuple:
    lead = min(row)
    inv = 1 / row[lead]
    return tuple(sorted((k, v * inv) for k, v in row.items()))


def _rows_to_matrix(rows: Iterable[dict], width: int) -> Matrix:
    dense = []
    for row in rows:
        vec = [Q(0)] * width
        for k, v in row.items():
            vec[k] = v
        dense.append(vec)
    return Matrix(dense, width)


def sparse_kernel(rows: Iterable[dict], width: int) -> Subspace:
    """Kernel of a sparse constraint system, deduplicating scalar-multiple
    rows before dense reduction."""
    unique = {}
    for row in rows:
        row = {k: as_q(v) for k, v in row.items() if v != 0}
        if row:
            unique[_normalized_row_key(row)] = row
    if not unique:
        return Subspace.full(width)
    return kernel(_rows_to_matrix(unique.values(), width))


def direct_sum(a: LieAlgebra, b: LieAlgebra) -> LieAlgebra:
    """Direct sum of Lie algebras (blockwise brackets)."""
    if set(a.labels) & set(b.labels):
        labels = tuple(f"{lbl}_1" for lbl in a.labels) + \
            tuple(f"{lbl}_2" for lbl in b.labels)
    else:
        labels = a.labels + b.labels
    table = {}
    for (i, j), comp in a.table.items():
        table[(i, j)] = dict(comp)
    off = a.dim
    for (i, j), comp in b.table.items():
        table[(i + off, j + off)] = {k + off: c for k, c in comp.items()}
    return LieAlgebra(labels, table, provenance="direct_sum")


def embed_subspace(sub: Subspace, ambient: int, offset: int) -> Subspace:
    """View a subspace of a summand inside a larger ambient space."""
    vecs = []
    for v in sub.vectors():
        w = [Q(0)] * ambient
        for i, x in enumerate(v):
            w[offset + i] = x
        vecs.append(w)
    return Subspace.span(ambient, vecs)
