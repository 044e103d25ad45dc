import random
from fractions import Fraction

import pytest

import quadlie as ql
from quadlie.build import Cocycle2, Representation
from quadlie.derivations import n23_levi_generator
from quadlie.hall import hall_trees, tree_weight
from quadlie.linalg import Matrix, Subspace, det
from quadlie.forms import validate_quadratic


class TestHeisenberg:
    def test_small_cases(self):
        h1 = ql.heisenberg(1)
        assert h1.dim == 3 and h1.type_pair() == ql.TypePair(1, 1)
        h2 = ql.heisenberg(2)
        assert h2.dim == 5
        series = h2.series().lower_central
        assert [s.dim for s in series] == [5, 1, 0]

    def test_never_quadratic(self):
        for n in (1, 2, 3):
            assert ql.find_quadratic_structure(ql.heisenberg(n)).status == "none"

    def test_zero_rejected(self):
        with pytest.raises(ValueError):
            ql.heisenberg(0)


class TestFreeNilpotent:
    def test_witt_dims(self):
        assert ql.witt_dim(2, 3) == 2
        assert ql.witt_dim(3, 2) == 3
        assert ql.witt_dim(2, 2) == 1
        assert ql.witt_dim(2, 4) == 3
        assert ql.witt_dim(3, 3) == 8

    def test_mobius(self):
        values = [ql.mobius(n) for n in range(1, 11)]
        assert values == [1, -1, -1, 0, -1, 1, -1, 0, 0, 1]

    def test_dimensions(self):
        assert ql.free_nilpotent(2, 3).dim == 5
        assert ql.free_nilpotent(3, 2).dim == 6

    def test_center_dim_matches_witt(self):
        for d, t in ((2, 2), (2, 3), (3, 2), (2, 4)):
            L = ql.free_nilpotent(d, t)
            assert L.center().dim == ql.witt_dim(d, t)

    def test_layer_dims_match_witt_up_to_dim_30(self):
        for d, t in ((2, 2), (2, 3), (2, 4), (2, 5), (3, 2), (3, 3), (4, 2)):
            trees = hall_trees(d, t)
            assert sum(1 for _ in trees) <= 30 or (d, t) == (3, 3)
            by_weight = {}
            for tree in trees:
                by_weight[tree_weight(tree)] = by_weight.get(tree_weight(tree),
                                                             0) + 1
            for w in range(1, t + 1):
                assert by_weight[w] == ql.witt_dim(d, w)

    def test_codim_of_derived_is_d(self):
        for d, t in ((2, 3), (3, 2), (2, 4)):
            L = ql.free_nilpotent(d, t)
            assert L.dim - L.derived_subalgebra().dim == d

    def test_validates(self):
        for d, t in ((2, 4), (3, 3)):
            assert ql.free_nilpotent(d, t).validate() == []

    def test_generator_count_guard(self):
        with pytest.raises(ValueError):
            ql.free_nilpotent(1, 3)


class TestQuadraticFreeNilpotent:
    def test_n32_bracket_table(self):
        L = ql.n32_quadratic().algebra
        # [a2,a1] = a4, [a3,a1] = a5, [a3,a2] = a6
        assert L.bracket_basis(1, 0) == {3: Fraction(1)}
        assert L.bracket_basis(2, 0) == {4: Fraction(1)}
        assert L.bracket_basis(2, 1) == {5: Fraction(1)}

    def test_n23_bracket_table(self):
        L = ql.n23_quadratic().algebra
        # a3 = [a2,a1], a4 = [a3,a1], a5 = [a3,a2]
        assert L.bracket_basis(1, 0) == {2: Fraction(1)}
        assert L.bracket_basis(2, 0) == {3: Fraction(1)}
        assert L.bracket_basis(2, 1) == {4: Fraction(1)}

    def test_gram_sign_rule(self):
        # phi(a_i, a_j) = (-1)^(i-1) for i <= j on the antidiagonal (1-indexed),
        # zero elsewhere, completed symmetrically
        for q, n in ((ql.n23_quadratic(), 5), (ql.n32_quadratic(), 6)):
            for i in range(n):
                for j in range(n):
                    expected = (Fraction((-1) ** min(i, j))
                                if i + j == n - 1 else Fraction(0))
                    assert q.form.gram.entries[i][j] == expected

    def test_both_validate(self):
        for q in (ql.n23_quadratic(), ql.n32_quadratic()):
            assert validate_quadratic(q.algebra, q.form) == []

    def test_type_pairs_and_dim_identity(self):
        q23 = ql.n23_quadratic()
        assert q23.algebra.type_pair() == ql.TypePair(3, 2)
        assert 5 == 3 + 2
        q32 = ql.n32_quadratic()
        assert q32.algebra.type_pair() == ql.TypePair(3, 3)
        assert 6 == 3 + 3


class TestOscillators:
    def test_d4_table_and_form(self):
        q = ql.oscillator_d4()
        L = q.algebra
        assert L.labels == ("x1", "x2", "x3", "z")
        assert L.bracket_basis(0, 1) == {2: Fraction(1)}
        assert L.bracket_basis(0, 2) == {1: Fraction(-1)}
        assert L.bracket_basis(1, 2) == {3: Fraction(1)}
        assert q.form.evaluate(L.basis_vector(0), L.basis_vector(3)) == 1
        assert q.form.evaluate(L.basis_vector(1), L.basis_vector(1)) == 1
        assert q.form.evaluate(L.basis_vector(2), L.basis_vector(2)) == 1
        assert q.form.evaluate(L.basis_vector(0), L.basis_vector(0)) == 0

    def test_generalized_oscillator_matches_d4(self):
        g1 = ql.generalized_oscillator([1])
        d4 = ql.oscillator_d4()
        assert g1.algebra.table == d4.algebra.table
        assert g1.form.gram == d4.form.gram
        assert g1.algebra.labels == ("e0", "e1", "e2", "e3")

    def test_derived_is_generalized_heisenberg(self):
        rng = random.Random(40)
        for m in (1, 2, 3):
            lams = [Fraction(rng.randint(1, 5), rng.randint(1, 3))
                    for _ in range(m)]
            q = ql.generalized_oscillator(lams)
            n = q.dim
            assert n == 2 * m + 2
            derived = q.algebra.derived_subalgebra()
            expected = Subspace.span(
                n, [q.algebra.basis_vector(i) for i in range(1, n)])
            assert derived == expected
            square = q.algebra.product_subspace(derived, derived)
            assert square == Subspace.span(n, [q.algebra.basis_vector(n - 1)])

    def test_frequency_validation(self):
        with pytest.raises(ValueError):
            ql.generalized_oscillator([])
        with pytest.raises(ValueError):
            ql.generalized_oscillator([1, 0])


class TestTStarExtension:
    def test_trivial_extension_of_h1(self):
        q = ql.tstar_extension(ql.heisenberg(1))
        assert q.dim == 6
        assert validate_quadratic(q.algebra, q.form) == []

    def test_abelian_input_gives_abelian_hyperbolic(self):
        q = ql.tstar_extension(ql.abelian(3))
        assert q.algebra.is_abelian() and q.dim == 6
        g = q.form.gram
        for i in range(3):
            assert g.entries[i][3 + i] == 1 and g.entries[i][i] == 0

    def test_simple_input_local_with_dual_jacobson(self):
        q = ql.tstar_extension(ql.sl2())
        L = q.algebra
        dual = Subspace.span(6, [L.basis_vector(i) for i in range(3, 6)])
        assert L.jacobson_radical() == dual
        assert ql.is_local(L)

    def test_dual_copy_is_lagrangian_ideal(self, corpus):
        for name in ("tstar_h1", "tstar_sl2", "tstar_n23"):
            q = corpus[name]
            n = q.dim // 2
            dual = Subspace.span(q.dim, [q.algebra.basis_vector(n + i)
                                         for i in range(n)])
            assert q.algebra.is_ideal(dual)
            assert q.algebra.product_subspace(dual, dual).is_zero()
            assert ql.orthogonal_complement(dual, q.form) == dual

    def test_nonzero_cyclic_cocycle(self):
        base = ql.abelian(3)
        eps = Cocycle2(base, {(0, 1): (0, 0, 1), (0, 2): (0, -1, 0),
                              (1, 2): (1, 0, 0)})
        assert eps.cyclicity_violations() == []
        q = ql.tstar_extension(base, eps)
        assert q.dim == 6
        assert q.algebra.validate() == []
        assert not q.algebra.is_abelian()

    def test_non_cyclic_cocycle_rejected(self):
        base = ql.abelian(3)
        bad = Cocycle2(base, {(0, 1): (1, 0, 0)})
        assert bad.cyclicity_violations() != []
        with pytest.raises(ValueError):
            ql.tstar_extension(base, bad)


class TestDoubleExtension:
    def test_dimension_law(self, corpus):
        assert corpus["n23s"].dim == 2 * 3 + 5
        assert corpus["n32s"].dim == 2 * 8 + 6
        assert corpus["a_sl2_2"].dim == 2 * 3 + 5

    def test_rejects_non_skew(self):
        q = ql.abelian_quadratic(2)
        not_skew = Matrix([[1, 0], [0, 1]])
        with pytest.raises(ValueError, match="skew"):
            ql.double_extension_by_derivation(q, not_skew)

    def test_rejects_non_derivation(self):
        q = ql.oscillator_d4()
        # diag(1, 0, 0, -1) is skew for the oscillator form but fails Leibniz
        candidate = Matrix([[1, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0],
                            [0, 0, 0, -1]])
        from quadlie.derivations import is_derivation, is_skew
        assert is_skew(q.form, candidate) and not is_derivation(q.algebra,
                                                                candidate)
        with pytest.raises(ValueError, match="derivation"):
            ql.double_extension_by_derivation(q, candidate)

    def test_rejects_non_homomorphism(self):
        q = ql.n23_quadratic()
        g = ql.sl2()
        d = n23_levi_generator(1, 0, 0)
        rho = Representation(g, 5, (d, d, d))
        with pytest.raises(ValueError, match="homomorphism"):
            ql.double_extension(q, g, rho)

    def test_one_dim_case_matches_oscillator(self):
        va = ql.abelian_quadratic(2)
        delta = Matrix([[0, -1], [1, 0]])
        ext = ql.double_extension_by_derivation(va, delta)
        assert ext.algebra.table == ql.oscillator_d4().algebra.table

    def test_seven_dim_solvable_local(self):
        ext = ql.double_extension_by_derivation(ql.n23_quadratic(),
                                                n23_levi_generator(0, 1, 1))
        assert ext.dim == 7
        assert ext.algebra.is_solvable()
        assert ql.is_local(ext.algebra)
        assert ql.classify_local_quadratic(ext.algebra, ext.form) == "d"

    def test_degenerate_case_abelian(self):
        ext = ql.double_extension_by_derivation(ql.abelian_quadratic(2),
                                                Matrix.zeros(2, 2))
        assert ext.dim == 4 and ext.algebra.is_abelian()
        assert not ql.is_local(ext.algebra)

    def test_flagship_outputs_validate(self, corpus):
        for name in ("n23s", "n32s", "a_sl2_1"):
            q = corpus[name]
            assert q.algebra.validate() == []
            assert validate_quadratic(q.algebra, q.form) == []

    def test_levi_hint_set_for_simple_g(self, corpus):
        for name in ("n23s", "n32s", "a_sl2_1"):
            assert corpus[name].algebra.levi_hint is not None

    def test_perfectness_of_mixed_extensions(self, corpus):
        for name in ("n23s", "n32s", "a_sl2_1", "a_sl2_2", "a_sl2_3"):
            assert corpus[name].algebra.is_perfect(), name


class TestSl2Machinery:
    def test_module_is_homomorphism(self):
        for n in (1, 2, 3, 4):
            rep = ql.sl2_module(n)
            assert rep.homomorphism_violations() == []

    def test_representation_of_element(self):
        rep = ql.sl2_module(2)
        combined = rep.matrix([1, 0, Fraction(1, 2)])
        assert combined == rep.matrices[0] + rep.matrices[2].scale(
            Fraction(1, 2))

    def test_module_form_even_only(self):
        g = ql.sl2_module_form(2)
        assert g.is_symmetric() and det(g) != 0
        with pytest.raises(ValueError):
            ql.sl2_module_form(1)
        with pytest.raises(ValueError):
            ql.sl2_module_form(3)

    def test_module_form_skew_invariance(self):
        rep = ql.sl2_module(4)
        g = ql.sl2_module_form(4)
        for m in rep.matrices:
            assert (m.transpose() * g + g * m).is_zero()

    def test_a_sl2_dims(self):
        for m in (1, 2, 3):
            assert ql.a_sl2(m).dim == 2 * m + 7

    def test_a_sl2_chain(self, corpus):
        q = corpus["a_sl2_2"]
        L = q.algebra
        n = L.dim
        sstar = Subspace.span(n, [L.basis_vector(n - 3 + i) for i in range(3)])
        middle = sstar.sum(Subspace.span(
            n, [L.basis_vector(3 + i) for i in range(n - 6)]))
        chain = [L.zero_space(), sstar, middle, L.full_space()]
        for ideal in chain:
            assert L.is_ideal(ideal)
        for i, ideal in enumerate(chain):
            assert ql.omega_dual(L, q.form, ideal) == chain[len(chain) - 1 - i]


class TestTensorTruncated:
    def test_degree_one_recovers_input(self):
        sq = ql.sl2_killing_quadratic()
        t = ql.tensor_truncated(sq, 1)
        assert t.algebra.table == sq.algebra.table
        assert t.form.gram == sq.form.gram

    def test_layer_perps(self, corpus):
        q = corpus["tensor_3"]
        L = q.algebra

        def layer(k):
            return Subspace.span(9, [L.basis_vector(j * 3 + i)
                                     for j in range(k, 3) for i in range(3)])

        assert ql.orthogonal_complement(layer(1), q.form) == layer(2)
        assert ql.orthogonal_complement(layer(2), q.form) == layer(1)

    def test_quadratic_and_chain(self, corpus):
        q = corpus["tensor_3"]
        nodes = ql.chain_nodes(q.algebra, q.form)
        assert len(nodes) == 4 and ql.is_chain(nodes)

    def test_degenerate_input_rejected(self):
        h = ql.heisenberg(1)
        from quadlie.forms import BilinearForm
        with pytest.raises(ValueError):
            ql.tensor_truncated(
                ql.QuadraticAlgebra(h, BilinearForm(h, Matrix.zeros(3, 3))), 2)


class TestSplitH3:
    def test_structure(self):
        L = ql.split_h3_extension()
        assert L.dim == 4
        assert L.is_solvable()
        assert L.center().is_zero()
        h3 = Subspace.span(4, [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0]])
        assert L.derived_subalgebra() == h3
        assert L.jacobson_radical() == h3
        z_line = Subspace.span(4, [[0, 0, 1, 0]])
        assert L.ideal_closure(Subspace.span(4, [[0, 0, 1, 0]])) == z_line

    def test_not_quadratic(self):
        assert ql.find_quadratic_structure(ql.split_h3_extension()).status == \
            "none"


class TestBuilderOutputsValidate:
    def test_all_corpus_members(self, corpus):
        for name, q in corpus.items():
            assert q.algebra.validate() == [], name
            assert validate_quadratic(q.algebra, q.form) == [], name
