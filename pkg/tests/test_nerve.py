import numpy as np
import pytest

from sparsenerve.miniball import miniball
from sparsenerve.model import (
    INF,
    DowkerDissimilarity,
    InputValidationError,
    ParentFunction,
    RestrictionTimes,
    SizeLimitError,
    TranslationFunction,
)
from sparsenerve.nerve import (
    ambient_cech_nerve,
    expand_skeleton,
    full_ambient_cech,
    full_dowker_nerve,
    make_filtered_complex,
    maximal_faces,
    skeleton_size,
    slope_points,
    sparse_dowker_nerve,
    sparse_nerve,
)

from conftest import random_dissimilarity

LINE3 = np.array([[0.0, 1, 3], [1, 0, 2], [3, 2, 0]])


class TestSlopePoints:
    def test_star_tree_finite_leaves(self):
        phi = ParentFunction(parent=[1, 1, 1])
        R = RestrictionTimes(times=np.array([1.0, INF, 2.0]), tree=phi)
        assert slope_points(phi, R) == frozenset({0, 2})

    def test_all_infinite_gives_none(self):
        phi = ParentFunction(parent=[0, 0])
        R = RestrictionTimes(times=np.array([INF, INF]), tree=phi)
        assert slope_points(phi, R) == frozenset()

    def test_single_point(self):
        phi = ParentFunction(parent=[0])
        R = RestrictionTimes(times=np.array([INF]), tree=phi)
        assert slope_points(phi, R) == frozenset()

    def test_dominated_parent_excluded(self):
        # node 1 shares its restriction time with its child: not a slope point
        phi = ParentFunction(parent=[0, 0, 1])
        R = RestrictionTimes(times=np.array([INF, 2.0, 2.0]), tree=phi)
        assert slope_points(phi, R) == frozenset({2})


class TestMaximalFaces:
    def test_single_cell(self):
        phi = ParentFunction(parent=[0])
        R = RestrictionTimes(times=np.array([INF]), tree=phi)
        faces = maximal_faces(np.zeros((1, 1)), R, frozenset({0}))
        assert faces == [frozenset({0})]

    def test_infinite_gamma_gives_singletons(self):
        phi = ParentFunction(parent=[0, 0])
        R = RestrictionTimes(times=np.array([INF, INF]), tree=phi)
        gamma = np.array([[0.0, INF], [INF, 0.0]])
        faces = maximal_faces(gamma, R, frozenset({0, 1}))
        assert sorted(faces, key=sorted) == [frozenset({0}), frozenset({1})]

    def test_subset_dominated_faces_dropped(self, rng):
        lam = random_dissimilarity(rng)
        result = sparse_dowker_nerve(
            DowkerDissimilarity(lam), TranslationFunction.identity(), 1
        )
        faces = maximal_faces(
            result.gamma.values,
            result.restriction,
            slope_points(result.phi, result.restriction),
        )
        for f in faces:
            assert not any(f < g for g in faces if g is not f)


class TestFilteredComplex:
    def test_check_accepts_valid(self):
        K = make_filtered_complex({(0,): 0.0, (1,): 0.0, (0, 1): 1.0}, dim_cap=1)
        K.check()

    def test_check_rejects_missing_face(self):
        K = make_filtered_complex({(0,): 0.0, (0, 1): 1.0}, dim_cap=1)
        with pytest.raises(InputValidationError):
            K.check()

    def test_check_rejects_non_monotone(self):
        K = make_filtered_complex(
            {(0,): 0.0, (1,): 2.0, (0, 1): 1.0}, dim_cap=1
        )
        with pytest.raises(InputValidationError):
            K.check()

    def test_sorted_by_value_then_cardinality(self):
        K = make_filtered_complex(
            {(0,): 0.0, (1,): 0.0, (0, 1): 0.0, (2,): 1.0}, dim_cap=1
        )
        assert K.simplices == ((0,), (1,), (0, 1), (2,))


class TestSkeletonSize:
    def test_table_values(self):
        assert skeleton_size(100, 1) == 166750
        assert skeleton_size(1, 0) == 1

    def test_ten_dimensional_count(self):
        assert skeleton_size(100, 10) == pytest.approx(1.2e15, rel=0.05)

    def test_small_exhaustive(self):
        # n=4, d=1: 4 vertices + 6 edges + 4 triangles
        assert skeleton_size(4, 1) == 14


class TestExpandSkeleton:
    def test_expansion(self):
        s = expand_skeleton([frozenset({0, 1, 2})], 1)
        assert s == {(0,), (1,), (2,), (0, 1), (0, 2), (1, 2), (0, 1, 2)}

    def test_budget_enforced(self):
        with pytest.raises(SizeLimitError):
            expand_skeleton([frozenset(range(40))], 10, max_simplices=1000)


class TestSparseNervePipeline:
    def test_three_point_line_identity_filtration_values(self):
        result = sparse_dowker_nerve(
            DowkerDissimilarity(LINE3), TranslationFunction.identity(), 1
        )
        # restriction prunes (0, 2): point 2 only ever pairs with its parent
        assert result.restriction.times.tolist() == [INF, 3.0, 2.0]
        assert result.phi.parent.tolist() == [0, 0, 1]
        values = result.complex.value_of()
        assert values == {
            (0,): 0.0,
            (1,): 0.0,
            (2,): 0.0,
            (0, 1): 1.0,
            (1, 2): 2.0,
        }

    def test_three_point_line_mult3(self):
        result = sparse_dowker_nerve(
            DowkerDissimilarity(LINE3), TranslationFunction.multiplicative(3), 1
        )
        assert result.restriction.times.tolist() == [INF, 1.0, 3.0]
        assert result.phi.parent.tolist() == [0, 0, 0]
        assert result.complex.simplices == ((0,), (1,), (2,), (0, 1), (0, 2))

    def test_single_point(self):
        result = sparse_dowker_nerve(
            DowkerDissimilarity([[0.0]]), TranslationFunction.identity(), 0
        )
        assert result.complex.simplices == ((0,),)
        assert result.complex.values.tolist() == [0.0]

    def test_identity_alpha_downward_closure_matches_full_nerve(self, rng):
        for _ in range(25):
            lam = random_dissimilarity(rng)
            sparse = sparse_dowker_nerve(
                DowkerDissimilarity(lam), TranslationFunction.identity(), 1
            ).complex
            full = full_dowker_nerve(lam, 1)
            sparse.check()
            # with alpha = id the sparse skeleton is a subcomplex of the full
            fv = full.value_of()
            for s, v in sparse.value_of().items():
                assert s in fv and fv[s] == v

    def test_values_recomputed_from_lambda_are_idempotent(self, rng):
        from sparsenerve.nerve import filtration_values

        lam = random_dissimilarity(rng)
        result = sparse_dowker_nerve(
            DowkerDissimilarity(lam), TranslationFunction.multiplicative(3), 1
        )
        again = filtration_values(lam, result.complex.simplices)
        np.testing.assert_array_equal(result.complex.values, again)

    def test_size_limit_propagates(self):
        lam = np.zeros((30, 30))
        with pytest.raises(SizeLimitError):
            sparse_dowker_nerve(
                DowkerDissimilarity(lam),
                TranslationFunction.identity(),
                5,
                max_simplices=100,
            )

    def test_negative_dimension_rejected(self):
        with pytest.raises(InputValidationError):
            sparse_dowker_nerve(
                DowkerDissimilarity(LINE3), TranslationFunction.identity(), -1
            )


class TestAmbientCech:
    def test_single_point(self):
        K = ambient_cech_nerve(
            np.array([[1.0, 2.0]]), TranslationFunction.identity(), 1
        )
        assert K.simplices == ((0,),)
        assert K.values.tolist() == [0.0]

    def test_two_points_edge_at_half_diameter(self):
        K = ambient_cech_nerve(
            np.array([[0.0, 0.0], [2.0, 0.0]]), TranslationFunction.identity(), 1
        )
        assert K.value_of()[(0, 1)] == pytest.approx(1.0)

    def test_values_are_miniball_radii(self, rng):
        X = rng.normal(size=(6, 2))
        K = ambient_cech_nerve(X, TranslationFunction.identity(), 1)
        for s, v in K.value_of().items():
            assert v == pytest.approx(miniball(X[list(s)])[1], abs=1e-9)

    def test_sandwich_bounds(self, rng):
        # lower bound: same skeleton with intrinsic min-max values dominates
        # the miniball values; upper bound: the full ambient Cech complex
        # contains every simplex at the same value.
        from sparsenerve.ingest import distance_matrix
        from sparsenerve.nerve import filtration_values

        for _ in range(20):
            X = rng.normal(size=(int(rng.integers(2, 7)), 2))
            K = ambient_cech_nerve(X, TranslationFunction.identity(), 1)
            K.check()
            dm = distance_matrix(X).values
            intrinsic = filtration_values(dm, K.simplices)
            assert np.all(K.values <= intrinsic + 1e-9)
            full = full_ambient_cech(X, 1).value_of()
            for s, v in K.value_of().items():
                assert s in full
                assert full[s] == pytest.approx(v, abs=1e-9)
