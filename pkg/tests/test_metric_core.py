import json
from fractions import Fraction as F

import pytest

from lipfree import (
    Asymmetric,
    FreeElement,
    LipFunction,
    NegativeOrZeroOffDiagonal,
    TriangleViolation,
    free_element_from_json,
    free_element_to_json,
    is_ultrametric,
    load_space,
    make_family,
    truncate,
    validate_metric,
)
from oracles import triangle_scan, ultrametric_scan


class TestValidateMetric:
    def test_smallest_nontrivial_metric(self):
        space = validate_metric([[0, 1], [1, 0]])
        assert space.n == 2
        assert space.dist[0][1] == 1

    def test_triangle_violation_with_witness(self):
        with pytest.raises(TriangleViolation) as info:
            validate_metric([[0, 1, 3], [1, 0, 1], [3, 1, 0]])
        assert (info.value.i, info.value.j, info.value.k) == (0, 1, 2)

    def test_asymmetric(self):
        with pytest.raises(Asymmetric) as info:
            validate_metric([[0, 1], [2, 0]])
        assert (info.value.i, info.value.j) == (0, 1)

    def test_zero_off_diagonal(self):
        with pytest.raises(NegativeOrZeroOffDiagonal):
            validate_metric([[0, 0], [0, 0]])

    def test_nonzero_diagonal(self):
        with pytest.raises(NegativeOrZeroOffDiagonal) as info:
            validate_metric([[1, 1], [1, 0]])
        assert info.value.i == info.value.j == 0

    def test_remark1_truncation_passes_oracle(self):
        space = truncate(make_family("remark", 1), 5)
        # rho(x_k, x_n) = k + n - 1/k on 1-based indices
        for i in range(5):
            for j in range(i + 1, 5):
                assert space.dist[i][j] == (i + 1) + (j + 1) - F(1, i + 1)
        assert triangle_scan(space.dist) is None

    def test_rationals_survive_exactly(self):
        space = validate_metric([["0", "1/3"], ["1/3", 0]])
        assert space.dist[0][1] == F(1, 3)
        assert not space.approximate


class TestTruncate:
    def test_uniform(self):
        space = truncate(make_family("uniform", 1), 3)
        assert all(
            space.dist[i][j] == 1 for i in range(3) for j in range(3) if i != j
        )

    def test_convergent_line(self):
        space = truncate(make_family("convline", ), 4)
        # points 0, 1, 1/2, 1/3 with the absolute difference metric
        values = [F(0), F(1), F(1, 2), F(1, 3)]
        for i in range(4):
            for j in range(4):
                assert space.dist[i][j] == abs(values[i] - values[j])

    def test_remark2_rows(self):
        space = truncate(make_family("remark", 2), 4)
        assert [space.dist[0][j] for j in range(1, 4)] == [1, 1, 1]
        assert [space.dist[1][j] for j in range(2, 4)] == [F(3, 2), F(3, 2)]
        assert space.dist[2][3] == F(5, 3)

    def test_size_guards(self):
        from lipfree import InvalidFamilyParameters

        with pytest.raises(InvalidFamilyParameters):
            truncate(make_family("uniform", 1), 0)
        with pytest.raises(InvalidFamilyParameters):
            truncate(make_family("dendro", 1, 5, 12), 13)

    def test_prefix_consistency(self):
        for label in ["uniform:2", "convline", "intline", "geomline", "remark:3", "dendro:5:6:20"]:
            family = make_family(*label.split(":"))
            small = truncate(family, 6)
            big = truncate(family, 7)
            for i in range(6):
                for j in range(6):
                    assert small.dist[i][j] == big.dist[i][j]


class TestIsUltrametric:
    def test_uniform_true(self):
        ok, witness = is_ultrametric(truncate(make_family("uniform", 1), 5))
        assert ok and witness is None

    def test_convline_false_with_witness(self):
        space = truncate(make_family("convline"), 3)
        ok, witness = is_ultrametric(space)
        assert not ok
        assert witness == ultrametric_scan(space.dist)
        x, y, z = witness
        assert space.dist[x][y] > max(space.dist[x][z], space.dist[z][y])

    @pytest.mark.parametrize("seed", [1, 2, 3])
    def test_dendrogram_truncations_true(self, seed):
        space = truncate(make_family("dendro", seed, 6, 16), 16)
        ok, _ = is_ultrametric(space)
        assert ok
        assert ultrametric_scan(space.dist) is None


class TestCustomSpaceLoading:
    def test_load_rational_strings(self):
        space = load_space('{"n": 2, "dist": [[0, "3/7"], ["3/7", 0]]}')
        assert space.dist[0][1] == F(3, 7)
        assert not space.approximate

    def test_float_entries_use_tolerant_path(self):
        space = load_space('{"n": 2, "dist": [[0, 0.5000000001], [0.5, 0]]}')
        assert space.approximate
        assert abs(space.dist[0][1] - F(1, 2)) < F(1, 10**8)

    def test_triangular_matrix_rejected(self):
        with pytest.raises(Asymmetric):
            load_space('{"n": 2, "dist": [[0, 1], [0, 0]]}')

    def test_size_mismatch(self):
        from lipfree import InvalidFamilyParameters

        with pytest.raises(InvalidFamilyParameters):
            load_space('{"n": 3, "dist": [[0, 1], [1, 0]]}')


class TestFreeElement:
    def test_normalisation_merges_and_drops(self):
        mu = FreeElement.from_pairs([(2, 1), (1, "1/2"), (2, -1), (0, 5), (3, 0)])
        assert mu.support == ((1, F(1, 2)),)

    def test_zero_element(self):
        assert FreeElement.from_pairs([]).is_zero()
        assert FreeElement.from_pairs([(0, 3)]).is_zero()

    def test_arithmetic(self):
        mu = FreeElement.from_pairs([(1, 1), (2, -2)])
        assert mu.scaled(F(1, 2)).support == ((1, F(1, 2)), (2, -1))
        assert mu.plus(mu.scaled(-1)).is_zero()

    def test_json_round_trip(self):
        mu = FreeElement.from_pairs([(1, "1/3"), (4, -2)])
        blob = json.dumps(free_element_to_json(mu))
        assert free_element_from_json(blob) == mu


class TestLipFunction:
    def test_base_value_must_vanish(self):
        with pytest.raises(ValueError):
            LipFunction.from_values([1, 0])

    def test_values_exact(self):
        f = LipFunction.from_values([0, "2/3", -1])
        assert f(1) == F(2, 3)
