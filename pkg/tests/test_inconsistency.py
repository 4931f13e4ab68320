import json
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import EXAMPLE1, EXAMPLE1_PROJECTED, reciprocal_matrices
from pcreduce.core import Triad, consistent_from_vector, is_consistent
from pcreduce.inconsistency import (
    ii_exp_log,
    ii_original,
    ii_simplified,
    matrix_ii,
    triad_ii,
    triad_log_distance,
)

positive = st.floats(1e-4, 1e4)


def triad(x, y, z):
    return Triad(0, 1, 2, x, y, z)


class TestTriadII:
    def test_example1_triad(self):
        s = triad_ii(triad(2, 5, 3))
        assert s.ii == pytest.approx(1 / 6, abs=1e-15)
        assert s.log_distance == pytest.approx(0.18232155679395463, abs=1e-15)

    def test_consistent(self):
        assert triad_ii(triad(2, 6, 3)).ii == 0.0

    def test_tenfold(self):
        s = triad_ii(triad(1, 10, 1))
        assert s.ii == pytest.approx(0.9, abs=1e-15)
        assert s.log_distance == pytest.approx(math.log(10), abs=1e-15)
        assert ii_original(1, 10, 1) == pytest.approx(0.9, abs=1e-15)
        assert ii_simplified(1, 10, 1) == pytest.approx(0.9, abs=1e-15)

    def test_domain_error(self):
        with pytest.raises(ValueError):
            triad_ii(triad(1, 0, 1))
        with pytest.raises(ValueError):
            ii_original(-1, 1, 1)

    @given(positive, positive, positive)
    def test_three_forms_agree(self, x, y, z):
        a, b, c = ii_original(x, y, z), ii_simplified(x, y, z), ii_exp_log(x, y, z)
        assert abs(a - b) <= 1e-12
        assert abs(b - c) <= 1e-12

    @given(positive, positive, positive)
    def test_bounds_and_score_identity(self, x, y, z):
        s = triad_ii(triad(x, y, z))
        assert 0 <= s.ii < 1
        assert s.ii == pytest.approx(1 - math.exp(-s.log_distance), abs=1e-12)

    @given(positive, positive, positive)
    def test_reciprocal_relabeling(self, x, y, z):
        assert ii_exp_log(1 / z, 1 / y, 1 / x) == pytest.approx(ii_exp_log(x, y, z), abs=1e-12)

    @given(positive, positive, st.floats(0, 5), st.floats(0, 5))
    def test_monotone_in_distance(self, x, z, d1, d2):
        lo, hi = sorted((d1, d2))
        y_lo, y_hi = x * z * math.exp(lo), x * z * math.exp(hi)
        assert triad_log_distance(x, y_lo, z) <= triad_log_distance(x, y_hi, z) + 1e-12
        assert ii_exp_log(x, y_lo, z) <= ii_exp_log(x, y_hi, z) + 1e-12


class TestMatrixII:
    def test_example1(self):
        report = matrix_ii(EXAMPLE1)
        assert report.ii == pytest.approx(1 / 6, abs=1e-15)
        assert report.worst.triad.indices == (0, 1, 2)
        assert len(report.scores) == 1

    def test_consistent(self):
        assert matrix_ii(consistent_from_vector([3, 1, 7, 2])).ii < 1e-15

    def test_printed_projection(self):
        assert matrix_ii(EXAMPLE1_PROJECTED).ii < 1e-5

    def test_small_matrix_has_no_triads(self):
        report = matrix_ii([[1, 2], [0.5, 1]])
        assert report.ii == 0.0
        assert report.worst is None
        assert report.scores == ()

    def test_scores_sorted_with_lexicographic_ties(self):
        # every triad has the same |log distance| = ln 2
        m = consistent_from_vector([1, 1, 1, 1])
        m[0, 3], m[3, 0] = 2.0, 0.5
        m[1, 2], m[2, 1] = 2.0, 0.5
        report = matrix_ii(m)
        idx = [s.triad.indices for s in report.scores]
        assert idx == [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)]
        assert report.worst.triad.indices == (0, 1, 2)
        assert all(s.ii == pytest.approx(0.5) for s in report.scores)

    def test_sorted_descending(self):
        rng = np.random.default_rng(1)
        n = 6
        b = np.triu(rng.normal(size=(n, n)), 1)
        m = np.exp(b - b.T)
        report = matrix_ii(m)
        vals = [s.ii for s in report.scores]
        assert vals == sorted(vals, reverse=True)
        assert report.ii == vals[0] == max(triad_ii(s.triad).ii for s in report.scores)

    def test_json(self):
        doc = json.loads(json.dumps(matrix_ii(EXAMPLE1).to_dict()))
        assert doc["worst"] == {"i": 1, "j": 2, "k": 3, "ii": pytest.approx(1 / 6)}
        assert doc["ii"] == pytest.approx(1 / 6)
        assert len(doc["scores"]) == 1

    @given(reciprocal_matrices())
    def test_transpose_invariant(self, m):
        assert matrix_ii(m.T).ii == pytest.approx(matrix_ii(m).ii, abs=1e-12)

    @given(
        st.lists(st.floats(-3, 3), min_size=3, max_size=8),
        st.one_of(st.just(0.0), st.floats(1e-6, 2.0), st.floats(-2.0, -1e-6)),
        st.data(),
    )
    def test_zero_iff_consistent(self, logs, bump, data):
        m = consistent_from_vector(np.exp(logs))
        n = len(m)
        i = data.draw(st.integers(0, n - 2))
        j = data.draw(st.integers(i + 1, n - 1))
        m[i, j] *= math.exp(bump)
        m[j, i] = 1 / m[i, j]
        assert (matrix_ii(m).ii < 1e-12) == is_consistent(m, 1e-9) == (bump == 0.0)

    @given(st.lists(st.floats(-3, 3), min_size=3, max_size=8))
    def test_consistent_quotients_score_zero(self, logs):
        m = consistent_from_vector(np.exp(logs))
        assert matrix_ii(m).ii < 1e-12
        assert is_consistent(m, 1e-9)
