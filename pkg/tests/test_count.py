import math
from fractions import Fraction

import pytest

from conftest import COLUMN_2_PARTITE, K22, oracle_count_copies, random_matrix
from patex.count import (
    common_lines,
    count_copies,
    ext_binom,
    stepping_bound,
    supersat_bound,
)
from patex.errors import DomainError, InputError
from patex.matrix import ZeroOneMatrix


class TestExtBinom:
    def test_zero_below_kminus1(self):
        assert ext_binom(2, 3) == 0.0
        assert ext_binom(1.99, 2) > 0.0  # only vanishes below x = k-1
        assert ext_binom(0.5, 2) == 0.0

    def test_diagonal_is_one(self):
        for k in range(1, 6):
            assert ext_binom(k, k) == 1.0

    def test_real_argument(self):
        assert ext_binom(3.5, 2) == pytest.approx(4.375)

    def test_domain_error(self):
        with pytest.raises(DomainError):
            ext_binom(3.0, 0)

    def test_agrees_with_comb_on_integers(self):
        for x in range(0, 12):
            for k in range(1, 6):
                assert ext_binom(x, k) == pytest.approx(math.comb(x, k))

    def test_upper_and_lower_bounds(self, rng):
        # x^k/k! above; (x/k)^k below for x >= k
        for _ in range(1000):
            k = rng.below(5) + 1
            x = (k - 1) + rng.random() * 20
            v = ext_binom(x, k)
            assert v <= x**k / math.factorial(k) + 1e-12
            if x >= k:
                assert v >= (x / k) ** k - 1e-12

    def test_convexity_spot_check(self, rng):
        for _ in range(300):
            k = rng.below(4) + 1
            x = rng.random() * 10
            h = 0.25
            lhs = ext_binom(x - h, k) + ext_binom(x + h, k)
            assert lhs >= 2 * ext_binom(x, k) - 1e-9


class TestCommonLines:
    def test_fixture_rows(self):
        assert common_lines(COLUMN_2_PARTITE, [2, 3], "rows") == (1, 4)

    def test_all_ones(self):
        assert common_lines(ZeroOneMatrix.ones(3, 3), [1, 2, 3], "rows") == (1, 2, 3)

    def test_empty_set_returns_everything(self):
        assert common_lines(COLUMN_2_PARTITE, [], "rows") == (1, 2, 3, 4)
        assert common_lines(COLUMN_2_PARTITE, [], "cols") == (1, 2, 3, 4)

    def test_columns_axis(self):
        assert common_lines(COLUMN_2_PARTITE, [1, 4], "cols") == (2, 3)

    def test_bad_index(self):
        with pytest.raises(InputError):
            common_lines(COLUMN_2_PARTITE, [5], "rows")
        with pytest.raises(InputError):
            common_lines(COLUMN_2_PARTITE, [1], "sideways")


class TestCountCopies:
    def test_all_ones(self):
        assert count_copies(ZeroOneMatrix.ones(4, 4), 2, 2).count == 36

    def test_fixture_single_copy(self):
        assert count_copies(COLUMN_2_PARTITE, 2, 2).count == 1

    def test_all_zero(self):
        assert count_copies(ZeroOneMatrix.zeros(4, 4), 2, 2).count == 0

    def test_matches_enumeration_oracle(self, rng):
        for _ in range(150):
            m = random_matrix(rng, rng.below(5) + 2, rng.below(5) + 2, 0.6)
            u = rng.below(2) + 1
            t = rng.below(2) + 1
            assert count_copies(m, u, t).count == oracle_count_copies(m, u, t)

    def test_axis_symmetry_via_transpose(self, rng):
        for _ in range(100):
            m = random_matrix(rng, rng.below(6) + 2, rng.below(6) + 2, 0.55)
            assert count_copies(m, 2, 2).count == count_copies(m.transpose(), 2, 2).count
            assert count_copies(m, 2, 3).count == count_copies(m.transpose(), 3, 2).count

    def test_domain_errors(self):
        with pytest.raises(DomainError):
            count_copies(K22, 0, 1)


class TestSupersatBound:
    def test_inapplicable_below_threshold(self):
        sb = supersat_bound(16, 4, 2, 2)
        assert not sb.applicable and sb.threshold == 32.0

    def test_pinned_value(self):
        sb = supersat_bound(5000, 100, 2, 2)
        assert sb.applicable
        assert sb.bound == pytest.approx(97656.25)
        assert sb.exact == Fraction(5000**4, 2**4 * 2**2 * 100**4)

    def test_bound_holds_on_random_dense_hosts(self, rng):
        checked = 0
        while checked < 60:
            n = 25 + rng.below(16)
            m = random_matrix(rng, n, n, 0.9)
            sb = supersat_bound(m.weight, n, 2, 2)
            if not sb.applicable:
                continue
            assert Fraction(count_copies(m, 2, 2).count) >= sb.exact
            checked += 1

    def test_domain_error(self):
        with pytest.raises(DomainError):
            supersat_bound(5, 0, 2, 2)


class TestSteppingBound:
    def test_boundary_applicability(self):
        thr = 2 * math.comb(8, 2)
        assert stepping_bound(thr, 8, 2, 2).applicable
        assert not stepping_bound(thr - 1, 8, 2, 2).applicable

    def test_repaired_form_holds_on_random_hosts(self, rng):
        # with the 1/(u+1)^2 factor restored and the matching threshold
        # (2(u+1)^2)^(u/(u+1)) * binom(n,t), the bound is sound
        checked = 0
        while checked < 80:
            u = 2 if checked % 2 == 0 else 3
            n = 8
            m = random_matrix(rng, n, n, 0.55 + 0.4 * rng.random())
            n_copies = count_copies(m, u, 2).count
            threshold = (2 * (u + 1) ** 2) ** (u / (u + 1)) * math.comb(n, 2)
            if n_copies < threshold:
                continue
            sb = stepping_bound(n_copies, n, u, 2)
            assert count_copies(m, u + 1, 2).count >= sb.bound / (u + 1) ** 2 * (1 - 1e-9)
            checked += 1

    def test_stated_constant_fails_at_width_three(self):
        # The closed form omits a 1/(u+1)^2 correction its derivation needs;
        # the all-ones host shows the stated bound overshooting at u = 3.
        m = ZeroOneMatrix.ones(8, 8)
        n_copies = count_copies(m, 3, 2).count
        sb = stepping_bound(n_copies, 8, 3, 2)
        actual = count_copies(m, 4, 2).count
        assert sb.applicable
        assert actual == 1960 and sb.bound > actual
        assert actual >= sb.bound / 16  # corrected constant holds

    def test_domain_error(self):
        with pytest.raises(DomainError):
            stepping_bound(10, -1, 2, 2)
