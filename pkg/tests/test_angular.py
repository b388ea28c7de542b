from fractions import Fraction
from math import sqrt

import numpy as np
import pytest
from hypothesis import given, strategies as st

from spinstar import oracle
from spinstar.angular import HalfInt, dicke, lowering_coeff, sectors, state_count
from spinstar.errors import DomainError, ResourceError

from conftest import basis_state


def brute_force_sectors(n):
    """Group eigenvalues of a dense J^2 into (j, multiplicity)."""
    j2 = oracle.total_spin_squared(range(n), n)
    evals = np.linalg.eigvalsh(j2)
    out = []
    for value in sorted(set(np.round(evals, 8)), reverse=True):
        j = (-1 + sqrt(1 + 4 * value)) / 2
        count = int(np.sum(np.isclose(evals, value, atol=1e-8)))
        jj = Fraction(round(2 * j), 2)
        out.append((jj, count // int(2 * jj + 1)))
    return out


class TestHalfInt:
    def test_parse_and_print(self):
        assert HalfInt.of("3/2").twice == 3
        assert HalfInt.of(Fraction(-1, 2)).twice == -1
        assert HalfInt.of(2).twice == 4
        assert str(HalfInt(3)) == "3/2" and str(HalfInt(-2)) == "-1"

    def test_rejects_non_half_integers(self):
        with pytest.raises(DomainError):
            HalfInt.of(Fraction(1, 3))

    def test_arithmetic(self):
        assert HalfInt(3) - "1/2" == HalfInt(2)
        assert -HalfInt(1) == HalfInt(-1)


class TestSectors:
    def test_two_spins(self):
        assert sectors(2).as_pairs() == [(1, 1), (0, 1)]
        assert brute_force_sectors(2) == [(1, 1), (0, 1)]

    def test_three_spins(self):
        assert sectors(3).as_pairs() == [(Fraction(3, 2), 1), (Fraction(1, 2), 2)]

    def test_four_spins_match_brute_force(self):
        expected = [(2, 1), (1, 3), (0, 2)]
        assert brute_force_sectors(4) == expected
        assert sectors(4).as_pairs() == expected

    @pytest.mark.parametrize("n", range(1, 8))
    def test_brute_force_all_small(self, n):
        assert sectors(n).as_pairs() == brute_force_sectors(n)

    @pytest.mark.parametrize("n", [0, 63, -1])
    def test_out_of_range(self, n):
        with pytest.raises(DomainError):
            sectors(n)

    def test_multiplicity_lookup(self):
        assert sectors(4).multiplicity(1) == 3
        assert sectors(4).multiplicity("1/2") == 0


class TestStateCount:
    @pytest.mark.parametrize("n, expected", [(1, 4), (3, 16), (4, 32)])
    def test_examples(self, n, expected):
        assert state_count(n) == expected

    @given(st.integers(1, 62))
    def test_always_full_dimension(self, n):
        table = sectors(n)
        assert state_count(n) == 2 ** (n + 1)
        assert sum(m * (j.twice + 1) for j, m in table) == 2 ** n
        js = [j.twice for j, _ in table]
        assert js == sorted(js, reverse=True) and len(set(js)) == len(js)


class TestLoweringCoeff:
    def test_values(self):
        assert lowering_coeff("1/2", "1/2") == 1
        assert lowering_coeff("3/2", "1/2") == 2
        for j2 in range(0, 9):
            assert lowering_coeff(HalfInt(j2), HalfInt(-j2)) == 0

    def test_invalid_pair(self):
        with pytest.raises(DomainError):
            lowering_coeff("1/2", "3/2")
        with pytest.raises(DomainError):
            lowering_coeff(1, "1/2")


class TestDicke:
    def test_three_two(self):
        expected = (basis_state(0b011, 3) + basis_state(0b101, 3) + basis_state(0b110, 3)) / sqrt(3)
        np.testing.assert_allclose(dicke(3, 2), expected, atol=1e-15)

    def test_three_one(self):
        expected = (basis_state(0b100, 3) + basis_state(0b010, 3) + basis_state(0b001, 3)) / sqrt(3)
        np.testing.assert_allclose(dicke(3, 1), expected, atol=1e-15)

    def test_all_zeros(self):
        np.testing.assert_array_equal(dicke(2, 0), basis_state(0, 2))

    def test_errors(self):
        with pytest.raises(DomainError):
            dicke(3, 4)
        with pytest.raises(ResourceError):
            dicke(25, 1)

    @pytest.mark.parametrize("n", range(1, 11))
    def test_angular_momentum_eigenstates(self, n):
        j2 = oracle.total_spin_squared(range(n), n)
        jz = oracle.collective_operator("z", range(n), n)
        for k in range(n + 1):
            psi = dicke(n, k)
            assert abs(np.linalg.norm(psi) - 1) < 1e-12
            assert np.linalg.norm(j2 @ psi - (n / 2) * (n / 2 + 1) * psi) < 1e-10
            assert np.linalg.norm(jz @ psi - (k - n / 2) * psi) < 1e-12

    @pytest.mark.parametrize("n", range(1, 9))
    def test_lowering_consistency(self, n):
        jm = oracle.collective_operator("-", range(n), n)
        for k in range(1, n + 1):
            c = lowering_coeff(HalfInt(n), HalfInt(2 * k - n))
            assert np.linalg.norm(jm @ dicke(n, k) - c * dicke(n, k - 1)) < 1e-10
            assert abs(c - sqrt(k * (n - k + 1))) < 1e-12
