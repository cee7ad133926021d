from __future__ import annotations

import math
import random
from itertools import permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wangtiles.corpus import builtin
from wangtiles.morphism import incidence_matrix
from wangtiles.spectral import (
    GOLDEN_ONE,
    PHI,
    GoldenNumber,
    GoldenRational,
    IntMatrix,
    IntPolynomial,
    char_poly,
    exact_perron_frequencies,
    golden_eigencheck,
    golden_kernel_vector,
    largest_real_root,
    perron,
    recognize_golden,
)

PHI_F = (1 + math.sqrt(5)) / 2


def charpoly_by_determinant(rows):
    """Independent oracle: expand det(xI - M) over all permutations."""
    n = len(rows)
    total = IntPolynomial([])
    for perm in permutations(range(n)):
        sign = 1
        seen = [False] * n
        for start in range(n):
            if seen[start]:
                continue
            length = 0
            j = start
            while not seen[j]:
                seen[j] = True
                j = perm[j]
                length += 1
            if length % 2 == 0:
                sign = -sign
        term = IntPolynomial([sign])
        for i in range(n):
            entry = IntPolynomial([-rows[i][perm[i]], 1] if i == perm[i] else [-rows[i][perm[i]]])
            term = term * entry
        total = total + term
    return total


class TestIntMatrix:
    def test_rectangular_allowed_square_required_for_n(self):
        m = IntMatrix([[1, 2, 3], [4, 5, 6]])
        assert (m.nrows, m.ncols) == (2, 3)
        with pytest.raises(ValueError):
            m.n

    def test_matmul_and_pow(self):
        fib = IntMatrix([[0, 1], [1, 1]])
        assert (fib**10)[0][1] == 55

    def test_ragged_refused(self):
        with pytest.raises(ValueError):
            IntMatrix([[1], [1, 2]])


class TestCharPoly:
    def test_identity_3x3(self):
        # (x - 1)^3 = x^3 - 3x^2 + 3x - 1
        assert char_poly(IntMatrix.identity(3)) == IntPolynomial([-1, 3, -3, 1])

    def test_fibonacci(self):
        assert char_poly(IntMatrix([[0, 1], [1, 1]])) == IntPolynomial([-1, -1, 1])

    def test_non_square(self):
        with pytest.raises(ValueError):
            char_poly(IntMatrix([[1, 2, 3], [4, 5, 6]]))

    def test_against_determinant_oracle(self):
        rng = random.Random(99)
        for _ in range(40):
            n = rng.randint(1, 4)
            rows = [[rng.randint(-4, 4) for _ in range(n)] for _ in range(n)]
            assert char_poly(IntMatrix(rows)) == charpoly_by_determinant(rows)

    def test_cayley_hamilton(self):
        rng = random.Random(5)
        for _ in range(20):
            n = rng.randint(1, 6)
            M = IntMatrix([[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)])
            zero = IntMatrix([[0] * n for _ in range(n)])
            assert char_poly(M)(M) == zero


class TestPerron:
    def test_scalar(self):
        value, right, left = perron(IntMatrix([[2]]))
        assert value == pytest.approx(2.0)
        assert right == [1.0] and left == [1.0]

    def test_fibonacci_gives_phi(self):
        value, _, _ = perron(IntMatrix([[0, 1], [1, 1]]))
        assert abs(value - PHI_F) < 1e-9

    def test_refuses_non_primitive(self):
        with pytest.raises(ValueError):
            perron(IntMatrix.identity(2))

    def test_agrees_with_polynomial_root(self):
        M = incidence_matrix(builtin("omega").payload)
        value, _, _ = perron(M)
        root = largest_real_root(char_poly(M))
        assert abs(value - root) < 1e-9


small_ints = st.integers(-12, 12)
golden = st.builds(GoldenNumber, small_ints, small_ints)


class TestGoldenNumber:
    @settings(deadline=None, max_examples=200)
    @given(golden, golden, golden)
    def test_ring_laws(self, a, b, c):
        assert (a + b) + c == a + (b + c)
        assert a + b == b + a
        assert (a * b) * c == a * (b * c)
        assert a * b == b * a
        assert a * (b + c) == a * b + a * c

    def test_defining_relation(self):
        assert PHI * PHI == PHI + GOLDEN_ONE

    def test_powers(self):
        assert PHI**8 == GoldenNumber(13, 21)
        assert PHI**0 == GOLDEN_ONE

    def test_norm_and_conjugate(self):
        g = GoldenNumber(3, -2)
        prod = g * g.conjugate_factor()
        assert prod == GoldenNumber(g.norm(), 0)

    def test_float(self):
        assert float(PHI) == pytest.approx(PHI_F)

    def test_pretty(self):
        assert GoldenNumber(1, 1).pretty() == "1 + phi"
        assert GoldenNumber(0, -2).pretty() == "-2*phi"
        assert GoldenNumber(5, 0).pretty() == "5"


class TestGoldenRational:
    def test_normalization(self):
        q = GoldenRational(GoldenNumber(2, 4), -6)
        assert q == GoldenRational(GoldenNumber(-1, -2), 3)

    def test_division_by_golden_number(self):
        # 1 / phi = phi - 1
        inv = GoldenRational.of(GOLDEN_ONE) / GoldenRational.of(PHI)
        assert inv == GoldenRational.of(GoldenNumber(-1, 1))

    def test_zero_division(self):
        with pytest.raises(ZeroDivisionError):
            GoldenRational.of(GOLDEN_ONE) / GoldenRational()
        with pytest.raises(ZeroDivisionError):
            GoldenRational(GOLDEN_ONE, 0)

    @settings(deadline=None, max_examples=100)
    @given(golden, golden, st.integers(1, 9), st.integers(1, 9))
    def test_field_laws(self, g1, g2, d1, d2):
        a = GoldenRational(g1, d1)
        b = GoldenRational(g2, d2)
        assert a + b == b + a
        assert a * b == b * a
        if not b.is_zero():
            assert (a / b) * b == a


class TestEigencheck:
    def test_fibonacci_eigenvector(self):
        M = IntMatrix([[0, 1], [1, 1]])
        assert golden_eigencheck(M, PHI, [GOLDEN_ONE, PHI], "right")

    def test_perturbation_fails(self):
        M = IntMatrix([[0, 1], [1, 1]])
        assert not golden_eigencheck(M, PHI, [GoldenNumber(2, 0), PHI], "right")

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            golden_eigencheck(IntMatrix.identity(2), PHI, [PHI], "right")

    def test_bad_side(self):
        with pytest.raises(ValueError):
            golden_eigencheck(IntMatrix.identity(1), PHI, [PHI], "up")


class TestRecognizeGolden:
    def test_recognizes_phi_squared(self):
        assert recognize_golden((3 + math.sqrt(5)) / 2) == GoldenNumber(1, 1)

    def test_recognizes_integers(self):
        assert recognize_golden(2.0) == GoldenNumber(2, 0)

    def test_rejects_sqrt2(self):
        assert recognize_golden(math.sqrt(2)) is None


class TestExactFrequencies:
    def test_kernel_rejects_non_eigenvalue(self):
        assert golden_kernel_vector(IntMatrix([[0, 1], [1, 1]]), GoldenNumber(2, 0)) is None

    def test_fibonacci_frequencies(self):
        lam, freqs = exact_perron_frequencies(IntMatrix([[0, 1], [1, 1]]))
        assert lam == PHI
        total = freqs[0] + freqs[1]
        assert total == GoldenRational.of(GOLDEN_ONE)
        assert all(float(f) > 0 for f in freqs)

    def test_refuses_dominant_value_outside_ring(self):
        # dominant eigenvalue 1 + sqrt(2)
        with pytest.raises(ValueError):
            exact_perron_frequencies(IntMatrix([[0, 1], [1, 2]]))

    def test_omega_frequencies_positive_sum_one(self):
        M = incidence_matrix(builtin("omega").payload)
        lam, freqs = exact_perron_frequencies(M)
        assert lam == GoldenNumber(1, 1)
        total = GoldenRational()
        for f in freqs:
            total = total + f
        assert total == GoldenRational.of(GOLDEN_ONE)
        assert all(float(f) > 0 for f in freqs)

    def test_morphism_level_wrapper(self):
        from wangtiles.spectral import frequencies

        exact, decimal = frequencies(builtin("omega").payload)
        assert len(exact) == len(decimal) == 19
        assert decimal[0] == pytest.approx(float(exact[0]))
        with pytest.raises(ValueError):
            frequencies(builtin("gamma").payload)
