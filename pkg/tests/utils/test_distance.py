"""Unit tests for the Hamming nearest-neighbour search."""

import numpy as np
import pytest

from src.errors import InvalidInputError
from src.utils.distance import hamming_distances, is_binary, nearest_hamming


class TestHammingDistances:
    """Test cases for hamming_distances."""

    def test_pairwise(self):
        """Test distances against a direct count of differing bits."""
        rng = np.random.default_rng(0)
        a = rng.integers(0, 2, size=(5, 9)).astype(float)
        b = rng.integers(0, 2, size=(4, 9)).astype(float)
        expected = (a[:, None, :] != b[None, :, :]).sum(axis=2)
        np.testing.assert_array_equal(hamming_distances(a, b), expected)

    def test_is_binary(self):
        """Test the binary check."""
        assert is_binary(np.array([[0.0, 1.0]]))
        assert not is_binary(np.array([[0.5, 1.0]]))


class TestNearestHamming:
    """Test cases for nearest_hamming."""

    def test_exact_match(self):
        """Test a target present in the references has distance zero."""
        refs = np.array([[0, 0, 0], [1, 1, 0], [1, 1, 1]], dtype=float)
        distance, index = nearest_hamming(np.array([[1, 1, 0], [0, 0, 1]], dtype=float), refs)
        np.testing.assert_array_equal(distance, [0, 1])
        np.testing.assert_array_equal(index, [1, 0])

    def test_ties_take_lowest_index(self):
        """Test equidistant references resolve to the first one."""
        refs = np.array([[1, 0], [0, 1]], dtype=float)
        _, index = nearest_hamming(np.array([[0, 0]], dtype=float), refs)
        assert index[0] == 0

    def test_chunking_does_not_change_result(self):
        """Test small chunks agree with a single pass."""
        rng = np.random.default_rng(1)
        targets = rng.integers(0, 2, size=(23, 12)).astype(float)
        refs = rng.integers(0, 2, size=(17, 12)).astype(float)
        whole = nearest_hamming(targets, refs)
        chunked = nearest_hamming(targets, refs, chunk_rows=4)
        np.testing.assert_array_equal(whole[0], chunked[0])
        np.testing.assert_array_equal(whole[1], chunked[1])

    def test_empty_references(self):
        """Test an empty reference set raises."""
        with pytest.raises(InvalidInputError):
            nearest_hamming(np.zeros((2, 3)), np.zeros((0, 3)))

    def test_width_mismatch(self):
        """Test differing feature widths raise."""
        with pytest.raises(InvalidInputError):
            nearest_hamming(np.zeros((2, 3)), np.zeros((2, 4)))

    def test_non_binary(self):
        """Test real-valued rows are refused."""
        with pytest.raises(InvalidInputError):
            nearest_hamming(np.full((1, 2), 0.5), np.zeros((1, 2)))
