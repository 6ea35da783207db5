import unittest
import sys
import os

from hypothesis import given, settings
from hypothesis import strategies as st

# Add current directory to path
sys.path.append(os.path.dirname(os.path.abspath(__file__)))

from affine_even import (Reflection, check_prime, defect, dot_reflect, even_linked,
                         even_neighbors, residues)
from errors import WeightError
from strategies import PRIMES, dominant_weights, index_pairs, weights
from weights import Weight, d_interval, is_dominant, omega


class TestDefect(unittest.TestCase):
    """Defect values"""

    def test_examples(self):
        self.assertEqual(defect(Weight.of(2, 0), 3), 1)
        self.assertEqual(defect(Weight.of(0, 0), 3), 0)
        for p in (3, 5, 7):
            self.assertEqual(defect(Weight.of(p - 1, p - 1, 0), p), 0)

    def test_higher_defect(self):
        self.assertEqual(defect(Weight.of(8, 0), 3), 2)
        self.assertEqual(defect(Weight.of(4, 2, 0), 3), 1)

    def test_staircase(self):
        self.assertEqual(defect(Weight.of(0, -1, -2), 3), 0)

    def test_rising_staircase_has_no_finite_defect(self):
        with self.assertRaises(WeightError):
            defect(Weight.of(0, 1, 2), 3)


class TestReflections(unittest.TestCase):
    """Dot-action reflections s_{ε_i−ε_j,kp}"""

    def test_examples(self):
        self.assertEqual(dot_reflect(Weight.of(2, 0, 0, -1), Reflection(1, 4, 1), 5), Weight.of(1, 0, 0, 0))
        self.assertEqual(dot_reflect(Weight.of(2, 0), Reflection(1, 2, 1), 3), Weight.of(2, 0))
        self.assertEqual(dot_reflect(Weight.of(4, 3, 2, 1, 0), Reflection(2, 5, 1), 5),
                         Weight.of(4, 2, 2, 1, 1))

    def test_bad_reflections(self):
        with self.assertRaises(WeightError):
            Reflection(2, 2, 1)
        with self.assertRaises(WeightError):
            dot_reflect(Weight.of(1, 0), Reflection(1, 3, 0), 3)

    @settings(max_examples=10_000)
    @given(lam=weights(max_rank=6), p=PRIMES, data=st.data())
    def test_involution(self, lam, p, data):
        i, j = data.draw(index_pairs(lam.n))
        reflection = Reflection(i, j, data.draw(st.integers(-3, 3)))
        self.assertEqual(dot_reflect(dot_reflect(lam, reflection, p), reflection, p), lam)

    @settings(max_examples=10_000)
    @given(lam=dominant_weights(max_rank=5), p=PRIMES)
    def test_defect_zero_images_are_even_linked(self, lam, p):
        """Every dominant reflection image of a defect-0 weight stays in its class"""
        if defect(lam, p) != 0:
            return
        for i in range(1, lam.n):
            for j in range(i + 1, lam.n + 1):
                d = d_interval(lam, i, j)
                for k in range((d - 2 * p) // p, (d + 2 * p) // p + 1):
                    image = dot_reflect(lam, Reflection(i, j, k), p)
                    if not is_dominant(image):
                        continue
                    self.assertEqual(defect(image, p), 0)
                    self.assertTrue(even_linked(lam, image, p), f"{lam} and {image} at p={p}")

    def test_positive_defect_image_can_leave_the_block(self):
        image = dot_reflect(Weight.of(2, 0), Reflection(1, 2, 2), 3)
        self.assertEqual(image, Weight.of(5, -3))
        self.assertEqual(defect(image, 3), 2)
        self.assertFalse(even_linked(Weight.of(2, 0), image, 3))

    def test_check_prime(self):
        for p in (3, 5, 7, 11, 13):
            check_prime(p)
        for bad in (2, 4, 9, 1, -3, 15):
            with self.assertRaises(WeightError):
                check_prime(bad)


class TestEvenLinkage(unittest.TestCase):
    """Donkin's criterion"""

    def test_examples(self):
        lam = Weight.of(3, 0)
        self.assertTrue(even_linked(lam, lam, 3))
        self.assertTrue(even_linked(Weight.of(3, 0), Weight.of(2, 1), 3))
        self.assertFalse(even_linked(Weight.of(0, 0), Weight.of(1, 1), 3))

    def test_residues(self):
        self.assertEqual(residues(Weight.of(3, 0), 3), [1, 2])

    @settings(max_examples=2000)
    @given(triple=st.lists(dominant_weights(3, 3, 3), min_size=3, max_size=3), p=st.sampled_from((3, 5)))
    def test_equivalence_laws(self, triple, p):
        a, b, c = triple
        ab, ba = even_linked(a, b, p), even_linked(b, a, p)
        bc, ac = even_linked(b, c, p), even_linked(a, c, p)
        self.assertTrue(even_linked(a, a, p))
        self.assertEqual(ab, ba)
        if ab and bc:
            self.assertTrue(ac)


class TestEvenNeighbors(unittest.TestCase):
    """Bounded enumeration of reflection images"""

    def test_examples(self):
        self.assertIn((Weight.of(2, 1), Reflection(1, 2, 1)), even_neighbors(Weight.of(3, 0), 3, 1))
        self.assertIn((Weight.of(2, -2), Reflection(1, 2, 1)), even_neighbors(Weight.of(0, 0), 3, 2))

    def test_lowest_alcove_has_no_close_neighbours(self):
        lam = omega(0, 2, 4)
        p = 7
        cap = p - d_interval(lam, 1, 4) - 1
        self.assertEqual(even_neighbors(lam, p, cap), [])

    def test_images_are_dominant_and_distinct(self):
        found = even_neighbors(Weight.of(4, 1, 0), 3, 9)
        targets = [target for target, _ in found]
        self.assertEqual(len(targets), len(set(targets)))
        self.assertNotIn(Weight.of(4, 1, 0), targets)
        for target, reflection in found:
            self.assertEqual(dot_reflect(Weight.of(4, 1, 0), reflection, 3), target)
            self.assertTrue(even_linked(Weight.of(4, 1, 0), target, 3))

    def test_unlinked_images_are_dropped(self):
        targets = [target for target, _ in even_neighbors(Weight.of(2, 0), 3, 9)]
        self.assertNotIn(Weight.of(5, -3), targets)


if __name__ == "__main__":
    unittest.main()
