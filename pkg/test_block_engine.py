import unittest
import sys
import os
import copy

from hypothesis import given, settings
from hypothesis import strategies as st

# Add current directory to path
sys.path.append(os.path.dirname(os.path.abspath(__file__)))

from block_engine import (Certificate, SearchBox, UnionFind, block_census, canonical_representative,
                          census_graph, components_in_box, concat, m_descent_audit, reduce,
                          reverse_certificate, sectors_present, verify_certificate)
from errors import BudgetExhausted, WeightError
from linkage_moves import MOVE_KINDS, Move
from recipe_replay import LEM7_2_N_EVEN, PROP3_4_REDUCTION, PROP5_2_EVEN, run_recipe
import strategies  # noqa: F401  loads the hypothesis profile
from weights import ParityWeight, Weight, omega, sector

SLOW = os.getenv("PERIPLECTIC_SLOW_TESTS", "").lower() in ("1", "true", "yes")


def pw(parity: int, *entries: int) -> ParityWeight:
    return ParityWeight(Weight(entries), parity)


class TestVerifyCertificate(unittest.TestCase):
    """Independent replay of chains"""

    def test_examples(self):
        chain = Certificate(3, pw(0, 0, 0), [Move.up_pair(1)], pw(1, 1, 1))
        self.assertTrue(verify_certificate(chain).ok)

        tampered = Certificate(3, pw(0, 0, 0), [Move.up_pair(1)], pw(0, 1, 1))
        verdict = verify_certificate(tampered)
        self.assertFalse(verdict.ok)
        self.assertEqual(verdict.failing_step, 1)

        self.assertTrue(verify_certificate(Certificate(3, pw(1, 0, -1))).ok)

    def test_first_failing_step_is_reported(self):
        chain = Certificate(3, pw(0, 1, 0), [Move.up_2e(1), Move.up_2e(1), Move.up_2e(1)], pw(1, 7, 0))
        verdict = verify_certificate(chain)
        self.assertFalse(verdict.ok)
        self.assertEqual(verdict.failing_step, 1)
        self.assertIn("eligibility", verdict.reason)
        self.assertEqual(verdict.to_json()["failing_step"], 1)

    def test_json(self):
        chain = Certificate(3, pw(0, 0, 0), [Move.up_pair(1)], pw(1, 1, 1))
        self.assertEqual(chain.to_json(), {"p": 3, "start": {"weight": [0, 0], "parity": 0},
                                           "steps": [{"kind": "odd_up_pair", "i": 1}],
                                           "end": {"weight": [1, 1], "parity": 1}})
        self.assertEqual(Certificate.from_json(chain.to_json()), chain)
        with self.assertRaises(WeightError):
            Certificate.from_json({"p": 3, "steps": []})

    def test_p_must_be_an_odd_prime(self):
        chain = Certificate(3, pw(0, 1, 1), [Move.down_pair(1)], pw(1, 0, 0))
        self.assertTrue(verify_certificate(chain).ok)
        for bad in (9, 1, 0, -3, 4):
            verdict = verify_certificate(Certificate(bad, chain.start, chain.steps, chain.end))
            self.assertFalse(verdict.ok, f"p={bad}")
            self.assertEqual(verdict.failing_step, 0)

    def test_unparsable_fields(self):
        data = Certificate(3, pw(0, 1, 1), [Move.down_pair(1)], pw(1, 0, 0)).to_json()
        for field_name, value in (("p", "three"), ("start", {"weight": [1, 1], "parity": "x"}),
                                  ("steps", [{"kind": "odd_down_pair", "i": "one"}])):
            with self.assertRaises(WeightError):
                Certificate.from_json({**data, field_name: value})


@st.composite
def tamperings(draw, certificates):
    """One certificate from `certificates` with exactly one JSON field changed"""
    original = certificates[draw(st.integers(0, len(certificates) - 1))]
    data = copy.deepcopy(original.to_json())
    nonzero = st.integers(-3, 3).filter(bool)
    places = ["p", "start", "end"] + [("step", k) for k in range(len(data["steps"]))]
    place = draw(st.sampled_from(places))
    if place == "p":
        data["p"] += draw(st.integers(-data["p"], 6).filter(bool))
    elif place in ("start", "end"):
        label = data[place]
        if draw(st.booleans()):
            label["parity"] = 1 - label["parity"]
        else:
            label["weight"][draw(st.integers(0, len(label["weight"]) - 1))] += draw(nonzero)
    else:
        step = data["steps"][place[1]]
        key = draw(st.sampled_from(sorted(step)))
        if key == "kind":
            step["kind"] = draw(st.sampled_from([kind for kind in MOVE_KINDS if kind != step["kind"]]))
        elif key == "target":
            step["target"][draw(st.integers(0, len(step["target"]) - 1))] += draw(nonzero)
        else:
            step[key] += draw(nonzero)
    return data


class TestTampering(unittest.TestCase):
    """Single-field changes to real certificates"""

    CERTIFICATES = []

    @classmethod
    def setUpClass(cls):
        census = block_census(2, 3, (-1, 1))
        found = [row.certificate for row in census.rows.values() if row.certificate.steps]
        found += [reduce(start, 3) for start in (pw(0, 2, 1), pw(1, 2, 2, 0))]
        found += [run_recipe(LEM7_2_N_EVEN, 0, 1, 4, 5), run_recipe(PROP5_2_EVEN, 0, 2, 4, 7),
                  run_recipe(PROP3_4_REDUCTION, 4, 4, 5, 5)]
        cls.CERTIFICATES[:] = found

    def test_sources_verify(self):
        for certificate in self.CERTIFICATES:
            self.assertTrue(verify_certificate(certificate).ok)

    @settings(max_examples=1000)
    @given(data=st.data())
    def test_single_field_changes_are_caught(self, data):
        tampered = data.draw(tamperings(self.CERTIFICATES))
        try:
            certificate = Certificate.from_json(tampered)
        except WeightError:
            return
        if not verify_certificate(certificate).ok:
            return
        # an accepted change must still be a genuine chain inside one sector
        self.assertEqual(certificate.trail()[-1], certificate.end)
        self.assertIs(sector(certificate.start), sector(certificate.end))


class TestReduce(unittest.TestCase):
    """Best-first reduction to the sector representative"""

    def test_examples(self):
        for start in (pw(0, 1, 1), pw(0, 2, 0)):
            certificate = reduce(start, 3)
            self.assertEqual(certificate.end, pw(1, 0, 0))
            self.assertTrue(verify_certificate(certificate).ok)
        self.assertEqual(reduce(pw(1, 1, 1), 3).end, pw(0, 0, 0))

    def test_representative_is_an_identity_chain(self):
        for n in (2, 3, 4):
            for parity in (0, 1):
                start = ParityWeight(omega(0, 1, n), parity)
                certificate = reduce(start, 5)
                self.assertEqual(certificate.steps, [])
                self.assertEqual(certificate.end, start)

    def test_canonical_representative(self):
        self.assertEqual(canonical_representative(pw(0, 1, 1)), pw(1, 0, 0))
        for label in (pw(0, 3, 0), pw(1, 2, 2, -1), pw(0, 0, 0, 0)):
            representative = canonical_representative(label)
            self.assertIs(sector(representative), sector(label))

    def test_certificates_verify_and_keep_sector(self):
        for start in (pw(0, 2, 1), pw(1, 2, 2, 0), pw(0, 2, 0, -2), pw(1, 1, 0, 0, -1)):
            certificate = reduce(start, 3)
            self.assertTrue(verify_certificate(certificate).ok, str(start))
            self.assertIs(sector(certificate.end), sector(start))
            self.assertEqual(certificate.end, canonical_representative(start))
            self.assertTrue(m_descent_audit(certificate))

    def test_deterministic(self):
        start = pw(0, 3, 1, 0)
        self.assertEqual(reduce(start, 5).steps, reduce(start, 5).steps)

    def test_budget(self):
        with self.assertRaises(BudgetExhausted) as raised:
            reduce(pw(0, 1, 1), 3, budget=0)
        self.assertEqual(raised.exception.start, pw(0, 1, 1))

    def test_non_dominant_start(self):
        with self.assertRaises(WeightError):
            reduce(pw(0, 0, 1), 3)

    def test_search_box(self):
        box = SearchBox.around(-2, 2, 3, 5)
        self.assertEqual(box, SearchBox(-7, 15))
        self.assertTrue(box.contains(Weight.of(15, 0, -7)))
        self.assertFalse(box.contains(Weight.of(16, 0, 0)))
        self.assertEqual(SearchBox.around(-2, 2, 3, 5, 1, 0), SearchBox(-2, 3))


class TestCertificateAlgebra(unittest.TestCase):

    def test_reverse_and_concat(self):
        forward = reduce(pw(0, 2, 0), 3)
        backward = reverse_certificate(forward)
        self.assertEqual(backward.start, forward.end)
        self.assertEqual(backward.end, forward.start)
        self.assertTrue(verify_certificate(backward).ok)

        loop = concat(forward, backward)
        self.assertEqual(loop.start, loop.end)
        self.assertTrue(verify_certificate(loop).ok)

        with self.assertRaises(WeightError):
            concat(forward, forward)


class TestCensus(unittest.TestCase):
    """Bounded-box census"""

    EXPECTED = [pw(0, 0, -1), pw(1, 0, -1), pw(0, 0, 0), pw(1, 0, 0)]

    def test_p3_n2(self):
        report = block_census(2, 3, (-2, 2))
        self.assertEqual(report.representative_set, sorted(self.EXPECTED))
        self.assertTrue(report.assertions_hold, report.problems())
        for key, row in report.rows.items():
            self.assertIs(sector(key), sector(row.representative))
            self.assertTrue(row.verdict.ok)
        document = report.to_json()
        self.assertTrue(document["assertions_hold"])
        self.assertEqual(len(document["rows"]), len(report.rows))

    def test_p5_n3(self):
        report = block_census(3, 5, (-2, 2))
        self.assertEqual(len(report.representative_set), 4)
        self.assertTrue(report.assertions_hold, report.problems())

    def test_box_must_contain_zero(self):
        with self.assertRaises(WeightError):
            block_census(2, 3, (1, 2))
        with self.assertRaises(WeightError):
            block_census(2, 4, (-1, 1))

    @unittest.skipUnless(SLOW, "set PERIPLECTIC_SLOW_TESTS=1 for the acceptance grid")
    def test_acceptance_grid(self):
        for p in (3, 5, 7):
            for n in (2, 3, 4):
                report = block_census(n, p, (-2, 2))
                self.assertTrue(report.assertions_hold, f"p={p}, n={n}: {report.problems()}")


class TestComponents(unittest.TestCase):
    """Union-find diagnostics over the restricted move graph"""

    def test_union_find(self):
        groups = UnionFind(5)
        groups.union(0, 1)
        groups.union(3, 4)
        groups.union(1, 0)
        self.assertEqual(groups.num_components, 3)
        self.assertEqual(sorted(sorted(c) for c in groups.retrieve_components()), [[0, 1], [2], [3, 4]])

    def test_components_are_sector_pure(self):
        components = components_in_box(2, 3, (-2, 2))
        labels = [label for component in components for label in component]
        for component in components:
            self.assertEqual(len(sectors_present(component)), 1)
        self.assertGreaterEqual(len(components), len(sectors_present(labels)))

    def test_larger_box_never_splits(self):
        small = components_in_box(2, 3, (-1, 1))
        large = components_in_box(2, 3, (-2, 2))
        small_labels = {label for component in small for label in component}
        touched = {index for index, component in enumerate(large)
                   if small_labels.intersection(component)}
        self.assertLessEqual(len(touched), len(small))

    def test_graph_edges_stay_inside(self):
        nodes, edges = census_graph(2, 3, (-1, 1))
        inside = set(nodes)
        pairs = set()
        for source, target, kind in edges:
            self.assertIn(source, inside)
            self.assertIn(target, inside)
            pairs.add(frozenset((source, target)))
        self.assertEqual(len(pairs), len(edges))


if __name__ == "__main__":
    unittest.main()
