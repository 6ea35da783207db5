import unittest
import sys
import os
import tempfile

import pandas as pd

# Add current directory to path
sys.path.append(os.path.dirname(os.path.abspath(__file__)))

from block_engine import block_census, census_graph
from graph_export import SECTOR_COLORS, to_dot, write_dot
from recipe_replay import LEM7_2_N_EVEN, RecipeGrid, RecipeOutcome, RecipeReport, verify_all_recipes
from report_export import (CENSUS_COLUMNS, RECIPE_COLUMNS, census_to_frame, export_frame,
                           recipe_report_to_frame)
from weights import ParityWeight, Weight


class TestReportExport(unittest.TestCase):
    """Census and recipe tables as CSV and Excel"""

    @classmethod
    def setUpClass(cls):
        cls.census = block_census(2, 3, (-1, 1))
        cls.recipes = verify_all_recipes(RecipeGrid([0, 1], [4], [5]), recipe_ids=[LEM7_2_N_EVEN])

    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()

    def tearDown(self):
        self.tmp.cleanup()

    def test_census_frame(self):
        frame = census_to_frame(self.census)
        self.assertEqual(list(frame.columns), CENSUS_COLUMNS)
        self.assertEqual(len(frame), len(self.census.rows))
        self.assertTrue(frame["verified"].all())
        self.assertEqual(set(frame["sector"]), {"F00", "F01", "F10", "F11"})

    def test_recipe_frame(self):
        frame = recipe_report_to_frame(self.recipes)
        self.assertEqual(list(frame.columns), RECIPE_COLUMNS)
        self.assertEqual(len(frame), 4)
        self.assertEqual(set(frame["status"]), {"succeeded"})

    def test_recipe_frame_statuses(self):
        failed = RecipeOutcome(LEM7_2_N_EVEN, 0, 1, 4, 5, succeeded=False, claim="d_{1,4} = 5")
        report = RecipeReport(self.recipes.outcomes[:1] + [failed])
        frame = recipe_report_to_frame(report)
        self.assertEqual(list(frame["status"]), ["succeeded", "failed"])
        self.assertEqual(set(frame["status"]), {"succeeded", "failed"})
        self.assertEqual(list(frame["claim"]), ["", "d_{1,4} = 5"])
        self.assertEqual(list(frame["steps"])[1], 0)

    def test_csv(self):
        path = export_frame(census_to_frame(self.census), os.path.join(self.tmp.name, "census.csv"))
        self.assertEqual(len(pd.read_csv(path)), len(self.census.rows))

    def test_xlsx(self):
        path = export_frame(recipe_report_to_frame(self.recipes), os.path.join(self.tmp.name, "recipes.xlsx"))
        back = pd.read_excel(path, engine="openpyxl")
        self.assertEqual(list(back.columns), RECIPE_COLUMNS)
        self.assertEqual(len(back), 4)

    def test_unknown_suffix(self):
        with self.assertRaises(ValueError):
            export_frame(census_to_frame(self.census), os.path.join(self.tmp.name, "census.json"))


class TestGraphExport(unittest.TestCase):
    """DOT rendering of the restricted move graph"""

    def test_small_graph(self):
        nodes = [ParityWeight(Weight.of(0, 0), 0), ParityWeight(Weight.of(1, 1), 1)]
        edges = [(nodes[0], nodes[1], "odd_up_pair")]
        text = to_dot(nodes, edges, "tiny")
        self.assertTrue(text.startswith('graph "tiny" {'))
        self.assertIn('"(0,0)|0" -- "(1,1)|1" [label="odd_up_pair"];', text)
        self.assertTrue(text.rstrip().endswith("}"))
        self.assertEqual(len(set(SECTOR_COLORS.values())), 4)

    def test_census_graph_file(self):
        nodes, edges = census_graph(2, 3, (-1, 1))
        with tempfile.TemporaryDirectory() as tmp:
            path = write_dot(os.path.join(tmp, "graph.dot"), nodes, edges)
            with open(path, 'r', encoding='utf-8') as f:
                text = f.read()
        self.assertEqual(text.count(" -- "), len(edges))
        for node in nodes:
            self.assertIn(f'"{node}" [fillcolor=', text)


if __name__ == "__main__":
    unittest.main()
