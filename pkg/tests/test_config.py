import sys
import unittest
from pathlib import Path as FilePath

sys.path.insert(0, str(FilePath(__file__).parent.parent))

from config.workbench_config import SessionConfig, DEFAULT_MAX_SEEDS, DEFAULT_FORMAT


class TestSessionConfig(unittest.TestCase):
    def setUp(self):
        self.config = SessionConfig(input_path="fixtures/a2.json")

    def test_defaults(self):
        self.assertEqual(self.config.output_format, DEFAULT_FORMAT)
        self.assertEqual(self.config.max_seeds, DEFAULT_MAX_SEEDS)
        self.assertIsNone(self.config.bound)
        self.assertEqual(self.config.to_dict()["input_path"], "fixtures/a2.json")

    def test_zero_bound_is_allowed(self):
        self.assertEqual(SessionConfig(bound=0).bound, 0)

    def test_rejects_invalid_values(self):
        with self.assertRaises(AssertionError):
            SessionConfig(output_format="yaml")
        with self.assertRaises(AssertionError):
            SessionConfig(bound=-1)
        with self.assertRaises(AssertionError):
            SessionConfig(max_seeds=0)
        with self.assertRaises(AssertionError):
            SessionConfig(walk_length=0)
        with self.assertRaises(AssertionError):
            SessionConfig(workers=0)
        # walks may be zero (no random walks)
        self.assertEqual(SessionConfig(walks=0).walks, 0)

    def test_coefficient_system(self):
        self.assertEqual(SessionConfig(coefficients="none").coefficients, "none")
        with self.assertRaises(AssertionError):
            SessionConfig(coefficients="tropical")


if __name__ == '__main__':
    unittest.main()
