"""Tests for the grid verifier."""

import json
import os
import shutil
import tempfile
import unittest

from hqeuler.errors import ConfigError
from hqeuler.identities import IdentityId, Mutation
from hqeuler.verifier import (
    GridSpec,
    GridVerifier,
    format_reports,
    get_summary,
    load_config,
    parse_axis,
    run_grid,
)


def small_spec(**overrides):
    config = {
        "identities": ["symmetry-euler", "binomial-symmetry"],
        "q": ["1/2"],
        "characters": ["principal:1", "quadratic:3"],
        "h": [1],
        "r": [1, 2],
        "n": "0..1",
        "m": [1],
        "x": [0, 1],
        "y": [1],
        "w1": [1, 3],
        "w2": [3],
    }
    config.update(overrides)
    return GridSpec.from_dict(config)


class TestParseAxis(unittest.TestCase):
    """Test grid axis parsing."""

    def test_forms(self):
        """Test ranges, lists, comma strings and scalars."""
        self.assertEqual(parse_axis("0..2"), [0, 1, 2])
        self.assertEqual(parse_axis("-1..1"), [-1, 0, 1])
        self.assertEqual(parse_axis("1, 3"), [1, 3])
        self.assertEqual(parse_axis(5), [5])
        self.assertEqual(parse_axis(["1/2", "0.3", "-2"]), ["1/2", "0.3", -2])
        self.assertEqual(parse_axis(None), [])

    def test_malformed(self):
        """Test that malformed axes are config errors."""
        with self.assertRaises(ConfigError):
            parse_axis("1..x")
        with self.assertRaises(ConfigError):
            parse_axis([True])
        with self.assertRaises(ConfigError):
            parse_axis([{"a": 1}])


class TestGridSpec(unittest.TestCase):
    """Test grid configuration."""

    def test_unknown_key(self):
        """Test that unknown keys are refused."""
        with self.assertRaises(ConfigError):
            GridSpec.from_dict({"q": ["1/2"], "colour": "blue"})

    def test_invalid_values(self):
        """Test per-key validation."""
        for config in ({"h": ["a"]}, {"mode": "fuzzy"}, {"precision": "high"},
                       {"tolerance": "small"}, {"w1": [1.5]}):
            with self.assertRaises(ConfigError):
                GridSpec.from_dict(config)

    def test_presets(self):
        """Test the built-in presets."""
        for name in ("default", "acceptance"):
            specs = GridSpec.preset(name)
            self.assertEqual(specs[-1].identities, ["symmetry-l"])
            self.assertTrue(all(spec.identities for spec in specs))
        self.assertEqual(len(GridSpec.default()), 2)
        self.assertEqual(len(GridSpec.acceptance()), 3)
        with self.assertRaises(ConfigError):
            GridSpec.preset("everything")

    def test_acceptance_axes(self):
        """Test the expanded acceptance ranges."""
        exact = GridSpec.acceptance()[0]
        self.assertEqual(exact.h, [-1, 0, 1, 2, 3])
        self.assertEqual(exact.n, list(range(7)))
        self.assertEqual(exact.q, ["1/2", "1/3", "2/3"])
        self.assertNotIn("binomial-symmetry", exact.identities)

    def test_acceptance_binomial_range(self):
        """Test that the binomial symmetry runs on m, n <= 4 only."""
        specs = GridSpec.acceptance()
        grids = [spec for spec in specs if "binomial-symmetry" in spec.identities]
        self.assertEqual(len(grids), 1)
        binomial = grids[0]
        self.assertEqual(binomial.identities, ["binomial-symmetry"])
        self.assertEqual(binomial.n, list(range(5)))
        self.assertEqual(binomial.m, list(range(5)))
        self.assertEqual(binomial.h, specs[0].h)
        self.assertEqual(binomial.x, specs[0].x)
        self.assertEqual(binomial.y, [0, 1, 2])
        verifier = GridVerifier(binomial)
        points = sum(1 for identity in verifier.identities for _ in verifier.points(identity))
        self.assertEqual(points, 3 * 3 * 5 * 3 * 5 * 5 * 3 * 3)


class TestLoadConfig(unittest.TestCase):
    """Test JSON config loading."""

    def setUp(self):
        """Set up test fixtures."""
        self.temp_dir = tempfile.mkdtemp()

    def tearDown(self):
        """Clean up test fixtures."""
        shutil.rmtree(self.temp_dir, ignore_errors=True)

    def write_config(self, content: str) -> str:
        path = os.path.join(self.temp_dir, "grid.json")
        with open(path, 'w', encoding='utf-8') as f:
            f.write(content)
        return path

    def test_single_object(self):
        """Test a config holding one grid."""
        specs = load_config(self.write_config('{"q": ["1/3"], "h": "0..1"}'))
        self.assertEqual(len(specs), 1)
        self.assertEqual(specs[0].h, [0, 1])

    def test_list_of_objects(self):
        """Test a config holding several grids."""
        specs = load_config(self.write_config('[{"q": ["1/3"]}, {"q": ["0.3"], "s": ["2"]}]'))
        self.assertEqual([spec.q for spec in specs], [["1/3"], ["0.3"]])

    def test_bad_files(self):
        """Test missing and malformed files."""
        with self.assertRaises(ConfigError):
            load_config(os.path.join(self.temp_dir, "missing.json"))
        with self.assertRaises(ConfigError):
            load_config(self.write_config('{"q": '))
        with self.assertRaises(ConfigError):
            load_config(self.write_config('[1, 2]'))


class TestGridVerifier(unittest.TestCase):
    """Test grid runs."""

    def test_empty_grid(self):
        """Test that a grid with no q values yields no reports."""
        self.assertEqual(run_grid(GridSpec()), [])
        self.assertEqual(run_grid(small_spec(x=[])), [])

    def test_small_grid_passes(self):
        """Test that every point of a small exact grid passes."""
        reports = run_grid(small_spec())
        # symmetry-euler: 2 chi * 2 r * 2 n * 2 x * 2 w1 * 1 w2
        # binomial-symmetry: 2 chi * 2 r * 1 m * 2 n * 2 x * 1 y
        self.assertEqual(len(reports), 32 + 16)
        self.assertTrue(all(r.passed for r in reports))

    def test_reports_are_sorted(self):
        """Test deterministic report order."""
        reports = run_grid(small_spec())
        self.assertEqual(reports, sorted(reports, key=lambda r: r.sort_key()))
        again = run_grid(small_spec())
        self.assertEqual([r.params for r in reports], [r.params for r in again])

    def test_mutation_detected(self):
        """Test that a scaled left side produces failures."""
        spec = small_spec(identities=["symmetry-euler"], n=[1, 2], x=[1])
        reports = run_grid(spec, Mutation.SCALE)
        self.assertTrue(any(not r.passed for r in reports))
        self.assertTrue(all(r.mutation is Mutation.SCALE for r in reports))

    def test_even_weight_becomes_failure(self):
        """Test that evaluation errors are reported, not raised."""
        reports = run_grid(small_spec(identities=["symmetry-euler"], w1=[2]))
        self.assertTrue(reports)
        for report in reports:
            self.assertFalse(report.passed)
            self.assertTrue(report.error.startswith("OddnessViolation"))

    def test_disabled_identities(self):
        """Test the disabled list."""
        spec = small_spec(disabled_identities=["binomial-symmetry"])
        ids = {r.identity_id for r in run_grid(spec)}
        self.assertEqual(ids, {IdentityId.THM22})

    def test_unknown_identity(self):
        """Test that unknown identity ids are config errors."""
        with self.assertRaises(ConfigError):
            GridVerifier(small_spec(identities=["fermat"]))

    def test_invalid_q(self):
        """Test that an invalid q is a config error."""
        with self.assertRaises(ConfigError):
            run_grid(small_spec(q=["3/2"]))

    def test_l_symmetry_exact_skipped(self):
        """Test that the l-function identity runs in numeric contexts only."""
        config = {
            "identities": ["symmetry-l"],
            "characters": ["principal:1"],
            "h": [2],
            "r": [1],
            "w1": [1],
            "w2": [3],
            "s": ["2"],
            "l_x": [1],
        }
        self.assertEqual(run_grid(GridSpec.from_dict(dict(config, q=["1/2"]))), [])
        reports = run_grid(GridSpec.from_dict(dict(config, q=["0.3"])))
        self.assertEqual(len(reports), 1)
        self.assertTrue(reports[0].passed)
        self.assertIsNotNone(reports[0].tail_bound)


class TestFormatting(unittest.TestCase):
    """Test report summaries and output formats."""

    def setUp(self):
        """Set up test fixtures."""
        self.reports = run_grid(small_spec(identities=["binomial-symmetry"]))

    def test_summary(self):
        """Test pass/fail counts."""
        summary = get_summary(self.reports)
        self.assertEqual(summary['total'], 16)
        self.assertEqual(summary['failed'], 0)
        self.assertEqual(summary['by_identity']['binomial-symmetry']['passed'], 16)

    def test_text(self):
        """Test the text format."""
        output = format_reports(self.reports, 'text')
        self.assertIn("Checked 16 point(s):", output)
        self.assertIn("binomial-symmetry: 16/16 passed", output)
        self.assertIn("all passed", output)

    def test_text_failures(self):
        """Test that failures are listed."""
        reports = run_grid(small_spec(identities=["binomial-symmetry"], n=[2], x=[1]), Mutation.SCALE)
        output = format_reports(reports, 'text')
        self.assertIn("failure(s):", output)
        self.assertIn("[binomial-symmetry]", output)

    def test_json(self):
        """Test the JSON document."""
        document = json.loads(format_reports(self.reports, 'json', {'preset': None}))
        self.assertEqual(document['command'], 'verify')
        self.assertEqual(document['parameters'], {'preset': None})
        self.assertEqual(len(document['reports']), 16)
        first = document['reports'][0]
        for key in ('identity_id', 'params', 'lhs', 'rhs', 'residual', 'passed', 'mode',
                    'tail_bound', 'error', 'mutation'):
            self.assertIn(key, first)
        self.assertEqual(first['residual'], '0')
        self.assertEqual(first['mode'], 'exact')
        self.assertEqual(document['summary']['passed'], 16)


if __name__ == '__main__':
    unittest.main()
