"""Tests for the command-line interface."""

import io
import json
import os
import shutil
import tempfile
import unittest
from contextlib import redirect_stderr, redirect_stdout

from hqeuler import __version__
from hqeuler.main import EXIT_FAILED, EXIT_OK, EXIT_USAGE, main


def run(argv):
    """Run the CLI and capture (exit code, stdout, stderr)."""
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = main(argv)
    return code, out.getvalue(), err.getvalue()


class TestCompute(unittest.TestCase):
    """Test the compute command."""

    def test_euler_values(self):
        """Test the first exact values at x = 0, q = 1/2."""
        code, out, _ = run(['compute', 'euler', '--n', '0..4', '--x', '0', '--q', '1/2'])
        self.assertEqual(code, EXIT_OK)
        lines = out.strip().splitlines()
        self.assertEqual(len(lines), 5)
        self.assertEqual(lines[0], "n=0 x=0: 1")
        self.assertEqual(lines[1], "n=1 x=0: -2/5")

    def test_power_sum(self):
        """Test S_{2,1}(3) at q = 1/2 with both methods."""
        for method in ('factored', 'naive'):
            code, out, _ = run(['compute', 'power-sum', '--n', '2', '--i', '1', '--w', '3',
                                '--q', '1/2', '--method', method])
            self.assertEqual(code, EXIT_OK)
            self.assertEqual(out.strip(), "n=2 i=1: -5/32")

    def test_json_output(self):
        """Test the JSON record of a computation."""
        code, out, _ = run(['compute', 'euler', '--n', '1', '--q', '1/2', '--format', 'json'])
        self.assertEqual(code, EXIT_OK)
        document = json.loads(out)
        self.assertEqual(document['command'], 'compute euler')
        self.assertEqual(document['mode'], 'exact')
        self.assertEqual(document['values'], [{'label': 'n=1 x=0', 'value': '-2/5'}])

    def test_l_function(self):
        """Test l(0, 1) = 1 at q = 0.3."""
        code, out, _ = run(['compute', 'l', '--s', '0', '--x', '1', '--q', '0.3', '--digits', '10'])
        self.assertEqual(code, EXIT_OK)
        label, value = out.strip().split(': ')
        self.assertEqual(label, "s=0 x=1")
        self.assertAlmostEqual(float(value), 1.0, places=9)

    def test_l_default_argument(self):
        """Test that l without --x evaluates at x = 1."""
        argv = ['compute', 'l', '--s', '2', '--q', '0.3', '--digits', '15']
        code, out, _ = run(argv)
        self.assertEqual(code, EXIT_OK)
        self.assertTrue(out.startswith("s=2 x=1: "))
        self.assertEqual(out, run(argv + ['--x', '1'])[1])

    def test_euler_default_argument(self):
        """Test that euler without --x still evaluates at x = 0."""
        code, out, _ = run(['compute', 'euler', '--n', '1', '--q', '1/2'])
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(out.strip(), "n=1 x=0: -2/5")

    def test_classical_without_q(self):
        """Test that the limit polynomials need no q."""
        code, out, _ = run(['compute', 'classical', '--n', '1', '--x', '0..1'])
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(out.strip().splitlines(), ["n=1 x=0: -1/2", "n=1 x=1: 1/2"])

    def test_invalid_q(self):
        """Test that q = 1 is a usage error."""
        code, _, err = run(['compute', 'euler', '--q', '1'])
        self.assertEqual(code, EXIT_USAGE)
        self.assertIn("Error:", err)

    def test_missing_q(self):
        """Test that --q is required outside the classical limit."""
        code, _, _ = run(['compute', 'euler', '--n', '1'])
        self.assertEqual(code, EXIT_USAGE)

    def test_malformed_character(self):
        """Test that a malformed --chi is a usage error."""
        code, _, err = run(['compute', 'euler', '--q', '1/2', '--chi', 'quadratic:'])
        self.assertEqual(code, EXIT_USAGE)
        self.assertIn("Error:", err)

    def test_divergent_l(self):
        """Test that h < r for l is a usage error."""
        code, _, _ = run(['compute', 'l', '--h', '1', '--r', '2', '--x', '1', '--q', '0.3'])
        self.assertEqual(code, EXIT_USAGE)

    def test_deterministic(self):
        """Test that repeated runs print the same bytes."""
        argv = ['compute', 'euler', '--n', '0..3', '--x', '0..2', '--chi', 'quadratic:3',
                '--h', '2', '--r', '2', '--q', '0.3']
        self.assertEqual(run(argv)[1], run(argv)[1])


class TestTable(unittest.TestCase):
    """Test the table command."""

    def test_csv(self):
        """Test the CSV header and row count."""
        code, out, _ = run(['table', 'euler', '--n', '0..1', '--x', '0..2', '--q', '1/2'])
        self.assertEqual(code, EXIT_OK)
        lines = out.strip().splitlines()
        self.assertEqual(len(lines), 7)
        self.assertEqual(lines[0], "n,x,value")
        self.assertEqual(lines[1], "0,0,1")

    def test_json_matches_compute(self):
        """Test that the JSON table carries the compute values."""
        argv = ['--n', '0..2', '--x', '1', '--chi', 'quadratic:3', '--r', '2', '--q', '1/3']
        _, table, _ = run(['table', 'euler', '--format', 'json'] + argv)
        _, compute, _ = run(['compute', 'euler'] + argv)
        rows = json.loads(table)['rows']
        self.assertEqual([f"n={n} x={x}: {v}" for n, x, v in rows], compute.strip().splitlines())

    def test_classical_limit(self):
        """Test that q close to 1 approaches the classical table."""
        common = ['--n', '0..2', '--x', '0..1', '--chi', 'quadratic:3', '--q', '0.99999999',
                  '--format', 'json']
        _, near, _ = run(['table', 'euler'] + common)
        _, limit, _ = run(['table', 'classical'] + common)
        near_rows = json.loads(near)['rows']
        limit_rows = json.loads(limit)['rows']
        self.assertEqual(len(near_rows), len(limit_rows))
        for (_, _, a), (_, _, b) in zip(near_rows, limit_rows):
            self.assertLessEqual(abs(float(a) - float(b)), 1e-5)


class TestVerify(unittest.TestCase):
    """Test the verify command."""

    def setUp(self):
        """Set up test fixtures."""
        self.temp_dir = tempfile.mkdtemp()

    def tearDown(self):
        """Clean up test fixtures."""
        shutil.rmtree(self.temp_dir, ignore_errors=True)

    def write_config(self, config) -> str:
        path = os.path.join(self.temp_dir, "grid.json")
        with open(path, 'w', encoding='utf-8') as f:
            json.dump(config, f)
        return path

    def grid(self):
        return self.write_config({
            "identities": ["symmetry-euler", "binomial-symmetry"],
            "q": ["1/2"],
            "characters": ["quadratic:3"],
            "h": [1],
            "r": [2],
            "n": [1, 2],
            "m": [1],
            "x": [1],
            "y": [1],
            "w1": [1],
            "w2": [3],
        })

    def test_config_passes(self):
        """Test a passing grid."""
        code, out, _ = run(['verify', '--config', self.grid()])
        self.assertEqual(code, EXIT_OK)
        self.assertIn("all passed", out)

    def test_mutation_fails(self):
        """Test that a perturbed left side is reported with exit code 1."""
        code, out, _ = run(['verify', '--config', self.grid(), '--mutate', 'lhs'])
        self.assertEqual(code, EXIT_FAILED)
        self.assertIn("failure(s):", out)

    def test_identity_selection(self):
        """Test --identities against a config."""
        code, out, _ = run(['verify', '--config', self.grid(), '--identities', 'binomial-symmetry',
                            '--json'])
        self.assertEqual(code, EXIT_OK)
        document = json.loads(out)
        self.assertEqual({r['identity_id'] for r in document['reports']}, {'binomial-symmetry'})

    def test_unknown_identity(self):
        """Test that an unknown identity id is a usage error."""
        code, _, _ = run(['verify', '--config', self.grid(), '--identities', 'fermat'])
        self.assertEqual(code, EXIT_USAGE)

    def test_unknown_config_key(self):
        """Test that an unknown config key is a usage error."""
        code, _, err = run(['verify', '--config', self.write_config({"q": ["1/2"], "z": [1]})])
        self.assertEqual(code, EXIT_USAGE)
        self.assertIn("unknown config key", err)


class TestGlobalOptions(unittest.TestCase):
    """Test options outside the subcommands."""

    def test_version(self):
        """Test --version."""
        code, out, _ = run(['--version'])
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(out.strip(), f"hqeuler version {__version__}")

    def test_no_command(self):
        """Test that a missing subcommand prints help and fails."""
        code, _, err = run([])
        self.assertEqual(code, EXIT_USAGE)
        self.assertIn("usage:", err)

    def test_bad_choice(self):
        """Test that argparse rejects unknown quantities."""
        with self.assertRaises(SystemExit) as raised:
            run(['compute', 'bernoulli'])
        self.assertEqual(raised.exception.code, 2)


if __name__ == '__main__':
    unittest.main()
