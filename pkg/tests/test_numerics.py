"""Tests for the scalar tower and q-brackets."""

import unittest
from fractions import Fraction

from hqeuler.errors import (
    ConfigError,
    InvalidContext,
    MixedVariants,
    NonIntegerExponentInExactMode,
)
from hqeuler.numerics import (
    DEFAULT_PRECISION,
    Mode,
    QContext,
    context_from_literal,
    lift_argument,
    mp_context,
    parse_complex,
    parse_literal,
    q_number,
    q_pow,
    render_scalar,
    scalar_eq,
)


class TestQContext(unittest.TestCase):
    """Test context validation and the exponent lattice."""

    def test_exact_context_normalises_q(self):
        """Test that exact q is stored as a reduced Fraction."""
        ctx = QContext.exact("2/4")
        self.assertEqual(ctx.q, Fraction(1, 2))
        self.assertIs(ctx.mode, Mode.EXACT)

    def test_invalid_q(self):
        """Test that q outside 0 < |q| < 1 is rejected."""
        for q in (1, 0, Fraction(3, 2), -1):
            with self.assertRaises(InvalidContext):
                QContext.exact(q)
        with self.assertRaises(InvalidContext):
            QContext.numeric("1.5")

    def test_exact_mode_rejects_float_q(self):
        """Test that a float q cannot make an exact context."""
        with self.assertRaises(InvalidContext):
            QContext.exact(0.5)

    def test_precision_floor(self):
        """Test that precisions below 64 bits are refused."""
        with self.assertRaises(InvalidContext):
            QContext.numeric("0.3", precision=32)

    def test_lattice_power(self):
        """Test rational exponents with denominator dividing the lattice."""
        ctx = QContext.exact(Fraction(1, 2)).with_lattice(3)
        self.assertEqual(ctx.base, Fraction(1, 8))
        self.assertEqual(ctx.power(Fraction(2, 3)), Fraction(1, 4))
        with self.assertRaises(NonIntegerExponentInExactMode):
            ctx.power(Fraction(1, 2))

    def test_as_numeric_keeps_base(self):
        """Test that embedding an exact context keeps q and the lattice."""
        ctx = QContext.exact(Fraction(1, 3)).with_lattice(5)
        numeric = ctx.as_numeric()
        self.assertIs(numeric.mode, Mode.NUMERIC)
        self.assertEqual(numeric.lattice, 5)
        self.assertTrue(scalar_eq(numeric.base, numeric.lift(ctx.base), numeric))


class TestQBrackets(unittest.TestCase):
    """Test q_number and q_pow."""

    def setUp(self):
        """Set up test fixtures."""
        self.half = QContext.exact(Fraction(1, 2))

    def test_q_number_examples(self):
        """Test the documented values of [x]_q."""
        self.assertEqual(q_number(0, self.half), 0)
        self.assertEqual(q_number(2, self.half), Fraction(3, 2))
        self.assertEqual(q_number(-1, self.half), -2)

    def test_q_pow_examples(self):
        """Test integer powers, negative ones included."""
        self.assertEqual(q_pow(0, self.half), 1)
        self.assertEqual(q_pow(3, self.half), Fraction(1, 8))
        self.assertEqual(q_pow(-2, QContext.exact(Fraction(2, 3))), Fraction(9, 4))

    def test_q_number_rejects_fractional_exponent(self):
        """Test that exact mode refuses q^(1/2)."""
        with self.assertRaises(NonIntegerExponentInExactMode):
            q_number(Fraction(1, 2), self.half)

    def test_addition_law(self):
        """Test [a+b] = [a] + q^a [b] for small integers."""
        for q in (Fraction(1, 2), Fraction(2, 3), Fraction(-1, 3)):
            ctx = QContext.exact(q)
            for a in range(-3, 4):
                for b in range(-3, 4):
                    self.assertEqual(
                        q_number(a + b, ctx),
                        q_number(a, ctx) + q_pow(a, ctx) * q_number(b, ctx),
                    )

    def test_negated_argument(self):
        """Test [-x] = -q^(-x) [x]."""
        ctx = QContext.exact(Fraction(2, 3))
        for x in range(-4, 5):
            self.assertEqual(q_number(-x, ctx), -q_pow(-x, ctx) * q_number(x, ctx))

    def test_classical_limit(self):
        """Test that [x]_q approaches x linearly as q -> 1."""
        for k in (3, 5, 8):
            mp = mp_context(DEFAULT_PRECISION)
            ctx = QContext.numeric(1 - mp.mpf(10) ** -k)
            epsilon = 1 - ctx.q
            for x in range(11):
                self.assertLessEqual(abs(q_number(x, ctx) - x), x * x * epsilon)

    def test_exact_numeric_agreement(self):
        """Test that exact values embedded into big floats match numeric ones."""
        exact = QContext.exact(Fraction(1, 3))
        numeric = exact.as_numeric()
        for x in range(-3, 6):
            self.assertTrue(scalar_eq(numeric.lift(q_number(x, exact)), q_number(x, numeric), numeric))


class TestScalarEq(unittest.TestCase):
    """Test mode-aware equality."""

    def test_exact_equality(self):
        """Test structural equality of reduced rationals."""
        ctx = QContext.exact(Fraction(1, 2))
        self.assertTrue(scalar_eq(Fraction(1, 2), Fraction(2, 4), ctx))
        self.assertFalse(scalar_eq(Fraction(1, 2), Fraction(1, 3), ctx))

    def test_numeric_tolerance(self):
        """Test that differences below the tolerance compare equal."""
        ctx = QContext.numeric("0.5")
        mp = ctx.mp
        self.assertTrue(scalar_eq(mp.mpf(1), mp.mpf(1) + mp.mpf("1e-40"), ctx))
        self.assertFalse(scalar_eq(mp.mpf(1), mp.mpf(1) + mp.mpf("1e-20"), ctx))

    def test_mixed_variants(self):
        """Test that mixing exact and numeric scalars is an error."""
        exact = QContext.exact(Fraction(1, 2))
        numeric = QContext.numeric("0.5")
        with self.assertRaises(MixedVariants):
            scalar_eq(Fraction(1, 2), numeric.mp.mpf(0.5), exact)
        with self.assertRaises(MixedVariants):
            scalar_eq(Fraction(1, 2), numeric.mp.mpf(0.5), numeric)


class TestLiterals(unittest.TestCase):
    """Test literal parsing and rendering."""

    def test_parse_literal(self):
        """Test mode selection from the literal itself."""
        self.assertEqual(parse_literal("1/2"), (Fraction(1, 2), Mode.EXACT, None))
        self.assertEqual(parse_literal("-3"), (Fraction(-3), Mode.EXACT, None))
        self.assertEqual(parse_literal("0.25@128"), ("0.25", Mode.NUMERIC, 128))
        self.assertEqual(parse_literal("0.3"), ("0.3", Mode.NUMERIC, None))
        with self.assertRaises(ConfigError):
            parse_literal("abc")
        with self.assertRaises(ConfigError):
            parse_literal("1/0")

    def test_context_from_literal(self):
        """Test context construction from q literals."""
        self.assertTrue(context_from_literal("1/2").is_exact)
        numeric = context_from_literal("0.3@128")
        self.assertEqual(numeric.precision, 128)
        self.assertFalse(context_from_literal("1/2", mode="numeric").is_exact)
        with self.assertRaises(ConfigError):
            context_from_literal("0.3", mode="exact")

    def test_render_round_trip(self):
        """Test that rendered exact scalars parse back to the same value."""
        ctx = QContext.exact(Fraction(1, 2))
        for value in (Fraction(-5, 32), Fraction(3), Fraction(0)):
            rendered = render_scalar(value, ctx)
            self.assertEqual(Fraction(rendered), value)
        self.assertEqual(render_scalar(Fraction(3), ctx), "3")

    def test_render_complex(self):
        """Test the re+imi rendering of complex values."""
        ctx = QContext.numeric("0.5")
        value = ctx.mp.mpc(1, -2)
        self.assertEqual(render_scalar(value, ctx, 3), "1.0-2.0i")

    def test_parse_complex(self):
        """Test complex and real literals."""
        ctx = QContext.numeric("0.5")
        self.assertEqual(parse_complex("3+1i", ctx), ctx.mp.mpc(3, 1))
        self.assertEqual(parse_complex("2", ctx), 2)
        self.assertEqual(parse_complex("-0.5i", ctx), ctx.mp.mpc(0, -0.5))

    def test_lift_argument(self):
        """Test argument coercion per mode."""
        exact = QContext.exact(Fraction(1, 2))
        self.assertEqual(lift_argument("2/3", exact), Fraction(2, 3))
        self.assertEqual(lift_argument(2, exact), 2)
        with self.assertRaises(ConfigError):
            lift_argument("0.5", exact)
        numeric = QContext.numeric("0.5")
        self.assertEqual(lift_argument("0.25", numeric), numeric.mp.mpf("0.25"))


if __name__ == '__main__':
    unittest.main()
