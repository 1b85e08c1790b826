"""Grid runner for the identity checks."""

import itertools
import json
import logging
from dataclasses import dataclass, field, fields
from fractions import Fraction
from typing import Any, Dict, Iterator, List, Optional, Sequence

from .characters import DirichletCharacter, parse_character
from .core import EulerParams
from .errors import ConfigError, HQEulerError
from .identities import GridPoint, Identity, IdentityId, IdentityReport, Mutation, all_identities
from .numerics import (
    DEFAULT_PRECISION,
    DEFAULT_TOLERANCE,
    Mode,
    QContext,
    context_from_literal,
    is_exact,
    is_numeric,
    lift_argument,
    parse_complex,
)

logger = logging.getLogger(__name__)

REPORT_DIGITS = 25

# Axes read from a differently named GridSpec field for some identities.
AXIS_OVERRIDES = {
    IdentityId.THM21: {"x": "l_x"},
}


def parse_axis(value: Any, name: str = "value") -> List[Any]:
    """
    Read one grid axis: a list, a single scalar, ``"lo..hi"`` (inclusive)
    or a comma separated string. Integer-looking entries become ints.
    """
    if value is None:
        return []
    if isinstance(value, (list, tuple)):
        items = list(value)
    elif isinstance(value, str) and ".." in value:
        lo, _, hi = value.partition("..")
        try:
            return list(range(int(lo), int(hi) + 1))
        except ValueError:
            raise ConfigError(f"{name}: malformed range {value!r}")
    elif isinstance(value, str):
        items = [part for part in value.split(",") if part.strip()]
    else:
        items = [value]

    parsed = []
    for item in items:
        if isinstance(item, str):
            item = item.strip()
            if item.lstrip("+-").isdigit():
                item = int(item)
        elif isinstance(item, bool) or not isinstance(item, (int, float)):
            raise ConfigError(f"{name}: unsupported entry {item!r}")
        parsed.append(item)
    return parsed


def _int_axis(value: Any, name: str) -> List[int]:
    items = parse_axis(value, name)
    for item in items:
        if not isinstance(item, int):
            raise ConfigError(f"{name}: expected integers, got {item!r}")
    return items


@dataclass
class GridSpec:
    """
    Parameter ranges of a verification run.

    Every axis is a list; the run is the Cartesian product of the axes an
    identity depends on. ``mode`` overrides the mode implied by each q
    literal (``"1/2"`` is exact, ``"0.3"`` numeric).
    """
    identities: Optional[List[str]] = None
    q: List[str] = field(default_factory=list)
    mode: Optional[str] = None
    precision: int = DEFAULT_PRECISION
    tolerance: float = DEFAULT_TOLERANCE
    characters: List[str] = field(default_factory=list)
    h: List[int] = field(default_factory=list)
    r: List[int] = field(default_factory=list)
    n: List[int] = field(default_factory=list)
    m: List[int] = field(default_factory=list)
    x: List[Any] = field(default_factory=list)
    y: List[Any] = field(default_factory=list)
    w1: List[int] = field(default_factory=list)
    w2: List[int] = field(default_factory=list)
    s: List[str] = field(default_factory=list)
    l_x: List[Any] = field(default_factory=list)
    truncation: Optional[int] = None
    disabled_identities: List[str] = field(default_factory=list)

    @classmethod
    def from_dict(cls, config: Dict[str, Any]) -> "GridSpec":
        """Build a spec from a config document; unknown keys are an error."""
        if not isinstance(config, dict):
            raise ConfigError("a grid config must be a JSON object")
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(config) - known)
        if unknown:
            raise ConfigError(f"unknown config key(s): {', '.join(unknown)}")

        spec = cls()
        for key, value in config.items():
            if key in ("h", "r", "n", "m", "w1", "w2"):
                value = _int_axis(value, key)
            elif key in ("q", "characters", "s"):
                value = [str(v) for v in parse_axis(value, key)]
            elif key in ("x", "y", "l_x"):
                value = parse_axis(value, key)
            elif key in ("identities", "disabled_identities"):
                value = None if value is None else [str(v) for v in parse_axis(value, key)]
            elif key == "mode":
                if value is not None and value not in (m.value for m in Mode):
                    raise ConfigError(f"mode must be 'exact' or 'numeric', got {value!r}")
            elif key in ("precision", "truncation"):
                if value is not None and (not isinstance(value, int) or isinstance(value, bool)):
                    raise ConfigError(f"{key} must be an integer, got {value!r}")
            elif key == "tolerance":
                try:
                    value = float(value)
                except (TypeError, ValueError):
                    raise ConfigError(f"tolerance must be a number, got {value!r}")
            setattr(spec, key, value)
        return spec

    @classmethod
    def default(cls) -> List["GridSpec"]:
        """A smoke grid touching every identity once per character."""
        finite = cls.from_dict({
            "identities": ["umbral", "addition", "symmetry-euler", "symmetry-power-sum",
                           "power-sum-bridge", "binomial-symmetry"],
            "q": ["1/2", "1/3"],
            "characters": ["principal:1", "quadratic:3"],
            "h": [-1, 1, 2],
            "r": [1, 2],
            "n": "0..2",
            "m": "0..2",
            "x": [0, 1],
            "y": [0, 1],
            "w1": [1, 3],
            "w2": [1, 3],
        })
        l_function = cls.from_dict({
            "identities": ["symmetry-l"],
            "q": ["0.3"],
            "tolerance": 1e-25,
            "characters": ["principal:1", "quadratic:3"],
            "h": [2, 3],
            "r": [1, 2],
            "w1": [1, 3],
            "w2": [1, 3],
            "s": ["2", "3+1i"],
            "l_x": [1],
        })
        return [finite, l_function]

    @classmethod
    def acceptance(cls) -> List["GridSpec"]:
        """
        The full exact grid, the binomial symmetry on its smaller (m, n)
        range, and the numeric l-function grid.
        """
        shared = {
            "q": ["1/2", "1/3", "2/3"],
            "characters": ["principal:1", "quadratic:3", "quadratic:5"],
            "h": "-1..3",
            "r": "1..3",
            "x": "0..2",
            "y": "0..2",
            "w1": [1, 3, 5],
            "w2": [1, 3, 5],
        }
        exact = cls.from_dict(dict(
            shared,
            identities=["umbral", "addition", "symmetry-euler", "symmetry-power-sum",
                        "power-sum-bridge"],
            n="0..6",
        ))
        binomial = cls.from_dict(dict(
            shared,
            identities=["binomial-symmetry"],
            n="0..4",
            m="0..4",
        ))
        l_function = cls.from_dict({
            "identities": ["symmetry-l"],
            "q": ["0.25", "0.3"],
            "tolerance": 1e-20,
            "characters": ["principal:1", "quadratic:3"],
            "h": "3..4",
            "r": "1..2",
            "w1": [1, 3],
            "w2": [3, 5],
            "s": ["2", "2.5", "3+1i"],
            "l_x": [1],
        })
        return [exact, binomial, l_function]

    @classmethod
    def preset(cls, name: str) -> List["GridSpec"]:
        if name == "default":
            return cls.default()
        if name == "acceptance":
            return cls.acceptance()
        raise ConfigError(f"unknown preset {name!r}")


def load_config(config_path: str) -> List[GridSpec]:
    """Load one grid (a JSON object) or several (a JSON list of objects)."""
    try:
        with open(config_path, 'r', encoding='utf-8') as f:
            document = json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        raise ConfigError(f"could not load config file {config_path}: {e}")
    if isinstance(document, list):
        return [GridSpec.from_dict(item) for item in document]
    return [GridSpec.from_dict(document)]


def _contexts(spec: GridSpec) -> List[QContext]:
    contexts = []
    for literal in spec.q:
        try:
            contexts.append(context_from_literal(literal, spec.mode, spec.precision, spec.tolerance))
        except HQEulerError as e:
            if isinstance(e, ConfigError):
                raise
            raise ConfigError(f"q={literal}: {e}")
    return contexts


def _params(spec: GridSpec) -> List[EulerParams]:
    try:
        return [EulerParams(h, r) for h, r in itertools.product(spec.h, spec.r)]
    except ValueError as e:
        raise ConfigError(str(e))


class GridVerifier:
    """Runs the registered identities over a grid."""

    def __init__(self, spec: GridSpec, mutation: Mutation = Mutation.NONE):
        """
        Initialize the verifier.

        Args:
            spec: The parameter grid
            mutation: Perturbation applied to every left side (diagnostics)
        """
        self.spec = spec
        self.mutation = mutation
        self.identities: List[Identity] = []
        self._load_identities()

    def _load_identities(self):
        """Load the registry, then apply the selection and the disabled list."""
        known = {identity_id.value for identity_id in IdentityId}
        for name in (self.spec.identities or []) + self.spec.disabled_identities:
            if name not in known:
                raise ConfigError(f"unknown identity {name!r}; known: {', '.join(sorted(known))}")

        self.identities = all_identities()
        if self.spec.identities is not None:
            self.identities = [i for i in self.identities if i.identity_id.value in self.spec.identities]
        disabled = self.spec.disabled_identities
        self.identities = [i for i in self.identities if i.identity_id.value not in disabled]

    def _axis(self, identity: Identity, name: str, ctx: QContext) -> List[Any]:
        source = AXIS_OVERRIDES.get(identity.identity_id, {}).get(name, name)
        values = getattr(self.spec, source)
        if name in ("x", "y"):
            return [lift_argument(v, ctx) for v in values]
        if name == "s":
            return [parse_complex(v, ctx) for v in values]
        return list(values)

    def points(self, identity: Identity) -> Iterator[GridPoint]:
        """Every grid point of one identity, in axis order."""
        for ctx in _contexts(self.spec):
            if ctx.mode not in identity.modes:
                continue
            characters: List[DirichletCharacter] = [
                parse_character(text, ctx) for text in self.spec.characters
            ]
            axes = [self._axis(identity, name, ctx) for name in identity.parameters]
            for chi, params in itertools.product(characters, _params(self.spec)):
                for values in itertools.product(*axes):
                    yield GridPoint(
                        chi=chi,
                        params=params,
                        ctx=ctx,
                        truncation=self.spec.truncation,
                        **dict(zip(identity.parameters, values)),
                    )

    def verify_identity(self, identity: Identity) -> List[IdentityReport]:
        """
        Check one identity on every applicable point.

        Evaluation errors at a point become failed reports; the grid goes on.
        """
        reports = []
        skipped = 0
        for point in self.points(identity):
            try:
                if not identity.applies(point):
                    skipped += 1
                    continue
                reports.append(identity.check(point, self.mutation))
            except (HQEulerError, ValueError) as e:
                logger.warning("%s failed at %s: %s", identity.identity_id.value,
                               point.describe(identity.parameters), e)
                reports.append(identity.create_failure(point, e))
        logger.debug("%s: %d point(s) checked, %d outside the domain",
                     identity.identity_id.value, len(reports), skipped)
        return reports

    def verify(self) -> List[IdentityReport]:
        """
        Run every enabled identity.

        Returns:
            Reports sorted by identity and parameter tuple
        """
        reports = []
        for identity in self.identities:
            if identity.enabled:
                reports.extend(self.verify_identity(identity))
        return sorted(reports, key=IdentityReport.sort_key)


def run_grid(spec: GridSpec, mutation: Mutation = Mutation.NONE) -> List[IdentityReport]:
    """All reports of a grid; an empty axis yields an empty list."""
    return GridVerifier(spec, mutation).verify()


def render_value(value: Any, digits: int = REPORT_DIGITS) -> Optional[str]:
    """Report rendering: exact values as ``num/den``, big floats as decimals."""
    if value is None:
        return None
    if is_exact(value):
        return str(Fraction(value))
    if is_numeric(value):
        mp = value.context
        if hasattr(value, "_mpc_"):
            sign = "-" if value.imag < 0 else "+"
            return f"{mp.nstr(value.real, digits)}{sign}{mp.nstr(abs(value.imag), digits)}i"
        return mp.nstr(value, digits)
    return str(value)


def get_summary(reports: Sequence[IdentityReport]) -> Dict:
    """
    Get a summary of reports.

    Args:
        reports: List of reports

    Returns:
        Dictionary with pass/fail counts overall and per identity
    """
    summary = {
        'total': len(reports),
        'passed': 0,
        'failed': 0,
        'by_identity': {},
    }
    for report in reports:
        outcome = 'passed' if report.passed else 'failed'
        summary[outcome] += 1
        counts = summary['by_identity'].setdefault(
            report.identity_id.value, {'passed': 0, 'failed': 0}
        )
        counts[outcome] += 1
    return summary


def format_reports(
    reports: Sequence[IdentityReport],
    format_type: str = 'text',
    parameters: Optional[Dict[str, Any]] = None,
) -> str:
    """
    Format reports for output.

    Args:
        reports: List of reports
        format_type: Output format ('text' or 'json')
        parameters: Command parameters echoed in the JSON document

    Returns:
        Formatted string
    """
    if format_type == 'json':
        return _format_json(reports, parameters or {})
    return _format_text(reports)


def _format_text(reports: Sequence[IdentityReport]) -> str:
    summary = get_summary(reports)
    output = [f"Checked {summary['total']} point(s):"]
    for identity_id, counts in sorted(summary['by_identity'].items()):
        total = counts['passed'] + counts['failed']
        output.append(f"  {identity_id}: {counts['passed']}/{total} passed")

    failures = [r for r in reports if not r.passed]
    if failures:
        output.append(f"\n{len(failures)} failure(s):")
        for report in failures:
            params = ", ".join(f"{k}={v}" for k, v in sorted(report.params.items()))
            detail = report.error or f"residual={render_value(report.residual)}"
            output.append(f"  ✗ [{report.identity_id.value}] {params}: {detail}")
    else:
        output.append("\n✓ all passed")
    return '\n'.join(output)


def _format_json(reports: Sequence[IdentityReport], parameters: Dict[str, Any]) -> str:
    data = {
        'command': 'verify',
        'parameters': parameters,
        'reports': [
            {
                'identity_id': r.identity_id.value,
                'params': r.params,
                'lhs': render_value(r.lhs),
                'rhs': render_value(r.rhs),
                'residual': render_value(r.residual),
                'passed': r.passed,
                'mode': r.mode.value,
                'tail_bound': render_value(r.tail_bound, 5),
                'error': r.error,
                'mutation': r.mutation.value,
            }
            for r in reports
        ],
        'summary': get_summary(reports),
    }
    return json.dumps(data, indent=2)
