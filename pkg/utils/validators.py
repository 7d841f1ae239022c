"""
Validation Utilities

This module provides validation functions for graded modules, algebras, fans
and Tor tables. Each returns a report dict instead of raising.
"""

from itertools import product
from typing import Any, Dict, Optional
import logging

from models.errors import ValidationFailure
from models.fan import Fan
from models.graded import GradedAlgebra, GradedModule
from models.matrix import RatMatrix
from models.tor import BigradedTor

logger = logging.getLogger(__name__)


def _new_report() -> Dict[str, Any]:
    return {
        'is_valid': True,
        'errors': [],
        'warnings': [],
        'first_violation': None,
    }


def _fail(report: Dict[str, Any], message: str, where: Optional[Dict[str, Any]] = None) -> None:
    report['errors'].append(message)
    report['is_valid'] = False
    if report['first_violation'] is None:
        report['first_violation'] = where or {'message': message}


def validate_module(m: GradedModule) -> Dict[str, Any]:
    """
    Check action shapes and pairwise commutativity of the generator actions
    wherever both composites stay within the truncation.

    Args:
        m: The module to validate

    Returns:
        Dictionary with validation results
    """
    report = _new_report()
    D = m.truncation_degree
    degrees = m.ring.generator_degrees

    for i, d in enumerate(degrees):
        for k, matrix in m.actions[i].items():
            if k < 0 or k + d > D:
                _fail(report, f"generator {i} has an action stored at degree {k}, outside 0..{D - d}",
                      {'generator': i, 'degree': k})
                continue
            expected = (m.dim(k + d), m.dim(k))
            if matrix.shape != expected:
                _fail(report, f"generator {i}, degree {k}: shape {matrix.shape}, expected {expected}",
                      {'generator': i, 'degree': k})
    if not report['is_valid']:
        return report

    for i in range(len(degrees)):
        for j in range(i + 1, len(degrees)):
            for k in range(D - degrees[i] - degrees[j] + 1):
                ij = m.action(j, k + degrees[i]) @ m.action(i, k)
                ji = m.action(i, k + degrees[j]) @ m.action(j, k)
                if ij != ji:
                    _fail(report, f"generators {i} and {j} do not commute on degree {k}",
                          {'generators': (i, j), 'degree': k})
                    break

    if m.is_zero():
        report['warnings'].append("module is zero up to the truncation degree")
    return report


def _swap(di: int, dj: int) -> RatMatrix:
    """Permutation A_i ⊗ A_j -> A_j ⊗ A_i on Kronecker bases."""
    entries = {(b * di + a, a * dj + b): 1 for a in range(di) for b in range(dj)}
    return RatMatrix.from_dok(entries, (di * dj, di * dj))


def validate_algebra(a: GradedAlgebra) -> Dict[str, Any]:
    """
    Check the unit law, associativity and graded commutativity exactly,
    wherever every factor stays within the truncation.
    """
    from engine.linalg import kron

    report = _new_report()
    D = a.truncation_degree

    for k in range(D + 1):
        identity = RatMatrix.identity(a.dim(k))
        if a.product(0, k) != identity or a.product(k, 0) != identity:
            _fail(report, f"unit law fails in degree {k}", {'law': 'unit', 'degree': k})

    for i, j in product(range(D + 1), repeat=2):
        if i + j > D or not a.dim(i) or not a.dim(j):
            continue
        sign = -1 if (i * j) % 2 else 1
        if a.product(j, i) @ _swap(a.dim(i), a.dim(j)) != a.product(i, j).scaled(sign):
            _fail(report, f"graded commutativity fails for degrees ({i}, {j})",
                  {'law': 'commutativity', 'degrees': (i, j)})

    for i, j, l in product(range(1, D + 1), repeat=3):
        if i + j + l > D or not (a.dim(i) and a.dim(j) and a.dim(l)):
            continue
        left = a.product(i + j, l) @ kron(a.product(i, j), RatMatrix.identity(a.dim(l)))
        right = a.product(i, j + l) @ kron(RatMatrix.identity(a.dim(i)), a.product(j, l))
        if left != right:
            _fail(report, f"associativity fails for degrees ({i}, {j}, {l})",
                  {'law': 'associativity', 'degrees': (i, j, l)})

    return report


def validate_fan_data(data: Dict[str, Any]) -> Dict[str, Any]:
    """
    Parse and validate fan JSON. Non-smooth and non-complete fans are
    warnings, not errors.
    """
    from geometry.toric import is_complete, is_smooth, validate_fan

    report = _new_report()
    try:
        fan = validate_fan(Fan(**data))
    except (ValidationFailure, ValueError, TypeError) as e:
        _fail(report, f"invalid fan: {e}")
        return report

    if not is_smooth(fan):
        report['warnings'].append("fan is not smooth; cohomology is that of an orbifold")
    if not is_complete(fan):
        report['warnings'].append("fan is not complete; Betti/h-vector checks do not apply")
    return report


def validate_tor_table(t: BigradedTor) -> Dict[str, Any]:
    """Check the vanishing line q >= 2p and basic sanity of a Tor table."""
    report = _new_report()
    for p, q in t.vanishing_violations():
        _fail(report, f"nonzero Tor at (p, q) = ({p}, {q}) below the line q = 2p", {'p': p, 'q': q})
    beyond = [(p, q) for p, q in t.dims if q > t.trusted_q_bound]
    if beyond:
        report['warnings'].append(f"{len(beyond)} entries beyond the trusted bound q <= {t.trusted_q_bound}")
    if t.dim(0, 0) == 0 and t.dims:
        report['warnings'].append("Tor_0 vanishes in degree 0")
    return report


def get_validation_summary(validation_result: Dict[str, Any]) -> str:
    """
    Generate a human-readable summary of validation results.

    Args:
        validation_result: Validation result dictionary

    Returns:
        Human-readable summary string
    """
    if validation_result['is_valid']:
        summary = "✅ Validation passed"
        if validation_result.get('warnings'):
            summary += f"\n⚠️  {len(validation_result['warnings'])} warnings"
    else:
        error_count = len(validation_result['errors'])
        summary = f"❌ Validation failed ({error_count} errors)"
        if validation_result.get('warnings'):
            summary += f", {len(validation_result['warnings'])} warnings"
        summary += f"\n   first: {validation_result['errors'][0]}"
    return summary
