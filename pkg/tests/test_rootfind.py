"""Bisection solver harness tests with injected residuals."""

import math

import pytest

from awglink.errors import ConvergenceError, NoBracketError
from awglink.rootfind import bisect_root


def test_linear_root_hit_exactly_by_symmetric_bracket():
    result = bisect_root(lambda a: a - 5.0, 0.0, 10.0)
    assert result.root == 5.0
    assert result.residual == 0.0
    assert result.iterations == 1


def test_linear_root_from_offset_bracket():
    result = bisect_root(lambda a: a - 5.0, 0.1, 20.0)
    assert abs(result.root - 5.0) < 1e-9
    assert abs(result.residual) < 1e-9


def test_result_independent_of_bracket_for_single_root():
    roots = [
        bisect_root(lambda a: a - 5.0, lo, hi).root
        for lo, hi in [(0.1, 20.0), (4.0, 6.0), (1.0, 5.5)]
    ]
    assert all(abs(r - 5.0) < 1e-9 for r in roots)


def test_endpoint_root_returned_without_iterating():
    result = bisect_root(lambda a: a - 5.0, 5.0, 10.0)
    assert result.root == 5.0
    assert result.iterations == 0


def test_same_sign_endpoints_raise():
    with pytest.raises(NoBracketError):
        bisect_root(lambda a: a * a + 1.0, -1.0, 1.0)
    with pytest.raises(NoBracketError):
        bisect_root(lambda a: -a * a - 1.0, -1.0, 1.0)


def test_invalid_bracket_raises():
    with pytest.raises(NoBracketError):
        bisect_root(lambda a: a, 2.0, 2.0)
    with pytest.raises(NoBracketError):
        bisect_root(lambda a: a, 3.0, 1.0)


def test_discontinuous_sign_flip_reports_nonconvergence():
    # sign changes across a jump with no zero: the bracket collapses but
    # the residual never meets tolerance
    step = lambda x: -1.0 if x < math.pi / 4.0 else 1.0
    with pytest.raises(ConvergenceError):
        bisect_root(step, 0.0, 2.0)


def test_iteration_cap_reported():
    with pytest.raises(ConvergenceError):
        bisect_root(lambda a: a - 5.0, 0.1, 20.0, max_iter=3)


def test_residual_matches_function_at_root():
    f = lambda a: math.tanh(a - 2.5)
    result = bisect_root(f, 0.5, 7.0)
    assert result.residual == f(result.root)
    assert abs(result.residual) < 1e-9
