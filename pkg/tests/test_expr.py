"""The closed-form expression compiler used by config-defined methods."""

import numpy as np
import pytest

from sumkit._expr import ExpressionError, compile_expression


def test_vectorized_arithmetic():
    f = compile_expression("(1 - r) * r**n", ("n", "r"))
    ns = np.arange(4, dtype=float)
    assert np.allclose(f(n=ns, r=0.5), [0.5, 0.25, 0.125, 0.0625])


def test_indicator_comparison():
    f = compile_expression("indicator(t < r) / (1 - t)", ("r", "t"))
    ts = np.array([0.0, 0.5, 0.9])
    out = f(r=0.6, t=ts)
    assert np.allclose(out, [1.0, 2.0, 0.0])


def test_functions_log_exp_abs_pow():
    f = compile_expression("abs(log(exp(t))) + pow(t, 2)", ("t",))
    assert f(t=2.0) == pytest.approx(6.0)


def test_complex_literals():
    f = compile_expression("(1 + 1j) * t", ("t",))
    assert f(t=2.0) == pytest.approx(2 + 2j)


def test_unknown_name_rejected():
    with pytest.raises(ExpressionError):
        compile_expression("q + 1", ("n",))


def test_unknown_function_rejected():
    with pytest.raises(ExpressionError):
        compile_expression("__import__('os')", ("n",))
    with pytest.raises(ExpressionError):
        compile_expression("sin(n)", ("n",))


def test_comparison_outside_indicator_rejected():
    with pytest.raises(ExpressionError):
        compile_expression("(n < 3) * 2", ("n",))


def test_attribute_access_rejected():
    with pytest.raises(ExpressionError):
        compile_expression("n.__class__", ("n",))


def test_string_literals_rejected():
    with pytest.raises(ExpressionError):
        compile_expression("'hello'", ("n",))
