import decimal
import math

import numpy as np
import pytest
from tornadotab.backend import backends
from tornadotab.backend.precise import PRECISION, DecimalBackend
from tornadotab.backend.registry import BackendNotRegistered, BackendsRegistry

from .conftest import BACKENDS


def test_registry():
    assert "numpy" in backends.available_backends
    assert "decimal" in backends.available_backends
    assert backends["decimal"].name == "decimal"
    assert backends.resolve("numpy") == "numpy"
    assert backends.resolve(None) == backends.active.name
    with pytest.raises(BackendNotRegistered):
        backends["jax"]
    with pytest.raises(BackendNotRegistered):
        backends.set_active("jax")


def test_set_active():
    registry = BackendsRegistry()
    registry.set_active("decimal")
    assert registry.active.name == "decimal"
    registry.set_active("numpy")
    assert registry.active.name == "numpy"


@pytest.mark.parametrize("backend", BACKENDS)
def test_array_backends(backend):
    B = backends[backend]
    x = B.asarray([0.0, 1.0, 4.0])
    assert B.supports_arrays
    assert np.allclose(B.sqrt(x), [0, 1, 2])
    assert np.allclose(B.lgamma(B.asarray([1.0, 5.0])), [0, math.log(24)])
    assert B.any(x > 3) and not B.all(x > 3)
    assert np.array_equal(B.where(x > 0.5, x, B.asarray(-1.0)), [-1, 1, 4])


def test_decimal_precision():
    B = DecimalBackend()
    assert not B.supports_arrays
    with B.precision():
        e = B.exp(1)
        assert isinstance(e, decimal.Decimal)
        assert decimal.getcontext().prec == PRECISION
    assert str(e).startswith("2.71828182845904523536028747135266249775724709369995")
    tiny = decimal.Decimal("1e-40")
    assert abs(B.log1p(tiny) - tiny) <= decimal.Decimal("1e-79")
    assert B.lgamma(5) == B.log(24)
    assert B.floor(decimal.Decimal("2.5")) == 2 and B.ceil(decimal.Decimal("2.5")) == 3
    assert B.to_python(B.asarray(0.1)) == 0.1
    assert B.asarray(np.float64(0.5)) == decimal.Decimal("0.5")


def test_decimal_rejects_arrays():
    B = backends["decimal"]
    with pytest.raises(TypeError):
        B.asarray(np.arange(3))
    with pytest.raises(TypeError):
        B.asarray([1, 2])
    with pytest.raises(ValueError):
        B.lgamma(decimal.Decimal("2.5"))
