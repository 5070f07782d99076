import pytest

from qpesign import backend


@pytest.fixture(scope="session", autouse=True)
def _warm_backend():
    # pay any JIT cost before timed tests run
    backend.warmup()
