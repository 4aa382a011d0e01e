import pytest

from ddfkit import _kernels


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    # trigger JIT compilation once so timed tests measure compute, not compile
    _kernels.warmup()
