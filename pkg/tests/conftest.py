import pytest

from hilbpts import kernel

BACKENDS = ["python"] + (["compiled"] if kernel.compiled_available() else [])


@pytest.fixture(params=BACKENDS)
def backend(request):
    previous = kernel.use_backend(request.param)
    yield request.param
    kernel.use_backend(previous)
