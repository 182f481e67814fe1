import pytest

from questionmark import config


@pytest.fixture(autouse=True)
def _default_config():
    """Each test starts from the default precision settings."""
    saved = config.get_config()
    config.set_config(config.PrecisionConfig())
    yield
    config.set_config(saved)
