import json

from hypothesis import HealthCheck, settings

from lmw.text.documents import loads

settings.register_profile(
    "lmw", deadline=None, derandomize=True, max_examples=150,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("lmw")


def model(doc: dict):
    """Load a model from a document written as a Python dict."""
    return loads(json.dumps(doc))
