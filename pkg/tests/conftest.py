import pytest

import fastapi
from fastapi.testclient import TestClient

from inqlab import utils
from inqlab.routers.evaluation import factory as evaluation_factory
from inqlab.routers.health import factory as health_factory
from inqlab.routers.paper import factory as paper_factory
from inqlab.schemas.metatheory import SuiteConfig
from inqlab.schemas.structures import Structure
from inqlab.schemas.syntax import Signature

@pytest.fixture
def app():
    utils.setup_loguru()

    app = fastapi.FastAPI()

    app.include_router(health_factory(app))
    app.include_router(evaluation_factory(app))
    app.include_router(paper_factory(app))

    return app

@pytest.fixture
def client(app: fastapi.FastAPI):
    return TestClient(app)

@pytest.fixture
def signature() -> Signature:
    return Signature(predicates={"P": 1, "Q": 2}, functions={"c": 0})

@pytest.fixture
def structure() -> Structure:
    """
    Three elements, P = {0}, Q = {(0,1), (1,2)}, c = 2.
    """
    return Structure(domain=3, predicates={"P": [[0]], "Q": [[0, 1], [1, 2]]}, functions={"c": {"()": 2}})

@pytest.fixture
def small_suite() -> SuiteConfig:
    return SuiteConfig(max_domain=2, max_vars=2, max_formula_depth=1, sample_count=40, random_max_rows=4)
