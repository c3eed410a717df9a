import fastapi
from contextlib import asynccontextmanager
from loguru import logger

from inqlab.routers.evaluation import factory as evaluation_factory
from inqlab.routers.health import factory as health_factory
from inqlab.routers.paper import factory as paper_factory
from inqlab import utils

@asynccontextmanager
async def lifespan(app: fastapi.FastAPI):
    logger.info("Starting inqlab-api")
    yield
    logger.info("Shutting down inqlab-api")

def factory():
    utils.setup_loguru()

    app = fastapi.FastAPI(lifespan=lifespan)

    app.include_router(health_factory(app))
    app.include_router(evaluation_factory(app))
    app.include_router(paper_factory(app))

    return app
