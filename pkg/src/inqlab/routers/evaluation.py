import fastapi
from fastapi import APIRouter

from inqlab import utils
from inqlab.schemas.evaluation import EvalRequest
from inqlab.schemas.evaluation import InqbqEvalRequest
from inqlab.schemas.evaluation import InqbqVerdict
from inqlab.schemas.evaluation import Verdict
from inqlab.services import evaluation

async def eval_endpoint(request: EvalRequest) -> Verdict:
    """
    Decide support of a formula on a team.

    Args:
        request: Structure, team, formula text, evaluator choice and caps

    Returns:
        Verdict with evaluator statistics and, for a failed implication, the least falsifying sub-team

    Raises:
        HTTPException: 400 if the formula or the inputs are invalid, 422 if a cap is exceeded, 500 otherwise
    """
    try:
        return evaluation.evaluate_team(
            request.structure, request.team, request.formula, request.signature, request.fast, request.config
        )
    except Exception as e:
        raise utils.http_error(e)

async def inqbq_eval_endpoint(request: InqbqEvalRequest) -> InqbqVerdict:
    """
    Decide support of an InqBQ formula at an information state.

    Raises:
        HTTPException: 400 if the formula, state or assignment is invalid, 422 if a cap is exceeded
    """
    try:
        return evaluation.evaluate_state(request.model, request.formula, request.state, request.assignment, request.config)
    except Exception as e:
        raise utils.http_error(e)

def factory(app: fastapi.FastAPI) -> APIRouter:
    router = APIRouter()

    router.add_api_route(
        "/eval/",
        eval_endpoint,
        methods=["POST"],
        response_model=Verdict,
        tags=["eval"]
    )
    router.add_api_route(
        "/eval/inqbq",
        inqbq_eval_endpoint,
        methods=["POST"],
        response_model=InqbqVerdict,
        tags=["eval"]
    )
    return router
