import fastapi
from fastapi import APIRouter
from fastapi import Form
from fastapi import HTTPException
from fastapi import UploadFile
from loguru import logger

from inqlab import utils
from inqlab.modules import constructions
from inqlab.schemas.demos import PaperFormulaResponse
from inqlab.schemas.demos import ReductionReport
from inqlab.services import demos

async def paper_formula_endpoint(name: str) -> PaperFormulaResponse:
    """
    Render one of the named formulas.

    Raises:
        HTTPException: 404 if the name is unknown
    """
    try:
        return demos.paper_text(name)
    except ValueError as e:
        raise HTTPException(status_code=404, detail=str(e))

async def reduce3sat_endpoint(
    cnf_file: UploadFile,
    fast: bool = Form(True, description="Evaluate the encoding with the fast evaluator"),
) -> ReductionReport:
    """
    Encode an uploaded 3-CNF instance as a team-support problem and compare the
    verdict with the SAT oracle.

    Args:
        cnf_file: DIMACS file with clauses of width 3
        fast: Use the fast evaluator

    Returns:
        ReductionReport with the verdict, the oracle answer and the extracted assignment

    Raises:
        HTTPException: 400 if the file is not valid DIMACS, 422 if the instance is too large
    """
    try:
        content = await cnf_file.read()
        instance = constructions.read_dimacs(content.decode("utf-8"))
        logger.info(f"[REDUCE3SAT] {cnf_file.filename}: {instance.variable_count} variables, {len(instance.clauses)} clauses")
        return demos.reduce_3sat(instance, source=cnf_file.filename or "<upload>", fast=fast)
    except UnicodeDecodeError:
        raise HTTPException(status_code=400, detail="DIMACS file must be UTF-8 text")
    except Exception as e:
        raise utils.http_error(e)

def factory(app: fastapi.FastAPI) -> APIRouter:
    router = APIRouter()

    router.add_api_route(
        "/paper/reduce3sat",
        reduce3sat_endpoint,
        methods=["POST"],
        response_model=ReductionReport,
        tags=["paper"]
    )
    router.add_api_route(
        "/paper/{name}",
        paper_formula_endpoint,
        methods=["GET"],
        response_model=PaperFormulaResponse,
        tags=["paper"]
    )
    return router
