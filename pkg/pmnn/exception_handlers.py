from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from pmnn.exceptions import InvalidArgumentError, OutputError, PmnnError


async def pmnn_error_handler(request: Request, exc: PmnnError) -> JSONResponse:
    return JSONResponse(
        status_code=500,
        content={"error": exc.code, "message": exc.message},
    )


async def invalid_argument_handler(request: Request, exc: InvalidArgumentError) -> JSONResponse:
    return JSONResponse(
        status_code=422,
        content={"error": exc.code, "message": exc.message},
    )


async def output_error_handler(request: Request, exc: OutputError) -> JSONResponse:
    return JSONResponse(
        status_code=503,
        content={"error": exc.code, "message": exc.message},
    )


def register_exception_handlers(app: FastAPI) -> None:
    app.add_exception_handler(InvalidArgumentError, invalid_argument_handler)
    app.add_exception_handler(OutputError, output_error_handler)
    app.add_exception_handler(PmnnError, pmnn_error_handler)
