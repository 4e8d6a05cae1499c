"""
FastAPI server for the duplex-schur check suites
"""

from typing import Literal, Optional

from dotenv import load_dotenv
from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel, Field

from models import RunConfig, TOOL_VERSION, reports_document
from orchestrator import run_suite

load_dotenv()

app = FastAPI(
    title="Duplex Schur Check API",
    description="Exact checks for the type-B Hecke, duplex Hecke and iota-quantum actions on tensor space",
    version=TOOL_VERSION,
)

# Enable CORS for local development and notebook front ends
app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],  # In production, specify actual origins
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)


# Request/Response models
class CheckRequest(BaseModel):
    """Request model for a suite run."""
    command: Literal["relations", "omega", "qaction", "duality", "semisimple", "schur", "report-all"] = Field(
        ..., description="Suite to run"
    )
    r: int = Field(1, ge=1, description="Rank parameter")
    m: int = Field(2, ge=1, description="Tensor power")
    mode: Literal["exact", "eval"] = Field("eval", description="Rank computation mode")
    seed: int = Field(0, ge=0, description="Seed for evaluation points")
    spot_check: bool = Field(False, description="Exact re-rank of evaluated closures")
    options: dict = Field(default_factory=dict, description="Command options (family, I, J, gen, side, omit, ambient)")


class CheckResponse(BaseModel):
    """Response model for a suite run."""
    command: str = Field(..., description="Suite that was run")
    document: dict = Field(..., description="Report document: schema, tool_version, ordered reports")
    errors: list[str] = Field(..., description="List of error messages")
    summary: dict = Field(..., description="Summary statistics")


@app.get("/")
async def root():
    """Root endpoint with API information."""
    return {
        "name": "Duplex Schur Check API",
        "version": TOOL_VERSION,
        "status": "running",
        "endpoints": {
            "check": "/api/check (POST)",
            "health": "/health (GET)",
            "docs": "/docs (GET)",
        },
    }


@app.get("/health")
async def health():
    """Health check endpoint."""
    return {"status": "healthy"}


@app.post("/api/check", response_model=CheckResponse)
def check(request: CheckRequest):
    """
    Run one suite and return its ordered reports.

    Args:
        request: CheckRequest with command, parameters and options

    Returns:
        CheckResponse with the report document, errors and a status summary
    """
    try:
        config = RunConfig(
            r=request.r,
            m=request.m,
            mode=request.mode,
            seed=request.seed,
            spot_check=request.spot_check,
        )
        state = run_suite(request.command, config, request.options)

        statuses = [rep.status for rep in state.reports]
        summary = {
            "total_reports": len(statuses),
            "passed": statuses.count("pass"),
            "failed": statuses.count("fail"),
            "skipped": statuses.count("skipped"),
            "has_errors": len(state.errors) > 0,
            "error_count": len(state.errors),
        }
        return CheckResponse(
            command=request.command,
            document=reports_document(state.reports),
            errors=state.errors,
            summary=summary,
        )

    except Exception as e:
        raise HTTPException(status_code=500, detail=f"Orchestrator error: {str(e)}")


if __name__ == "__main__":
    import uvicorn
    uvicorn.run(app, host="0.0.0.0", port=8000)
