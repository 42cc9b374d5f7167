# main.py
import logging_config  # Initialize logging
import logging

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
import uvicorn

from routes import algebra, charlier, coefficients, liouville

logging_config.configure_logging()

# Get logger
logger = logging.getLogger(__name__)

VERSION = "1.0.0"

# Create the FastAPI app
app = FastAPI(
    title="WeylSeries API",
    description="Series expansions, residue functionals and Liouville-type checks for (q-)Weyl algebra modules",
    version=VERSION,
)

# Configure CORS middleware
app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)


# Middleware for logging requests
@app.middleware("http")
async def log_requests(request: Request, call_next):
    logger.info(f"Request: {request.method} {request.url.path}")

    try:
        response = await call_next(request)
        return response
    except Exception as e:
        logger.error(f"Error processing request: {str(e)}")
        return JSONResponse(status_code=500, content={"detail": "Internal server error"})


# Include routers
app.include_router(algebra.router, prefix="/algebra", tags=["Algebra"])
app.include_router(coefficients.router, prefix="/coefficients", tags=["Coefficients"])
app.include_router(liouville.router, prefix="/liouville", tags=["Liouville"])
app.include_router(charlier.router, prefix="/charlier", tags=["Charlier"])


# Root endpoint to provide API info
@app.get("/", tags=["Root"])
async def root():
    return {
        "message": "Welcome to WeylSeries API",
        "version": VERSION,
        "description": "Coefficients, residues and verdicts for the classical, difference and q-difference models",
        "documentation": "/docs",
    }


# Health check endpoint
@app.get("/health", tags=["Health"])
async def health_check():
    return {"status": "healthy", "version": VERSION}


if __name__ == "__main__":
    uvicorn.run("main:app", host="0.0.0.0", port=8080, reload=False)
