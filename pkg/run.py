import os

import uvicorn

if __name__ == "__main__":
    uvicorn.run(
        "main:app",
        host=os.getenv("WEYLSERIES_HOST", "0.0.0.0"),
        port=int(os.getenv("WEYLSERIES_PORT", "8000")),
        reload=os.getenv("WEYLSERIES_RELOAD", "1") == "1",
    )
