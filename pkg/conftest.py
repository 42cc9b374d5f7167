import os

# Keep test runs from writing logs/weylseries.log
os.environ.setdefault("WEYLSERIES_LOG_FILE", "0")
