import os
import sys

# Allow running against an in-tree CMake build (BKD_PYTHON_PATH) as well as an installed wheel.
_path = os.environ.get("BKD_PYTHON_PATH")
if _path:
    sys.path.insert(0, _path)
