"""Run companion-algebra with ``python -m companion_algebra`` or as a script."""

import os
import sys

if __package__ in (None, ""):
    # Executed as a file path (companion.sh); make the package importable
    sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from companion_algebra.app import run  # noqa: E402

if __name__ == "__main__":
    sys.exit(run(sys.argv[1:]))
