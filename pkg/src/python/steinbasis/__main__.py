"""
Defines main entry point for the command line interface.
"""

import sys

from .execute import main

if __name__ == "__main__":
    sys.exit(main())
