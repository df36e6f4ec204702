"""Entry point for the zeta_forge command line."""

import sys

from zeta_forge.cli import main


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
