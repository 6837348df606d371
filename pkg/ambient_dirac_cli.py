#!/bin/env python3

import sys
from ambient_dirac.cli import main


if __name__ == '__main__':
    sys.exit(main())
