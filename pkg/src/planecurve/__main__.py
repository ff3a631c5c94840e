import sys

from planecurve.cli import main

sys.exit(main())
