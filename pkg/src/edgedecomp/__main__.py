import sys

from edgedecomp.cli import main

sys.exit(main())
