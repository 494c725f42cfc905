import sys

from relaxlab.cli import main

sys.exit(main())
