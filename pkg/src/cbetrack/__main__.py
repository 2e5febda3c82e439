import sys

from cbetrack.cli import main

sys.exit(main())
