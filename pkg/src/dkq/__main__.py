import sys

from dkq.cli import main

sys.exit(main())
