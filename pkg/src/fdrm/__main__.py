import sys

from fdrm.cli import main

sys.exit(main())
