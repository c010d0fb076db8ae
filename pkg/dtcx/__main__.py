import sys

from dtcx.cli.main import main

sys.exit(main())
