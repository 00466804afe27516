import sys

from digicov.cli import main

sys.exit(main())
