import sys

from padic_ratios.cli import main

sys.exit(main())
