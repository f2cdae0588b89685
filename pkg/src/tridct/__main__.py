import sys

from tridct.cli import main

sys.exit(main())
