import sys

from bdris.cli import main

sys.exit(main())
