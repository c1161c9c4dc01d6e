import sys

from fsort.cli import main

sys.exit(main())
