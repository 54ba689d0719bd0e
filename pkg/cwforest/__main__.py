import sys

from cwforest.cli import main

sys.exit(main())
