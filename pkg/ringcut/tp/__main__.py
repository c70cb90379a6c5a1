import sys

from .tp import main

sys.exit(main())
