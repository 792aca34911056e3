import sys

from brackpy._cli import main

sys.exit(main())
