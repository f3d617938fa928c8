import sys

from tornadotab.harness.cli import main

sys.exit(main())
