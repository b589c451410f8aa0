import sys

from cdu.harness.cli import main

sys.exit(main())
