import sys

from harrisar.cli import main

sys.exit(main())
