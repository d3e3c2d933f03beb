import sys

from twistk.cli import main

sys.exit(main())
