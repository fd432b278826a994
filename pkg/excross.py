#!/usr/bin/env python
"""
excross launcher: `python excross.py check all --fixture p1`.
Equivalent to `python -m src.cli.main`.
"""

import sys

from src.cli.main import main

if __name__ == "__main__":
    sys.exit(main())
