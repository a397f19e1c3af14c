#! /usr/bin/env python
# -*- coding: utf-8 -*-

"""Launch the ntru-witt command line"""

import sys

from itaxotools.ntru_witt import run

if __name__ == "__main__":
    sys.exit(run())
