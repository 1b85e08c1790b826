#!/usr/bin/env python3
"""
hqeuler - (h,q)-Euler polynomials and their symmetry identities
Simple entry point script for easy execution.
"""

import sys
from hqeuler.main import main

if __name__ == '__main__':
    sys.exit(main())
