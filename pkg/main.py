#!/usr/bin/env python3
"""
weakschmidt - Main entry point for the command line interface.
"""
import sys

from weakschmidt.cli import main

if __name__ == "__main__":
    sys.exit(main())
