#!/usr/bin/env python3
"""
cliquepower: command-line entry point.

Usage:
    python main.py emb --family hyper_boat
    python main.py repro table1
"""

from dotenv import load_dotenv

load_dotenv()  # must run before any package imports that read os.environ

from cliquepower.cli import main

if __name__ == "__main__":
    main()
