"""
Test suite for cliquepower
"""
