"""
Tests of the dtcx subpackages. Independent oracles live in :mod:`dtcx.test.helper`.
"""
