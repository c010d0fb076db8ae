"""
Shared helpers: exceptions, probability and grid checks, the literal grammar and file output.
"""
