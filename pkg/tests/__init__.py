"""
Test package voor de Saddle Analyzer.
"""
