"""Text syntax for preference expressions"""
