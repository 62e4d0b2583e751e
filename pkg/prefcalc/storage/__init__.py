"""Model files and grid exports"""
