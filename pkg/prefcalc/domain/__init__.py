"""Attribute spaces and the grid-domain oracle"""
