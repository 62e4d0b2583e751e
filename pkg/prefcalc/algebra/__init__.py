"""Preference expressions and their canonical form"""
