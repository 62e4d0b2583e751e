"""Checks of the combination rules"""
