"""Utility curves, models, evaluation and inference"""
