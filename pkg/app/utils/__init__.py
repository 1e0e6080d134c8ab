"""Utility modules (exact rationals, report serialization)"""
