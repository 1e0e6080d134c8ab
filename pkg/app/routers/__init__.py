"""API Routers (groups, checks, verify, moduli)"""
