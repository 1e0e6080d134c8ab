"""QHam implosion engine"""
