"""Random generators and property suites"""
