"""
测试模块
"""




