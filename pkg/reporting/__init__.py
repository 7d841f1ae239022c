"""
Tables (pandas) and weight diagrams (plotly).
"""
