"""concentration-lab: numerical verification of concentration inequalities"""

__version__ = "0.1.0"
