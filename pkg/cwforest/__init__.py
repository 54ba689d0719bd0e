"""cwforest - exact forests of rational trees generated by L_u and R_v."""

__version__ = "1.0.0"
