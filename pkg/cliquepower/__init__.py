"""
cliquepower: clique embedding power, width measures and SumProd reductions.
"""
