"""Linear-algebra realizations of sheaves on fans, used as an independent oracle."""
