"""Rings of Dirichlet convolutions over submonoids of N*, with bounded-exact
arithmetic, derivations, the Grothendieck extension and power-series maps."""
