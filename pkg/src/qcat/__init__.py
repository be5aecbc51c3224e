"""Exact computations with profunctors, Takeuchi products and bialgebroids.

Two parallel engines with a linearization bridge between them:

- `fincat`: finite categories, profunctors, their composition and the
  span-flavoured T_n operation, all by finite enumeration in Set.
- `exactlin` / `takeuchi` / `bialgebroid` / `weakbialg`: finite dimensional
  algebras over QQ or GF(p), double modules, tensor-over-the-base quotients,
  centralizer products T_n, bialgebroid and comodule algebra axiom checks,
  weak bialgebra axiom checks, and the separable Frobenius idempotents.

`cli` exposes the `qcat` command; `io` owns the JSON interchange format.
"""

__version__ = "0.1.0"
