"""okubo-kit: exact composition algebras, order-3 automorphisms and Okubo algebras over small fields."""
