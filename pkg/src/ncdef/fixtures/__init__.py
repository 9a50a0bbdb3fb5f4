"""Shipped problem files, loadable by bare name through load_problem."""
