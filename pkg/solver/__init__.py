"""
Equilibrium solvers: social optimum, Nash equilibria, exit equilibria and the grid oracle.
"""

from solver.exit_equilibria import all_exit_equilibria, exit_equilibria
from solver.kkt import certify, verify_exit_equilibrium
from solver.nash import nash_equilibria, nash_equilibrium
from solver.oracle import brute_force_social_optimum
from solver.social_optimum import social_optimum
from solver.types import ExitEquilibrium, KktCertificate, SolverResult, SupportPattern

__all__ = [
    'social_optimum',
    'nash_equilibrium',
    'nash_equilibria',
    'exit_equilibria',
    'all_exit_equilibria',
    'brute_force_social_optimum',
    'certify',
    'verify_exit_equilibrium',
    'ExitEquilibrium',
    'KktCertificate',
    'SolverResult',
    'SupportPattern',
]
