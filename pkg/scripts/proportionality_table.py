#!/bin/env python3

from ambient_dirac.base import Parity
from ambient_dirac.solvers import op_L, op_R, proportionality_constant


def main():
    for parity in Parity:
        print(f'\n{parity.name.title()} operators:')
        for p in range(1, 6):
            L = op_L(parity, p)
            R = op_R(parity, p)
            print(f'p={p}  L = {L}  R = {R}  R/L = {proportionality_constant(parity, p)}')


if __name__ == '__main__':
    main()
