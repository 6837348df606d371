#!/bin/env python3

import json

from ambient_dirac.suites import SUITES, run_suite


def main():
    summaries = {}
    for suite in SUITES:
        report = run_suite(suite)
        summaries[suite] = report.summary
        for case in report.cases:
            if case.status.value != 'pass':
                print(f'{case.status.value.upper()} {case.id}: {case.note or case.computed}')
    print(f'Summaries: {json.dumps(summaries, indent=2)}')


if __name__ == '__main__':
    main()
