'''
Reports collect the outcome of a verification suite: one Case per identity instance, with both
sides in printed form, and a summary that the command line turns into an exit code.
'''

import json
import logging

from datetime import datetime, timezone
from threading import Lock, Thread
from typing import Callable

from ambient_dirac.base import (
    Base,
    CaseStatus,
    EngineError,
    get_version
)


class Case(object):
    '''
    A single verification case.

        - id: Stable identifier, e.g. "prop3/y2p_x/p=3"
        - status: A base.CaseStatus
        - expected: The displayed or reference value, as text
        - computed: The engine's value, as text
        - note: Free text, used to explain flagged entries
    '''

    def __init__(self,
        id: str,
        status: CaseStatus,
        expected: str = '',
        computed: str = '',
        note: str = ''
    ):
        self.id = id
        self.status = status
        self.expected = expected
        self.computed = computed
        self.note = note

    def to_dict(self) -> dict:
        return {
            'id': self.id,
            'status': self.status.value,
            'expected': self.expected,
            'computed': self.computed,
            'note': self.note
        }

    def __repr__(self):
        return f'<Case "{self.id}" {self.status.value}>'


class Report(Base):
    '''
    A Report is an ordered collection of Cases produced by one suite run.

        - suite: The suite name
        - seed: The random seed the suite ran with, or None for deterministic suites
        - version: The engine version; read from versions.json when not given
    '''

    def __init__(self,
        suite: str,
        seed: int = None,
        version: str = None,
        cases: list[Case] = None,
        **kwargs
    ):
        super().__init__(**kwargs)
        self.suite = suite
        self.seed = seed
        self.version = version or get_version()
        self._cases = list(cases or [])
        self._errors = list()
        self._lock = Lock()

    @property
    def cases(self) -> list[Case]:
        return list(self._cases)

    @property
    def errors(self) -> list[EngineError]:
        return list(self._errors)

    @property
    def summary(self) -> dict[str, int]:
        '''
        Tallies of each status, plus the total.
        '''

        counts = {status.value: 0 for status in CaseStatus}
        for case in self._cases:
            counts[case.status.value] += 1
        counts['total'] = len(self._cases)
        return counts

    @property
    def passed(self) -> bool:
        '''
        True when no case failed. Flagged cases do not fail a run.
        '''

        return all(case.status != CaseStatus.FAIL for case in self._cases)

    @property
    def exit_code(self) -> int:
        return 0 if self.passed else 1

    def add(self,
        cases: Case | list[Case] | list[list[Case]]
    ):
        '''
        Appends cases, accepting a single Case, a list of them, or a list of lists, so that the
        cases of several reports can be merged conveniently.
        '''

        if isinstance(cases, Case):
            cases = [cases]
        with self._lock:
            for case in cases:
                if isinstance(case, Case):
                    self._append(case)
                if type(case) == list:
                    for item in case:
                        self._append(item)

    def _append(self, case: Case):
        if case.status == CaseStatus.FAIL:
            logging.warning(f'{self.suite}: {case.id} failed: expected {case.expected}, '
                f'computed {case.computed}')
        elif case.status == CaseStatus.FLAGGED:
            logging.info(f'{self.suite}: {case.id} flagged: {case.note}')
        else:
            logging.debug(f'{self.suite}: {case.id} passed')
        self._cases.append(case)

    def add_case(self,
        id: str,
        status: CaseStatus,
        expected: str = '',
        computed: str = '',
        note: str = ''
    ) -> Case:
        case = Case(id, status, expected, computed, note)
        self.add(case)
        return case

    def check(self,
        id: str,
        expected,
        computed,
        note: str = '',
        formatter: Callable = str
    ) -> Case:
        '''
        Adds a PASS case if `expected == computed` and a FAIL case otherwise.
        '''

        status = CaseStatus.PASS if expected == computed else CaseStatus.FAIL
        return self.add_case(id, status, formatter(expected), formatter(computed), note)

    def compare(self,
        id: str,
        displayed,
        certified,
        computed,
        note: str = '',
        formatter: Callable = str
    ) -> Case:
        '''
        Compares a computed value against a displayed formula and an engine-certified correction of
        it. Agreement with the display passes; agreement only with the certified form is FLAGGED
        with the display kept as `expected`; agreement with neither fails.
        '''

        if computed == displayed:
            return self.add_case(id, CaseStatus.PASS, formatter(displayed), formatter(computed), note)
        if certified is not None and computed == certified:
            note = note or f'matches the engine-certified form {formatter(certified)}'
            return self.add_case(id, CaseStatus.FLAGGED, formatter(displayed), formatter(computed),
                note)
        return self.add_case(id, CaseStatus.FAIL, formatter(displayed), formatter(computed), note)

    def add_error(self,
        case_id: str,
        error: EngineError
    ) -> Case:
        '''
        Records an engine error raised while computing a case as a failing case.
        '''

        self._errors.append(error)
        return self.add_case(case_id, CaseStatus.FAIL, computed=type(error).__name__,
            note=error.message)

    def run_parallel(self,
        jobs: list[Callable],
        labels: list[str] = None
    ):
        '''
        Runs independent case builders on threads. Each job returns a list of Cases; they are
        appended in job order regardless of which thread finishes first. A job that raises an
        EngineError becomes a failing case under its label; any other exception is raised again
        here once every thread has finished.
        '''

        labels = labels or [f'{self.suite}/job{index}' for index in range(len(jobs))]
        results = [None] * len(jobs)

        def run(index, job):
            try:
                results[index] = job()
            except Exception as error:
                logging.debug(f'Job {labels[index]} raised {type(error).__name__}: {error}')
                results[index] = error

        threads = [Thread(target=run, args=[index, job]) for index, job in enumerate(jobs)]
        for thread in threads:
            thread.start()
        for thread in threads:
            thread.join()
        for label, result in zip(labels, results):
            if isinstance(result, EngineError):
                self.add_error(label, result)
            elif isinstance(result, Exception):
                raise result
            else:
                self.add(result or [])

    def merge(self,
        other: 'Report'
    ):
        self.add(other.cases)
        self._errors.extend(other.errors)

    def to_dict(self,
        timestamp: bool = True
    ) -> dict:
        '''
        Returns the JSON-ready form. Everything except the timestamp depends only on the suite
        arguments and the seed.
        '''

        report = {
            'suite': self.suite,
            'name': self.name,
            'tags': self.tags,
            'cases': [case.to_dict() for case in self._cases],
            'summary': self.summary,
            'seed': self.seed,
            'version': self.version
        }
        if timestamp:
            report['timestamp'] = datetime.now(timezone.utc).isoformat()
        return report

    def to_json(self,
        timestamp: bool = True
    ) -> str:
        return json.dumps(self.to_dict(timestamp), indent=2, ensure_ascii=False)

    def save(self, filename: str):
        '''
        Writes the report as a single UTF-8 JSON document.
        '''

        with open(filename, 'w', encoding='utf-8') as fh:
            fh.write(self.to_json())
        logging.debug(f'Saved {self.suite} report to {filename}')

    @staticmethod
    def load(filename: str) -> 'Report':
        '''
        Reads a report previously written by `save`.
        '''

        with open(filename, 'r', encoding='utf-8') as fh:
            data = json.load(fh)
        cases = [
            Case(case['id'], CaseStatus(case['status']), case['expected'], case['computed'],
                case['note'])
            for case in data['cases']
        ]
        return Report(data['suite'], data['seed'], data['version'], cases,
            name=data.get('name', ''), tags=data.get('tags'))

    def table(self) -> str:
        '''
        A plain-text table of the cases followed by the summary line, for stdout.
        '''

        width = max([len(case.id) for case in self._cases] + [4])
        lines = [f'{"case".ljust(width)}  status   computed']
        for case in self._cases:
            line = f'{case.id.ljust(width)}  {case.status.value.ljust(7)}  {case.computed}'
            if case.status != CaseStatus.PASS:
                line += f'\n{"".ljust(width)}           expected {case.expected}'
                if case.note:
                    line += f'\n{"".ljust(width)}           {case.note}'
            lines.append(line)
        counts = self.summary
        lines.append(f'{self.suite}: {counts["pass"]} pass, {counts["flagged"]} flagged, '
            f'{counts["fail"]} fail of {counts["total"]}')
        return '\n'.join(lines)
