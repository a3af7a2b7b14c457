# -*- coding: utf-8 -*-
# Apache Software License 2.0
#
# Copyright (c) 2024, The cylsim developers
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
# http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""
Diagnostics report assembled by every subcommand.

The report body (``report.txt`` and one CSV per section) depends only on the
configuration. Wall-clock timings go to a separate ``timings.txt``.
"""
import logging
import os
import time
from collections import OrderedDict
from collections import namedtuple
from contextlib import contextmanager
from datetime import datetime

from pytz import timezone

from cylsim import __version__
from cylsim.core.utils import fmt
from cylsim.core.utils import write_csv

PASS = "pass"
FAIL = "fail"
INCONCLUSIVE = "inconclusive"

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_INCONCLUSIVE = 2
EXIT_CONFIG_ERROR = 64

_EXIT_CODES = {PASS: EXIT_PASS, FAIL: EXIT_FAIL,
               INCONCLUSIVE: EXIT_INCONCLUSIVE}

_VERDICT_STATUS = {
    "Integrable": PASS,
    "NotIntegrable": FAIL,
    "Inconclusive": INCONCLUSIVE,
}


class CheckRecord(namedtuple("CheckRecord", ["name", "status", "statistic",
                                             "threshold", "detail",
                                             "decisive"])):
    """One summary line of the report."""

    def line(self) -> str:
        """Returns ``check_name,status,statistic,threshold``."""
        return ",".join([self.name, self.status, fmt(self.statistic),
                         fmt(self.threshold)])


class DiagnosticsReport:
    """
    Structured record of checker verdicts and verifier results.

    ...

    Attributes
    ----------
    config_echo : str
        HOCON rendering of the merged run configuration
    records : list
        CheckRecord entries in insertion order
    sections : OrderedDict
        name -> (header, rows) tables written as CSV files
    timings : list
        (name, seconds) pairs, kept out of the deterministic output
    """

    def __init__(self, config_echo=""):
        self.config_echo = config_echo
        self.records = []
        self.sections = OrderedDict()
        self.timings = []

    def add(self, name, status, statistic, threshold, detail="",
            decisive=True):
        """Appends a check record and returns it."""
        if status not in _EXIT_CODES:
            raise ValueError("unknown status %r" % status)
        record = CheckRecord(name, status, float(statistic),
                             float(threshold), detail, decisive)
        self.records.append(record)
        logger = logging.getLogger(__name__)
        logger.info("%s: %s (statistic=%s, threshold=%s) %s", name, status,
                    fmt(statistic), fmt(threshold), detail)
        return record

    def add_bound(self, name, statistic, threshold, detail="",
                  decisive=True):
        """Records a pass when statistic <= threshold."""
        status = PASS if statistic <= threshold else FAIL
        return self.add(name, status, statistic, threshold, detail, decisive)

    def add_verdict(self, name, verdict, threshold=0.0, decisive=True):
        """
        Records an integrability verdict.

        Parameters
        ----------
        name : str
            check name
        verdict
            object with ``decision``, ``witness`` and ``detail`` fields
        threshold : float
            the tolerance the decision was made with
        decisive : bool
            whether the verdict contributes to the overall result
        """
        return self.add(name, _VERDICT_STATUS[verdict.decision],
                        verdict.witness, threshold, verdict.detail, decisive)

    def add_section(self, name, header, rows):
        """Registers a CSV table written next to the report."""
        self.sections[name] = (list(header), [list(row) for row in rows])

    @contextmanager
    def timed(self, name):
        """Context manager recording the wall-clock time of a block."""
        start = time.perf_counter()
        try:
            yield
        finally:
            self.timings.append((name, time.perf_counter() - start))

    def overall(self) -> str:
        """Worst status over the decisive records."""
        statuses = [r.status for r in self.records if r.decisive]
        if FAIL in statuses:
            return FAIL
        if INCONCLUSIVE in statuses:
            return INCONCLUSIVE
        return PASS

    def exit_code(self) -> int:
        """Exit code of the overall status."""
        return _EXIT_CODES[self.overall()]

    def render(self) -> str:
        """Deterministic text of ``report.txt``."""
        lines = ["# cylsim report", "# version=" + __version__, "",
                 "[config]", self.config_echo.rstrip("\n"), "",
                 "[checks]", "check_name,status,statistic,threshold"]
        lines += [record.line() for record in self.records]
        lines += ["", "[details]"]
        lines += ["%s: %s" % (r.name, r.detail)
                  for r in self.records if r.detail]
        lines += ["", "[sections]"]
        lines += ["%s.csv" % name for name in self.sections]
        lines += ["", "[overall]", "verdict=" + self.overall(), ""]
        return "\n".join(lines)

    def write(self, out_dir):
        """
        Writes report.txt, one CSV per section and timings.txt.

        Returns
        -------
        str
            path to report.txt
        """
        logger = logging.getLogger(__name__)
        os.makedirs(out_dir, exist_ok=True)
        for name, (header, rows) in self.sections.items():
            write_csv(os.path.join(out_dir, name + ".csv"), header, rows)
        path = os.path.join(out_dir, "report.txt")
        with open(path, "w") as output:
            output.write(self.render())
        stamp = datetime.utcnow().replace(tzinfo=timezone("UTC"))
        with open(os.path.join(out_dir, "timings.txt"), "w") as output:
            output.write("# generated_at=%s\n" % stamp.isoformat())
            output.write("check,seconds\n")
            for name, seconds in self.timings:
                output.write("%s,%s\n" % (name, fmt(seconds)))
        logger.info("Report written to %s", path)
        return path
