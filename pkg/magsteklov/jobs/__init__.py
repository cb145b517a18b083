"""
Jobs
====
Report writers and the verification suite.
"""

from magsteklov.jobs.reports import ReportWriter, read_spectrum_csv
from magsteklov.jobs.verify import VerificationSuite

__all__ = ["ReportWriter", "VerificationSuite", "read_spectrum_csv"]
