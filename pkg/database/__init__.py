"""
Module Database - Journal des rapports et numérotation
"""
from .journal import JournalManager, ReportLog, get_journal, record_report

__all__ = ["JournalManager", "ReportLog", "get_journal", "record_report"]
