"""Tiny pass/fail record shared by the verification suites."""

from __future__ import annotations

from typing import NamedTuple


class CheckResult(NamedTuple):
    name: str
    passed: bool
    detail: str = ""


def all_passed(results) -> bool:
    return all(r.passed for r in results)
