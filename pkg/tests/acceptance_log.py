"""Outcome per acceptance criterion, printed in the pytest terminal summary."""
import functools

import pytest

RESULTS = {}


def criterion(number, title):
    def wrap(fn):
        @functools.wraps(fn)
        def run(*args, **kwargs):
            try:
                detail = fn(*args, **kwargs)
            except pytest.skip.Exception as e:
                RESULTS[number] = ("SKIP", title, str(e))
                raise
            except BaseException as e:
                RESULTS[number] = ("FAIL", title, f"{type(e).__name__}: {str(e).splitlines()[0] if str(e) else ''}")
                raise
            RESULTS[number] = ("PASS", title, detail or "")
        return run
    return wrap


def summary_lines():
    return [f"criterion {n}: {status:4}  {title}" + (f"  ({detail})" if detail else "")
            for n, (status, title, detail) in sorted(RESULTS.items())]
