"""Machine-readable check reports.

A report is a named list of checks, each pass/fail with an optional
witness, plus free-form stats.  Serialization sorts keys and stringifies
witnesses so that a report is byte-identical for identical inputs.
"""

from __future__ import annotations

import json


class Report:
    def __init__(self, subject, seed=None):
        self.subject = subject
        self.seed = seed
        self.checks = []
        self.stats = {}

    def add(self, name, ok, witness=None):
        entry = {"name": name, "status": "pass" if ok else "fail"}
        if not ok and witness is not None:
            entry["witness"] = _plain(witness)
        self.checks.append(entry)
        return ok

    @property
    def ok(self):
        return all(c["status"] == "pass" for c in self.checks)

    def merge(self, other, prefix=None):
        for c in other.checks:
            entry = dict(c)
            if prefix:
                entry["name"] = "%s: %s" % (prefix, entry["name"])
            self.checks.append(entry)
        for k, v in other.stats.items():
            self.stats[(prefix + ": " + k) if prefix else k] = v

    def failures(self):
        return [c for c in self.checks if c["status"] != "pass"]

    def to_dict(self):
        out = {"subject": self.subject,
               "ok": self.ok,
               "checks": self.checks,
               "stats": _plain(self.stats)}
        if self.seed is not None:
            out["seed"] = self.seed
        return out

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)

    def summary(self):
        n = len(self.checks)
        bad = len(self.failures())
        head = "%s: %d/%d checks passed" % (self.subject, n - bad, n)
        lines = [head]
        for c in self.failures():
            w = c.get("witness")
            lines.append("  FAIL %s%s" % (c["name"], " witness=%s" % w if w is not None else ""))
        return "\n".join(lines)


def _plain(value):
    """Coerce witnesses to JSON-safe plain data, deterministically."""
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in sorted(value.items(), key=lambda kv: str(kv[0]))}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, (int, float, str, bool)) or value is None:
        return value
    return repr(value)
