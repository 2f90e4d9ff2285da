"""
Evaluation report: per-entry CDD values and their aggregate.

EntryResult keeps raw CDD values and scales them by REPORT_SCALE when
serialized. Aggregates are stored already scaled (see core.metrics.cdd_aggregate).
"""
REPORT_SCALE = 1000.0


def scaled(value):
    """Return a raw CDD value multiplied by REPORT_SCALE (None stays None)."""
    return None if value is None else value * REPORT_SCALE


class EntryResult:
    """
    One row of an evaluation report.

    Attributes:
        id (str): Manifest entry id
        cdd_before (float | None): Raw CDD of the input image
        cdd_after (float | None): Raw CDD of the evaluated (result / refined) image
        status (str): "ok", "no-mc-edge" or "error"
        error (str | None): Failure message for status "error"
        mae (dict | None): Shadow / nonshadow / all MAE against ground truth
        flags (list[str]): Notes such as "fallback-single-segment"
    """
    STATUS_OK = "ok"
    STATUS_NO_MC_EDGE = "no-mc-edge"
    STATUS_ERROR = "error"

    def __init__(self, entry_id, cdd_before=None, cdd_after=None, status=STATUS_OK, error=None, mae=None, flags=None):
        self.id = str(entry_id)
        self.cdd_before = cdd_before
        self.cdd_after = cdd_after
        self.status = status
        self.error = error
        self.mae = mae
        self.flags = list(flags or [])

    def to_dict(self):
        return {
            "id": self.id,
            "cdd_before": scaled(self.cdd_before),
            "cdd_after": scaled(self.cdd_after),
            "status": self.status,
            "error": self.error,
            "mae": self.mae,
            "flags": self.flags,
        }


class EvalReport:
    """
    Per-entry results, aggregate CDD mean / variance and a configuration echo.

    Attributes:
        entries (list[EntryResult]): Rows in manifest order
        before (tuple | None): (mean, variance) x1000 of the cdd_before column
        after (tuple | None): (mean, variance) x1000 of the cdd_after column
        config (dict): Resolved configuration
        version (str): Tool version
    """
    VARIANCE_KIND = "population"
    HISTOGRAM_KIND = "per-channel"

    def __init__(self, entries, before=None, after=None, config=None, version=""):
        self.entries = list(entries)
        self.before = before
        self.after = after
        self.config = dict(config or {})
        self.version = version

    @staticmethod
    def _aggregate_dict(pair):
        if pair is None:
            return {"mean": None, "var": None}
        return {"mean": pair[0], "var": pair[1]}

    def to_dict(self):
        return {
            "version": self.version,
            "scale": REPORT_SCALE,
            "variance": EvalReport.VARIANCE_KIND,
            "histogram": EvalReport.HISTOGRAM_KIND,
            "config": self.config,
            "aggregate": {
                "cdd_before": self._aggregate_dict(self.before),
                "cdd_after": self._aggregate_dict(self.after),
            },
            "entries": [entry.to_dict() for entry in self.entries],
        }
