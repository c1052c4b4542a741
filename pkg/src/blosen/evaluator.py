"""Relevance-feedback evaluation.

Each user session yields three percentages: completely relevant (CRC),
partially relevant (PRC) and completely irrelevant (CIC) categories.
Sessions arrive either as raw judgment labels or as pre-computed
percentages; both paths share the aggregation.  The report writes JSON,
a plain-text table, and bar-chart figures.
"""

from __future__ import annotations

import csv
import json
import os
from collections import Counter
from dataclasses import dataclass
from enum import Enum

# rounding slack allowed on crc + prc + cic = 100
SUM_TOLERANCE = 0.2


class EvalError(ValueError):
    pass


class EmptySession(EvalError):
    pass


class EmptyInput(EvalError):
    pass


class InvalidSession(EvalError):
    pass


class Judgment(Enum):
    COMPLETELY_RELEVANT = "CR"
    PARTIALLY_RELEVANT = "PR"
    COMPLETELY_IRRELEVANT = "CI"


@dataclass(frozen=True)
class RelevanceSession:
    session_id: str
    crc: float
    prc: float
    cic: float

    def validate(self):
        total = self.crc + self.prc + self.cic
        if min(self.crc, self.prc, self.cic) < 0 or abs(total - 100.0) > SUM_TOLERANCE:
            raise InvalidSession(self.session_id)


def session_percentages(judgments) -> tuple[float, float, float]:
    """(crc, prc, cic) percentages of a judgment list, rounded to 0.1."""
    judgments = list(judgments)
    if not judgments:
        raise EmptySession("session has no judgments")
    counts = Counter(judgments)
    total = len(judgments)
    return tuple(
        round(100.0 * counts.get(label, 0) / total, 1)
        for label in (Judgment.COMPLETELY_RELEVANT, Judgment.PARTIALLY_RELEVANT,
                      Judgment.COMPLETELY_IRRELEVANT)
    )


def session_from_judgments(session_id: str, judgments) -> RelevanceSession:
    crc, prc, cic = session_percentages(judgments)
    return RelevanceSession(session_id, crc, prc, cic)


@dataclass(frozen=True)
class EvalReport:
    sessions: tuple
    mean_crc: float
    mean_prc: float
    mean_cic: float

    @property
    def cumulative(self) -> float:
        return round(self.mean_crc + self.mean_prc, 2)

    def to_payload(self) -> dict:
        return {
            "sessions": [
                {"session_id": s.session_id, "crc": s.crc, "prc": s.prc, "cic": s.cic}
                for s in self.sessions
            ],
            "mean_crc": self.mean_crc,
            "mean_prc": self.mean_prc,
            "mean_cic": self.mean_cic,
            "cumulative": self.cumulative,
        }

    def to_text_table(self) -> str:
        lines = ["session    crc    prc    cic",
                 "----------------------------"]
        for s in self.sessions:
            lines.append("%-8s %6.1f %6.1f %6.1f" % (s.session_id, s.crc, s.prc, s.cic))
        lines.append("----------------------------")
        lines.append("mean     %6.2f %6.2f %6.2f" % (self.mean_crc, self.mean_prc, self.mean_cic))
        lines.append("cumulative (crc + prc): %.2f" % self.cumulative)
        return "\n".join(lines)


def aggregate(sessions) -> EvalReport:
    sessions = tuple(sessions)
    if not sessions:
        raise EmptyInput("no sessions")
    for session in sessions:
        session.validate()
    n = len(sessions)
    return EvalReport(
        sessions=sessions,
        mean_crc=round(sum(s.crc for s in sessions) / n, 2),
        mean_prc=round(sum(s.prc for s in sessions) / n, 2),
        mean_cic=round(sum(s.cic for s in sessions) / n, 2),
    )


def load_sessions_csv(path: str) -> list[RelevanceSession]:
    """CSV format: header ``session_id,crc,prc,cic``."""
    sessions = []
    with open(path, newline="", encoding="utf-8") as fh:
        for row in csv.DictReader(fh):
            sessions.append(RelevanceSession(
                session_id=row["session_id"].strip(),
                crc=float(row["crc"]),
                prc=float(row["prc"]),
                cic=float(row["cic"]),
            ))
    return sessions


def default_sessions_path() -> str:
    from importlib import resources

    return str(resources.files("blosen").joinpath("data/relevance_sessions.csv"))


def render_figures(report: EvalReport, out_dir: str) -> list[str]:
    """Write per-session and mean comparison bar charts as PNG files."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    os.makedirs(out_dir, exist_ok=True)
    written = []

    ids = [s.session_id for s in report.sessions]
    x = range(len(ids))
    width = 0.28

    fig, ax = plt.subplots(figsize=(10, 4.5))
    ax.bar([i - width for i in x], [s.crc for s in report.sessions], width, label="CRC")
    ax.bar(list(x), [s.prc for s in report.sessions], width, label="PRC")
    ax.bar([i + width for i in x], [s.cic for s in report.sessions], width, label="CIC")
    ax.set_xticks(list(x))
    ax.set_xticklabels(ids)
    ax.set_xlabel("session")
    ax.set_ylabel("percent")
    ax.set_title("Relevance feedback per session")
    ax.legend()
    fig.tight_layout()
    path = os.path.join(out_dir, "relevance_sessions.png")
    fig.savefig(path, dpi=120)
    plt.close(fig)
    written.append(path)

    fig, ax = plt.subplots(figsize=(5, 4))
    labels = ["CRC", "PRC", "CIC", "CRC+PRC"]
    values = [report.mean_crc, report.mean_prc, report.mean_cic, report.cumulative]
    ax.bar(labels, values, color=["#2c7fb8", "#7fcdbb", "#edf8b1", "#253494"])
    for i, v in enumerate(values):
        ax.text(i, v + 1, "%.2f" % v, ha="center")
    ax.set_ylabel("percent")
    ax.set_ylim(0, 105)
    ax.set_title("Mean relevance metrics")
    fig.tight_layout()
    path = os.path.join(out_dir, "relevance_means.png")
    fig.savefig(path, dpi=120)
    plt.close(fig)
    written.append(path)
    return written


def write_report(report: EvalReport, out_dir: str, figures: bool = True) -> dict:
    """Emit report.json, report.csv, report.txt (and figures) to out_dir."""
    os.makedirs(out_dir, exist_ok=True)
    artifacts = {}

    json_path = os.path.join(out_dir, "report.json")
    with open(json_path, "w", encoding="utf-8") as fh:
        json.dump(report.to_payload(), fh, indent=2, sort_keys=True)
        fh.write("\n")
    artifacts["json"] = json_path

    csv_path = os.path.join(out_dir, "report.csv")
    with open(csv_path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["session_id", "crc", "prc", "cic"])
        for s in report.sessions:
            writer.writerow([s.session_id, s.crc, s.prc, s.cic])
        writer.writerow(["mean", report.mean_crc, report.mean_prc, report.mean_cic])
        writer.writerow(["cumulative", report.cumulative, "", ""])
    artifacts["csv"] = csv_path

    txt_path = os.path.join(out_dir, "report.txt")
    with open(txt_path, "w", encoding="utf-8") as fh:
        fh.write(report.to_text_table() + "\n")
    artifacts["txt"] = txt_path

    if figures:
        artifacts["figures"] = render_figures(report, out_dir)
    return artifacts
