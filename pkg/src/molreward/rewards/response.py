"""Splitting raw completions into thought and answer blocks."""

from __future__ import annotations

from dataclasses import dataclass

THINK_START = "<|think_start|>"
THINK_END = "<|think_end|>"
ANSWER_START = "<|answer_start|>"
ANSWER_END = "<|answer_end|>"

_TOKENS = (THINK_START, THINK_END, ANSWER_START, ANSWER_END)


@dataclass(frozen=True)
class ParsedResponse:
    thought: str
    answer: str
    well_formed: bool
    defect: str | None = None


def parse_response(raw: str) -> ParsedResponse:
    """Extract the single thought/answer block pair.

    Well-formed means each of the four delimiter tokens appears exactly once,
    in order, with nothing but whitespace outside the two blocks. Defects are
    reported as data, never raised.
    """
    positions = []
    for token in _TOKENS:
        count = raw.count(token)
        if count == 0:
            return ParsedResponse("", "", False, f"missing {token}")
        if count > 1:
            return ParsedResponse("", "", False, f"repeated {token}")
        positions.append(raw.index(token))
    if positions != sorted(positions):
        return ParsedResponse("", "", False, "delimiter tokens out of order")

    p_ts, p_te, p_as, p_ae = positions
    before = raw[:p_ts]
    between = raw[p_te + len(THINK_END):p_as]
    after = raw[p_ae + len(ANSWER_END):]
    if before.strip() or between.strip() or after.strip():
        return ParsedResponse("", "", False, "content outside the think/answer blocks")

    thought = raw[p_ts + len(THINK_START):p_te]
    answer = raw[p_as + len(ANSWER_START):p_ae]
    return ParsedResponse(thought=thought, answer=answer.strip(), well_formed=True)


def format_response(thought: str, answer: str) -> str:
    """Compose a well-formed completion (handy for tests and tools)."""
    return f"{THINK_START}{thought}{THINK_END}\n{ANSWER_START}{answer}{ANSWER_END}"
