import datetime
import time


def get_monotonic_time():
    """
    Wrapper around time.monotonic() to enable mocking in test cases.
    """

    return time.monotonic()


def utc_timestamp():
    """
    Returns the current time as ISO 8601 string with explicit UTC offset.
    """

    return datetime.datetime.now(datetime.timezone.utc).isoformat()


def parse_timestamp(text):
    """
    Parses an ISO 8601 timestamp. Naive values are taken to be UTC, aware values are returned as-is, without
    any timezone conversion.

    Raises:
        ValueError: For anything that is not an ISO 8601 timestamp.
    """

    parsed = datetime.datetime.fromisoformat(text)
    if parsed.tzinfo is not None and parsed.tzinfo.utcoffset(parsed) is not None:
        return parsed
    return parsed.replace(tzinfo=datetime.timezone.utc)
