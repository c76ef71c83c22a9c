"""Opt-in expensive self-verification (oracle cross-checks in hot paths)."""

_enabled = False


def set_debug_checks(flag: bool) -> None:
    global _enabled
    _enabled = bool(flag)


def debug_checks_enabled() -> bool:
    return _enabled
