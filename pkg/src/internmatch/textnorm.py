"""Surface-form normalization shared by the lexicon and the annotator."""

import re
import unicodedata

# Word characters (no underscore), hyphens kept inside tokens.
_TOKEN_RE = re.compile(r"[^\W_]+(?:-[^\W_]+)*", re.UNICODE)


def fold(s: str) -> str:
    """Case-fold and strip accents (combining marks after NFKD)."""
    decomposed = unicodedata.normalize("NFKD", s.casefold())
    return "".join(ch for ch in decomposed if not unicodedata.combining(ch))


def token_spans(text: str):
    """Yield (surface, start, end) character spans of tokens in text."""
    for m in _TOKEN_RE.finditer(text):
        yield m.group(0), m.start(), m.end()


def normalize_phrase(s: str) -> str:
    """Canonical key for a (possibly multi-word) surface form."""
    return " ".join(fold(t) for t, _, _ in token_spans(s))
