"""Tokenization shared by the topic model and the document vectorizer."""

from __future__ import annotations

import re

_TOKEN_RE = re.compile(r"[a-z]+")

# Compact English stop-word list. Tokens shorter than 3 characters are
# dropped by the tokenizer anyway, so 1-2 letter words are omitted here.
STOPWORDS = frozenset(
    """
    about above after again against all also and any are because been before
    being below between both but can cannot could did does doing down during
    each few for from further had has have having her here hers herself him
    himself his how into its itself just more most myself nor not now off
    once only other our ours ourselves out over own same she should some such
    than that the their theirs them themselves then there these they this
    those through too under until very was were what when where which while
    who whom why will with would you your yours yourself yourselves

    among along across behind beyond within without toward towards upon onto
    via per amid despite unlike around near since till although though
    however therefore thus hence meanwhile moreover nevertheless whereas
    whether either neither every many much less least own said says
    """.split()
)


def tokenize(text: str) -> list[str]:
    """Lowercase, split on non-letter runs, drop short tokens and stop words."""
    out = []
    for tok in _TOKEN_RE.findall(text.lower()):
        if len(tok) < 3 or tok in STOPWORDS:
            continue
        out.append(tok)
    return out
