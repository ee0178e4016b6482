"""JSON Schema definitions of the HTTP payloads (see docs/api.md).

Every response carries schema_version so clients can detect drift; any
change to a payload shape bumps SCHEMA_VERSION.
"""

from __future__ import annotations

SCHEMA_VERSION = 1

_DATE = {"type": ["string", "null"]}
_NUM = {"type": "number"}

LIST_ENTRY = {
    "type": "object",
    "required": [
        "article_id", "title", "thumbnail", "date", "year",
        "topic", "topic_weight", "pagerank", "importance", "highlighted",
    ],
    "properties": {
        "article_id": {"type": "string"},
        "title": {"type": "string"},
        "thumbnail": {"type": ["string", "null"]},
        "date": _DATE,
        "year": {"type": ["integer", "null"]},
        "topic": {"type": ["integer", "null"]},
        "topic_weight": _NUM,
        "pagerank": _NUM,
        "importance": _NUM,
        "highlighted": {"type": "boolean"},
    },
    "additionalProperties": False,
}

TOPICS = {
    "type": "object",
    "required": ["schema_version", "k", "coherence", "topics"],
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "k": {"type": "integer"},
        "coherence": {"type": ["number", "null"]},
        "topics": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["topic", "order", "keywords"],
                "properties": {
                    "topic": {"type": "integer"},
                    "order": {"type": "integer"},
                    "keywords": {"type": "array", "items": {"type": "string"}},
                },
                "additionalProperties": False,
            },
        },
    },
    "additionalProperties": False,
}

TIMELINE = {
    "type": "object",
    "required": ["schema_version", "topic", "mode", "normalized", "bins"],
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "topic": {"type": ["integer", "null"]},
        "mode": {"enum": ["FREQ_DATE", "ALL_DATE"]},
        "normalized": {"type": "boolean"},
        "bins": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["year", "value"],
                "properties": {"year": {"type": "integer"}, "value": _NUM},
                "additionalProperties": False,
            },
        },
    },
    "additionalProperties": False,
}

DOTS = {
    "type": "object",
    "required": ["schema_version", "topic", "window", "dots"],
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "topic": {"type": "integer"},
        "window": _NUM,
        "dots": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["start_year", "end_year", "wide", "members"],
                "properties": {
                    "start_year": {"type": "integer"},
                    "end_year": {"type": "integer"},
                    "wide": {"type": "boolean"},
                    "members": {"type": "array", "items": {"type": "string"}, "minItems": 1},
                },
                "additionalProperties": False,
            },
        },
    },
    "additionalProperties": False,
}

CLUSTERS = {
    "type": "object",
    "required": ["schema_version", "zoom", "markers"],
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "zoom": {"type": "integer"},
        "markers": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["lat", "lon", "count"],
                "properties": {
                    "lat": _NUM,
                    "lon": _NUM,
                    "count": {"type": "integer", "minimum": 1},
                    "members": {"type": "array", "items": {"type": "string"}},
                },
                "additionalProperties": False,
            },
        },
    },
    "additionalProperties": False,
}

EVENTS = {
    "type": "object",
    "required": ["schema_version", "total", "sort", "events"],
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "total": {"type": "integer"},
        "sort": {"enum": ["date", "importance", "topic"]},
        "events": {"type": "array", "items": LIST_ENTRY},
    },
    "additionalProperties": False,
}

ARTICLE = {
    "type": "object",
    "required": ["schema_version", "article_id", "title", "text"],
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "article_id": {"type": "string"},
        "title": {"type": "string"},
        "text": {"type": "string"},
        "categories": {"type": "array", "items": {"type": "string"}},
        "date": _DATE,
        "year": {"type": ["integer", "null"]},
        "location": {"type": ["string", "null"]},
        "country": {"type": ["string", "null"]},
        "lat": {"type": ["number", "null"]},
        "lon": {"type": ["number", "null"]},
        "topic": {"type": ["integer", "null"]},
        "topic_weight": _NUM,
        "pagerank": _NUM,
        "indexed": {"type": "boolean"},
    },
    "additionalProperties": False,
}

RELATED = {
    "type": "object",
    "required": ["schema_version", "article_id", "mode", "related"],
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "article_id": {"type": "string"},
        "mode": {"enum": ["TOPIC_REC", "POPULAR_REC"]},
        "related": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["article_id", "title", "score"],
                "properties": {
                    "article_id": {"type": "string"},
                    "title": {"type": "string"},
                    "score": _NUM,
                },
                "additionalProperties": False,
            },
        },
    },
    "additionalProperties": False,
}

SEARCH = {
    "type": "object",
    "required": ["schema_version", "status", "query", "results"],
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "status": {"enum": ["ok", "no_query"]},
        "query": {"type": "string"},
        "results": {"type": "array", "items": LIST_ENTRY},
    },
    "additionalProperties": False,
}

NOTE = {
    "type": "object",
    "required": ["id", "article_id", "title", "keywords", "body", "created_at"],
    "properties": {
        "id": {"type": "integer"},
        "article_id": {"type": "string"},
        "title": {"type": "string"},
        "keywords": {"type": "array", "items": {"type": "string"}},
        "body": {"type": "string"},
        "created_at": {"type": "string"},
    },
    "additionalProperties": False,
}

NOTES = {
    "type": "object",
    "required": ["schema_version", "notes"],
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "notes": {"type": "array", "items": NOTE},
    },
    "additionalProperties": False,
}

NOTE_CREATED = {
    "type": "object",
    "required": ["schema_version", "note"],
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "note": NOTE,
    },
    "additionalProperties": False,
}

REGION_SPAN = {
    "type": "object",
    "required": ["schema_version", "span"],
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "span": {
            "type": ["array", "null"],
            "items": {"type": "integer"},
            "minItems": 2,
            "maxItems": 2,
        },
    },
    "additionalProperties": False,
}

BY_ENDPOINT = {
    "/topics": TOPICS,
    "/timeline": TIMELINE,
    "/dots": DOTS,
    "/clusters": CLUSTERS,
    "/events": EVENTS,
    "/article": ARTICLE,
    "/related": RELATED,
    "/search": SEARCH,
    "/notes": NOTES,
    "/region-span": REGION_SPAN,
}
