"""JSON schema of machine-readable scenario reports."""

REPORT_SCHEMA = {
    "type": "object",
    "required": ["scenario", "assertions", "summary"],
    "additionalProperties": False,
    "properties": {
        "scenario": {"type": "string"},
        "assertions": {"type": "array", "items": {
            "type": "object",
            "required": ["file", "line", "col", "desc", "expected", "computed", "pass"],
            "additionalProperties": False,
            "properties": {
                "file": {"type": "string"}, "line": {"type": "integer"},
                "col": {"type": "integer"}, "desc": {"type": "string"},
                "expected": {"type": "string"}, "computed": {"type": "string"},
                "pass": {"type": "boolean"}}}},
        "summary": {"type": "object", "required": ["passed", "failed"],
                    "additionalProperties": False,
                    "properties": {"passed": {"type": "integer"}, "failed": {"type": "integer"}}},
    },
}
