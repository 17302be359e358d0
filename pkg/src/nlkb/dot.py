"""Tiny deterministic DOT writer."""


def quote(s):
    return '"' + str(s).replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n") + '"'


def _attrs(attrs):
    items = [(k, v) for k, v in attrs.items() if v is not None]
    if not items:
        return ""
    return " [" + ", ".join(f"{k}={quote(v)}" for k, v in items) + "]"


def render(name, nodes, edges, directed=True):
    """``nodes`` is a list of ``(id, attrs)``, ``edges`` a list of
    ``(src, dst, attrs)``; both are written in the order given."""
    arrow = "->" if directed else "--"
    lines = [f"{'digraph' if directed else 'graph'} {quote(name)} {{"]
    for node_id, attrs in nodes:
        lines.append(f"  {quote(node_id)}{_attrs(attrs)};")
    for src, dst, attrs in edges:
        lines.append(f"  {quote(src)} {arrow} {quote(dst)}{_attrs(attrs)};")
    lines.append("}")
    return "\n".join(lines) + "\n"
