"""Text format for presenting an algebra by quiver and relations.

Grammar (sections in any order, one entry per line, ``#`` comments):

    vertices: 1 2 3
    arrows:
      a: 1 -> 2
      b: 2 -> 3
    relations:
      a*b - 2/3*c*d
    zero:
      a*b

A word like ``a*b`` is the path that follows a first and then b.
"""

from __future__ import annotations

from .errors import ParseError
from .linalg import QQ
from .quiver import Path, Quiver, Relation

_SECTIONS = ("vertices", "arrows", "relations", "zero")


def _strip_comment(line):
    pos = line.find("#")
    return line if pos < 0 else line[:pos]


def _vertex_token(tok):
    if tok.lstrip("-").isdigit():
        return int(tok)
    return tok


class AlgebraFile:
    def __init__(self, vertices, arrows, relation_specs, zero_specs):
        self.vertices = vertices
        self.arrows = arrows
        self.relation_specs = relation_specs  # list of (line, [(coeff, [labels])])
        self.zero_specs = zero_specs  # list of (line, [labels])

    def quiver(self):
        return Quiver(self.vertices, self.arrows)

    def relations(self, quiver=None):
        q = quiver or self.quiver()
        rels = []
        for line, terms in self.relation_specs:
            parts = []
            for coeff, labels in terms:
                parts.append((coeff, self._path(q, labels, line)))
            try:
                rels.append(Relation(parts))
            except Exception as exc:
                raise ParseError(str(exc), line, 1)
        for line, labels in self.zero_specs:
            rels.append(Relation([(QQ.one(), self._path(q, labels, line))]))
        return rels

    @staticmethod
    def _path(q, labels, line):
        for lab in labels:
            if lab not in q.arrow_by_label:
                raise ParseError(f"unknown arrow label {lab!r}", line, 1)
        start = q.arrow_by_label[labels[0]].source
        try:
            return Path(q, start, labels)
        except ValueError as exc:
            raise ParseError(str(exc), line, 1)

    def build(self, name=None):
        from .algebra import build_algebra

        q = self.quiver()
        return build_algebra(q, self.relations(q), name=name)


def _parse_term(text, line, col0):
    """One signed term: optional rational coefficient, then a label word."""
    text = text.strip()
    coeff = QQ.one()
    pieces = [p.strip() for p in text.split("*")]
    if not pieces or not pieces[0]:
        raise ParseError("empty term", line, col0)
    head = pieces[0]
    if head.lstrip("-").replace("/", "").isdigit():
        num, _, den = head.partition("/")
        coeff = QQ.of(int(num), int(den) if den else 1)
        pieces = pieces[1:]
        if not pieces:
            raise ParseError("coefficient without a path", line, col0)
    for p in pieces:
        if not p or not p.replace("_", "").replace("[", "").replace("]", "") \
                .replace(",", "").replace(" ", "").replace("-", "").isalnum():
            raise ParseError(f"bad label {p!r}", line, col0)
    return coeff, pieces


def _parse_combination(text, line):
    """Signed sum of terms: t1 - t2 + t3 ..."""
    terms = []
    sign = 1
    buf = ""
    col = 1
    start_col = 1
    depth = 0
    for ch in text + "\n":
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        if ch in "+-\n" and depth == 0 and buf.strip():
            coeff, labels = _parse_term(buf, line, start_col)
            if sign < 0:
                coeff = -coeff
            terms.append((coeff, labels))
            sign = 1 if ch != "-" else -1
            buf = ""
            start_col = col + 1
        elif ch in "+-\n" and depth == 0:
            if ch == "-":
                sign = -sign
            start_col = col + 1
        else:
            buf += ch
        col += 1
    if not terms:
        raise ParseError("empty relation", line, 1)
    return terms


def parse_algebra_file(text):
    vertices = []
    arrows = []
    relation_specs = []
    zero_specs = []
    section = None
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw).rstrip()
        if not line.strip():
            continue
        stripped = line.strip()
        head = stripped.split(":", 1)[0].strip().lower()
        if head in _SECTIONS and (stripped.startswith(head) or not line[0].isspace()):
            section = head
            seen.add(head)
            rest = stripped.split(":", 1)[1].strip() if ":" in stripped else ""
            if not rest:
                continue
            stripped = rest
        if section is None:
            raise ParseError(f"content before any section header: {stripped!r}",
                             lineno, len(raw) - len(raw.lstrip()) + 1)
        if section == "vertices":
            vertices.extend(_vertex_token(t) for t in stripped.split())
        elif section == "arrows":
            if ":" not in stripped or "->" not in stripped:
                raise ParseError("arrow lines look like 'a: 1 -> 2'", lineno, 1)
            lab, _, tail = stripped.partition(":")
            src, _, tgt = tail.partition("->")
            if not src.strip() or not tgt.strip():
                raise ParseError("arrow lines look like 'a: 1 -> 2'", lineno, 1)
            arrows.append((lab.strip(), _vertex_token(src.strip()),
                           _vertex_token(tgt.strip())))
        elif section == "relations":
            relation_specs.append((lineno, _parse_combination(stripped, lineno)))
        elif section == "zero":
            _, labels = _parse_term(stripped, lineno, 1)
            zero_specs.append((lineno, labels))
    if "vertices" not in seen:
        raise ParseError("missing vertices section", 1, 1)
    if not vertices:
        raise ParseError("no vertices declared", 1, 1)
    af = AlgebraFile(vertices, arrows, relation_specs, zero_specs)
    try:
        af.quiver()
    except ValueError as exc:
        raise ParseError(str(exc), 1, 1)
    return af


def load_algebra_file(path):
    with open(path) as fh:
        return parse_algebra_file(fh.read())
