"""Quivers, paths and relations.

A path is stored in traversal order: ``Path(v, (a, b))`` starts at vertex
``v``, follows arrow ``a``, then arrow ``b``.  As an element of the path
algebra it composes like a function, so the product ``p * q`` is "q first,
then p" and requires ``q.end == p.start``.
"""

from __future__ import annotations

from .errors import MalformedRelation


class Arrow:
    __slots__ = ("label", "source", "target")

    def __init__(self, label, source, target):
        self.label = label
        self.source = source
        self.target = target

    def __repr__(self):
        return f"{self.label}: {self.source}->{self.target}"


class Quiver:
    def __init__(self, vertices, arrows):
        """arrows: iterable of (label, source, target) or Arrow."""
        self.vertices = list(vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("duplicate vertex labels")
        self.arrows = []
        self.arrow_by_label = {}
        vset = set(self.vertices)
        for a in arrows:
            if not isinstance(a, Arrow):
                a = Arrow(*a)
            if a.label in self.arrow_by_label:
                raise ValueError(f"duplicate arrow label {a.label!r}")
            if a.source not in vset or a.target not in vset:
                raise ValueError(f"arrow {a.label!r} has undeclared endpoint")
            self.arrows.append(a)
            self.arrow_by_label[a.label] = a
        self.out_arrows = {v: [] for v in self.vertices}
        self.in_arrows = {v: [] for v in self.vertices}
        for a in self.arrows:
            self.out_arrows[a.source].append(a)
            self.in_arrows[a.target].append(a)

    def reversed(self):
        return Quiver(self.vertices, [(a.label, a.target, a.source) for a in self.arrows])

    def is_connected(self):
        if not self.vertices:
            return True
        adj = {v: set() for v in self.vertices}
        for a in self.arrows:
            adj[a.source].add(a.target)
            adj[a.target].add(a.source)
        seen = {self.vertices[0]}
        stack = [self.vertices[0]]
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == len(self.vertices)

    def __repr__(self):
        return f"Quiver({len(self.vertices)} vertices, {len(self.arrows)} arrows)"


class Path:
    """A directed walk, possibly trivial.  Hashable."""

    __slots__ = ("start", "labels", "end")

    def __init__(self, quiver, start, labels):
        self.start = start
        self.labels = tuple(labels)
        v = start
        for lab in self.labels:
            a = quiver.arrow_by_label[lab]
            if a.source != v:
                raise ValueError(f"arrow {lab!r} does not continue the walk at {v!r}")
            v = a.target
        self.end = v

    def __len__(self):
        return len(self.labels)

    def __eq__(self, other):
        return (
            isinstance(other, Path)
            and self.start == other.start
            and self.labels == other.labels
        )

    def __hash__(self):
        return hash((self.start, self.labels))

    def __repr__(self):
        if not self.labels:
            return f"e[{self.start}]"
        return "*".join(str(l) for l in self.labels)


class Relation:
    """A linear combination of parallel paths of length >= 1."""

    def __init__(self, terms):
        """terms: list of (coeff, Path)."""
        self.terms = [(c, p) for c, p in terms if c]
        if not self.terms:
            raise MalformedRelation("empty relation")
        p0 = self.terms[0][1]
        for _, p in self.terms:
            if p.start != p0.start or p.end != p0.end:
                raise MalformedRelation(f"paths {p0!r} and {p!r} are not parallel")
            if len(p) < 1:
                raise MalformedRelation("relations must involve paths of length >= 1")
        self.source = p0.start
        self.target = p0.end

    def is_homogeneous(self):
        lengths = {len(p) for _, p in self.terms}
        return len(lengths) == 1

    def length(self):
        return len(self.terms[0][1])

    def __repr__(self):
        return " + ".join(f"({c})*{p!r}" for c, p in self.terms)
