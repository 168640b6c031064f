"""Truncated suffix tree grown right to left (Weiner style), with O(1)-record undo.

The tree indexes ``T = u$`` where ``u`` is the *reversal* of the string pushed
so far: pushing symbol ``a`` turns ``T`` into ``aT``, which adds exactly one new
suffix.  Every suffix is cut to its first ``k`` symbols, so the tree is the
compacted trie of ``{T[j:j+k]}``; each of those is a leaf.  Leaves of depth
``k`` free of ``$`` are exactly the distinct k-mers, and reversal does not
change how many there are.

Positions are stored as distances from the end of ``T`` (the end never moves
while we prepend), so node labels survive every push and pop unchanged.

Per node we keep Weiner's two tables, keyed by symbol ``a``: ``ind`` (bitmask:
``a + eff(x)`` occurs) and ``link`` (the node labelled ``a + eff(x)``), where
``eff(x)`` is the label of ``x`` cut to ``k - 1`` symbols.  A depth-``k`` leaf
whose parent has depth ``k - 1`` shares its ``eff`` with the parent and defers
to it.
"""

from __future__ import annotations

from dataclasses import dataclass, field

END = -1  # the terminal '$'


@dataclass(eq=False)
class Node:
    depth: int
    pos: int  # label(x) = T[|T| - pos : |T| - pos + depth]
    parent: Node | None = None
    children: dict[int, Node] = field(default_factory=dict)
    ind: int = 0
    link: dict[int, Node] = field(default_factory=dict)


@dataclass
class _Step:
    symbol: int
    leaf: Node  # leaf holding the new truncated suffix
    created: bool  # False: the truncated suffix was already present
    start: Node | None = None
    top: Node | None = None  # first node on the way up with ind[a] set (None: passed the root)
    split: tuple[Node, Node, Node] | None = None  # (above, new node, below)


class TruncatedSuffixTree:
    def __init__(self, k: int):
        if k < 1:
            raise ValueError("k must be >= 1")
        self.k = k
        self.prefix: list[int] = []  # pushed symbols, left to right
        self.root = Node(depth=0, pos=0)
        first = Node(depth=1, pos=1, parent=self.root)
        self.root.children[END] = first
        self.n_nodes = 2
        self.distinct = 0
        self._steps: list[_Step] = []
        self._last_leaf = first

    # symbols of T addressed by distance from its end
    def _char(self, e: int) -> int:
        return END if e == 1 else self.prefix[e - 2]

    def _edge_char(self, node: Node, offset: int) -> int:
        return self._char(node.pos - offset)

    def _effective(self, leaf: Node) -> Node:
        eff = min(leaf.depth, self.k - 1)
        return leaf.parent if leaf.parent.depth == eff else leaf

    def _eff_depth(self, x: Node) -> int:
        return min(x.depth, self.k - 1)

    def label(self, x: Node) -> tuple[int, ...]:
        return tuple(self._edge_char(x, i) for i in range(x.depth))

    def push(self, a: int) -> bool:
        """Prepend ``a`` to ``T``; return True if a new k-mer appeared."""
        self.prefix.append(a)
        size = len(self.prefix) + 1  # |T|
        start = self._effective(self._last_leaf)
        x = start
        bit = 1 << a
        while x is not None and not x.ind & bit:
            x = x.parent
        top = x
        if top is start:
            # the new truncated suffix a+eff(start) is already a leaf
            leaf = start.link[a]
            self._steps.append(_Step(a, leaf, created=False))
            self._last_leaf = leaf
            return False

        split = None
        if top is None:
            locus = self.root
        else:
            locus, split = self._locate(top, a)
        s_len = min(self.k, size)
        leaf = Node(depth=s_len, pos=size, parent=locus)
        first = self._edge_char(leaf, locus.depth)
        assert first not in locus.children
        locus.children[first] = leaf
        self.n_nodes += 1

        start = self._effective(self._last_leaf)
        x = start
        while x is not top:
            x.ind |= bit
            x = x.parent
        start.link[a] = leaf

        step = _Step(a, leaf, True, start, top, split)
        self._steps.append(step)
        self._last_leaf = leaf
        new_kmer = size > self.k
        self.distinct += new_kmer
        return new_kmer

    def _locate(self, top: Node, a: int) -> tuple[Node, tuple[Node, Node, Node] | None]:
        """Find (or create by splitting) the node labelled ``a + eff(top)``."""
        y = top
        while y is not None and a not in y.link:
            y = y.parent
        target = self._eff_depth(top) + 1
        # symbols of a + eff(top), indexed by string depth
        want = [a] + [self._edge_char(top, i) for i in range(target - 1)]
        node = self.root if y is None else y.link[a]
        while node.depth < target:
            child = node.children[want[node.depth]]
            if child.depth <= target:
                node = child
                continue
            w = Node(depth=target, pos=child.pos, parent=node)
            node.children[want[node.depth]] = w
            w.children[self._edge_char(child, target)] = child
            child.parent = w
            w.ind = child.ind
            if self._eff_depth(child) == target:
                w.link = dict(child.link)
            top.link[a] = w
            self.n_nodes += 1
            return w, (node, w, child)
        return node, None

    def pop(self) -> None:
        if not self._steps:
            raise IndexError("pop without matching push")
        step = self._steps.pop()
        if step.created:
            leaf = step.leaf
            step.start.link.pop(step.symbol)
            x = step.start
            mask = ~(1 << step.symbol)
            while x is not step.top:
                x.ind &= mask
                x = x.parent
            locus = leaf.parent
            del locus.children[self._edge_char(leaf, locus.depth)]
            self.n_nodes -= 1
            if step.split is not None:
                above, w, below = step.split
                above.children[self._edge_char(below, above.depth)] = below
                below.parent = above
                del step.top.link[step.symbol]
                self.n_nodes -= 1
            if len(self.prefix) + 1 > self.k:
                self.distinct -= 1
        self.prefix.pop()
        self._last_leaf = self._prev_leaf()

    def _prev_leaf(self) -> Node:
        return self._steps[-1].leaf if self._steps else self.root.children[END]

    @property
    def size(self) -> int:
        return len(self.prefix)

    def leaves(self) -> list[Node]:
        out, stack = [], [self.root]
        while stack:
            x = stack.pop()
            if x.children:
                stack.extend(x.children.values())
            else:
                out.append(x)
        return out

    def kmer_leaves(self) -> set[tuple[int, ...]]:
        """Distinct k-mers read off the leaves (reversed back to prefix order)."""
        out = set()
        for leaf in self.leaves():
            lab = self.label(leaf)
            if len(lab) == self.k and END not in lab:
                out.add(lab[::-1])
        return out

    def snapshot(self) -> tuple:
        """Structural fingerprint: labels, parent labels, ind masks and links."""
        rows = []
        stack = [self.root]
        while stack:
            x = stack.pop()
            lab = self.label(x)
            rows.append(
                (
                    lab,
                    self.label(x.parent) if x.parent else None,
                    x.ind,
                    tuple(sorted((c, self.label(t)) for c, t in x.link.items())),
                )
            )
            stack.extend(x.children.values())
        return tuple(sorted(rows, key=repr))
