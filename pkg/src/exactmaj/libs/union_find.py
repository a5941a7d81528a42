class UnionFind:
    """Disjoint sets over 0...size-1 whose roots are always the least element.

    Examples
    --------
    >>> uf = UnionFind(5)
    >>> uf.union(3, 1)
    True
    >>> uf.union(4, 3)
    True
    >>> uf.find(4)
    1
    >>> uf.labels()
    (0, 1, 2, 1, 1)

    """

    def __init__(self, size):
        self.parent = list(range(size))

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        # path compression
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x, y):
        px = self.find(x)
        py = self.find(y)
        if px == py:
            return False
        self.parent[px] = self.parent[py] = min(px, py)
        return True

    def labels(self):
        """Block labels in canonical form (least element of each block)."""
        return tuple(self.find(x) for x in range(len(self.parent)))
