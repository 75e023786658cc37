"""Words, subset splits, non-crossing partitions and rooted trees."""
import itertools
import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterator, NamedTuple

from sympy.utilities.iterables import multiset_partitions

from ncps.errors import InputError

# A word is a tuple of letters ≥ 1; () is the unit word 𝟙.
Word = tuple[int, ...]
# A tensor word w₁|⋯|w_k is a tuple of non-empty words; () is the unit 1.
TensorWord = tuple[Word, ...]
IndexSet = tuple[int, ...]

# Enumeration caps: Catalan growth for partitions, tree counts for the tree oracle.
NC_CAP = 10
TREE_CAP = 8


def check_word(word: Word, alphabet: int | None = None) -> Word:
    """Validate letters and return the word as a tuple."""
    word = tuple(word)
    for letter in word:
        if not isinstance(letter, int) or isinstance(letter, bool) or letter < 1:
            raise InputError(f"Letters must be positive integers: {word}")
        if alphabet is not None and letter > alphabet:
            raise InputError(f"Letter {letter} outside alphabet 1..{alphabet}")
    return word


def check_tensor(tensor: TensorWord, alphabet: int | None = None) -> TensorWord:
    """Validate a tensor word: non-empty factors only."""
    factors = tuple(check_word(factor, alphabet) for factor in tensor)
    if any(not factor for factor in factors):
        raise InputError(f"Tensor factors must be non-empty words: {tensor}")
    return factors


def tensor_degree(tensor: TensorWord) -> int:
    """Total degree of a tensor word."""
    return sum(len(factor) for factor in tensor)


def format_word(word: Word) -> str:
    """Space-separated letters; the unit word renders empty."""
    return " ".join(map(str, word))


class SubsetSplit(NamedTuple):
    """w_S and the complement intervals w_{J₁}|⋯|w_{J_m}."""

    subset: IndexSet
    extracted: Word
    blocks: TensorWord


def subset_split(word: Word, subset: IndexSet) -> SubsetSplit:
    """Split a word by a 1-based index set into w_S and its interval blocks."""
    if not word:
        raise InputError("Subset splits are defined for non-empty words")
    n = len(word)
    chosen = sorted(set(subset))
    if any(not 1 <= i <= n for i in chosen):
        raise InputError(f"Index set {tuple(subset)} outside 1..{n}")
    members = set(chosen)
    blocks: list[Word] = []
    current: list[int] = []
    for i in range(1, n + 1):
        if i in members:
            if current:
                blocks.append(tuple(current))
                current = []
        else:
            current.append(word[i - 1])
    if current:
        blocks.append(tuple(current))
    return SubsetSplit(
        subset=tuple(chosen),
        extracted=tuple(word[i - 1] for i in chosen),
        blocks=tuple(blocks),
    )


def enumerate_subsets(n: int) -> list[IndexSet]:
    """All subsets of {1..n}, ordered by binary counter."""
    if n < 0:
        raise InputError(f"Negative size {n}")
    return [
        tuple(i + 1 for i in range(n) if mask >> i & 1) for mask in range(1 << n)
    ]


def prefix_splits(word: Word) -> list[tuple[Word, Word]]:
    """All (u, v) with u·v = w and v non-empty."""
    return [(word[:k], word[k:]) for k in range(len(word))]


def all_words(alphabet: int, max_length: int) -> list[Word]:
    """Words of length 1..max_length ordered by (length, lex)."""
    letters = range(1, alphabet + 1)
    return [
        word
        for length in range(1, max_length + 1)
        for word in itertools.product(letters, repeat=length)
    ]


def compositions(n: int) -> list[tuple[int, ...]]:
    """Ordered tuples of positive integers summing to n."""
    if n < 1:
        return []
    result = []
    for k in range(1, n + 1):
        for cuts in itertools.combinations(range(1, n), k - 1):
            bounds = (0, *cuts, n)
            result.append(tuple(b - a for a, b in zip(bounds, bounds[1:])))
    return result


@lru_cache(maxsize=64)
def tensor_words(alphabet: int, max_degree: int) -> tuple[TensorWord, ...]:
    """Non-empty tensor words of total degree 1..max_degree."""
    result: list[TensorWord] = []
    for degree in range(1, max_degree + 1):
        for shape in compositions(degree):
            pools = [
                itertools.product(range(1, alphabet + 1), repeat=length)
                for length in shape
            ]
            result.extend(itertools.product(*pools))
    return tuple(result)


@dataclass(frozen=True)
class NonCrossingPartition:
    """Non-crossing partition of {1..n}, blocks sorted by leader."""

    size: int
    blocks: tuple[IndexSet, ...]

    def __post_init__(self) -> None:
        covered = sorted(i for block in self.blocks for i in block)
        if covered != list(range(1, self.size + 1)):
            raise InputError(f"Blocks {self.blocks} do not partition 1..{self.size}")
        if is_crossing(self.blocks):
            raise InputError(f"Blocks {self.blocks} cross")


def is_crossing(blocks: tuple[IndexSet, ...]) -> bool:
    """True if some a<b<c<d has a,c in one block and b,d in another."""
    owner = {i: k for k, block in enumerate(blocks) for i in block}
    points = sorted(owner)
    for a, b, c, d in itertools.combinations(points, 4):
        if owner[a] == owner[c] and owner[b] == owner[d] and owner[a] != owner[b]:
            return True
    return False


def _normalize_blocks(blocks: list[IndexSet]) -> tuple[IndexSet, ...]:
    return tuple(sorted(tuple(sorted(block)) for block in blocks))


def _nc_blocks(points: tuple[int, ...]) -> list[list[IndexSet]]:
    """Non-crossing partitions of an interval of points, by the block of its first point."""
    if not points:
        return [[]]
    first, rest = points[0], points[1:]
    result = []
    for k in range(len(rest) + 1):
        for others in itertools.combinations(range(len(rest)), k):
            block = (first, *(rest[i] for i in others))
            # gaps between consecutive block members and after the last one
            cuts = [-1, *others, len(rest)]
            gaps = [rest[a + 1 : b] for a, b in zip(cuts, cuts[1:])]
            for filling in itertools.product(*(_nc_blocks(gap) for gap in gaps)):
                result.append([block, *itertools.chain.from_iterable(filling)])
    return result


def non_crossing_partitions(n: int, cap: int = NC_CAP) -> list[NonCrossingPartition]:
    """All non-crossing partitions of {1..n}, ordered by their sorted blocks."""
    if n < 1:
        raise InputError(f"Partition size must be positive, got {n}")
    if n > cap:
        raise InputError(f"Non-crossing enumeration capped at {cap}, got {n}")
    partitions = {
        _normalize_blocks(blocks) for blocks in _nc_blocks(tuple(range(1, n + 1)))
    }
    return [NonCrossingPartition(n, blocks) for blocks in sorted(partitions)]


def set_partitions_filtered(n: int) -> list[NonCrossingPartition]:
    """Filter every set partition of {1..n} by the crossing predicate."""
    result = []
    for blocks in multiset_partitions(list(range(1, n + 1))):
        normalized = _normalize_blocks([tuple(block) for block in blocks])
        if not is_crossing(normalized):
            result.append(NonCrossingPartition(n, normalized))
    return sorted(result, key=lambda partition: partition.blocks)


def catalan(n: int) -> int:
    """n-th Catalan number."""
    return math.comb(2 * n, n) // (n + 1)


@dataclass(frozen=True)
class RootedTree:
    """Unlabeled non-planar rooted tree; children kept in canonical order."""

    children: tuple["RootedTree", ...] = ()

    def __post_init__(self) -> None:
        ordered = tuple(sorted(self.children, key=lambda child: child.key))
        object.__setattr__(self, "children", ordered)

    @cached_property
    def size(self) -> int:
        """Node count |τ|."""
        return 1 + sum(child.size for child in self.children)

    @cached_property
    def encoding(self) -> str:
        """Bracket encoding, e.g. [[][]] for the cherry."""
        return "[" + "".join(child.encoding for child in self.children) + "]"

    @property
    def key(self) -> tuple[int, str]:
        """Canonical sort key."""
        return (self.size, self.encoding)

    def __repr__(self) -> str:
        return f"RootedTree({self.encoding})"


LEAF = RootedTree()


def ladder(n: int) -> RootedTree:
    """Chain of n nodes."""
    tree = LEAF
    for _ in range(n - 1):
        tree = RootedTree((tree,))
    return tree


def canonicalize(tree: RootedTree) -> RootedTree:
    """Rebuild a tree bottom-up in canonical form."""
    return RootedTree(tuple(canonicalize(child) for child in tree.children))


def trees_up_to(n: int) -> list[RootedTree]:
    """All rooted trees with at most n nodes, ordered by canonical key."""
    if n < 1:
        raise InputError(f"Tree size must be positive, got {n}")
    by_size: dict[int, list[RootedTree]] = {1: [LEAF]}
    for size in range(2, n + 1):
        pool = [tree for m in range(1, size) for tree in by_size[m]]
        by_size[size] = sorted(
            (RootedTree(forest) for forest in _forests(size - 1, pool, 0)),
            key=lambda tree: tree.key,
        )
    return [tree for size in range(1, n + 1) for tree in by_size[size]]


def _forests(
    total: int, pool: list[RootedTree], start: int
) -> Iterator[tuple[RootedTree, ...]]:
    """Multisets of trees from pool[start:] with the given total size."""
    if total == 0:
        yield ()
        return
    for i in range(start, len(pool)):
        tree = pool[i]
        if tree.size <= total:
            for rest in _forests(total - tree.size, pool, i):
                yield (tree, *rest)


def trees_brute_force(n: int) -> list[RootedTree]:
    """Canonicalise every recursive labelled tree with at most n nodes."""
    seen: set[RootedTree] = set()
    for size in range(1, n + 1):
        for parents in itertools.product(*(range(i) for i in range(1, size))):
            seen.add(_tree_from_parents(parents))
    return sorted(seen, key=lambda tree: tree.key)


def _tree_from_parents(parents: tuple[int, ...]) -> RootedTree:
    """Node i+1 hangs below node parents[i]; node 0 is the root."""
    children: dict[int, list[int]] = {i: [] for i in range(len(parents) + 1)}
    for node, parent in enumerate(parents, start=1):
        children[parent].append(node)

    def build(node: int) -> RootedTree:
        return RootedTree(tuple(build(child) for child in children[node]))

    return build(0)


def tree_factorial(tree: RootedTree) -> int:
    """τ! = |τ| · Π over children s of s!."""
    return tree.size * math.prod(tree_factorial(child) for child in tree.children)


def symmetry_factor(tree: RootedTree) -> int:
    """σ(τ) = Π over distinct child shapes c of mult(c)! · σ(c)^mult(c)."""
    return math.prod(
        math.factorial(mult) * symmetry_factor(child) ** mult
        for child, mult in Counter(tree.children).items()
    )


def cm_coefficient(tree: RootedTree) -> Fraction:
    """Connes–Moscovici coefficient |τ|! / (τ! σ(τ))."""
    return Fraction(
        math.factorial(tree.size), tree_factorial(tree) * symmetry_factor(tree)
    )


def graft(tree: RootedTree, scion: RootedTree, include_root: bool = True) -> list[RootedTree]:
    """Graft scion on every node of tree, one result per node (with repeats)."""
    result = [RootedTree((*tree.children, scion))] if include_root else []
    for i, child in enumerate(tree.children):
        siblings = tree.children[:i] + tree.children[i + 1 :]
        for grafted in graft(child, scion):
            result.append(RootedTree((*siblings, grafted)))
    return result
