"""Dense complex tensors over binary indices.

Two primitives drive the whole contraction pipeline: multiplying a set of
tensors over their shared variables and summing one variable out.  Axes
carry variable ids; data is a complex128 array of shape (2,)*rank in axis
order.  Tensors are treated as immutable values: every operation returns
a new tensor and never writes through ``data``.
"""

from __future__ import annotations

import heapq
import itertools
import string

import numpy as np

VarId = int

DEFAULT_MAX_RANK = 30

_LETTERS = string.ascii_letters  # einsum subscripts; bounds usable rank at 52


class RankOverflowError(RuntimeError):
    """A product tensor would exceed the configured maximum rank."""

    def __init__(self, variables, context: str | None = None):
        self.variables = tuple(sorted(variables))
        self.context = context
        msg = f"product over {len(self.variables)} variables {self.variables} exceeds max rank"
        if context:
            msg += f" ({context})"
        super().__init__(msg)


class MissingAxisError(ValueError):
    """The requested variable is not an axis of the tensor."""


class Tensor:
    """Immutable-by-convention dense tensor with an axis -> variable map."""

    __slots__ = ("axes", "data")

    def __init__(self, axes, data):
        axes = tuple(axes)
        if len(set(axes)) != len(axes):
            raise ValueError(f"duplicate variables in axes {axes}")
        data = np.asarray(data, dtype=np.complex128)
        if data.shape != (2,) * len(axes):
            raise ValueError(
                f"data shape {data.shape} does not match rank {len(axes)}"
            )
        self.axes = axes
        self.data = data

    @property
    def rank(self) -> int:
        return len(self.axes)

    @property
    def size(self) -> int:
        return self.data.size

    def __repr__(self):
        return f"Tensor(axes={self.axes}, rank={self.rank})"

    def transpose_to(self, axes) -> "Tensor":
        """Same tensor with axes reordered to the given permutation."""
        axes = tuple(axes)
        if set(axes) != set(self.axes) or len(axes) != len(self.axes):
            raise ValueError(f"{axes} is not a permutation of {self.axes}")
        perm = [self.axes.index(v) for v in axes]
        return Tensor(axes, np.transpose(self.data, perm))


def scalar_tensor(value: complex) -> Tensor:
    return Tensor((), np.asarray(value, dtype=np.complex128))


def _pair_product(a: Tensor, b: Tensor) -> Tensor:
    out_axes = a.axes + tuple(v for v in b.axes if v not in set(a.axes))
    sub = {v: _LETTERS[i] for i, v in enumerate(out_axes)}
    expr = "{},{}->{}".format(
        "".join(sub[v] for v in a.axes),
        "".join(sub[v] for v in b.axes),
        "".join(sub[v] for v in out_axes),
    )
    return Tensor(out_axes, np.einsum(expr, a.data, b.data))


def multiply_all(tensors, max_rank: int = DEFAULT_MAX_RANK) -> Tensor:
    """Product of tensors over the union of their variables.

    Output axes appear in first-appearance order over the input list; the
    entry at an assignment is the product of the inputs' entries at that
    assignment restricted to their own axes.  Inputs are combined pairwise
    smallest-first so large intermediates appear as late as possible.
    """
    tensors = list(tensors)
    if not tensors:
        return scalar_tensor(1.0)
    combined: list[VarId] = []
    seen: set[VarId] = set()
    for t in tensors:
        for v in t.axes:
            if v not in seen:
                seen.add(v)
                combined.append(v)
    if len(combined) > max_rank:
        raise RankOverflowError(combined)
    counter = itertools.count()
    heap = [(t.size, next(counter), t) for t in tensors]
    heapq.heapify(heap)
    while len(heap) > 1:
        _, _, a = heapq.heappop(heap)
        _, _, b = heapq.heappop(heap)
        p = _pair_product(a, b)
        heapq.heappush(heap, (p.size, next(counter), p))
    product = heap[0][2]
    return product.transpose_to(combined) if product.axes != tuple(combined) else product


def sum_out(t: Tensor, v: VarId) -> Tensor:
    """Sum the tensor over one variable; rank drops by one."""
    if v not in t.axes:
        raise MissingAxisError(f"variable {v} is not an axis of {t.axes}")
    k = t.axes.index(v)
    return Tensor(t.axes[:k] + t.axes[k + 1 :], t.data.sum(axis=k))


def slice_axis(t: Tensor, v: VarId, bit: int) -> Tensor:
    """Fix one variable to a bit value; rank drops by one."""
    if v not in t.axes:
        raise MissingAxisError(f"variable {v} is not an axis of {t.axes}")
    if bit not in (0, 1):
        raise ValueError(f"bit must be 0 or 1, got {bit}")
    k = t.axes.index(v)
    return Tensor(t.axes[:k] + t.axes[k + 1 :], np.take(t.data, bit, axis=k))
