from collections.abc import Sequence

from .models import DimensionMismatch, NotUnitTriangular

type Matrix = tuple[tuple[int, ...], ...]


# Entry (i, j): non-induced copies of directed class i inside class j.
TRIAD_MATRIX: Matrix = (
    (1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1),
    (0, 1, 2, 2, 2, 2, 3, 3, 3, 3, 4, 4, 4, 4, 5, 6),
    (0, 0, 1, 0, 0, 0, 1, 1, 0, 0, 2, 1, 1, 1, 2, 3),
    (0, 0, 0, 1, 0, 0, 1, 1, 3, 1, 2, 2, 2, 3, 4, 6),
    (0, 0, 0, 0, 1, 0, 0, 1, 0, 1, 1, 1, 2, 1, 2, 3),
    (0, 0, 0, 0, 0, 1, 1, 0, 0, 1, 1, 2, 1, 1, 2, 3),
    (0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 2, 2, 0, 1, 3, 6),
    (0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 2, 0, 2, 1, 3, 6),
    (0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 1, 2),
    (0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 2, 2, 1, 3, 6),
    (0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 1, 3),
    (0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1, 3),
    (0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 1, 3),
    (0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 2, 6),
    (0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 6),
    (0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1),
)

# Same for the eleven undirected four-vertex classes.
QUAD_MATRIX: Matrix = (
    (1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1),
    (0, 1, 2, 2, 3, 3, 3, 4, 4, 5, 6),
    (0, 0, 1, 0, 3, 3, 2, 5, 4, 8, 12),
    (0, 0, 0, 1, 0, 0, 1, 1, 2, 2, 3),
    (0, 0, 0, 0, 1, 0, 0, 1, 0, 2, 4),
    (0, 0, 0, 0, 0, 1, 0, 1, 0, 2, 4),
    (0, 0, 0, 0, 0, 0, 1, 2, 4, 6, 12),
    (0, 0, 0, 0, 0, 0, 0, 1, 0, 4, 12),
    (0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 3),
    (0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 6),
    (0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1),
)

# Undirected triads: empty, one edge, two-path, triangle.
UNDIRECTED_TRIAD_MATRIX: Matrix = (
    (1, 1, 1, 1),
    (0, 1, 2, 3),
    (0, 0, 1, 3),
    (0, 0, 0, 1),
)


def check_unit_upper_triangular(matrix: Sequence[Sequence[int]]) -> None:
    size = len(matrix)
    for i, row in enumerate(matrix):
        if len(row) != size:
            raise DimensionMismatch(f"row {i} has {len(row)} entries, expected {size}")
        if row[i] != 1:
            raise NotUnitTriangular(f"diagonal entry ({i},{i}) is {row[i]}")
        if any(row[j] for j in range(i)):
            raise NotUnitTriangular(f"row {i} has entries below the diagonal")


def solve_unit_upper_triangular(
    matrix: Sequence[Sequence[int]], rhs: Sequence[int]
) -> list[int]:
    """Exact integer solution of ``matrix @ x == rhs`` by back-substitution."""
    if len(rhs) != len(matrix):
        raise DimensionMismatch(
            f"right-hand side has {len(rhs)} entries, matrix has {len(matrix)} rows"
        )
    check_unit_upper_triangular(matrix)
    size = len(matrix)
    x = [0] * size
    for i in range(size - 1, -1, -1):
        row = matrix[i]
        x[i] = rhs[i] - sum(row[j] * x[j] for j in range(i + 1, size) if row[j])
    return x


def multiply(matrix: Sequence[Sequence[int]], vector: Sequence[int]) -> list[int]:
    if len(vector) != len(matrix):
        raise DimensionMismatch(
            f"vector has {len(vector)} entries, matrix has {len(matrix)} columns"
        )
    return [sum(a * b for a, b in zip(row, vector)) for row in matrix]
