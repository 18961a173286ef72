import numpy as np
import pytest

from momo.core import ConstraintRecord, MOFitness, Solution


def make_solutions(F, degrees=None, genotypes=None):
    """Wrap an objective matrix (and optional violations) into Solution objects."""
    F = np.asarray(F, dtype=np.float64)
    out = []
    for i, row in enumerate(F):
        genotype = genotypes[i] if genotypes is not None else np.array([float(i)])
        constraints = (ConstraintRecord.from_degree(degrees[i])
                       if degrees is not None else ConstraintRecord.feasible_record())
        out.append(Solution(genotype=np.asarray(genotype, dtype=np.float64),
                            fitness=MOFitness(row.copy()), constraints=constraints))
    return out


@pytest.fixture
def rng():
    return np.random.Generator(np.random.PCG64(20240911))
