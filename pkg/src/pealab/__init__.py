"""Finite set-algebra workbench for polyadic equality algebras and the
failure of amalgamation."""

from .seqalg import (AlgebraConfig, CapacityError, ElementSet, EquivRel, SetAlgebra, Signature,
                     SignatureError, Transformation, full_algebra)
from .partitions import (PartitionAlgebra, PartitionElement, atom_concrete, enumerate_partitions,
                         in_c, represent, symbolic)
from .subalgebra import ClosureBudgetError, FiniteSubalgebra, generated_subalgebra
from .terms import evaluate, free_vars, pigozzi_terms, to_text
from .parser import TermSyntaxError, parse

__version__ = "0.1.0"
