"""Exact computations for forbidden configurations of {0,1}-matrices."""

from .config import (Configuration, FactorKind, canonical_key, column_multiplicity, complement,
                     concatenate, from_columns, from_dense, generator, permute_rows, product,
                     restrict, rowset, to_dense)
from .containment import Embedding, contains, contains_naive, verify_embedding
from .forb import ForbResult, forb_exact
from .products import (ProductShape, RowPartition, avoid_factor_matrix, explicit_product,
                       extremal_sub, family_membership_oracle, member_of_family)
from .xcompute import (Certificate, XResult, emit_certificate, reduce_multiplicities,
                       verify_certificate, x_of)

__version__ = "0.1.0"
