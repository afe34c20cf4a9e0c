from .fields import QQ, ExtensionField, PrimeField, RationalField, check_bj_characteristic, field_from_descriptor
from .poly import Poly
from .factor import FactoredPoly, factor_poly, is_irreducible, roots, squarefree_decomposition, squarefree_part_split
from .matrix import PolyMatrix, charpoly_berkowitz, det_bareiss, hermite_columns, kernel_basis
from .quadext import QuadExtElem, quad_conjugate_norm
from .irreducible import IrreducibilityResult, irreducibility_check
