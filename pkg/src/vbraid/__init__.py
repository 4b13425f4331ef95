"""Exact arithmetic for virtual braid words, self-distributive structures,
their braid-monoid actions and matrix representations, and the homology of
the simplicial structures they induce.

The package is organized by layer:

* ``ring``      exact Laurent-polynomial and integer linear algebra,
                including Smith normal form;
* ``braid``     words in virtual braid groups and monoids;
* ``sdstruct``  finite and computable self-distributive carriers;
* ``freeshelf`` free (virtual) shelf terms and bounded decisions;
* ``action``    the generic action engine, invariant recovery, scans;
* ``linrep``    linear braided objects (Burau and friends) and word matrices;
* ``gsd``       self-distributive structures in set/linear backends;
* ``homology``  face families, simplicial levels, integral homology;
* ``cli``       the ``vbraid`` command.
"""

from .braid import (Generator, Permutation, VirtualBraidWord, enumerate_words,
                    forgetful, free_reduce, garside_twist, garside_word,
                    parse_word, sigma_count, vb2_shortest_form)
from .decision import Order, Tri
from .errors import (AxiomError, DimensionError, InversionError, ParseError,
                     VbraidError)
from .ring import (LaurentPoly, RingMatrix, SnfResult, flip_matrix,
                   permutation_matrix, smith_normal_form)

__version__ = "0.1.0"

__all__ = [
    "AxiomError", "DimensionError", "Generator", "InversionError",
    "LaurentPoly", "Order", "ParseError", "Permutation", "RingMatrix",
    "SnfResult", "Tri", "VbraidError", "VirtualBraidWord", "enumerate_words",
    "flip_matrix", "forgetful", "free_reduce", "garside_twist",
    "garside_word", "parse_word", "permutation_matrix", "sigma_count",
    "smith_normal_form", "vb2_shortest_form",
]
