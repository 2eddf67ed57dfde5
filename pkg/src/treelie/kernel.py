"""Kernel backend selection.

The hot tree operations exist twice: a compiled Cython extension
(``treelie._kernel_c``) and a pure-Python fallback (``treelie._kernel_py``).
The compiled one is preferred when importable; set ``TREELIE_PURE_PYTHON=1``
to force the fallback.  Both expose the same API and canonical forms.
"""

import os

if os.environ.get("TREELIE_PURE_PYTHON") == "1":
    from treelie import _kernel_py as _impl
else:
    try:
        from treelie import _kernel_c as _impl  # type: ignore[attr-defined]
    except ImportError:
        from treelie import _kernel_py as _impl

BACKEND = _impl.BACKEND
Tree = _impl.Tree
leaf = _impl.leaf
node = _impl.node
graft_at = _impl.graft_at
root_graft = _impl.root_graft
prelie_terms = _impl.prelie_terms
prelie_counts = _impl.prelie_counts
coproduct_terms = _impl.coproduct_terms
coproduct_counts = _impl.coproduct_counts
intern_size = _impl.intern_size
