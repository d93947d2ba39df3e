"""Block-wise keyed image authentication.

The compiled extension normally lives next to this file (installed wheels).
For build-tree runs, NNAUTH_EXT_DIR may point at the directory holding the
extension.
"""

try:
    from ._nnauth import (  # noqa: F401
        add_gaussian_noise,
        cdr,
        estimate_security,
        jpeg_roundtrip,
        sign,
        verify,
    )
except ImportError:  # build-tree fallback
    import os
    import sys

    _ext_dir = os.environ.get("NNAUTH_EXT_DIR")
    if not _ext_dir:
        raise
    sys.path.insert(0, _ext_dir)
    from _nnauth import (  # noqa: F401
        add_gaussian_noise,
        cdr,
        estimate_security,
        jpeg_roundtrip,
        sign,
        verify,
    )
