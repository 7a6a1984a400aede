"""Gabidulin codes, GPT-family cryptosystems and their structural attacks."""

try:
    from . import _rankcrypt as _ext
except ImportError:
    # in-tree build: the extension sits in the CMake build directory
    import os
    import sys

    _dir = os.environ.get("RANKCRYPT_EXT_DIR")
    if _dir and _dir not in sys.path:
        sys.path.insert(0, _dir)
    import _rankcrypt as _ext

from_ext = [name for name in dir(_ext) if not name.startswith("__")]
globals().update({name: getattr(_ext, name) for name in from_ext})
__all__ = from_ext
del from_ext
