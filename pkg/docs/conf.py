# Sphinx configuration for the spectral-gluing reference.
import os
import re
import sys

sys.path.insert(0, os.path.abspath(".."))
sys.path.append(os.path.abspath("extensions"))

project = "spectral-gluing"
author = "spectral-gluing developers"
copyright = f"2026 {author}"
language = "en"

with open("../spectral_gluing/__init__.py") as f:
    version = re.search(r'^__version__\s*=\s*[\'"]([^\'"]*)[\'"]', f.read(), re.MULTILINE)[1]

release = version

extensions = [
    "sphinx.ext.autodoc",
    "sphinx.ext.intersphinx",
    "sphinx.ext.mathjax",
    "sphinx.ext.napoleon",
    "exception_hierarchy",
    "sphinx_rtd_theme",
]

intersphinx_mapping = {
    "py": ("https://docs.python.org/3.9", None),
    "mpmath": ("https://mpmath.org/doc/current", None),
    "numpy": ("https://numpy.org/doc/stable", None),
    "scipy": ("https://docs.scipy.org/doc/scipy", None),
    "sympy": ("https://docs.sympy.org/latest", None),
}

exclude_patterns = ["_build"]
root_doc = "index"

html_theme = "sphinx_rtd_theme"
html_theme_options = {
    "collapse_navigation": False,
    "navigation_depth": 2,
    "prev_next_buttons_location": None,
}

# numpy-style docstrings throughout
napoleon_google_docstring = False
napoleon_use_ivar = True

autodoc_member_order = "bysource"
autodoc_typehints = "none"
