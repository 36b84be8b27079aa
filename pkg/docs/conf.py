# Configuration file for the Sphinx documentation builder.
# https://www.sphinx-doc.org/en/master/usage/configuration.html

import datetime
import os
import sys

sys.path.insert(0, os.path.abspath("../src/"))

# -- Project information -----------------------------------------------------

project = "perturbed-factors"
copyright = "%d, perturbed-factors developers" % datetime.datetime.now().year
author = "perturbed-factors developers"

# -- General configuration ---------------------------------------------------

extensions = [
    "sphinx.ext.autodoc",
    "sphinx.ext.napoleon",
]

# Docstrings use the numpy "Returns" / "Raises" sections
napoleon_google_docstring = False
autodoc_member_order = "bysource"

exclude_patterns = ["_build"]

# -- Options for HTML output -------------------------------------------------

html_theme = "sphinx_book_theme"
html_title = "perturbed-factors"
