#!/usr/bin/env python
# -*- coding: utf-8 -*-
#
# sqrtlat documentation build configuration file.

import os
import sys

# Insert the project root dir as the first element in the PYTHONPATH so
# the source package (and its version) is the one documented.
project_root = os.path.dirname(os.getcwd())
sys.path.insert(0, project_root)

import sqrtlat  # noqa: E402

# -- General configuration ---------------------------------------------

extensions = ['sphinx.ext.autodoc', 'sphinx.ext.viewcode',
              'sphinx.ext.mathjax', 'sphinx_autodoc_typehints']

templates_path = ['_templates']
source_suffix = '.rst'
master_doc = 'index'

project = u'sqrtlat'
copyright = u"2018, Michael Housh"

version = sqrtlat.__version__
release = sqrtlat.__version__

exclude_patterns = ['_build']
pygments_style = 'sphinx'

# -- Options for HTML output -------------------------------------------

html_theme = 'default'
htmlhelp_basename = 'sqrtlatdoc'

# -- Options for LaTeX / manual / Texinfo output -----------------------

latex_documents = [
    ('index', 'sqrtlat.tex',
     u'sqrtlat Documentation',
     u'Michael Housh', 'manual'),
]

man_pages = [
    ('index', 'sqrtlat',
     u'sqrtlat Documentation',
     [u'Michael Housh'], 1)
]

texinfo_documents = [
    ('index', 'sqrtlat',
     u'sqrtlat Documentation',
     u'Michael Housh',
     'sqrtlat',
     'Fourier interpolation basis for square roots of integers.',
     'Miscellaneous'),
]
