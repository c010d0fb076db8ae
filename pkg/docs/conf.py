import os
import sys

sys.path.insert(0, os.path.abspath('..'))

project = 'dtcx'
copyright = '2026, the dtcx developers'
author = 'the dtcx developers'

import dtcx

version = dtcx.__version__
release = version

extensions = [
    'sphinx.ext.autodoc',
    'sphinx.ext.mathjax',
    'sphinx.ext.intersphinx',
    'sphinx_copybutton'
]

autodoc_default_options = {
    'members': True,
    'undoc-members': True,
    'show-inheritance': True,
}

autoclass_content = 'both'
html_show_sphinx = False
html_theme = "furo"
html_title = "dtcx " + release
modindex_common_prefix = ["dtcx."]
intersphinx_mapping = {
    "python": ("https://docs.python.org/3", None),
    "numpy": ("https://numpy.org/doc/stable", None),
    "scipy": ("https://docs.scipy.org/doc/scipy", None),
}
