# Sphinx configuration for the anonlab documentation.
import os
import sys

sys.path.insert(0, os.path.abspath('../../'))

from anonlab import __version__  # noqa: E402

project = 'anonlab'
copyright = '2026, anonlab developers'
author = 'anonlab developers'
release = __version__

extensions = [
    'sphinx.ext.autodoc',
    'sphinx.ext.viewcode',
    'sphinx.ext.napoleon',
    'myst_parser',
]
myst_heading_anchors = 3
source_suffix = ['.rst', '.md']

autoclass_content = 'both'
autodoc_member_order = 'bysource'
autodoc_mock_imports = ['matplotlib']

templates_path = []
exclude_patterns = []

html_theme = 'sphinx_rtd_theme'
html_title = 'anonlab ' + release
