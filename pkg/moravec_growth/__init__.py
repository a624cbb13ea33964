# This is an empty file that tells Python this directory should be considered a Python package.
