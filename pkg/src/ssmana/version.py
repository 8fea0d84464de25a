# Use semantic versioning (https://semver.org/)
# The version number is controlled through bumpversion.cfg
__version__ = '0.1.0'
