"""
V2V URLLC

Frame design, power allocation, scheduling and validation for massive-MIMO V2V links underlaying an urban cellular uplink.
"""

# ## Python StdLib Imports ----
from importlib.metadata import PackageMetadata, metadata


_metadata: PackageMetadata = metadata("v2v-urllc")
__name__: str = _metadata["Name"]
__version__: str = _metadata["Version"]
__author__: str = _metadata["Author"]
__email__: str = _metadata["Author-email"]
