"""
Storage package: rasters, annotations, manifests and reports on disk.
"""
