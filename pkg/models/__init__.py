"""
Models package for the shadow edge toolkit.

This package contains the domain types: rasters (images, masks, label maps),
pixel and patch samples, material regions, histograms, loss reports,
relighting parameters, annotations, manifests and evaluation reports.
"""
