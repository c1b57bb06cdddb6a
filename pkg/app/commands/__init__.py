from . import approx, calibration, fixtures, mueller, spectral, stokes
