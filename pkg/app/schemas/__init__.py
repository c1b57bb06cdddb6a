# Do not reorder imports!
from .numeric import Tolerances, EigenPair
from .stokes import ConeClass, StokesVector, SliceDecomposition, StokesCheck
from .mueller import Gap, MuellerReport, NecessaryConditions, GridSample, NormReport
from .approx import ApproxPath, ApproxResult, ApproxReport
from .spectral import SpectralReport, ConeDecision, PowerIterationTrace
from .calibration import CalibrationInput, WProvenance, WSelection, CalibrationStep, CalibrationResult
from .fixture import Fixture
from .payload import Payload
