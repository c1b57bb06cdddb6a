import numpy as np

SCHEMA_VERSION = "mueller-cone/1"

I4 = np.eye(4)

# Matrix unit with entry (1,1) = 1, the direction of every E11 shift.
E11 = np.zeros((4, 4))
E11[0, 0] = 1.0

# Lorentz form matrix, diag(1, -1, -1, -1).
G = np.diag([1.0, -1.0, -1.0, -1.0])
G_DIAGONAL = np.diag(G).copy()

for _constant in (I4, E11, G, G_DIAGONAL):
    _constant.setflags(write=False)
