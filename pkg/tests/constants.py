import math

SMALL_GRID_SHAPE = (16, 16, 8)
SMALL_BOX = 2.0 * math.pi
EXACT = 1e-12
FOUR_PI_SQUARED = 4.0 * math.pi ** 2

ALPHA = 1.0
OMEGA = 100.0
SEED = 7
