SCHEMA = 'angulon/1'
CONFIG_ENV_VARIABLE = 'ANGULON_CONFIG'

NODE_TOLERANCE = 1e-12
NODE_MAX_ITERATIONS = 200
COLLISION_TOLERANCE = 1e-10

SYMMETRIZE_TOLERANCE = 1e-9
LABEL_TOLERANCE = 1e-8
CLUSTER_ABSOLUTE_GAP = 1e-6
CLUSTER_RELATIVE_GAP = 1e-8

JACOBI_MAX_SWEEPS = 30
JACOBI_OFF_TOLERANCE = 1e-12
SYMMETRY_TOLERANCE = 1e-12
QR_MAX_ITERATIONS = 100
QR_EXCEPTIONAL_PERIOD = 10

BLOCK_WORKERS = 4
FLOAT_DIGITS = 17
VERIFY_SEED = 1998
