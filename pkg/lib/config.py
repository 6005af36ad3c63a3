import os
import yaml
from loguru import logger
from yacs.config import CfgNode as CN

_C = CN()

# Base config files
_C.BASE = ['']

# -----------------------------------------------------------------------------
# Solver settings
# -----------------------------------------------------------------------------
_C.SOLVER = CN()
# Width of the exact bracket around every reported root
_C.SOLVER.TOL = 1e-12
# Evaluation path: auto, exact, grid or mp
_C.SOLVER.METHOD = 'auto'
# Longest contest (periods) solved with exact rational polynomials
_C.SOLVER.EXACT_MAX_PERIODS = 25
# Largest non-polynomial contest (players) evaluated with float jets
_C.SOLVER.GRID_MAX_PLAYERS = 40
# Base decimal precision of the mpmath path, grows with T
_C.SOLVER.MP_DPS = 30

# -----------------------------------------------------------------------------
# Condition checks
# -----------------------------------------------------------------------------
_C.CONDITIONS = CN()
# Strictness margin for g_k(X*) > 0
_C.CONDITIONS.EPS_COND = 1e-9
# Slack of the alternating-sign derivative test
_C.CONDITIONS.EPS_MONO = 1e-9
# Sign-scan density per interval for general kernels
_C.CONDITIONS.SCAN_POINTS = 4096
# Recursion vs. measure representation agreement
_C.CONDITIONS.IDENTITY_TOL = 1e-10
_C.CONDITIONS.IDENTITY_POINTS = 1001
# Sample grid of check_t_monotone
_C.CONDITIONS.MONOTONE_POINTS = 1001

# -----------------------------------------------------------------------------
# Deviation audit
# -----------------------------------------------------------------------------
_C.SPE = CN()
_C.SPE.DEVIATION_GRID = 1000
_C.SPE.GAIN_TOL = 1e-6

# -----------------------------------------------------------------------------
# Brute-force oracle
# -----------------------------------------------------------------------------
_C.ORACLE = CN()
_C.ORACLE.STEP = 1e-3
# Complexity guard
_C.ORACLE.MAX_PLAYERS = 5
_C.ORACLE.MAX_PERIODS = 4

# -----------------------------------------------------------------------------
# Simultaneous fixed point
# -----------------------------------------------------------------------------
_C.SIM = CN()
_C.SIM.TOL = 1e-12
_C.SIM.MAX_ITER = 10000

# -----------------------------------------------------------------------------
# Misc
# -----------------------------------------------------------------------------
_C.OUTPUT = CN()
# Significant digits of printed floats
_C.OUTPUT.DIGITS = 15
# Worker processes for design and sweep
_C.JOBS = 1


def _update_config_from_file(config, cfg_file):
    config.defrost()
    with open(cfg_file, 'r') as f:
        yaml_cfg = yaml.load(f, Loader=yaml.FullLoader)

    for cfg in yaml_cfg.setdefault('BASE', ['']):
        if cfg:
            _update_config_from_file(
                config, os.path.join(os.path.dirname(cfg_file), cfg)
            )
    logger.debug('=> merge config from {}', cfg_file)
    config.merge_from_file(cfg_file)
    config.freeze()


def update_config(config, args):
    if getattr(args, 'cfg', None):
        _update_config_from_file(config, args.cfg)

    config.defrost()
    if getattr(args, 'opts', None):
        config.merge_from_list(args.opts)

    # merge from specific arguments
    if getattr(args, 'tol', None):
        config.SOLVER.TOL = args.tol
    if getattr(args, 'method', None):
        config.SOLVER.METHOD = args.method
    if getattr(args, 'jobs', None):
        config.JOBS = args.jobs

    config.freeze()


def get_default_config():
    """Frozen copy of the defaults, for library keyword defaults."""
    config = _C.clone()
    config.freeze()
    return config


def get_config(args):
    """Get a yacs CfgNode object with default values."""
    # Return a clone so that the defaults will not be altered
    config = _C.clone()
    update_config(config, args)

    return config


DEFAULTS = get_default_config()
