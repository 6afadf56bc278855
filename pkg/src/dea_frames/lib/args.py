import configargparse

from .tolerances import DEFAULT_TOLERANCES


def get_arg_parser(description, prog=None):
    """
    Returns an ArgumentParser pre-initalized with common arguments for configuring logging and the numerical
    tolerances. It also supports reading arguments from environment variables and config files.
    """

    parser = configargparse.ArgumentParser(description=description, prog=prog, auto_env_var_prefix='dea_')

    parser.add_argument('-c', '--config', is_config_file=True, help='Path of a config file')
    parser.add_argument('--loglevel', default='WARNING', type=str,
                        choices=['DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL'], help='Log level')

    tol_group = parser.add_argument_group('tolerances', 'Numerical tolerances of the LP solver and tests')
    tol_group.add_argument('--feas-tol', type=float, default=DEFAULT_TOLERANCES.feas,
                           help='Primal/dual feasibility tolerance')
    tol_group.add_argument('--gap-tol', type=float, default=DEFAULT_TOLERANCES.gap,
                           help='Accepted duality gap')
    tol_group.add_argument('--pivot-tol', type=float, default=DEFAULT_TOLERANCES.pivot,
                           help='Smallest usable pivot magnitude')
    tol_group.add_argument('--member-tol', type=float, default=DEFAULT_TOLERANCES.member,
                           help='Threshold for hull membership and boundary decisions')
    tol_group.add_argument('--stall-limit', type=int, default=DEFAULT_TOLERANCES.stall_limit,
                           help="Degenerate pivots before switching to Bland's rule")
    tol_group.add_argument('--max-iterations', type=int, help='Pivot limit per LP (default: derived from '
                           'the problem size)')

    return parser


def parse_int_list(text):
    """
    Parses a comma-separated list of integers like "200,500,1000".
    """

    try:
        values = [int(part) for part in text.split(',') if part.strip()]
    except ValueError as e:
        raise ValueError(f'Invalid integer list: "{text}"') from e
    if not values:
        raise ValueError('Empty list')
    return values


def parse_float_list(text):
    """
    Parses a comma-separated list of reals like "0.01,0.1,0.25".
    """

    try:
        values = [float(part) for part in text.split(',') if part.strip()]
    except ValueError as e:
        raise ValueError(f'Invalid number list: "{text}"') from e
    if not values:
        raise ValueError('Empty list')
    return values


def parse_dimensions(text):
    """
    Parses a comma-separated list of input/output splits in the format `<m1>x<m2>`, e.g. "3x2,6x4".

    Returns:
        List of (m1, m2) tuples.
    """

    dims = []
    for part in text.split(','):
        part = part.strip()
        if not part:
            continue
        try:
            m1, m2 = (int(v) for v in part.lower().split('x'))
        except ValueError as e:
            raise ValueError(f'Invalid dimension "{part}", expected "<inputs>x<outputs>"') from e
        if m1 < 1 or m2 < 1:
            raise ValueError(f'Invalid dimension "{part}", need at least one input and one output')
        dims.append((m1, m2))
    if not dims:
        raise ValueError('Empty list')
    return dims
