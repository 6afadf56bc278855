class DataError(ValueError):
    """
    Input data is missing, malformed or outside the domain of the models (e.g. non-positive inputs or
    outputs).
    """


class ContractError(ValueError):
    """
    A precondition of an operation was violated by its caller, e.g. a deleted-domain target which is part of
    its own reference set.
    """
