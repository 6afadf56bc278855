import enum


class PointLabel(enum.Enum):
    """
    Classification of a DMU with respect to the VRS hull of the whole dataset.
    The values are what gets written to classification reports.
    """

    EXTREME_EFFICIENT = 'extreme_efficient'
    BOUNDARY_NONEXTREME = 'boundary_nonextreme'    # Non-extreme efficient or weakly efficient
    INTERIOR = 'interior'

    def __str__(self):
        return self.value


class Procedure(enum.Enum):

    BUILDHULL = 'buildhull'
    EHD = 'ehd'
    ORACLE = 'oracle'

    def __str__(self):
        return self.value
