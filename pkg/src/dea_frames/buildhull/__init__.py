from .buildhull import FrameResult, build_hull, check_extreme, translate_hyperplane
