from .scoring import ScoreTable, score_all, score_phase2
