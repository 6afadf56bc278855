from .classify import ClassificationReport, classify_all
