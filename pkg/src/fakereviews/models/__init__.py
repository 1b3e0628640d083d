"""From-scratch binary classifiers sharing a fit/predict interface."""

from .knn import KNearestNeighbors
from .linear import LogisticRegression, sigmoid
from .naive_bayes import NaiveBayes
from .svm import KernelSpec, SupportVectorMachine, kernel_eval
from .tree import DecisionTree, RandomForest, gini

__all__ = [
    "DecisionTree",
    "RandomForest",
    "LogisticRegression",
    "KNearestNeighbors",
    "SupportVectorMachine",
    "NaiveBayes",
    "KernelSpec",
    "kernel_eval",
    "sigmoid",
    "gini",
]
