from brackpy.datasets._dataset import *  # noqa: F403
