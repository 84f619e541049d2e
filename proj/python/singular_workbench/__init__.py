from ._workbench import *  # noqa: F401,F403
