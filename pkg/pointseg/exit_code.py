from enum import Enum


class ExitCode(Enum):
    """
    The process exit code of the `pointseg` command line.

    ```python
    from pointseg.exit_code import ExitCode

    print(ExitCode.numerical_failure.value) # 2
    ```
    """

    success = 0  # The command finished.
    validation_error = 1  # The input data, config, or checkpoint is invalid.
    numerical_failure = 2  # A loss became non-finite or a gradient check failed.
