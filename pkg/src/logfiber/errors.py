"""Exception types shared across the package."""


class InputError(ValueError):
    """Invalid user input: bad file, bad word literal, violated precondition.

    The CLI maps this to exit status 1; anything else escaping a command is
    treated as an internal invariant violation (exit status 2).
    """
