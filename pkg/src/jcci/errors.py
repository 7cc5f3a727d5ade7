"""Error taxonomy shared by the library and the CLI.

InputError covers malformed or inconsistent inputs: files that fail to
parse, records that violate their invariants, unknown names, bad
parameters. ModelError covers computations that are undefined for
otherwise well-formed inputs, such as a CCI over zero operations or an
unstable integration step. The CLI maps InputError to exit code 1 and
ModelError to exit code 2.
"""


class JCCIError(Exception):
    """Base class for all library errors."""


class InputError(JCCIError):
    """Bad or inconsistent input."""


class RegistryError(InputError):
    """A registry file failed to parse or a record violates an invariant."""


class TraceError(InputError):
    """A grid trace failed to parse or violates trace invariants."""


class ModelError(JCCIError):
    """A computation is undefined for the given inputs."""
