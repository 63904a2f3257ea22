from pydantic import BaseModel, ConfigDict


class AppDomainModel(BaseModel):
    """
    The app's version of the pydantic `BaseModel`. Every domain type is
    immutable after construction and rejects unknown fields, so values can be
    shared between threads and worker processes and used as cache keys.

    Note:
        Validation failures raise `pydantic.ValidationError`, which is a
        `ValueError` just like `apps.common.exceptions.DomainError`.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")
