"""
Custom exceptions for seglat.

Exception hierarchy:
- SeglatError (base)
  ├── GeometryError
  ├── ParameterError
  │   └── BiasBoundError
  ├── ModelError
  ├── EstimationError
  ├── SerializationError
  └── ConfigurationError
"""

from typing import Any, Dict, Optional


class SeglatError(Exception):
    """Base exception for all seglat errors."""

    def __init__(
        self,
        message: str,
        error_code: Optional[str] = None,
        context: Optional[Dict[str, Any]] = None,
    ) -> None:
        super().__init__(message)
        self.message = message
        self.error_code = error_code
        self.context = context or {}

    def __str__(self) -> str:
        base_msg = self.message
        if self.error_code:
            base_msg = f"[{self.error_code}] {base_msg}"
        if self.context:
            context_str = ", ".join(f"{k}={v}" for k, v in self.context.items())
            base_msg = f"{base_msg} (Context: {context_str})"
        return base_msg


class GeometryError(SeglatError):
    """Invalid lattice window or site index."""

    def __init__(
        self,
        message: str,
        lengths: Optional[Any] = None,
        site: Optional[int] = None,
        **kwargs: Any,
    ) -> None:
        context = kwargs.pop("context", {})
        if lengths is not None:
            context["lengths"] = list(lengths)
        if site is not None:
            context["site"] = site
        super().__init__(message, error_code="GEOMETRY", context=context, **kwargs)


class ParameterError(SeglatError):
    """A model or formula parameter lies outside its domain."""

    def __init__(
        self,
        message: str,
        field: Optional[str] = None,
        value: Optional[Any] = None,
        **kwargs: Any,
    ) -> None:
        context = kwargs.pop("context", {})
        if field:
            context["field"] = field
        if value is not None:
            context["value"] = str(value)[:100]
        kwargs.setdefault("error_code", "PARAMETER")
        super().__init__(message, context=context, **kwargs)


class BiasBoundError(ParameterError):
    """The torus is too small for the wrap-around bias bound at this density."""

    def __init__(self, p: float, length: int, bound: float, tolerance: float) -> None:
        super().__init__(
            f"(1-p)^(L-2) = {bound:.3g} exceeds tolerance {tolerance:.1g}",
            error_code="BIAS_BOUND",
            context={"p": p, "L": length},
        )
        self.bound = bound
        self.tolerance = tolerance


class ModelError(SeglatError):
    """Invalid model / event combination or misuse of a coupling."""

    def __init__(
        self,
        message: str,
        model: Optional[str] = None,
        event: Optional[str] = None,
        **kwargs: Any,
    ) -> None:
        context = kwargs.pop("context", {})
        if model:
            context["model"] = model
        if event:
            context["event"] = event
        super().__init__(message, error_code="MODEL", context=context, **kwargs)


class EstimationError(SeglatError):
    """A Monte Carlo search could not produce a trustworthy estimate."""

    def __init__(
        self,
        message: str,
        parameter: Optional[str] = None,
        bracket: Optional[Any] = None,
        **kwargs: Any,
    ) -> None:
        context = kwargs.pop("context", {})
        if parameter:
            context["parameter"] = parameter
        if bracket is not None:
            context["bracket"] = tuple(bracket)
        super().__init__(message, error_code="ESTIMATION", context=context, **kwargs)


class SerializationError(SeglatError):
    """An artifact could not be decoded."""

    def __init__(
        self,
        message: str,
        artifact: Optional[str] = None,
        original_error: Optional[Exception] = None,
        **kwargs: Any,
    ) -> None:
        context = kwargs.pop("context", {})
        if artifact:
            context["artifact"] = artifact
        if original_error is not None:
            context["original_error_type"] = type(original_error).__name__
        super().__init__(message, error_code="SERIALIZATION", context=context, **kwargs)
        self.original_error = original_error


class ConfigurationError(SeglatError):
    """Errors in configuration files or settings."""

    def __init__(
        self,
        message: str,
        config_key: Optional[str] = None,
        config_file: Optional[str] = None,
        **kwargs: Any,
    ) -> None:
        context = kwargs.pop("context", {})
        if config_key:
            context["config_key"] = config_key
        if config_file:
            context["config_file"] = config_file
        super().__init__(message, error_code="CONFIGURATION", context=context, **kwargs)
