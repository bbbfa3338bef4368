from .enums import BoundaryCondition, Identity, LhsMethod

from collections import abc
from functools import wraps
from inspect import BoundArguments, Parameter, Signature, signature
from numbers import Real
from typing import Any, Callable, Optional, Union, get_args, get_origin


def _sanitize_boundary_condition_value(
    value: Union[BoundaryCondition, str]
) -> BoundaryCondition:
    if isinstance(value, BoundaryCondition):
        return value

    condition = BoundaryCondition.from_string(value) if isinstance(value, str) else None
    if condition is None:
        raise ValueError(
            f"Invalid boundary condition: {value}. Valid conditions: {[bc.code for bc in BoundaryCondition]}"
        )

    return condition


def _sanitize_identity_value(value: Optional[Union[Identity, str]]) -> Optional[Identity]:
    if value is None or isinstance(value, Identity):
        return value

    identity = Identity.from_string(value) if isinstance(value, str) else None
    if identity is None:
        raise ValueError(
            f"Invalid identity: {value}. Valid identities: {[i.key for i in Identity]}"
        )

    return identity


def _sanitize_lhs_method_value(value: Union[LhsMethod, str]) -> LhsMethod:
    if isinstance(value, LhsMethod):
        return value

    method = LhsMethod.from_string(value) if isinstance(value, str) else None
    if method is None:
        raise ValueError(
            f"Invalid method: {value}. Valid methods: {[m.value for m in LhsMethod]}"
        )

    return method


def _sanitize_shift_value(value: Any) -> Any:
    from .zeta import RayShift

    if value is None or isinstance(value, RayShift):
        return value

    if isinstance(value, Real):
        if value < 0:
            raise ValueError(f"Invalid shift: {value}. Real shifts must be nonnegative.")

        return RayShift(theta=0.0, t=float(value))

    return value


def _sanitize_r_grid_value(value: Any) -> Optional[tuple[float, ...]]:
    if value is None:
        return None

    grid = tuple(float(r) for r in value)
    if len(grid) < 4:
        raise ValueError(f"Invalid r-grid: {grid}. At least 4 points are required.")

    if grid[0] <= 0 or any(b <= a for a, b in zip(grid, grid[1:])):
        raise ValueError(
            f"Invalid r-grid: {grid}. Points must be positive and strictly increasing."
        )

    return grid


def _sanitize_positive_value(name: str, value: Any) -> Any:
    if isinstance(value, Real) and not value > 0:
        raise ValueError(f"Invalid {name}: {value}. Must be positive.")

    return value


def _sanitize_cutoff_value(value: Any) -> Any:
    if isinstance(value, Real) and value < 0:
        raise ValueError(f"Invalid cutoff: {value}. Must be nonnegative.")

    return value


_SANITIZE_FUNCS = {
    "bc_left": lambda value, _: _sanitize_boundary_condition_value(value),
    "bc_right": lambda value, _: _sanitize_boundary_condition_value(value),
    "far_bc": lambda value, _: _sanitize_boundary_condition_value(value),
    "cutoff": lambda value, _: _sanitize_cutoff_value(value),
    "identity": lambda value, _: _sanitize_identity_value(value),
    "length": lambda value, _: _sanitize_positive_value("length", value),
    "lhs_method": lambda value, _: _sanitize_lhs_method_value(value),
    "r": lambda value, _: _sanitize_positive_value("r", value),
    "r_grid": lambda value, _: _sanitize_r_grid_value(value),
    "shift": lambda value, _: _sanitize_shift_value(value),
}


def _sanitize_value(param_name: str, value: Any, args_dict: dict[str, Any]) -> Any:
    sanitize_func = _SANITIZE_FUNCS.get(param_name)
    return value if sanitize_func is None else sanitize_func(value, args_dict)


def _typecheck_mapping_value(value: Any, expected_type_args: tuple[Any, ...]) -> bool:
    if not isinstance(value, abc.Mapping):
        return False

    if not expected_type_args:
        return True

    return all(
        _typecheck_value(k, expected_type_args[0])
        and _typecheck_value(v, expected_type_args[1])
        for k, v in value.items()
    )


def _typecheck_collection_value(
    container: type, value: Any, expected_type_args: tuple[Any, ...]
) -> bool:
    if not isinstance(value, container) or isinstance(value, str):
        return False

    if not expected_type_args:
        return True

    return all(_typecheck_value(x, expected_type_args[0]) for x in value)


def _typecheck_tuple_value(value: Any, expected_type_args: tuple[Any, ...]) -> bool:
    if not isinstance(value, tuple):
        return False

    if not expected_type_args:
        return True

    if len(expected_type_args) == 2 and expected_type_args[1] is Ellipsis:
        return all(_typecheck_value(x, expected_type_args[0]) for x in value)

    return len(value) == len(expected_type_args) and all(
        _typecheck_value(x, t) for x, t in zip(value, expected_type_args)
    )


_TYPECHECK_FUNCS = {
    dict: _typecheck_mapping_value,
    abc.Mapping: _typecheck_mapping_value,
    list: lambda value, args: _typecheck_collection_value(list, value, args),
    set: lambda value, args: _typecheck_collection_value(set, value, args),
    frozenset: lambda value, args: _typecheck_collection_value(frozenset, value, args),
    abc.Sequence: lambda value, args: _typecheck_collection_value(
        abc.Sequence, value, args
    ),
    abc.Iterable: lambda value, args: _typecheck_collection_value(
        abc.Iterable, value, args
    ),
    tuple: _typecheck_tuple_value,
    abc.Callable: lambda value, _: callable(value),
}


def _typecheck_value(value: Any, expected_type: Any) -> bool:
    if expected_type is Any:
        return True

    origin = get_origin(expected_type)
    args = get_args(expected_type)

    if origin is None:
        if expected_type is float and isinstance(value, Real):
            return not isinstance(value, bool)

        return isinstance(value, expected_type)

    if origin is Union:
        return any(_typecheck_value(value, arg) for arg in args)

    if check_func := _TYPECHECK_FUNCS.get(origin):
        return check_func(value, args)

    return isinstance(value, origin)


def _bound_arguments(
    sig: Signature, args: tuple[Any, ...], kwargs: dict[str, Any]
) -> Optional[BoundArguments]:
    # surface signature mismatches as the call itself would
    try:
        return sig.bind(*args, **kwargs)
    except TypeError:
        return None


def sanitized(func: Callable[..., Any]) -> Callable[..., Any]:
    """Decorator to sanitize arguments before passing them to a function.

    Known parameter names are coerced: boundary conditions, identities and
    left-hand side methods are looked up from strings, real shifts become
    :class:`RayShift <spectral_gluing.zeta.RayShift>` values, r-grids become
    validated tuples, and lengths, collar parameters and cutoffs are range
    checked. Defaults are left alone.

    .. versionadded:: 1.0.0

    Parameters
    ----------
    func : Callable[..., Any]
        The function to decorate.

    Returns
    -------
    Callable[..., Any]
        The decorated function.

    Raises
    ------
    ValueError
        Raised when a known argument has an invalid value.
    """
    sig = signature(func)

    @wraps(func)
    def wrapper(*args, **kwargs):
        bound = _bound_arguments(sig, args, kwargs)
        if bound is None:
            return func(*args, **kwargs)

        for name in [n for n in bound.arguments if n in _SANITIZE_FUNCS]:
            bound.arguments[name] = _sanitize_value(
                name, bound.arguments[name], bound.arguments
            )

        return func(*bound.args, **bound.kwargs)

    return wrapper


def typechecked(func: Callable[..., Any]) -> Callable[..., Any]:
    """Decorator to typecheck arguments before passing them to a function.

    Any real number, including :mod:`mpmath` reals, satisfies a ``float``
    annotation; booleans do not.

    .. versionadded:: 1.0.0

    Parameters
    ----------
    func : Callable[..., Any]
        The function to decorate.

    Returns
    -------
    Callable[..., Any]
        The decorated function.
    """
    sig = signature(func)
    expected = {
        name: param.annotation
        for name, param in sig.parameters.items()
        if param.annotation is not Parameter.empty
    }

    @wraps(func)
    def wrapper(*args, **kwargs):
        bound = _bound_arguments(sig, args, kwargs)
        if bound is None:
            return func(*args, **kwargs)

        for name, value in bound.arguments.items():
            annotation = expected.get(name)
            if annotation is None or _typecheck_value(value, annotation):
                continue

            raise TypeError(
                f"Expected argument '{name}' to be of type '{annotation}', not '{type(value).__name__}'."
            )

        return func(*bound.args, **bound.kwargs)

    return wrapper
