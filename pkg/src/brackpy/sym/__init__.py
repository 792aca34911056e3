"""Expressions and jets."""
from brackpy.sym._expr import (
    Binary,
    Const,
    Expr,
    ExprSyntaxError,
    Pow,
    Unary,
    UnboundVariableError,
    Var,
    differentiate,
    eval_expr,
    evaluate,
    is_variable_name,
    parse,
    to_string,
    variables,
)
from brackpy.sym._jet import Jet2, eval_jet, jet_array, seed, slot, values
from brackpy.sym._scalar import DomainError, value_of
