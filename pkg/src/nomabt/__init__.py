"""Multi-sorted abstract binding trees with symbols, variables and metavariables."""
from .algebra import (Environment, free_syms, free_vars, identity_environment,
                      instantiate, interpret, msubst, rename, rename_partial,
                      subst, subst_simultaneous)
from .contexts import (MetaCtx, Renaming, SymbolCtx, VarCtx, compose_renamings,
                       extend_symbols, identity_renaming, inverse_renaming,
                       lookup, make_renaming)
from .errors import *  # noqa: F401,F403
from .signature import (Arity, OperatorDecl, OperatorInst, Signature, Valence,
                        assignables_signature, check_operator, declare_signature,
                        lambda_signature, operator_support, rename_operator)
from .term import (Abstraction, MetaApp, OpApp, Term, Var, alpha_eq, bind,
                   canonicalize, check, check_abs, check_as, fresh_name,
                   show_canonical)
from .syntax import (parse_abstraction, parse_meta_ctx, parse_signature,
                     parse_symbol_ctx, parse_term, parse_var_ctx, print_term)

__version__ = "0.1.0"
