//! Kernel errors.

use crate::expr::Expr;
use crate::name::Name;

#[derive(Debug, Clone, thiserror::Error)]
pub enum KernelError {
    #[error("deep recursion: fuel exhausted while {context}")]
    DeepRecursion { context: &'static str },
    #[error("unknown constant `{name}`")]
    UnknownConstant { name: Name },
    #[error("type expected, got `{found:?}`")]
    TypeExpected { found: Expr },
    #[error("function expected, got `{found:?}`")]
    FunctionExpected { found: Expr },
    #[error("definitional equality failure: `{lhs:?}` vs `{rhs:?}` ({context})")]
    DefeqFailure {
        lhs: Expr,
        rhs: Expr,
        context: String,
    },
    #[error("declaration `{name}` already exists")]
    DuplicateName { name: Name },
    #[error("invalid projection `{ty_name}.{idx}` of `{structure:?}`: {reason}")]
    InvalidProjection {
        ty_name: Name,
        idx: u32,
        structure: Expr,
        reason: String,
    },
    #[error("constant `{name}` expects {expected} level arguments, got {got}")]
    LevelArityMismatch {
        name: Name,
        expected: usize,
        got: usize,
    },
    #[error("metavariable encountered in kernel term")]
    MVarEncountered,
    #[error("loose bound variable #{idx} encountered")]
    LooseBVar { idx: u32 },
    #[error("unknown free variable")]
    UnknownFVar,
    #[error("duplicate level parameter in `{name}`")]
    DuplicateLevelParam { name: Name },
    #[error("level parameter `{name}` is not declared by the enclosing declaration")]
    UnboundLevelParam { name: Name },
    #[error("declaration `{name}` is not closed (contains fvars or mvars or loose bvars)")]
    NotClosed { name: Name },
    #[error("non-positive occurrence of inductive type in constructor `{ctor}`")]
    NonPositiveOccurrence { ctor: Name },
    #[error("universe of field in constructor `{ctor}` is too large for the inductive type")]
    UniverseTooLarge { ctor: Name },
    #[error("mutual inductive types disagree on shared parameters: {reason}")]
    ParamMismatch { reason: String },
    #[error("bad constructor target in `{ctor}`: {reason}")]
    BadCtorTarget { ctor: Name, reason: String },
    #[error("quotient initialization failed: {reason}")]
    QuotError { reason: String },
    #[error("kernel error in `{decl}`: {inner}")]
    InDecl {
        decl: Name,
        #[source]
        inner: Box<KernelError>,
    },
}

impl KernelError {
    pub fn in_decl(self, decl: &Name) -> KernelError {
        KernelError::InDecl {
            decl: decl.clone(),
            inner: Box::new(self),
        }
    }

    pub fn is_deep_recursion(&self) -> bool {
        match self {
            KernelError::DeepRecursion { .. } => true,
            KernelError::InDecl { inner, .. } => inner.is_deep_recursion(),
            _ => false,
        }
    }
}
