//! Global environment: the name → constant map, declaration kinds, and the
//! non-typechecking parts of adding declarations (name hygiene, quotient
//! setup). Environments are persistent values: `add_decl` returns a new
//! environment and leaves the input usable.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::KernelError;
use crate::expr::{BinderInfo, Expr, ExprKind};
use crate::inductive::{check_inductive_decl, InductiveDecl};
use crate::level::Level;
use crate::name::Name;
use crate::tc::TypeChecker;

pub const DEFAULT_FUEL: u64 = 1000;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ReducibilityHint {
    Abbrev,
    Regular(u32),
    Opaque,
}

impl ReducibilityHint {
    /// Unfolding priority for lazy delta reduction (larger unfolds first).
    pub fn height(self) -> u64 {
        match self {
            ReducibilityHint::Abbrev => u64::MAX,
            ReducibilityHint::Regular(h) => h as u64,
            ReducibilityHint::Opaque => 0,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum QuotKind {
    Type,
    Ctor,
    Lift,
    Ind,
}

#[derive(Clone, Debug)]
pub struct RecursorRule {
    pub ctor: Name,
    pub num_fields: u32,
    pub rhs: Expr,
}

#[derive(Clone, Debug)]
pub enum ConstantKind {
    Axiom,
    Definition {
        value: Expr,
        hint: ReducibilityHint,
    },
    Theorem {
        value: Expr,
    },
    Opaque {
        value: Expr,
    },
    Quot {
        kind: QuotKind,
    },
    Inductive {
        num_params: u32,
        num_indices: u32,
        all_names: Vec<Name>,
        ctor_names: Vec<Name>,
        is_structure_like: bool,
        is_prop: bool,
    },
    Constructor {
        induct: Name,
        ctor_idx: u32,
        num_params: u32,
        num_fields: u32,
    },
    Recursor {
        all_names: Vec<Name>,
        num_params: u32,
        num_indices: u32,
        num_motives: u32,
        num_minors: u32,
        rules: Vec<RecursorRule>,
        k: bool,
    },
}

#[derive(Clone, Debug)]
pub struct ConstantInfo {
    pub name: Name,
    pub level_params: Vec<Name>,
    pub ty: Expr,
    pub kind: ConstantKind,
}

impl ConstantInfo {
    pub fn value(&self) -> Option<&Expr> {
        match &self.kind {
            ConstantKind::Definition { value, .. }
            | ConstantKind::Theorem { value }
            | ConstantKind::Opaque { value } => Some(value),
            _ => None,
        }
    }

    /// The value visible to delta reduction. Theorems are never unfolded and
    /// opaques are hidden from defeq.
    pub fn unfoldable_value(&self) -> Option<&Expr> {
        match &self.kind {
            ConstantKind::Definition { value, .. } => Some(value),
            _ => None,
        }
    }

    pub fn hint(&self) -> ReducibilityHint {
        match &self.kind {
            ConstantKind::Definition { hint, .. } => *hint,
            _ => ReducibilityHint::Opaque,
        }
    }
}

/// A declaration request submitted to the kernel.
#[derive(Clone, Debug)]
pub enum Declaration {
    Axiom {
        name: Name,
        level_params: Vec<Name>,
        ty: Expr,
    },
    Definition {
        name: Name,
        level_params: Vec<Name>,
        ty: Expr,
        value: Expr,
        hint: DeclHint,
    },
    Theorem {
        name: Name,
        level_params: Vec<Name>,
        ty: Expr,
        value: Expr,
    },
    Opaque {
        name: Name,
        level_params: Vec<Name>,
        ty: Expr,
        value: Expr,
    },
    Quot,
    Inductive(InductiveDecl),
    /// Checks that `value : ty` and leaves the environment unchanged.
    Example {
        level_params: Vec<Name>,
        ty: Expr,
        value: Expr,
    },
}

/// Hint requested by the declaration; `Regular` heights are computed by the
/// kernel from the heights of the constants in the value.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum DeclHint {
    Abbrev,
    Regular,
    Opaque,
}

impl Declaration {
    pub fn name(&self) -> Option<&Name> {
        match self {
            Declaration::Axiom { name, .. }
            | Declaration::Definition { name, .. }
            | Declaration::Theorem { name, .. }
            | Declaration::Opaque { name, .. } => Some(name),
            Declaration::Inductive(d) => d.types.first().map(|t| &t.name),
            Declaration::Quot | Declaration::Example { .. } => None,
        }
    }

    /// Names of all constants this declaration will introduce or check.
    pub fn display_name(&self) -> Name {
        match self {
            Declaration::Quot => Name::from_parts("Quot"),
            Declaration::Example { .. } => Name::from_parts("[example]"),
            d => d.name().cloned().unwrap_or_else(Name::anonymous),
        }
    }

    /// Constant names mentioned in the declaration's types and values, for
    /// dependency analysis.
    pub fn collect_deps(&self, out: &mut Vec<Name>) {
        let mut push = |e: &Expr| {
            e.find_const(&|n| {
                // walk everything; record each name
                if !out.contains(n) {
                    out.push(n.clone());
                }
                false
            });
        };
        match self {
            Declaration::Axiom { ty, .. } => push(ty),
            Declaration::Definition { ty, value, .. }
            | Declaration::Theorem { ty, value, .. }
            | Declaration::Opaque { ty, value, .. }
            | Declaration::Example { ty, value, .. } => {
                push(ty);
                push(value);
            }
            Declaration::Quot => push(&Expr::const_(Name::from_parts("Eq"), vec![])),
            Declaration::Inductive(d) => {
                for t in &d.types {
                    push(&t.ty);
                    for c in &t.ctors {
                        push(&c.ty);
                    }
                }
            }
        }
    }
}

#[derive(Clone, Debug)]
enum EnvEntry {
    Const(Arc<ConstantInfo>),
    Blocked,
}

/// Lookup result distinguishing "blocked" from "absent" for redeclaration
/// checks.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FindStatus<'a> {
    Present(&'a ConstantInfo),
    Blocked,
    Absent,
}

#[derive(Clone, Default)]
pub struct Environment {
    constants: HashMap<Name, EnvEntry>,
    quot_initialized: bool,
}

impl Environment {
    pub fn new() -> Environment {
        Environment::default()
    }

    pub fn find(&self, n: &Name) -> Option<&ConstantInfo> {
        match self.constants.get(n) {
            Some(EnvEntry::Const(c)) => Some(c),
            _ => None,
        }
    }

    pub fn find_status(&self, n: &Name) -> FindStatus<'_> {
        match self.constants.get(n) {
            Some(EnvEntry::Const(c)) => FindStatus::Present(c),
            Some(EnvEntry::Blocked) => FindStatus::Blocked,
            None => FindStatus::Absent,
        }
    }

    pub fn contains(&self, n: &Name) -> bool {
        self.constants.contains_key(n)
    }

    pub fn quot_initialized(&self) -> bool {
        self.quot_initialized
    }

    pub fn constants(&self) -> impl Iterator<Item = &ConstantInfo> {
        self.constants.values().filter_map(|e| match e {
            EnvEntry::Const(c) => Some(&**c),
            EnvEntry::Blocked => None,
        })
    }

    fn insert(&mut self, info: ConstantInfo) -> Result<(), KernelError> {
        if self.constants.contains_key(&info.name) {
            return Err(KernelError::DuplicateName { name: info.name });
        }
        self.constants
            .insert(info.name.clone(), EnvEntry::Const(Arc::new(info)));
        Ok(())
    }

    /// Marks a name as occupied without a constant (cannot be redeclared).
    pub fn block(&mut self, n: Name) {
        self.constants.entry(n).or_insert(EnvEntry::Blocked);
    }

    /// Height for lazy delta ordering: 1 + max height of definition constants
    /// mentioned in `value`.
    pub fn definition_height(&self, value: &Expr) -> u32 {
        let mut max = 0u32;
        value.find_const(&|n| {
            if let Some(info) = self.find(n) {
                if let ReducibilityHint::Regular(h) = info.hint() {
                    if h > max {
                        max = h;
                    }
                } else if matches!(info.kind, ConstantKind::Definition { .. }) {
                    // abbrev definitions count as height 0 bases
                }
            }
            false
        });
        max + 1
    }

    /// Adds a declaration. With `check = true` the declaration is fully
    /// typechecked; with `check = false` only structural well-formedness is
    /// verified (closedness, level parameter scoping, no duplicate names,
    /// constants exist).
    pub fn add_decl(
        &self,
        d: &Declaration,
        check: bool,
        fuel: u64,
    ) -> Result<Environment, KernelError> {
        match d {
            Declaration::Axiom {
                name,
                level_params,
                ty,
            } => {
                let mut env = self.clone();
                env.check_decl_header(name, level_params, ty, &[])?;
                if check {
                    let mut tc = TypeChecker::new(self, level_params.clone(), fuel);
                    tc.check_is_type(ty).map_err(|e| e.in_decl(name))?;
                }
                env.insert(ConstantInfo {
                    name: name.clone(),
                    level_params: level_params.clone(),
                    ty: ty.clone(),
                    kind: ConstantKind::Axiom,
                })?;
                env.block(name.child("rec"));
                Ok(env)
            }
            Declaration::Definition {
                name,
                level_params,
                ty,
                value,
                hint,
            } => {
                let kind = ConstantKind::Definition {
                    value: value.clone(),
                    hint: match hint {
                        DeclHint::Abbrev => ReducibilityHint::Abbrev,
                        DeclHint::Opaque => ReducibilityHint::Opaque,
                        DeclHint::Regular => {
                            ReducibilityHint::Regular(self.definition_height(value))
                        }
                    },
                };
                self.add_value_decl(name, level_params, ty, value, kind, check, fuel)
            }
            Declaration::Theorem {
                name,
                level_params,
                ty,
                value,
            } => self.add_value_decl(
                name,
                level_params,
                ty,
                value,
                ConstantKind::Theorem {
                    value: value.clone(),
                },
                check,
                fuel,
            ),
            Declaration::Opaque {
                name,
                level_params,
                ty,
                value,
            } => self.add_value_decl(
                name,
                level_params,
                ty,
                value,
                ConstantKind::Opaque {
                    value: value.clone(),
                },
                check,
                fuel,
            ),
            Declaration::Example {
                level_params,
                ty,
                value,
            } => {
                let name = Name::from_parts("[example]");
                check_structural(self, &name, level_params, ty, &[value.clone()])?;
                if check {
                    let mut tc = TypeChecker::new(self, level_params.clone(), fuel);
                    tc.check_is_type(ty).map_err(|e| e.in_decl(&name))?;
                    tc.check_value(value, ty).map_err(|e| e.in_decl(&name))?;
                }
                Ok(self.clone())
            }
            Declaration::Quot => self.add_quot(),
            Declaration::Inductive(ind) => {
                let elab = check_inductive_decl(self, ind, check, fuel)?;
                let mut env = self.clone();
                for info in elab.constants {
                    env.insert(info)?;
                }
                Ok(env)
            }
        }
    }

    fn add_value_decl(
        &self,
        name: &Name,
        level_params: &[Name],
        ty: &Expr,
        value: &Expr,
        kind: ConstantKind,
        check: bool,
        fuel: u64,
    ) -> Result<Environment, KernelError> {
        let mut env = self.clone();
        env.check_decl_header(name, level_params, ty, std::slice::from_ref(value))?;
        if check {
            let mut tc = TypeChecker::new(self, level_params.to_vec(), fuel);
            tc.check_is_type(ty).map_err(|e| e.in_decl(name))?;
            tc.check_value(value, ty).map_err(|e| e.in_decl(name))?;
        }
        env.insert(ConstantInfo {
            name: name.clone(),
            level_params: level_params.to_vec(),
            ty: ty.clone(),
            kind,
        })?;
        env.block(name.child("rec"));
        Ok(env)
    }

    fn check_decl_header(
        &self,
        name: &Name,
        level_params: &[Name],
        ty: &Expr,
        values: &[Expr],
    ) -> Result<(), KernelError> {
        if self.contains(name) {
            return Err(KernelError::DuplicateName { name: name.clone() });
        }
        check_structural(self, name, level_params, ty, values)
    }

    /// Adds the four quotient constants and marks the quot reduction rules as
    /// available. Requires `Eq` (and `Eq.refl`) with the standard signature
    /// since `Quot.lift`'s hypothesis states an equation.
    pub fn add_quot(&self) -> Result<Environment, KernelError> {
        if self.quot_initialized {
            return Err(KernelError::QuotError {
                reason: "quotients already initialized".into(),
            });
        }
        self.check_eq_signature()?;
        let mut env = self.clone();
        for (name, levels, ty, kind) in quot_constants() {
            env.insert(ConstantInfo {
                name,
                level_params: levels,
                ty,
                kind: ConstantKind::Quot { kind },
            })?;
        }
        env.quot_initialized = true;
        Ok(env)
    }

    fn check_eq_signature(&self) -> Result<(), KernelError> {
        let eq_name = Name::from_parts("Eq");
        let Some(eq) = self.find(&eq_name) else {
            return Err(KernelError::QuotError {
                reason: "`Eq` is not declared".into(),
            });
        };
        if !matches!(eq.kind, ConstantKind::Inductive { .. }) || eq.level_params.len() != 1 {
            return Err(KernelError::QuotError {
                reason: "`Eq` does not have the expected form".into(),
            });
        }
        let u = Level::param(eq.level_params[0].clone());
        // Eq : {α : Sort u} → α → α → Prop
        let expected = Expr::forall_e(
            Name::from_parts("a"),
            Expr::sort(u.clone()),
            Expr::forall_e(
                Name::anonymous(),
                Expr::bvar(0),
                Expr::forall_e(Name::anonymous(), Expr::bvar(1), Expr::prop(), BinderInfo::Default),
                BinderInfo::Default,
            ),
            BinderInfo::Implicit,
        );
        if !eq_mod_binders(&eq.ty, &expected) {
            return Err(KernelError::QuotError {
                reason: format!("`Eq` has unexpected type {:?}", eq.ty),
            });
        }
        let refl_name = Name::from_parts("Eq.refl");
        let Some(refl) = self.find(&refl_name) else {
            return Err(KernelError::QuotError {
                reason: "`Eq.refl` is not declared".into(),
            });
        };
        // Eq.refl : {α : Sort u} → (a : α) → Eq α a a
        let u = Level::param(
            refl.level_params
                .first()
                .cloned()
                .unwrap_or_else(Name::anonymous),
        );
        let expected = Expr::forall_e(
            Name::from_parts("a"),
            Expr::sort(u.clone()),
            Expr::forall_e(
                Name::from_parts("x"),
                Expr::bvar(0),
                Expr::app_n(
                    Expr::const_(eq_name, vec![u]),
                    [Expr::bvar(1), Expr::bvar(0), Expr::bvar(0)],
                ),
                BinderInfo::Default,
            ),
            BinderInfo::Implicit,
        );
        if refl.level_params.len() != 1 || !eq_mod_binders(&refl.ty, &expected) {
            return Err(KernelError::QuotError {
                reason: format!("`Eq.refl` has unexpected type {:?}", refl.ty),
            });
        }
        Ok(())
    }
}

/// Structural well-formedness shared by checked and unchecked adds:
/// closedness, level parameter hygiene, and existence of mentioned constants.
fn check_structural(
    env: &Environment,
    name: &Name,
    level_params: &[Name],
    ty: &Expr,
    values: &[Expr],
) -> Result<(), KernelError> {
    for (i, p) in level_params.iter().enumerate() {
        if level_params[..i].contains(p) {
            return Err(KernelError::DuplicateLevelParam { name: name.clone() });
        }
    }
    let mut exprs = vec![ty];
    exprs.extend(values.iter());
    for e in exprs {
        if e.has_loose_bvars() || e.has_fvar() || e.has_mvar() {
            return Err(KernelError::NotClosed { name: name.clone() });
        }
        let mut ps = Vec::new();
        e.collect_level_params(&mut ps);
        for p in ps {
            if !level_params.contains(&p) {
                return Err(KernelError::DuplicateLevelParam { name: name.clone() });
            }
        }
        if let Some(missing) = e.find_const(&|n| env.find(n).is_none()) {
            return Err(KernelError::UnknownConstant { name: missing }.in_decl(name));
        }
    }
    Ok(())
}

/// Structural equality ignoring binder names and binder info.
pub fn eq_mod_binders(a: &Expr, b: &Expr) -> bool {
    use ExprKind::*;
    match (a.kind(), b.kind()) {
        (App(f1, a1), App(f2, a2)) => eq_mod_binders(f1, f2) && eq_mod_binders(a1, a2),
        (Lam(_, t1, b1, _), Lam(_, t2, b2, _))
        | (ForallE(_, t1, b1, _), ForallE(_, t2, b2, _)) => {
            eq_mod_binders(t1, t2) && eq_mod_binders(b1, b2)
        }
        (LetE(_, t1, v1, b1, _), LetE(_, t2, v2, b2, _)) => {
            eq_mod_binders(t1, t2) && eq_mod_binders(v1, v2) && eq_mod_binders(b1, b2)
        }
        (MData(e1), _) => eq_mod_binders(e1, b),
        (_, MData(e2)) => eq_mod_binders(a, e2),
        (Proj(n1, i1, e1), Proj(n2, i2, e2)) => n1 == n2 && i1 == i2 && eq_mod_binders(e1, e2),
        (Sort(l1), Sort(l2)) => l1.is_equiv(l2),
        (Const(n1, ls1), Const(n2, ls2)) => {
            n1 == n2
                && ls1.len() == ls2.len()
                && ls1.iter().zip(ls2).all(|(l1, l2)| l1.is_equiv(l2))
        }
        _ => a == b,
    }
}

fn quot_constants() -> Vec<(Name, Vec<Name>, Expr, QuotKind)> {
    let u = Name::from_parts("u");
    let v = Name::from_parts("v");
    let lu = Level::param(u.clone());
    let lv = Level::param(v.clone());
    let sort_u = Expr::sort(lu.clone());
    let quot = |args: [Expr; 2]| Expr::app_n(Expr::const_(Name::from_parts("Quot"), vec![lu.clone()]), args);
    let eq = |ty: Expr, a: Expr, b: Expr| {
        Expr::app_n(Expr::const_(Name::from_parts("Eq"), vec![lv.clone()]), [ty, a, b])
    };
    // r : α → α → Prop where α is bvar(k)
    let rel_ty = |k: u32| {
        Expr::forall_e(
            Name::from_parts("a"),
            Expr::bvar(k),
            Expr::forall_e(Name::from_parts("b"), Expr::bvar(k + 1), Expr::prop(), BinderInfo::Default),
            BinderInfo::Default,
        )
    };
    let fa = |n: &str, ty: Expr, body: Expr| {
        Expr::forall_e(Name::from_parts(n), ty, body, BinderInfo::Default)
    };
    let fai = |n: &str, ty: Expr, body: Expr| {
        Expr::forall_e(Name::from_parts(n), ty, body, BinderInfo::Implicit)
    };

    // Quot : {α : Sort u} → (α → α → Prop) → Sort u
    let quot_ty = fai("a", sort_u.clone(), fa("r", rel_ty(0), sort_u.clone()));

    // Quot.mk : {α : Sort u} → (r : α → α → Prop) → α → Quot r
    let mk_ty = fai(
        "a",
        sort_u.clone(),
        fa(
            "r",
            rel_ty(0),
            fa("x", Expr::bvar(1), quot([Expr::bvar(2), Expr::bvar(1)])),
        ),
    );

    // Quot.lift : {α : Sort u} → {r : α → α → Prop} → {β : Sort v} →
    //   (f : α → β) → (∀ a b, r a b → f a = f b) → Quot r → β
    // hypothesis is stated under binders [α, r, β, f]
    let hyp = fa(
        "x",
        Expr::bvar(3), // a : α
        fa(
            "y",
            Expr::bvar(4), // b : α
            fa(
                "h",
                Expr::app_n(Expr::bvar(4), [Expr::bvar(1), Expr::bvar(0)]), // r a b
                eq(
                    Expr::bvar(4),                                // β
                    Expr::app(Expr::bvar(3), Expr::bvar(2)),      // f a
                    Expr::app(Expr::bvar(3), Expr::bvar(1)),      // f b
                ),
            ),
        ),
    );
    let lift_ty = fai(
        "a",
        sort_u.clone(),
        fai(
            "r",
            rel_ty(0),
            fai(
                "b",
                Expr::sort(lv.clone()),
                fa(
                    "f",
                    fa("x", Expr::bvar(2), Expr::bvar(1)), // α → β
                    fa(
                        "h",
                        hyp,
                        fa(
                            "q",
                            quot([Expr::bvar(4), Expr::bvar(3)]),
                            Expr::bvar(3), // β
                        ),
                    ),
                ),
            ),
        ),
    );

    // Quot.ind : {α : Sort u} → {r : α → α → Prop} →
    //   {β : Quot r → Prop} → ((a : α) → β (Quot.mk r a)) → (q : Quot r) → β q
    let mk_app = |alpha: Expr, r: Expr, a: Expr| {
        Expr::app_n(
            Expr::const_(Name::from_parts("Quot.mk"), vec![lu.clone()]),
            [alpha, r, a],
        )
    };
    let ind_ty = fai(
        "a",
        sort_u.clone(),
        fai(
            "r",
            rel_ty(0),
            fai(
                "b",
                fa("q", quot([Expr::bvar(1), Expr::bvar(0)]), Expr::prop()),
                fa(
                    "m",
                    fa(
                        "x",
                        Expr::bvar(2), // a : α
                        Expr::app(
                            Expr::bvar(1), // β
                            mk_app(Expr::bvar(3), Expr::bvar(2), Expr::bvar(0)),
                        ),
                    ),
                    fa(
                        "q",
                        quot([Expr::bvar(3), Expr::bvar(2)]),
                        Expr::app(Expr::bvar(2), Expr::bvar(0)), // β q
                    ),
                ),
            ),
        ),
    );

    vec![
        (Name::from_parts("Quot"), vec![u.clone()], quot_ty, QuotKind::Type),
        (Name::from_parts("Quot.mk"), vec![u.clone()], mk_ty, QuotKind::Ctor),
        (
            Name::from_parts("Quot.lift"),
            vec![u.clone(), v],
            lift_ty,
            QuotKind::Lift,
        ),
        (Name::from_parts("Quot.ind"), vec![u], ind_ty, QuotKind::Ind),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn find_on_empty_env() {
        let env = Environment::new();
        assert!(env.find(&Name::from_parts("Nat")).is_none());
        assert_eq!(env.find_status(&Name::from_parts("Nat")), FindStatus::Absent);
    }

    #[test]
    fn add_axiom_then_find() {
        let env = Environment::new();
        let d = Declaration::Axiom {
            name: Name::from_parts("c"),
            level_params: vec![],
            ty: Expr::prop(),
        };
        let env2 = env.add_decl(&d, true, DEFAULT_FUEL).unwrap();
        assert!(env2.find(&Name::from_parts("c")).is_some());
        // the original env is unchanged
        assert!(env.find(&Name::from_parts("c")).is_none());
        // redeclaration fails
        assert!(matches!(
            env2.add_decl(&d, true, DEFAULT_FUEL),
            Err(KernelError::DuplicateName { .. })
        ));
    }

    #[test]
    fn blocked_names_are_occupied_but_not_found() {
        let mut env = Environment::new();
        env.block(Name::from_parts("n"));
        assert!(env.find(&Name::from_parts("n")).is_none());
        assert_eq!(env.find_status(&Name::from_parts("n")), FindStatus::Blocked);
        let d = Declaration::Axiom {
            name: Name::from_parts("n"),
            level_params: vec![],
            ty: Expr::prop(),
        };
        assert!(matches!(
            env.add_decl(&d, true, DEFAULT_FUEL),
            Err(KernelError::DuplicateName { .. })
        ));
    }

    #[test]
    fn self_referential_definition_is_unknown_constant() {
        let env = Environment::new();
        let d = Declaration::Definition {
            name: Name::from_parts("d"),
            level_params: vec![],
            ty: Expr::prop(),
            value: Expr::const_(Name::from_parts("d"), vec![]),
            hint: DeclHint::Regular,
        };
        let err = env.add_decl(&d, true, DEFAULT_FUEL).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("unknown constant"), "{msg}");
    }

    #[test]
    fn add_quot_requires_eq() {
        let env = Environment::new();
        assert!(matches!(
            env.add_quot(),
            Err(KernelError::QuotError { .. })
        ));
    }
}
