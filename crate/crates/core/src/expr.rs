//! Kernel expressions: de Bruijn bound variables, named free variables,
//! literals, projections, plus the pure structural operations (lifting,
//! instantiation, abstraction, literal views, cheap beta reduction).
//!
//! Expressions are immutable `Arc`-shared trees carrying a cached structural
//! hash and cached flags (loose bvar range, has-fvar, has-mvar).

use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::level::Level;
use crate::name::Name;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct FVarId(pub u64);

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct MVarId(pub u64);

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub enum BinderInfo {
    #[default]
    Default,
    Implicit,
    StrictImplicit,
    InstImplicit,
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Literal {
    Nat(BigUint),
    Str(String),
}

impl Literal {
    pub fn nat(n: u64) -> Literal {
        Literal::Nat(BigUint::from(n))
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Expr(Arc<ExprData>);

struct ExprData {
    kind: ExprKind,
    hash: u64,
    /// One past the largest loose bvar index; 0 when closed.
    loose_bvar_range: u32,
    has_fvar: bool,
    has_mvar: bool,
}

impl PartialEq for ExprData {
    fn eq(&self, other: &Self) -> bool {
        self.hash == other.hash && self.kind == other.kind
    }
}
impl Eq for ExprData {}
impl std::hash::Hash for ExprData {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        state.write_u64(self.hash);
    }
}

#[derive(Clone, PartialEq, Eq)]
pub enum ExprKind {
    BVar(u32),
    FVar(FVarId),
    MVar(MVarId),
    Sort(Level),
    Const(Name, Vec<Level>),
    App(Expr, Expr),
    Lam(Name, Expr, Expr, BinderInfo),
    ForallE(Name, Expr, Expr, BinderInfo),
    LetE(Name, Expr, Expr, Expr, bool),
    Lit(Literal),
    MData(Expr),
    Proj(Name, u32, Expr),
}

fn mix(seed: u64, x: u64) -> u64 {
    // splitmix-style mixing, good enough for a structural hash
    let mut z = seed ^ x.wrapping_mul(0x9e3779b97f4a7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

fn hash_of<T: std::hash::Hash>(t: &T) -> u64 {
    use std::hash::{Hash, Hasher};
    let mut h = std::collections::hash_map::DefaultHasher::new();
    t.hash(&mut h);
    h.finish()
}

impl Expr {
    fn mk(kind: ExprKind) -> Expr {
        use ExprKind::*;
        let (hash, loose, fv, mv) = match &kind {
            BVar(i) => (mix(1, *i as u64), i + 1, false, false),
            FVar(id) => (mix(2, id.0), 0, true, false),
            MVar(id) => (mix(3, id.0), 0, false, true),
            Sort(l) => (mix(4, hash_of(l)), 0, false, false),
            Const(n, ls) => (mix(5, mix(hash_of(n), hash_of(ls))), 0, false, false),
            App(f, a) => (
                mix(6, mix(f.hash(), a.hash())),
                f.loose_bvar_range().max(a.loose_bvar_range()),
                f.has_fvar() || a.has_fvar(),
                f.has_mvar() || a.has_mvar(),
            ),
            Lam(_, t, b, _) | ForallE(_, t, b, _) => (
                mix(
                    if matches!(kind, Lam(..)) { 7 } else { 8 },
                    mix(t.hash(), b.hash()),
                ),
                t.loose_bvar_range().max(b.loose_bvar_range().saturating_sub(1)),
                t.has_fvar() || b.has_fvar(),
                t.has_mvar() || b.has_mvar(),
            ),
            LetE(_, t, v, b, _) => (
                mix(9, mix(t.hash(), mix(v.hash(), b.hash()))),
                t.loose_bvar_range()
                    .max(v.loose_bvar_range())
                    .max(b.loose_bvar_range().saturating_sub(1)),
                t.has_fvar() || v.has_fvar() || b.has_fvar(),
                t.has_mvar() || v.has_mvar() || b.has_mvar(),
            ),
            Lit(l) => (mix(10, hash_of(l)), 0, false, false),
            // mdata wrappers must hash differently from the wrapped term
            MData(e) => (mix(11, e.hash()), e.loose_bvar_range(), e.has_fvar(), e.has_mvar()),
            Proj(n, i, e) => (
                mix(12, mix(hash_of(n), mix(*i as u64, e.hash()))),
                e.loose_bvar_range(),
                e.has_fvar(),
                e.has_mvar(),
            ),
        };
        Expr(Arc::new(ExprData {
            kind,
            hash,
            loose_bvar_range: loose,
            has_fvar: fv,
            has_mvar: mv,
        }))
    }

    pub fn bvar(i: u32) -> Expr {
        Expr::mk(ExprKind::BVar(i))
    }
    pub fn fvar(id: FVarId) -> Expr {
        Expr::mk(ExprKind::FVar(id))
    }
    pub fn mvar(id: MVarId) -> Expr {
        Expr::mk(ExprKind::MVar(id))
    }
    pub fn sort(l: Level) -> Expr {
        Expr::mk(ExprKind::Sort(l))
    }
    pub fn prop() -> Expr {
        Expr::sort(Level::zero())
    }
    pub fn const_(n: Name, ls: Vec<Level>) -> Expr {
        Expr::mk(ExprKind::Const(n, ls))
    }
    pub fn app(f: Expr, a: Expr) -> Expr {
        Expr::mk(ExprKind::App(f, a))
    }
    pub fn app_n(f: Expr, args: impl IntoIterator<Item = Expr>) -> Expr {
        args.into_iter().fold(f, Expr::app)
    }
    pub fn lam(name: Name, ty: Expr, body: Expr, info: BinderInfo) -> Expr {
        Expr::mk(ExprKind::Lam(name, ty, body, info))
    }
    pub fn forall_e(name: Name, ty: Expr, body: Expr, info: BinderInfo) -> Expr {
        Expr::mk(ExprKind::ForallE(name, ty, body, info))
    }
    pub fn let_e(name: Name, ty: Expr, val: Expr, body: Expr, non_dep: bool) -> Expr {
        Expr::mk(ExprKind::LetE(name, ty, val, body, non_dep))
    }
    pub fn lit(l: Literal) -> Expr {
        Expr::mk(ExprKind::Lit(l))
    }
    pub fn nat_lit(n: u64) -> Expr {
        Expr::lit(Literal::nat(n))
    }
    pub fn mdata(e: Expr) -> Expr {
        Expr::mk(ExprKind::MData(e))
    }
    pub fn proj(ty_name: Name, idx: u32, s: Expr) -> Expr {
        Expr::mk(ExprKind::Proj(ty_name, idx, s))
    }

    pub fn kind(&self) -> &ExprKind {
        &self.0.kind
    }
    pub fn hash(&self) -> u64 {
        self.0.hash
    }
    pub fn loose_bvar_range(&self) -> u32 {
        self.0.loose_bvar_range
    }
    pub fn has_loose_bvars(&self) -> bool {
        self.0.loose_bvar_range > 0
    }
    pub fn has_fvar(&self) -> bool {
        self.0.has_fvar
    }
    pub fn has_mvar(&self) -> bool {
        self.0.has_mvar
    }
    pub fn ptr_eq(&self, other: &Expr) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    /// Strips mdata wrappers.
    pub fn unwrap_mdata(&self) -> &Expr {
        let mut e = self;
        while let ExprKind::MData(inner) = e.kind() {
            e = inner;
        }
        e
    }

    /// Head of an application spine (mdata-transparent).
    pub fn get_app_fn(&self) -> &Expr {
        let mut e = self.unwrap_mdata();
        while let ExprKind::App(f, _) = e.kind() {
            e = f.unwrap_mdata();
        }
        e
    }

    /// Arguments of an application spine, outermost last.
    pub fn get_app_args(&self) -> Vec<Expr> {
        let mut args = Vec::new();
        let mut e = self.unwrap_mdata();
        while let ExprKind::App(f, a) = e.kind() {
            args.push(a.clone());
            e = f.unwrap_mdata();
        }
        args.reverse();
        args
    }

    pub fn is_app(&self) -> bool {
        matches!(self.unwrap_mdata().kind(), ExprKind::App(..))
    }

    pub fn const_name(&self) -> Option<&Name> {
        match self.unwrap_mdata().kind() {
            ExprKind::Const(n, _) => Some(n),
            _ => None,
        }
    }

    /// Lifts loose bvars: every `BVar(i)` with `i ≥ k` becomes `BVar(i + n)`.
    pub fn lift(&self, n: u32, k: u32) -> Expr {
        if n == 0 || self.loose_bvar_range() <= k {
            return self.clone();
        }
        use ExprKind::*;
        match self.kind() {
            BVar(i) => {
                if *i >= k {
                    Expr::bvar(i + n)
                } else {
                    self.clone()
                }
            }
            App(f, a) => Expr::app(f.lift(n, k), a.lift(n, k)),
            Lam(nm, t, b, bi) => Expr::lam(nm.clone(), t.lift(n, k), b.lift(n, k + 1), *bi),
            ForallE(nm, t, b, bi) => {
                Expr::forall_e(nm.clone(), t.lift(n, k), b.lift(n, k + 1), *bi)
            }
            LetE(nm, t, v, b, nd) => {
                Expr::let_e(nm.clone(), t.lift(n, k), v.lift(n, k), b.lift(n, k + 1), *nd)
            }
            MData(e) => Expr::mdata(e.lift(n, k)),
            Proj(nm, i, e) => Expr::proj(nm.clone(), *i, e.lift(n, k)),
            _ => self.clone(),
        }
    }

    /// Replaces loose bvars with `subst`, last element first: at binder depth
    /// `d`, `BVar(i)` with `d ≤ i < d + |subst|` becomes
    /// `subst[|subst| - 1 - (i - d)]` lifted by `d`; bvars above the range are
    /// lowered by `|subst|`.
    pub fn instantiate_rev(&self, subst: &[Expr]) -> Expr {
        if subst.is_empty() || !self.has_loose_bvars() {
            return self.clone();
        }
        self.instantiate_rev_core(subst, 0)
    }

    /// Substitutes `BVar(0)` with `a` (lowering the others).
    pub fn instantiate(&self, a: &Expr) -> Expr {
        self.instantiate_rev(std::slice::from_ref(a))
    }

    fn instantiate_rev_core(&self, subst: &[Expr], d: u32) -> Expr {
        if self.loose_bvar_range() <= d {
            return self.clone();
        }
        use ExprKind::*;
        match self.kind() {
            BVar(i) => {
                if *i < d {
                    self.clone()
                } else {
                    let j = (*i - d) as usize;
                    if j < subst.len() {
                        subst[subst.len() - 1 - j].lift(d, 0)
                    } else {
                        Expr::bvar(i - subst.len() as u32)
                    }
                }
            }
            App(f, a) => Expr::app(
                f.instantiate_rev_core(subst, d),
                a.instantiate_rev_core(subst, d),
            ),
            Lam(nm, t, b, bi) => Expr::lam(
                nm.clone(),
                t.instantiate_rev_core(subst, d),
                b.instantiate_rev_core(subst, d + 1),
                *bi,
            ),
            ForallE(nm, t, b, bi) => Expr::forall_e(
                nm.clone(),
                t.instantiate_rev_core(subst, d),
                b.instantiate_rev_core(subst, d + 1),
                *bi,
            ),
            LetE(nm, t, v, b, nd) => Expr::let_e(
                nm.clone(),
                t.instantiate_rev_core(subst, d),
                v.instantiate_rev_core(subst, d),
                b.instantiate_rev_core(subst, d + 1),
                *nd,
            ),
            MData(e) => Expr::mdata(e.instantiate_rev_core(subst, d)),
            Proj(nm, i, e) => Expr::proj(nm.clone(), *i, e.instantiate_rev_core(subst, d)),
            _ => self.clone(),
        }
    }

    /// Inverse of `instantiate_rev` on fvars: occurrences of the last fvar
    /// become `BVar(0)` (at depth 0), and so on.
    pub fn abstract_fvars(&self, fvars: &[FVarId]) -> Expr {
        if fvars.is_empty() || !self.has_fvar() {
            return self.clone();
        }
        self.abstract_core(fvars, 0)
    }

    fn abstract_core(&self, fvars: &[FVarId], d: u32) -> Expr {
        if !self.has_fvar() {
            return self.clone();
        }
        use ExprKind::*;
        match self.kind() {
            FVar(id) => match fvars.iter().position(|f| f == id) {
                Some(p) => Expr::bvar(d + (fvars.len() - 1 - p) as u32),
                None => self.clone(),
            },
            App(f, a) => Expr::app(f.abstract_core(fvars, d), a.abstract_core(fvars, d)),
            Lam(nm, t, b, bi) => Expr::lam(
                nm.clone(),
                t.abstract_core(fvars, d),
                b.abstract_core(fvars, d + 1),
                *bi,
            ),
            ForallE(nm, t, b, bi) => Expr::forall_e(
                nm.clone(),
                t.abstract_core(fvars, d),
                b.abstract_core(fvars, d + 1),
                *bi,
            ),
            LetE(nm, t, v, b, nd) => Expr::let_e(
                nm.clone(),
                t.abstract_core(fvars, d),
                v.abstract_core(fvars, d),
                b.abstract_core(fvars, d + 1),
                *nd,
            ),
            MData(e) => Expr::mdata(e.abstract_core(fvars, d)),
            Proj(nm, i, e) => Expr::proj(nm.clone(), *i, e.abstract_core(fvars, d)),
            _ => self.clone(),
        }
    }

    /// Substitutes level parameters throughout the expression.
    pub fn instantiate_level_params(&self, params: &[Name], args: &[Level]) -> Expr {
        if params.is_empty() {
            return self.clone();
        }
        use ExprKind::*;
        let subst = |l: &Level| l.instantiate_params(params, args).expect("arity checked");
        match self.kind() {
            Sort(l) => Expr::sort(subst(l)),
            Const(n, ls) => Expr::const_(n.clone(), ls.iter().map(subst).collect()),
            App(f, a) => Expr::app(
                f.instantiate_level_params(params, args),
                a.instantiate_level_params(params, args),
            ),
            Lam(nm, t, b, bi) => Expr::lam(
                nm.clone(),
                t.instantiate_level_params(params, args),
                b.instantiate_level_params(params, args),
                *bi,
            ),
            ForallE(nm, t, b, bi) => Expr::forall_e(
                nm.clone(),
                t.instantiate_level_params(params, args),
                b.instantiate_level_params(params, args),
                *bi,
            ),
            LetE(nm, t, v, b, nd) => Expr::let_e(
                nm.clone(),
                t.instantiate_level_params(params, args),
                v.instantiate_level_params(params, args),
                b.instantiate_level_params(params, args),
                *nd,
            ),
            MData(e) => Expr::mdata(e.instantiate_level_params(params, args)),
            Proj(nm, i, e) => Expr::proj(nm.clone(), *i, e.instantiate_level_params(params, args)),
            _ => self.clone(),
        }
    }

    /// Collects level parameter names occurring anywhere in the expression.
    pub fn collect_level_params(&self, out: &mut Vec<Name>) {
        use ExprKind::*;
        match self.kind() {
            Sort(l) => l.collect_params(out),
            Const(_, ls) => {
                for l in ls {
                    l.collect_params(out);
                }
            }
            App(f, a) => {
                f.collect_level_params(out);
                a.collect_level_params(out);
            }
            Lam(_, t, b, _) | ForallE(_, t, b, _) => {
                t.collect_level_params(out);
                b.collect_level_params(out);
            }
            LetE(_, t, v, b, _) => {
                t.collect_level_params(out);
                v.collect_level_params(out);
                b.collect_level_params(out);
            }
            MData(e) | Proj(_, _, e) => e.collect_level_params(out),
            _ => {}
        }
    }

    /// Tests whether a constant with any of `names` occurs in the expression.
    pub fn mentions_const(&self, names: &[Name]) -> bool {
        self.find_const(&|n| names.contains(n)).is_some()
    }

    /// Finds the first constant name satisfying the predicate.
    pub fn find_const(&self, pred: &impl Fn(&Name) -> bool) -> Option<Name> {
        use ExprKind::*;
        match self.kind() {
            Const(n, _) => pred(n).then(|| n.clone()),
            App(f, a) => f.find_const(pred).or_else(|| a.find_const(pred)),
            Lam(_, t, b, _) | ForallE(_, t, b, _) => {
                t.find_const(pred).or_else(|| b.find_const(pred))
            }
            LetE(_, t, v, b, _) => t
                .find_const(pred)
                .or_else(|| v.find_const(pred))
                .or_else(|| b.find_const(pred)),
            MData(e) => e.find_const(pred),
            Proj(n, _, e) => pred(n).then(|| n.clone()).or_else(|| e.find_const(pred)),
            _ => None,
        }
    }

    /// Replaces constants by name: `f(name, levels)` returns the replacement
    /// for `Const(name, levels)` when it applies.
    pub fn replace_consts(&self, f: &impl Fn(&Name, &[Level]) -> Option<Expr>) -> Expr {
        use ExprKind::*;
        match self.kind() {
            Const(n, ls) => f(n, ls).unwrap_or_else(|| self.clone()),
            App(g, a) => Expr::app(g.replace_consts(f), a.replace_consts(f)),
            Lam(nm, t, b, bi) => {
                Expr::lam(nm.clone(), t.replace_consts(f), b.replace_consts(f), *bi)
            }
            ForallE(nm, t, b, bi) => {
                Expr::forall_e(nm.clone(), t.replace_consts(f), b.replace_consts(f), *bi)
            }
            LetE(nm, t, v, b, nd) => Expr::let_e(
                nm.clone(),
                t.replace_consts(f),
                v.replace_consts(f),
                b.replace_consts(f),
                *nd,
            ),
            MData(e) => Expr::mdata(e.replace_consts(f)),
            Proj(nm, i, e) => Expr::proj(nm.clone(), *i, e.replace_consts(f)),
            _ => self.clone(),
        }
    }

    /// One lazy unfolding step of a Nat literal: 0 ↦ `Nat.zero`,
    /// n+1 ↦ `Nat.succ (n : Nat literal)`.
    pub fn nat_lit_ctor_view(&self) -> Option<Expr> {
        match self.unwrap_mdata().kind() {
            ExprKind::Lit(Literal::Nat(n)) => {
                if n.is_zero() {
                    Some(Expr::const_(Name::from_parts("Nat.zero"), vec![]))
                } else {
                    Some(Expr::app(
                        Expr::const_(Name::from_parts("Nat.succ"), vec![]),
                        Expr::lit(Literal::Nat(n - BigUint::one())),
                    ))
                }
            }
            _ => None,
        }
    }

    /// Unfolds a String literal into `String.mk` applied to a `List Char` of
    /// `Char.ofNat` codepoints.
    pub fn str_lit_view(&self) -> Option<Expr> {
        let ExprKind::Lit(Literal::Str(s)) = self.unwrap_mdata().kind() else {
            return None;
        };
        let char_ty = Expr::const_(Name::from_parts("Char"), vec![]);
        let lvl = vec![Level::zero()];
        let nil = Expr::app(
            Expr::const_(Name::from_parts("List.nil"), lvl.clone()),
            char_ty.clone(),
        );
        let cons = Expr::const_(Name::from_parts("List.cons"), lvl);
        let of_nat = Expr::const_(Name::from_parts("Char.ofNat"), vec![]);
        let mut list = nil;
        for c in s.chars().rev() {
            let ch = Expr::app(of_nat.clone(), Expr::nat_lit(c as u64));
            list = Expr::app_n(cons.clone(), [char_ty.clone(), ch, list]);
        }
        Some(Expr::app(
            Expr::const_(Name::from_parts("String.mk"), vec![]),
            list,
        ))
    }

    /// Head-beta reduces `(λ…λ. b) a₁ … aₙ` only when no binder traversal is
    /// needed: the residual body is closed, or is itself one of the arguments.
    /// Otherwise returns the expression unchanged.
    pub fn cheap_beta_reduce(&self) -> Expr {
        if !self.is_app() {
            return self.clone();
        }
        let fun = self.get_app_fn();
        if !matches!(fun.kind(), ExprKind::Lam(..)) {
            return self.clone();
        }
        let args = self.get_app_args();
        let mut i = 0usize;
        let mut body = fun;
        while i < args.len() {
            if let ExprKind::Lam(_, _, b, _) = body.kind() {
                body = b;
                i += 1;
            } else {
                break;
            }
        }
        if !body.has_loose_bvars() {
            Expr::app_n(body.clone(), args[i..].iter().cloned())
        } else if let ExprKind::BVar(j) = body.kind() {
            let j = *j as usize;
            if j < i {
                Expr::app_n(args[i - 1 - j].clone(), args[i..].iter().cloned())
            } else {
                self.clone()
            }
        } else {
            self.clone()
        }
    }
}

impl fmt::Debug for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use ExprKind::*;
        match self.kind() {
            BVar(i) => write!(f, "#{i}"),
            FVar(id) => write!(f, "fv{}", id.0),
            MVar(id) => write!(f, "?m{}", id.0),
            Sort(l) => write!(f, "Sort {l:?}"),
            Const(n, ls) => {
                write!(f, "{n}")?;
                if !ls.is_empty() {
                    write!(f, ".{{")?;
                    for (i, l) in ls.iter().enumerate() {
                        if i > 0 {
                            write!(f, ", ")?;
                        }
                        write!(f, "{l:?}")?;
                    }
                    write!(f, "}}")?;
                }
                Ok(())
            }
            App(g, a) => write!(f, "({g:?} {a:?})"),
            Lam(n, t, b, _) => write!(f, "(fun ({n} : {t:?}) => {b:?})"),
            ForallE(n, t, b, _) => write!(f, "(({n} : {t:?}) -> {b:?})"),
            LetE(n, t, v, b, _) => write!(f, "(let {n} : {t:?} := {v:?}; {b:?})"),
            Lit(Literal::Nat(n)) => write!(f, "{n}"),
            Lit(Literal::Str(s)) => write!(f, "{s:?}"),
            MData(e) => write!(f, "[md]{e:?}"),
            Proj(n, i, e) => write!(f, "{e:?}.({n}.{i})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nm(s: &str) -> Name {
        Name::from_parts(s)
    }

    #[test]
    fn lift_examples() {
        assert_eq!(Expr::bvar(0).lift(1, 0), Expr::bvar(1));
        assert_eq!(Expr::bvar(0).lift(1, 1), Expr::bvar(0));
        let a = Expr::const_(nm("A"), vec![]);
        let l = Expr::lam(nm("x"), a.clone(), Expr::bvar(0), BinderInfo::Default);
        assert_eq!(l.lift(3, 0), l);
        let l2 = Expr::lam(nm("x"), Expr::bvar(0), Expr::bvar(2), BinderInfo::Default);
        assert_eq!(
            l2.lift(3, 0),
            Expr::lam(nm("x"), Expr::bvar(3), Expr::bvar(5), BinderInfo::Default)
        );
    }

    #[test]
    fn lift_laws() {
        let e = Expr::app(Expr::bvar(2), Expr::lam(nm("x"), Expr::bvar(0), Expr::bvar(4), BinderInfo::Default));
        assert_eq!(e.lift(0, 1), e);
        assert_eq!(e.lift(2, 1).lift(3, 1), e.lift(5, 1));
    }

    #[test]
    fn instantiate_rev_examples() {
        let a = Expr::const_(nm("a"), vec![]);
        let b = Expr::const_(nm("b"), vec![]);
        assert_eq!(Expr::bvar(0).instantiate_rev(&[a.clone(), b.clone()]), b);
        assert_eq!(
            Expr::app(Expr::bvar(1), Expr::bvar(0)).instantiate_rev(&[a.clone(), b.clone()]),
            Expr::app(a.clone(), b)
        );
        let c = Expr::const_(nm("c"), vec![]);
        assert_eq!(c.instantiate_rev(&[a]), c);
    }

    #[test]
    fn instantiate_rev_matches_iterated_single_substitution() {
        // instantiate_rev [a, b] == instantiate bvar0 with b, then with a
        let e = Expr::app(
            Expr::app(Expr::bvar(1), Expr::bvar(0)),
            Expr::lam(nm("x"), Expr::bvar(1), Expr::bvar(2), BinderInfo::Default),
        );
        let a = Expr::const_(nm("a"), vec![]);
        let b = Expr::const_(nm("b"), vec![]);
        let multi = e.instantiate_rev(&[a.clone(), b.clone()]);
        let single = e.instantiate(&b).instantiate(&a);
        assert_eq!(multi, single);
    }

    #[test]
    fn abstract_round_trip() {
        let a = FVarId(1);
        let b = FVarId(2);
        assert_eq!(Expr::fvar(a).abstract_fvars(&[a]), Expr::bvar(0));
        assert_eq!(
            Expr::app(Expr::fvar(a), Expr::fvar(b)).abstract_fvars(&[a, b]),
            Expr::app(Expr::bvar(1), Expr::bvar(0))
        );
        let e = Expr::app(
            Expr::fvar(a),
            Expr::lam(nm("x"), Expr::fvar(b), Expr::bvar(0), BinderInfo::Default),
        );
        let fv = [a, b];
        let rt = e
            .abstract_fvars(&fv)
            .instantiate_rev(&[Expr::fvar(a), Expr::fvar(b)]);
        assert_eq!(rt, e);
    }

    #[test]
    fn nat_lit_view() {
        assert_eq!(
            Expr::nat_lit(0).nat_lit_ctor_view().unwrap(),
            Expr::const_(nm("Nat.zero"), vec![])
        );
        assert_eq!(
            Expr::nat_lit(2).nat_lit_ctor_view().unwrap(),
            Expr::app(Expr::const_(nm("Nat.succ"), vec![]), Expr::nat_lit(1))
        );
        // fully iterating 1 gives succ zero
        let one = Expr::nat_lit(1).nat_lit_ctor_view().unwrap();
        let ExprKind::App(f, arg) = one.kind() else {
            panic!()
        };
        assert_eq!(f.const_name().unwrap(), &nm("Nat.succ"));
        assert_eq!(
            arg.nat_lit_ctor_view().unwrap(),
            Expr::const_(nm("Nat.zero"), vec![])
        );
        assert!(Expr::lit(Literal::Str("x".into())).nat_lit_ctor_view().is_none());
    }

    #[test]
    fn str_lit_view_examples() {
        let empty = Expr::lit(Literal::Str(String::new())).str_lit_view().unwrap();
        let ExprKind::App(f, l) = empty.kind() else {
            panic!()
        };
        assert_eq!(f.const_name().unwrap(), &nm("String.mk"));
        assert_eq!(l.get_app_fn().const_name().unwrap(), &nm("List.nil"));

        let a = Expr::lit(Literal::Str("a".into())).str_lit_view().unwrap();
        let ExprKind::App(_, l) = a.kind() else { panic!() };
        assert_eq!(l.get_app_fn().const_name().unwrap(), &nm("List.cons"));
        let args = l.get_app_args();
        // cons Char (Char.ofNat 97) nil
        assert_eq!(args.len(), 3);
        assert_eq!(args[1].get_app_args()[0], Expr::nat_lit(97));
    }

    #[test]
    fn cheap_beta_examples() {
        let a = Expr::const_(nm("a"), vec![]);
        let b = Expr::const_(nm("b"), vec![]);
        let alpha = Expr::const_(nm("A"), vec![]);
        let id = Expr::lam(nm("x"), alpha.clone(), Expr::bvar(0), BinderInfo::Default);
        assert_eq!(Expr::app(id, a.clone()).cheap_beta_reduce(), a);
        let no_lam = Expr::app(Expr::const_(nm("f"), vec![]), a.clone());
        assert_eq!(no_lam.cheap_beta_reduce(), no_lam);
        // (fun x y => x) a b → a
        let k = Expr::lam(
            nm("x"),
            alpha.clone(),
            Expr::lam(nm("y"), alpha, Expr::bvar(1), BinderInfo::Default),
            BinderInfo::Default,
        );
        assert_eq!(Expr::app_n(k, [a.clone(), b]).cheap_beta_reduce(), a);
    }

    #[test]
    fn cheap_beta_is_idempotent_on_output() {
        let alpha = Expr::const_(nm("A"), vec![]);
        let e = Expr::app_n(
            Expr::lam(nm("x"), alpha.clone(), Expr::bvar(0), BinderInfo::Default),
            [Expr::app(
                Expr::lam(nm("y"), alpha, Expr::bvar(0), BinderInfo::Default),
                Expr::const_(nm("a"), vec![]),
            )],
        );
        let r = e.cheap_beta_reduce();
        assert_eq!(r.cheap_beta_reduce(), r);
    }

    #[test]
    fn cached_flags_match_naive_recomputation() {
        fn naive_loose(e: &Expr, k: u32) -> u32 {
            use ExprKind::*;
            match e.kind() {
                BVar(i) => {
                    if *i >= k {
                        i + 1 - k
                    } else {
                        0
                    }
                }
                App(f, a) => naive_loose(f, k).max(naive_loose(a, k)),
                Lam(_, t, b, _) | ForallE(_, t, b, _) => {
                    naive_loose(t, k).max(naive_loose(b, k + 1))
                }
                LetE(_, t, v, b, _) => naive_loose(t, k)
                    .max(naive_loose(v, k))
                    .max(naive_loose(b, k + 1)),
                MData(e) | Proj(_, _, e) => naive_loose(e, k),
                _ => 0,
            }
        }
        let samples = [
            Expr::app(Expr::bvar(3), Expr::fvar(FVarId(0))),
            Expr::lam(
                nm("x"),
                Expr::bvar(1),
                Expr::app(Expr::bvar(0), Expr::bvar(5)),
                BinderInfo::Default,
            ),
            Expr::let_e(nm("x"), Expr::bvar(0), Expr::bvar(1), Expr::bvar(2), false),
            Expr::proj(nm("S"), 0, Expr::mdata(Expr::bvar(7))),
        ];
        for e in samples {
            assert_eq!(e.loose_bvar_range(), naive_loose(&e, 0), "{e:?}");
        }
    }

    #[test]
    fn mdata_hashes_differently() {
        let e = Expr::const_(nm("c"), vec![]);
        assert_ne!(Expr::mdata(e.clone()).hash(), e.hash());
        assert_ne!(Expr::mdata(e.clone()), e);
    }
}
