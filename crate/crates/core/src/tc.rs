//! The kernel algorithms: type inference/checking, weak head normalization,
//! and definitional equality, with fuel-limited recursion, per-declaration
//! caches, and a locally-nameless local context.
//!
//! Fuel is consumed only at the four cut points (`infer_type`, `whnf`,
//! `whnf_core`, `is_def_eq_core`); structural recursion within one operation
//! is unfueled. Exhaustion raises `DeepRecursion` instead of diverging.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::env::{ConstantKind, Environment, QuotKind};
use crate::error::KernelError;
use crate::expr::{BinderInfo, Expr, ExprKind, FVarId, Literal};
use crate::level::Level;
use crate::name::Name;

type Result<T> = std::result::Result<T, KernelError>;

#[derive(Clone, Debug)]
pub struct LocalDecl {
    pub fvar: FVarId,
    pub user_name: Name,
    pub ty: Expr,
    pub info: BinderInfo,
    /// Present iff this is a let binding.
    pub value: Option<Expr>,
}

/// Ordered free-variable context. A declaration's type and value mention only
/// earlier fvars.
#[derive(Clone, Default)]
pub struct LocalContext {
    decls: Vec<LocalDecl>,
    index: HashMap<FVarId, usize>,
}

impl LocalContext {
    pub fn get(&self, id: FVarId) -> Option<&LocalDecl> {
        self.index.get(&id).map(|&i| &self.decls[i])
    }

    pub fn len(&self) -> usize {
        self.decls.len()
    }

    pub fn is_empty(&self) -> bool {
        self.decls.is_empty()
    }

    fn push(&mut self, decl: LocalDecl) {
        self.index.insert(decl.fvar, self.decls.len());
        self.decls.push(decl);
    }

    fn truncate(&mut self, len: usize) {
        for d in self.decls.drain(len..) {
            self.index.remove(&d.fvar);
        }
    }

    /// Wraps `body` in `ForallE` binders for `fvars` (innermost last), using
    /// each fvar's declared name, type, and binder info. Let-declared fvars
    /// produce `LetE` binders.
    pub fn mk_forall_telescope(&self, fvars: &[FVarId], body: &Expr) -> Result<Expr> {
        self.mk_binding_telescope(false, fvars, body)
    }

    pub fn mk_lambda_telescope(&self, fvars: &[FVarId], body: &Expr) -> Result<Expr> {
        self.mk_binding_telescope(true, fvars, body)
    }

    fn mk_binding_telescope(&self, lam: bool, fvars: &[FVarId], body: &Expr) -> Result<Expr> {
        let mut r = body.abstract_fvars(fvars);
        for (k, id) in fvars.iter().enumerate().rev() {
            let decl = self.get(*id).ok_or(KernelError::UnknownFVar)?;
            let ty = decl.ty.abstract_fvars(&fvars[..k]);
            r = match &decl.value {
                Some(v) => Expr::let_e(
                    decl.user_name.clone(),
                    ty,
                    v.abstract_fvars(&fvars[..k]),
                    r,
                    false,
                ),
                None if lam => Expr::lam(decl.user_name.clone(), ty, r, decl.info),
                None => Expr::forall_e(decl.user_name.clone(), ty, r, decl.info),
            };
        }
        Ok(r)
    }
}

/// Operation counters surfaced in check reports.
#[derive(Clone, Copy, Default, Debug)]
pub struct Stats {
    pub defeq_calls: u64,
    pub whnf_calls: u64,
    pub fuel_high_water: u64,
}

pub struct TypeChecker<'e> {
    env: &'e Environment,
    level_params: Vec<Name>,
    lctx: LocalContext,
    fvar_counter: u64,
    fuel_limit: u64,
    depth: u64,
    caches_enabled: bool,
    // keyed by inferOnly flag
    infer_cache: [HashMap<Expr, Expr>; 2],
    whnf_cache: HashMap<Expr, Expr>,
    whnf_core_cache: HashMap<Expr, Expr>,
    defeq_cache: HashMap<(Expr, Expr), bool>,
    stats: Stats,
}

impl<'e> TypeChecker<'e> {
    pub fn new(env: &'e Environment, level_params: Vec<Name>, fuel: u64) -> TypeChecker<'e> {
        TypeChecker {
            env,
            level_params,
            lctx: LocalContext::default(),
            fvar_counter: 0,
            fuel_limit: fuel,
            depth: 0,
            caches_enabled: true,
            infer_cache: [HashMap::new(), HashMap::new()],
            whnf_cache: HashMap::new(),
            whnf_core_cache: HashMap::new(),
            defeq_cache: HashMap::new(),
            stats: Stats::default(),
        }
    }

    pub fn set_caches_enabled(&mut self, enabled: bool) {
        self.caches_enabled = enabled;
        self.infer_cache = [HashMap::new(), HashMap::new()];
        self.whnf_cache.clear();
        self.whnf_core_cache.clear();
        self.defeq_cache.clear();
    }

    pub fn stats(&self) -> Stats {
        self.stats
    }

    pub fn env(&self) -> &'e Environment {
        self.env
    }

    pub fn lctx(&self) -> &LocalContext {
        &self.lctx
    }

    pub fn fresh_fvar(
        &mut self,
        user_name: Name,
        ty: Expr,
        info: BinderInfo,
        value: Option<Expr>,
    ) -> FVarId {
        let id = FVarId(self.fvar_counter);
        self.fvar_counter += 1;
        self.lctx.push(LocalDecl {
            fvar: id,
            user_name,
            ty,
            info,
            value,
        });
        id
    }

    fn spend_fuel<T>(
        &mut self,
        context: &'static str,
        f: impl FnOnce(&mut Self) -> Result<T>,
    ) -> Result<T> {
        if self.depth >= self.fuel_limit {
            return Err(KernelError::DeepRecursion { context });
        }
        self.depth += 1;
        if self.depth > self.stats.fuel_high_water {
            self.stats.fuel_high_water = self.depth;
        }
        let r = f(self);
        self.depth -= 1;
        r
    }

    // ------------------------------------------------------------------
    // Type inference

    /// Infers the type of `e`. With `infer_only` set, redundant checks are
    /// skipped (the result is only meaningful for well-typed input).
    pub fn infer_type(&mut self, e: &Expr, infer_only: bool) -> Result<Expr> {
        self.spend_fuel("inferring a type", |s| s.infer_type_cached(e, infer_only))
    }

    fn infer_type_cached(&mut self, e: &Expr, infer_only: bool) -> Result<Expr> {
        if e.has_mvar() {
            return Err(KernelError::MVarEncountered);
        }
        if let Some(t) = self.infer_cache[infer_only as usize].get(e) {
            return Ok(t.clone());
        }
        let t = self.infer_type_core(e, infer_only)?;
        if self.caches_enabled {
            self.infer_cache[infer_only as usize].insert(e.clone(), t.clone());
        }
        Ok(t)
    }

    fn infer_type_core(&mut self, e: &Expr, infer_only: bool) -> Result<Expr> {
        match e.kind() {
            ExprKind::BVar(i) => Err(KernelError::LooseBVar { idx: *i }),
            ExprKind::MVar(_) => Err(KernelError::MVarEncountered),
            ExprKind::FVar(id) => self
                .lctx
                .get(*id)
                .map(|d| d.ty.clone())
                .ok_or(KernelError::UnknownFVar),
            ExprKind::Sort(l) => {
                if !infer_only {
                    self.check_level(l)?;
                }
                Ok(Expr::sort(Level::succ(l.clone())))
            }
            ExprKind::Const(n, ls) => self.infer_const(n, ls, infer_only),
            ExprKind::App(..) => self.infer_app(e, infer_only),
            ExprKind::Lam(..) => self.infer_lambda(e, infer_only),
            ExprKind::ForallE(..) => self.infer_forall(e, infer_only),
            ExprKind::LetE(..) => self.infer_let(e, infer_only),
            ExprKind::Lit(Literal::Nat(_)) => Ok(Expr::const_(Name::from_parts("Nat"), vec![])),
            ExprKind::Lit(Literal::Str(_)) => {
                Ok(Expr::const_(Name::from_parts("String"), vec![]))
            }
            ExprKind::MData(inner) => self.infer_type_cached(inner, infer_only),
            ExprKind::Proj(n, i, s) => self.infer_proj(n, *i, s, infer_only),
        }
    }

    fn check_level(&self, l: &Level) -> Result<()> {
        let mut ps = Vec::new();
        l.collect_params(&mut ps);
        for p in ps {
            if !self.level_params.contains(&p) {
                return Err(KernelError::UnboundLevelParam { name: p });
            }
        }
        Ok(())
    }

    fn infer_const(&mut self, n: &Name, ls: &[Level], infer_only: bool) -> Result<Expr> {
        let info = self
            .env
            .find(n)
            .ok_or_else(|| KernelError::UnknownConstant { name: n.clone() })?;
        if info.level_params.len() != ls.len() {
            return Err(KernelError::LevelArityMismatch {
                name: n.clone(),
                expected: info.level_params.len(),
                got: ls.len(),
            });
        }
        if !infer_only {
            for l in ls {
                self.check_level(l)?;
            }
        }
        Ok(info.ty.instantiate_level_params(&info.level_params, ls))
    }

    fn infer_app(&mut self, e: &Expr, infer_only: bool) -> Result<Expr> {
        let f = e.get_app_fn().clone();
        let args = e.get_app_args();
        let mut ty = self.infer_type_cached(&f, infer_only)?;
        for arg in &args {
            let ty_w = self.ensure_forall(&ty)?;
            let ExprKind::ForallE(_, dom, body, _) = ty_w.kind() else {
                unreachable!("ensure_forall returns a forall");
            };
            if !infer_only {
                let arg_ty = self.infer_type_cached(arg, infer_only)?;
                if !self.is_def_eq(&arg_ty, dom)? {
                    return Err(KernelError::DefeqFailure {
                        lhs: arg_ty,
                        rhs: dom.clone(),
                        context: format!("argument `{arg:?}` type mismatch"),
                    });
                }
            }
            ty = body.instantiate(arg);
        }
        Ok(ty)
    }

    fn infer_lambda(&mut self, e: &Expr, infer_only: bool) -> Result<Expr> {
        let saved = self.lctx.len();
        let mut fvars: Vec<Expr> = Vec::new();
        let mut fvids: Vec<FVarId> = Vec::new();
        let mut cur = e.clone();
        loop {
            match cur.kind().clone() {
                ExprKind::Lam(name, dom, body, bi) => {
                    let d = dom.instantiate_rev(&fvars);
                    let id = self.fresh_fvar(name, d.clone(), bi, None);
                    fvars.push(Expr::fvar(id));
                    fvids.push(id);
                    if !infer_only {
                        let dty = self.infer_type_cached(&d, infer_only)?;
                        self.ensure_sort(&dty, &d)?;
                    }
                    cur = body;
                }
                _ => break,
            }
        }
        let r = self.infer_type_cached(&cur.instantiate_rev(&fvars), infer_only)?;
        let r = r.cheap_beta_reduce();
        let out = self.lctx.mk_forall_telescope(&fvids, &r)?;
        self.lctx.truncate(saved);
        Ok(out)
    }

    fn infer_forall(&mut self, e: &Expr, infer_only: bool) -> Result<Expr> {
        let saved = self.lctx.len();
        let mut fvars: Vec<Expr> = Vec::new();
        let mut levels: Vec<Level> = Vec::new();
        let mut cur = e.clone();
        loop {
            match cur.kind().clone() {
                ExprKind::ForallE(name, dom, body, bi) => {
                    let d = dom.instantiate_rev(&fvars);
                    let dty = self.infer_type_cached(&d, infer_only)?;
                    levels.push(self.ensure_sort(&dty, &d)?);
                    let id = self.fresh_fvar(name, d, bi, None);
                    fvars.push(Expr::fvar(id));
                    cur = body;
                }
                _ => break,
            }
        }
        let bty = self.infer_type_cached(&cur.instantiate_rev(&fvars), infer_only)?;
        let mut l = self.ensure_sort(&bty, &cur)?;
        for li in levels.into_iter().rev() {
            l = imax_simp(li, l);
        }
        self.lctx.truncate(saved);
        Ok(Expr::sort(l))
    }

    fn infer_let(&mut self, e: &Expr, infer_only: bool) -> Result<Expr> {
        let saved = self.lctx.len();
        let mut fvars: Vec<Expr> = Vec::new();
        let mut fvids: Vec<FVarId> = Vec::new();
        let mut cur = e.clone();
        loop {
            match cur.kind().clone() {
                ExprKind::LetE(name, ty, val, body, _) => {
                    let t = ty.instantiate_rev(&fvars);
                    let v = val.instantiate_rev(&fvars);
                    if !infer_only {
                        let tty = self.infer_type_cached(&t, infer_only)?;
                        self.ensure_sort(&tty, &t)?;
                        let vty = self.infer_type_cached(&v, infer_only)?;
                        if !self.is_def_eq(&vty, &t)? {
                            return Err(KernelError::DefeqFailure {
                                lhs: vty,
                                rhs: t,
                                context: "let binding value type mismatch".into(),
                            });
                        }
                    }
                    let id = self.fresh_fvar(name, t, BinderInfo::Default, Some(v));
                    fvars.push(Expr::fvar(id));
                    fvids.push(id);
                    cur = body;
                }
                _ => break,
            }
        }
        let r = self.infer_type_cached(&cur.instantiate_rev(&fvars), infer_only)?;
        let r = r.cheap_beta_reduce();
        let out = self.lctx.mk_forall_telescope(&fvids, &r)?;
        self.lctx.truncate(saved);
        Ok(out)
    }

    fn infer_proj(&mut self, ty_name: &Name, idx: u32, s: &Expr, infer_only: bool) -> Result<Expr> {
        let bad = |reason: &str| KernelError::InvalidProjection {
            ty_name: ty_name.clone(),
            idx,
            structure: s.clone(),
            reason: reason.to_string(),
        };
        let s_ty = self.infer_type_cached(s, infer_only)?;
        let s_ty = self.whnf(&s_ty)?;
        let head = s_ty.get_app_fn().clone();
        let ExprKind::Const(ind_name, levels) = head.kind() else {
            return Err(bad("structure value's type is not an inductive application"));
        };
        if ind_name != ty_name {
            return Err(bad("projection type name does not match the value's type"));
        }
        let info = self
            .env
            .find(ind_name)
            .ok_or_else(|| KernelError::UnknownConstant {
                name: ind_name.clone(),
            })?;
        let ConstantKind::Inductive {
            num_params,
            ctor_names,
            is_structure_like,
            is_prop,
            ..
        } = &info.kind
        else {
            return Err(bad("not an inductive type"));
        };
        if !is_structure_like {
            return Err(bad("not structure-like"));
        }
        let is_prop = *is_prop;
        let ctor_name = ctor_names[0].clone();
        let ctor = self.env.find(&ctor_name).expect("ctor exists").clone();
        let args = s_ty.get_app_args();
        if args.len() != *num_params as usize {
            return Err(bad("wrong number of parameters in the structure type"));
        }
        let mut r = ctor.ty.instantiate_level_params(&ctor.level_params, levels);
        for arg in &args {
            let next = match r.unwrap_mdata().kind() {
                ExprKind::ForallE(_, _, body, _) => body.instantiate(arg),
                _ => return Err(bad("constructor telescope too short for parameters")),
            };
            r = next;
        }
        for j in 0..idx {
            let r_w = if matches!(r.unwrap_mdata().kind(), ExprKind::ForallE(..)) {
                r.clone()
            } else {
                self.whnf(&r)?
            };
            let ExprKind::ForallE(_, _, body, _) = r_w.unwrap_mdata().kind() else {
                return Err(bad("projection index out of range"));
            };
            r = body.instantiate(&Expr::proj(ty_name.clone(), j, s.clone()));
        }
        let r_w = if matches!(r.unwrap_mdata().kind(), ExprKind::ForallE(..)) {
            r.clone()
        } else {
            self.whnf(&r)?
        };
        let ExprKind::ForallE(_, dom, _, _) = r_w.unwrap_mdata().kind() else {
            return Err(bad("projection index out of range"));
        };
        if is_prop {
            // A Prop structure may only be projected to Prop fields.
            let dom_sort = self.infer_type_cached(dom, true)?;
            let l = self.ensure_sort(&dom_sort, dom)?;
            if !l.is_always_zero() {
                return Err(bad("projection of data out of a proposition"));
            }
        }
        Ok(dom.clone())
    }

    /// Checks that `ty` is a type and returns its sort level.
    pub fn check_is_type(&mut self, ty: &Expr) -> Result<Level> {
        let s = self.infer_type(ty, false)?;
        self.ensure_sort(&s, ty)
    }

    /// Checks `value : ty`.
    pub fn check_value(&mut self, value: &Expr, ty: &Expr) -> Result<()> {
        let vty = self.infer_type(value, false)?;
        if self.is_def_eq(&vty, ty)? {
            Ok(())
        } else {
            Err(KernelError::DefeqFailure {
                lhs: vty,
                rhs: ty.clone(),
                context: "declaration value does not have its stated type".into(),
            })
        }
    }

    /// Reduces until the head is a `Sort`, or fails with `TypeExpected`.
    pub fn ensure_sort(&mut self, e: &Expr, orig: &Expr) -> Result<Level> {
        if let ExprKind::Sort(l) = e.unwrap_mdata().kind() {
            return Ok(l.clone());
        }
        let w = self.whnf(e)?;
        match w.unwrap_mdata().kind() {
            ExprKind::Sort(l) => Ok(l.clone()),
            _ => Err(KernelError::TypeExpected { found: orig.clone() }),
        }
    }

    /// Reduces until the head is a `ForallE`, or fails with `FunctionExpected`.
    pub fn ensure_forall(&mut self, e: &Expr) -> Result<Expr> {
        if matches!(e.unwrap_mdata().kind(), ExprKind::ForallE(..)) {
            return Ok(e.clone());
        }
        let w = self.whnf(e)?;
        match w.unwrap_mdata().kind() {
            ExprKind::ForallE(..) => Ok(w.clone()),
            _ => Err(KernelError::FunctionExpected { found: e.clone() }),
        }
    }

    // ------------------------------------------------------------------
    // Weak head normalization

    pub fn whnf(&mut self, e: &Expr) -> Result<Expr> {
        self.stats.whnf_calls += 1;
        match e.kind() {
            ExprKind::Sort(_)
            | ExprKind::Lam(..)
            | ExprKind::ForallE(..)
            | ExprKind::Lit(_)
            | ExprKind::BVar(_)
            | ExprKind::MVar(_) => return Ok(e.clone()),
            _ => {}
        }
        if let Some(r) = self.whnf_cache.get(e) {
            return Ok(r.clone());
        }
        let r = self.spend_fuel("computing a weak head normal form", |s| {
            let mut t = e.clone();
            loop {
                let t1 = s.whnf_core(&t, false, false)?;
                if let Some(t2) = s.reduce_nat_native(&t1)? {
                    t = t2;
                    continue;
                }
                if let Some(t2) = s.delta_unfold_head(&t1) {
                    t = t2;
                    continue;
                }
                return Ok(t1);
            }
        })?;
        if self.caches_enabled {
            self.whnf_cache.insert(e.clone(), r.clone());
        }
        Ok(r)
    }

    /// Like `whnf` but performs no delta-unfolding of constants. `cheap_rec`
    /// and `cheap_proj` suppress full normalization of recursor majors and
    /// projection structs respectively.
    pub fn whnf_core(&mut self, e: &Expr, cheap_rec: bool, cheap_proj: bool) -> Result<Expr> {
        let cacheable = !cheap_rec && !cheap_proj;
        if cacheable {
            if let Some(r) = self.whnf_core_cache.get(e) {
                return Ok(r.clone());
            }
        }
        let r = self.spend_fuel("computing a weak head normal form", |s| {
            s.whnf_core_inner(e, cheap_rec, cheap_proj)
        })?;
        if cacheable && self.caches_enabled {
            self.whnf_core_cache.insert(e.clone(), r.clone());
        }
        Ok(r)
    }

    fn whnf_core_inner(&mut self, e: &Expr, cheap_rec: bool, cheap_proj: bool) -> Result<Expr> {
        match e.kind() {
            ExprKind::MData(inner) => self.whnf_core_inner(inner, cheap_rec, cheap_proj),
            ExprKind::FVar(id) => match self.lctx.get(*id).and_then(|d| d.value.clone()) {
                // zeta: unfold let-bound fvars
                Some(v) => self.whnf_core(&v, cheap_rec, cheap_proj),
                None => Ok(e.clone()),
            },
            ExprKind::LetE(_, _, val, body, _) => {
                self.whnf_core(&body.instantiate(val), cheap_rec, cheap_proj)
            }
            ExprKind::Proj(ty_name, idx, s) => {
                match self.reduce_proj(ty_name, *idx, s, cheap_rec, cheap_proj)? {
                    Some(r) => self.whnf_core(&r, cheap_rec, cheap_proj),
                    None => Ok(e.clone()),
                }
            }
            ExprKind::App(..) => {
                let f = e.get_app_fn().clone();
                match f.kind() {
                    ExprKind::Lam(..) => {
                        // beta
                        let args = e.get_app_args();
                        let mut body = f.clone();
                        let mut n = 0usize;
                        while n < args.len() {
                            let next = match body.kind() {
                                ExprKind::Lam(_, _, b, _) => b.clone(),
                                _ => break,
                            };
                            body = next;
                            n += 1;
                        }
                        let r = body.instantiate_rev(&args[..n]);
                        let r = Expr::app_n(r, args[n..].iter().cloned());
                        self.whnf_core(&r, cheap_rec, cheap_proj)
                    }
                    ExprKind::LetE(_, _, val, body, _) => {
                        let args = e.get_app_args();
                        let r = Expr::app_n(body.instantiate(val), args);
                        self.whnf_core(&r, cheap_rec, cheap_proj)
                    }
                    ExprKind::FVar(id) => {
                        match self.lctx.get(*id).and_then(|d| d.value.clone()) {
                            Some(v) => {
                                let args = e.get_app_args();
                                self.whnf_core(&Expr::app_n(v, args), cheap_rec, cheap_proj)
                            }
                            None => Ok(e.clone()),
                        }
                    }
                    ExprKind::Const(..) => {
                        match self.reduce_recursor(e, cheap_rec, cheap_proj)? {
                            Some(r) => self.whnf_core(&r, cheap_rec, cheap_proj),
                            None => Ok(e.clone()),
                        }
                    }
                    _ => Ok(e.clone()),
                }
            }
            ExprKind::Const(..) => match self.reduce_recursor(e, cheap_rec, cheap_proj)? {
                Some(r) => self.whnf_core(&r, cheap_rec, cheap_proj),
                None => Ok(e.clone()),
            },
            _ => Ok(e.clone()),
        }
    }

    fn reduce_proj(
        &mut self,
        ty_name: &Name,
        idx: u32,
        s: &Expr,
        cheap_rec: bool,
        cheap_proj: bool,
    ) -> Result<Option<Expr>> {
        let mut sv = if cheap_proj {
            self.whnf_core(s, cheap_rec, cheap_proj)?
        } else {
            self.whnf(s)?
        };
        if let Some(v) = sv.str_lit_view() {
            sv = v;
        }
        let head = sv.get_app_fn().clone();
        let ExprKind::Const(cname, _) = head.kind() else {
            return Ok(None);
        };
        let Some(cinfo) = self.env.find(cname) else {
            return Ok(None);
        };
        let ConstantKind::Constructor {
            induct,
            num_params,
            num_fields,
            ..
        } = &cinfo.kind
        else {
            return Ok(None);
        };
        if induct != ty_name {
            return Ok(None);
        }
        let args = sv.get_app_args();
        if args.len() != (*num_params + *num_fields) as usize || idx >= *num_fields {
            return Ok(None);
        }
        Ok(Some(args[*num_params as usize + idx as usize].clone()))
    }

    /// Iota, quotient, and K-like reduction of a recursor application.
    fn reduce_recursor(
        &mut self,
        e: &Expr,
        cheap_rec: bool,
        cheap_proj: bool,
    ) -> Result<Option<Expr>> {
        let f = e.get_app_fn().clone();
        let ExprKind::Const(name, levels) = f.kind() else {
            return Ok(None);
        };
        let Some(info) = self.env.find(name) else {
            return Ok(None);
        };
        match &info.kind {
            ConstantKind::Quot { kind: QuotKind::Lift } => {
                self.reduce_quot(e, 5, 3, cheap_rec, cheap_proj)
            }
            ConstantKind::Quot { kind: QuotKind::Ind } => {
                self.reduce_quot(e, 4, 3, cheap_rec, cheap_proj)
            }
            ConstantKind::Recursor {
                all_names,
                num_params,
                num_indices,
                num_motives,
                num_minors,
                rules,
                k,
            } => {
                let all_names = all_names.clone();
                let (num_params, num_indices) = (*num_params, *num_indices);
                let (num_motives, num_minors) = (*num_motives, *num_minors);
                let rules = rules.clone();
                let k = *k;
                let major_pos =
                    (num_params + num_motives + num_minors + num_indices) as usize;
                let rec_level_params = info.level_params.clone();
                let args = e.get_app_args();
                if args.len() <= major_pos {
                    return Ok(None);
                }
                let mut major = if cheap_rec {
                    self.whnf_core(&args[major_pos], cheap_rec, cheap_proj)?
                } else {
                    self.whnf(&args[major_pos])?
                };
                if let Some(v) = major.nat_lit_ctor_view() {
                    major = v;
                } else if let Some(v) = major.str_lit_view() {
                    major = v;
                }
                if k {
                    if let Some(m) = self.to_ctor_when_k(&all_names, &major)? {
                        major = m;
                    }
                }
                let chead = major.get_app_fn().clone();
                let ExprKind::Const(cname, _) = chead.kind() else {
                    return Ok(None);
                };
                let Some(rule) = rules.iter().find(|r| &r.ctor == cname) else {
                    return Ok(None);
                };
                let Some(cinfo) = self.env.find(cname) else {
                    return Ok(None);
                };
                let ConstantKind::Constructor {
                    num_params: cnp,
                    num_fields: cnf,
                    ..
                } = &cinfo.kind
                else {
                    return Ok(None);
                };
                let major_args = major.get_app_args();
                if major_args.len() != (*cnp + *cnf) as usize {
                    return Ok(None);
                }
                let rhs = rule.rhs.instantiate_level_params(&rec_level_params, levels);
                let mut r = Expr::app_n(
                    rhs,
                    args[..major_pos - num_indices as usize].iter().cloned(),
                );
                r = Expr::app_n(r, major_args[*cnp as usize..].iter().cloned());
                r = Expr::app_n(r, args[major_pos + 1..].iter().cloned());
                Ok(Some(r))
            }
            _ => Ok(None),
        }
    }

    fn reduce_quot(
        &mut self,
        e: &Expr,
        major_pos: usize,
        fn_pos: usize,
        cheap_rec: bool,
        cheap_proj: bool,
    ) -> Result<Option<Expr>> {
        let args = e.get_app_args();
        if args.len() <= major_pos {
            return Ok(None);
        }
        let major = if cheap_rec {
            self.whnf_core(&args[major_pos], cheap_rec, cheap_proj)?
        } else {
            self.whnf(&args[major_pos])?
        };
        let head = major.get_app_fn().clone();
        let ExprKind::Const(cname, _) = head.kind() else {
            return Ok(None);
        };
        let Some(cinfo) = self.env.find(cname) else {
            return Ok(None);
        };
        if !matches!(cinfo.kind, ConstantKind::Quot { kind: QuotKind::Ctor }) {
            return Ok(None);
        }
        let mk_args = major.get_app_args();
        if mk_args.len() != 3 {
            return Ok(None);
        }
        let mut r = Expr::app(args[fn_pos].clone(), mk_args[2].clone());
        r = Expr::app_n(r, args[major_pos + 1..].iter().cloned());
        Ok(Some(r))
    }

    /// K-like reduction: a recursor on a subsingleton-eliminating Prop
    /// inductive may synthesize the canonical constructor application from
    /// the major premise's type.
    fn to_ctor_when_k(&mut self, all_names: &[Name], major: &Expr) -> Result<Option<Expr>> {
        let ind_name = &all_names[0];
        let Some(ind) = self.env.find(ind_name) else {
            return Ok(None);
        };
        let ConstantKind::Inductive {
            num_params,
            ctor_names,
            ..
        } = &ind.kind
        else {
            return Ok(None);
        };
        let num_params = *num_params as usize;
        let ctor_name = ctor_names[0].clone();
        // already the constructor?
        if major.get_app_fn().const_name() == Some(&ctor_name) {
            return Ok(None);
        }
        let major_ty = self.infer_type_cached(major, true)?;
        let major_ty = self.whnf(&major_ty)?;
        let head = major_ty.get_app_fn().clone();
        let ExprKind::Const(n, ls) = head.kind() else {
            return Ok(None);
        };
        if n != ind_name {
            return Ok(None);
        }
        let ty_args = major_ty.get_app_args();
        if ty_args.len() < num_params {
            return Ok(None);
        }
        let new_major = Expr::app_n(
            Expr::const_(ctor_name, ls.clone()),
            ty_args[..num_params].iter().cloned(),
        );
        // type correctness: the synthesized constructor must live at the
        // major's type, otherwise fall back to the original major
        let new_ty = self.infer_type_cached(&new_major, true)?;
        if self.is_def_eq(&new_ty, &major_ty)? {
            Ok(Some(new_major))
        } else {
            Ok(None)
        }
    }

    fn delta_unfold_head(&self, e: &Expr) -> Option<Expr> {
        let f = e.get_app_fn();
        let ExprKind::Const(n, ls) = f.kind() else {
            return None;
        };
        let info = self.env.find(n)?;
        let value = info.unfoldable_value()?;
        let v = value.instantiate_level_params(&info.level_params, ls);
        Some(Expr::app_n(v, e.get_app_args()))
    }

    fn head_definition_height(&self, e: &Expr) -> Option<u64> {
        let f = e.get_app_fn();
        let ExprKind::Const(n, _) = f.kind() else {
            return None;
        };
        let info = self.env.find(n)?;
        info.unfoldable_value()?;
        Some(info.hint().height())
    }

    // ------------------------------------------------------------------
    // Native Nat reduction

    fn reduce_nat_native(&mut self, e: &Expr) -> Result<Option<Expr>> {
        let f = e.get_app_fn().clone();
        let ExprKind::Const(n, ls) = f.kind() else {
            return Ok(None);
        };
        if !ls.is_empty() {
            return Ok(None);
        }
        let args = e.get_app_args();
        let sname = n.to_string();
        if sname == "Nat.succ" && args.len() == 1 {
            let a = self.whnf(&args[0])?;
            if let ExprKind::Lit(Literal::Nat(v)) = a.unwrap_mdata().kind() {
                return Ok(Some(Expr::lit(Literal::Nat(v + 1u32))));
            }
            return Ok(None);
        }
        let Some(op) = NatOp::of_name(&sname) else {
            return Ok(None);
        };
        if args.len() != 2 {
            return Ok(None);
        }
        let a = self.whnf(&args[0])?;
        let ExprKind::Lit(Literal::Nat(va)) = a.unwrap_mdata().kind() else {
            return Ok(None);
        };
        let b = self.whnf(&args[1])?;
        let ExprKind::Lit(Literal::Nat(vb)) = b.unwrap_mdata().kind() else {
            return Ok(None);
        };
        Ok(op.apply(va, vb))
    }

    // ------------------------------------------------------------------
    // Definitional equality

    pub fn is_def_eq(&mut self, a: &Expr, b: &Expr) -> Result<bool> {
        self.stats.defeq_calls += 1;
        if a == b {
            return Ok(true);
        }
        let key = (a.clone(), b.clone());
        if let Some(r) = self.defeq_cache.get(&key) {
            return Ok(*r);
        }
        let r = self.is_def_eq_core(a, b)?;
        if self.caches_enabled {
            self.defeq_cache.insert(key, r);
        }
        Ok(r)
    }

    fn is_def_eq_core(&mut self, a: &Expr, b: &Expr) -> Result<bool> {
        self.spend_fuel("checking definitional equality", |s| {
            if let Some(r) = s.quick_is_def_eq(a, b)? {
                return Ok(r);
            }
            let a1 = s.whnf_core(a, false, true)?;
            let b1 = s.whnf_core(b, false, true)?;
            if (!a1.ptr_eq(a) || !b1.ptr_eq(b)) && (a1 != *a || b1 != *b) {
                if let Some(r) = s.quick_is_def_eq(&a1, &b1)? {
                    return Ok(r);
                }
            }
            if s.is_def_eq_proof_irrel(&a1, &b1)? {
                return Ok(true);
            }
            let (a2, b2) = match s.lazy_delta_reduction(a1, b1)? {
                DeltaResult::Done(r) => return Ok(r),
                DeltaResult::Exhausted(a2, b2) => (a2, b2),
            };
            match (a2.kind(), b2.kind()) {
                (ExprKind::Const(n1, l1), ExprKind::Const(n2, l2)) if n1 == n2 => {
                    if l1.len() == l2.len()
                        && l1.iter().zip(l2).all(|(x, y)| x.is_equiv(y))
                    {
                        return Ok(true);
                    }
                }
                (ExprKind::FVar(i1), ExprKind::FVar(i2)) if i1 == i2 => return Ok(true),
                (ExprKind::Proj(_, i1, s1), ExprKind::Proj(_, i2, s2)) if i1 == i2 => {
                    if s.is_def_eq(s1, s2)? {
                        return Ok(true);
                    }
                }
                _ => {}
            }
            if s.is_def_eq_app(&a2, &b2)? {
                return Ok(true);
            }
            if s.try_eta_expansion(&a2, &b2)? {
                return Ok(true);
            }
            if s.try_eta_struct(&a2, &b2)? || s.try_eta_struct(&b2, &a2)? {
                return Ok(true);
            }
            if s.is_def_eq_unit_like(&a2, &b2)? {
                return Ok(true);
            }
            Ok(false)
        })
    }

    /// Cheap structural layer: syntactic equality, sort level equivalence,
    /// binder congruence under fresh fvars, literal equality.
    fn quick_is_def_eq(&mut self, a: &Expr, b: &Expr) -> Result<Option<bool>> {
        if a == b {
            return Ok(Some(true));
        }
        let (a, b) = (a.unwrap_mdata(), b.unwrap_mdata());
        if a == b {
            return Ok(Some(true));
        }
        match (a.kind(), b.kind()) {
            (ExprKind::Sort(l1), ExprKind::Sort(l2)) => Ok(Some(l1.is_equiv(l2))),
            (ExprKind::Lit(l1), ExprKind::Lit(l2)) => Ok(Some(l1 == l2)),
            (ExprKind::Lam(..), ExprKind::Lam(..))
            | (ExprKind::ForallE(..), ExprKind::ForallE(..)) => {
                Ok(Some(self.is_def_eq_binders(a, b)?))
            }
            _ => Ok(None),
        }
    }

    fn is_def_eq_binders(&mut self, a: &Expr, b: &Expr) -> Result<bool> {
        let saved = self.lctx.len();
        let mut fvars: Vec<Expr> = Vec::new();
        let (mut ca, mut cb) = (a.clone(), b.clone());
        let result = loop {
            match (ca.kind().clone(), cb.kind().clone()) {
                (ExprKind::Lam(n1, t1, b1, bi1), ExprKind::Lam(_, t2, b2, _))
                | (ExprKind::ForallE(n1, t1, b1, bi1), ExprKind::ForallE(_, t2, b2, _)) => {
                    let d1 = t1.instantiate_rev(&fvars);
                    let d2 = t2.instantiate_rev(&fvars);
                    if !self.is_def_eq(&d1, &d2)? {
                        break false;
                    }
                    let id = self.fresh_fvar(n1, d1, bi1, None);
                    fvars.push(Expr::fvar(id));
                    ca = b1;
                    cb = b2;
                }
                _ => {
                    break self
                        .is_def_eq(&ca.instantiate_rev(&fvars), &cb.instantiate_rev(&fvars))?;
                }
            }
        };
        self.lctx.truncate(saved);
        Ok(result)
    }

    /// Proof irrelevance: two terms whose common type is a proposition are
    /// definitionally equal.
    fn is_def_eq_proof_irrel(&mut self, a: &Expr, b: &Expr) -> Result<bool> {
        let a_ty = match self.infer_type_cached(a, true) {
            Ok(t) => t,
            Err(e) if e.is_deep_recursion() => return Err(e),
            Err(_) => return Ok(false),
        };
        let sort = self.infer_type_cached(&a_ty, true)?;
        let sort = self.whnf(&sort)?;
        let ExprKind::Sort(l) = sort.unwrap_mdata().kind() else {
            return Ok(false);
        };
        if !l.is_always_zero() {
            return Ok(false);
        }
        let b_ty = match self.infer_type_cached(b, true) {
            Ok(t) => t,
            Err(e) if e.is_deep_recursion() => return Err(e),
            Err(_) => return Ok(false),
        };
        self.is_def_eq(&a_ty, &b_ty)
    }

    fn lazy_delta_reduction(&mut self, mut a: Expr, mut b: Expr) -> Result<DeltaResult> {
        loop {
            // nat literal vs constructor spine: peel the literal
            if let Some(a2) = self.lit_ctor_bridge(&a, &b) {
                a = self.whnf_core(&a2, false, true)?;
            } else if let Some(b2) = self.lit_ctor_bridge(&b, &a) {
                b = self.whnf_core(&b2, false, true)?;
            } else {
                let ha = self.head_definition_height(&a);
                let hb = self.head_definition_height(&b);
                match (ha, hb) {
                    (None, None) => return Ok(DeltaResult::Exhausted(a, b)),
                    (Some(_), None) => {
                        let a2 = self.delta_unfold_head(&a).expect("unfoldable");
                        a = self.whnf_core(&a2, false, true)?;
                    }
                    (None, Some(_)) => {
                        let b2 = self.delta_unfold_head(&b).expect("unfoldable");
                        b = self.whnf_core(&b2, false, true)?;
                    }
                    (Some(ha), Some(hb)) => {
                        // same head at equal height: try congruence on the
                        // spines before unfolding further
                        if ha == hb {
                            if let (ExprKind::Const(n1, _), ExprKind::Const(n2, _)) =
                                (a.get_app_fn().kind(), b.get_app_fn().kind())
                            {
                                if n1 == n2 && self.is_def_eq_app(&a, &b)? {
                                    return Ok(DeltaResult::Done(true));
                                }
                            }
                        }
                        if ha >= hb {
                            let a2 = self.delta_unfold_head(&a).expect("unfoldable");
                            a = self.whnf_core(&a2, false, true)?;
                        }
                        if hb >= ha {
                            let b2 = self.delta_unfold_head(&b).expect("unfoldable");
                            b = self.whnf_core(&b2, false, true)?;
                        }
                    }
                }
            }
            if let Some(r) = self.quick_is_def_eq(&a, &b)? {
                return Ok(DeltaResult::Done(r));
            }
        }
    }

    /// When one side is a Nat literal and the other is headed by a Nat
    /// constructor, unfold the literal one step.
    fn lit_ctor_bridge(&self, lit_side: &Expr, other: &Expr) -> Option<Expr> {
        if !matches!(lit_side.unwrap_mdata().kind(), ExprKind::Lit(Literal::Nat(_))) {
            return None;
        }
        let head = other.get_app_fn().const_name()?;
        let hs = head.to_string();
        if hs == "Nat.succ" || hs == "Nat.zero" {
            lit_side.nat_lit_ctor_view()
        } else {
            None
        }
    }

    fn is_def_eq_app(&mut self, a: &Expr, b: &Expr) -> Result<bool> {
        if !a.is_app() || !b.is_app() {
            return Ok(false);
        }
        let fa = a.get_app_fn().clone();
        let fb = b.get_app_fn().clone();
        let args_a = a.get_app_args();
        let args_b = b.get_app_args();
        if args_a.len() != args_b.len() || !self.is_def_eq(&fa, &fb)? {
            return Ok(false);
        }
        for (x, y) in args_a.iter().zip(args_b.iter()) {
            if !self.is_def_eq(x, y)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Eta: `f ≡ λ x, g x` when `f` whnf-reduces to a non-lambda of forall
    /// type. Tried in both orientations.
    fn try_eta_expansion(&mut self, a: &Expr, b: &Expr) -> Result<bool> {
        Ok(self.try_eta_expansion_core(a, b)? || self.try_eta_expansion_core(b, a)?)
    }

    fn try_eta_expansion_core(&mut self, a: &Expr, b: &Expr) -> Result<bool> {
        if !matches!(b.unwrap_mdata().kind(), ExprKind::Lam(..))
            || matches!(a.unwrap_mdata().kind(), ExprKind::Lam(..))
        {
            return Ok(false);
        }
        let a_ty = self.infer_type_cached(a, true)?;
        let a_ty = self.whnf(&a_ty)?;
        let ExprKind::ForallE(name, dom, _, bi) = a_ty.unwrap_mdata().kind() else {
            return Ok(false);
        };
        let a_exp = Expr::lam(
            name.clone(),
            dom.clone(),
            Expr::app(a.lift(1, 0), Expr::bvar(0)),
            *bi,
        );
        self.is_def_eq(&a_exp, b)
    }

    /// Eta for structures: `s ≡ S.mk s.1 … s.n` when `b` is a constructor
    /// application of a structure-like inductive and `a` is not.
    fn try_eta_struct(&mut self, a: &Expr, b: &Expr) -> Result<bool> {
        let fb = b.get_app_fn().clone();
        let ExprKind::Const(cname, _) = fb.kind() else {
            return Ok(false);
        };
        let Some(cinfo) = self.env.find(cname) else {
            return Ok(false);
        };
        let ConstantKind::Constructor {
            induct,
            num_params,
            num_fields,
            ..
        } = &cinfo.kind
        else {
            return Ok(false);
        };
        let induct = induct.clone();
        let (num_params, num_fields) = (*num_params as usize, *num_fields as usize);
        let Some(ind) = self.env.find(&induct) else {
            return Ok(false);
        };
        let ConstantKind::Inductive {
            is_structure_like, ..
        } = &ind.kind
        else {
            return Ok(false);
        };
        if !is_structure_like {
            return Ok(false);
        }
        let args_b = b.get_app_args();
        if args_b.len() != num_params + num_fields {
            return Ok(false);
        }
        // do not fire when `a` is itself a constructor application: plain
        // congruence covers that and this avoids loops
        if a.get_app_fn().const_name() == Some(cname) {
            return Ok(false);
        }
        let a_ty = self.infer_type_cached(a, true)?;
        let b_ty = self.infer_type_cached(b, true)?;
        if !self.is_def_eq(&a_ty, &b_ty)? {
            return Ok(false);
        }
        for i in 0..num_fields {
            let proj = Expr::proj(induct.clone(), i as u32, a.clone());
            if !self.is_def_eq(&proj, &args_b[num_params + i])? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Unit-like structures (one constructor, zero fields): any two values of
    /// the same such type are definitionally equal.
    fn is_def_eq_unit_like(&mut self, a: &Expr, b: &Expr) -> Result<bool> {
        let a_ty = self.infer_type_cached(a, true)?;
        let a_ty = self.whnf(&a_ty)?;
        let ExprKind::Const(n, _) = a_ty.get_app_fn().kind() else {
            return Ok(false);
        };
        let Some(ind) = self.env.find(n) else {
            return Ok(false);
        };
        let ConstantKind::Inductive {
            is_structure_like,
            ctor_names,
            ..
        } = &ind.kind
        else {
            return Ok(false);
        };
        if !is_structure_like {
            return Ok(false);
        }
        let ctor = self.env.find(&ctor_names[0]).expect("ctor exists");
        let ConstantKind::Constructor { num_fields: 0, .. } = &ctor.kind else {
            return Ok(false);
        };
        let b_ty = self.infer_type_cached(b, true)?;
        self.is_def_eq(&a_ty, &b_ty)
    }
}

enum DeltaResult {
    Done(bool),
    Exhausted(Expr, Expr),
}

/// Simplifying imax constructor used when folding forall levels.
fn imax_simp(a: Level, b: Level) -> Level {
    if b.is_zero_lit() {
        return Level::zero();
    }
    if a.is_zero_lit() || a == b {
        return b;
    }
    if matches!(b.kind(), crate::level::LevelKind::Succ(_)) {
        return Level::max(a, b);
    }
    Level::imax(a, b)
}

/// The accelerated Nat primitives. This is the complete list: applications of
/// these constants to literal operands fold directly to literals.
#[derive(Clone, Copy, Debug)]
enum NatOp {
    Add,
    Sub,
    Mul,
    Div,
    Mod,
    Pow,
    Gcd,
    Beq,
    Ble,
    Land,
    Lor,
    Xor,
    ShiftLeft,
    ShiftRight,
}

impl NatOp {
    fn of_name(s: &str) -> Option<NatOp> {
        Some(match s {
            "Nat.add" => NatOp::Add,
            "Nat.sub" => NatOp::Sub,
            "Nat.mul" => NatOp::Mul,
            "Nat.div" => NatOp::Div,
            "Nat.mod" => NatOp::Mod,
            "Nat.pow" => NatOp::Pow,
            "Nat.gcd" => NatOp::Gcd,
            "Nat.beq" => NatOp::Beq,
            "Nat.ble" => NatOp::Ble,
            "Nat.land" => NatOp::Land,
            "Nat.lor" => NatOp::Lor,
            "Nat.xor" => NatOp::Xor,
            "Nat.shiftLeft" => NatOp::ShiftLeft,
            "Nat.shiftRight" => NatOp::ShiftRight,
            _ => return None,
        })
    }

    fn apply(self, a: &BigUint, b: &BigUint) -> Option<Expr> {
        let nat = |v: BigUint| Some(Expr::lit(Literal::Nat(v)));
        let boolean = |v: bool| {
            Some(Expr::const_(
                Name::from_parts(if v { "Bool.true" } else { "Bool.false" }),
                vec![],
            ))
        };
        match self {
            NatOp::Add => nat(a + b),
            NatOp::Sub => nat(if a >= b { a - b } else { BigUint::zero() }),
            NatOp::Mul => nat(a * b),
            NatOp::Div => nat(if b.is_zero() { BigUint::zero() } else { a / b }),
            NatOp::Mod => nat(if b.is_zero() { a.clone() } else { a % b }),
            NatOp::Pow => {
                let e = b.to_u32()?;
                if e > 1 << 16 {
                    return None; // refuse absurd exponents
                }
                nat(a.pow(e))
            }
            NatOp::Gcd => {
                let (mut x, mut y) = (a.clone(), b.clone());
                while !y.is_zero() {
                    let r = &x % &y;
                    x = y;
                    y = r;
                }
                nat(x)
            }
            NatOp::Beq => boolean(a == b),
            NatOp::Ble => boolean(a <= b),
            NatOp::Land => nat(a & b),
            NatOp::Lor => nat(a | b),
            NatOp::Xor => nat(a ^ b),
            NatOp::ShiftLeft => nat(a << b.to_u64()?.min(1 << 20)),
            NatOp::ShiftRight => {
                let s = b.to_u64()?;
                if s > 1 << 20 {
                    nat(BigUint::zero())
                } else {
                    nat(a >> s)
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::env::DEFAULT_FUEL;

    fn checker(env: &Environment) -> TypeChecker<'_> {
        TypeChecker::new(env, vec![Name::from_parts("u"), Name::from_parts("v")], DEFAULT_FUEL)
    }

    #[test]
    fn infer_sort() {
        let env = Environment::new();
        let mut tc = checker(&env);
        let u = Level::param(Name::from_parts("u"));
        let t = tc.infer_type(&Expr::sort(u.clone()), false).unwrap();
        assert_eq!(t, Expr::sort(Level::succ(u)));
    }

    #[test]
    fn infer_identity_lambda_on_prop() {
        let env = Environment::new();
        let mut tc = checker(&env);
        let e = Expr::lam(
            Name::from_parts("x"),
            Expr::prop(),
            Expr::bvar(0),
            BinderInfo::Default,
        );
        let t = tc.infer_type(&e, false).unwrap();
        let ExprKind::ForallE(_, dom, body, _) = t.kind() else {
            panic!("expected forall, got {t:?}")
        };
        assert_eq!(dom, &Expr::prop());
        assert_eq!(body, &Expr::bvar(0));
    }

    #[test]
    fn infer_forall_uses_imax() {
        let env = Environment::new();
        let mut tc = checker(&env);
        let u = Level::param(Name::from_parts("u"));
        let v = Level::param(Name::from_parts("v"));
        let e = Expr::forall_e(
            Name::from_parts("x"),
            Expr::sort(u.clone()),
            Expr::sort(v.clone()),
            BinderInfo::Default,
        );
        let t = tc.infer_type(&e, false).unwrap();
        let ExprKind::Sort(l) = t.kind() else { panic!() };
        assert!(l.is_equiv(&Level::imax(Level::succ(u), Level::succ(v))));
    }

    #[test]
    fn forall_into_prop_is_prop() {
        // impredicativity: (x : Sort u) -> Prop-valued body lands in Prop
        let env = Environment::new();
        let mut tc = checker(&env);
        let u = Level::param(Name::from_parts("u"));
        let e = Expr::forall_e(
            Name::from_parts("x"),
            Expr::sort(u),
            Expr::bvar(0),
            BinderInfo::Default,
        );
        // (x : Sort u) -> x : needs x to be a type, i.e. body is typed at
        // Sort (imax (u+1) u)... use body Prop instead for a closed test
        let e2 = Expr::forall_e(
            Name::from_parts("x"),
            e.clone(),
            Expr::bvar(0),
            BinderInfo::Default,
        );
        let _ = e2; // the nested variant is exercised in integration tests
        let p = Expr::forall_e(
            Name::from_parts("p"),
            Expr::prop(),
            Expr::bvar(0),
            BinderInfo::Default,
        );
        let t = tc.infer_type(&p, false).unwrap();
        let ExprKind::Sort(l) = t.kind() else { panic!() };
        assert!(l.is_always_zero());
    }

    #[test]
    fn whnf_beta() {
        let env = Environment::new();
        let mut tc = checker(&env);
        let a = Expr::prop();
        let e = Expr::app(
            Expr::lam(
                Name::from_parts("x"),
                Expr::sort(Level::of_nat(1)),
                Expr::bvar(0),
                BinderInfo::Default,
            ),
            a.clone(),
        );
        assert_eq!(tc.whnf(&e).unwrap(), a);
        assert_eq!(tc.whnf(&Expr::sort(Level::zero())).unwrap(), Expr::prop());
    }

    #[test]
    fn ensure_sort_through_beta() {
        let env = Environment::new();
        let mut tc = checker(&env);
        let e = Expr::app(
            Expr::lam(
                Name::from_parts("x"),
                Expr::sort(Level::of_nat(1)),
                Expr::bvar(0),
                BinderInfo::Default,
            ),
            Expr::prop(),
        );
        let l = tc.ensure_sort(&e, &e).unwrap();
        assert!(l.is_always_zero());
        let err = tc
            .ensure_sort(&Expr::lit(Literal::nat(3)), &Expr::lit(Literal::nat(3)))
            .unwrap_err();
        assert!(matches!(err, KernelError::TypeExpected { .. }));
    }

    #[test]
    fn eta_with_fvars() {
        let env = Environment::new();
        let mut tc = checker(&env);
        // f : Prop -> Prop (as an fvar), check λ x, f x ≡ f
        let fty = Expr::forall_e(
            Name::from_parts("x"),
            Expr::prop(),
            Expr::prop(),
            BinderInfo::Default,
        );
        let f = Expr::fvar(tc.fresh_fvar(Name::from_parts("f"), fty, BinderInfo::Default, None));
        let lam = Expr::lam(
            Name::from_parts("x"),
            Expr::prop(),
            Expr::app(f.clone(), Expr::bvar(0)),
            BinderInfo::Default,
        );
        assert!(tc.is_def_eq(&lam, &f).unwrap());
        assert!(tc.is_def_eq(&f, &lam).unwrap());
    }

    #[test]
    fn proof_irrelevance_with_fvars() {
        let env = Environment::new();
        let mut tc = checker(&env);
        let p = Expr::fvar(tc.fresh_fvar(
            Name::from_parts("p"),
            Expr::prop(),
            BinderInfo::Default,
            None,
        ));
        let h1 = Expr::fvar(tc.fresh_fvar(
            Name::from_parts("h1"),
            p.clone(),
            BinderInfo::Default,
            None,
        ));
        let h2 = Expr::fvar(tc.fresh_fvar(
            Name::from_parts("h2"),
            p.clone(),
            BinderInfo::Default,
            None,
        ));
        assert!(tc.is_def_eq(&h1, &h2).unwrap());
        // but two types are not proof-irrelevant
        assert!(!tc.is_def_eq(&p, &Expr::prop()).unwrap());
    }

    #[test]
    fn fresh_fvar_counter_invariants() {
        let env = Environment::new();
        let mut tc = checker(&env);
        let a = tc.fresh_fvar(Name::from_parts("a"), Expr::prop(), BinderInfo::Default, None);
        let b = tc.fresh_fvar(Name::from_parts("b"), Expr::prop(), BinderInfo::Default, None);
        assert_ne!(a, b);
        assert!(a.0 < tc.fvar_counter && b.0 < tc.fvar_counter);
        assert!(tc.lctx.get(a).is_some());
    }

    #[test]
    fn let_inference_and_zeta() {
        let env = Environment::new();
        let mut tc = checker(&env);
        // let x : Sort 1 := Prop; x  — whnf gives Prop, type is Sort 1
        let e = Expr::let_e(
            Name::from_parts("x"),
            Expr::sort(Level::of_nat(1)),
            Expr::prop(),
            Expr::bvar(0),
            false,
        );
        assert_eq!(tc.whnf(&e).unwrap(), Expr::prop());
        let t = tc.infer_type(&e, false).unwrap();
        assert!(tc.is_def_eq(&t, &Expr::sort(Level::of_nat(1))).unwrap());
    }

    #[test]
    fn loose_bvar_and_mvar_are_errors() {
        let env = Environment::new();
        let mut tc = checker(&env);
        assert!(matches!(
            tc.infer_type(&Expr::bvar(0), false),
            Err(KernelError::LooseBVar { .. })
        ));
        assert!(matches!(
            tc.infer_type(&Expr::mvar(crate::expr::MVarId(0)), false),
            Err(KernelError::MVarEncountered)
        ));
    }

    #[test]
    fn fuel_exhaustion_is_an_error() {
        let env = Environment::new();
        let mut tc = TypeChecker::new(&env, vec![], 3);
        // deeply nested applications force nested infer calls
        let mut e = Expr::lam(
            Name::from_parts("x"),
            Expr::prop(),
            Expr::bvar(0),
            BinderInfo::Default,
        );
        for _ in 0..10 {
            e = Expr::app(
                Expr::lam(Name::from_parts("x"), Expr::prop(), Expr::bvar(0), BinderInfo::Default),
                e,
            );
        }
        let err = tc.whnf(&e).unwrap_err();
        assert!(err.is_deep_recursion());
    }
}
