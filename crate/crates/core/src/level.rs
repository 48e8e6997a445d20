//! Universe level expressions and their decision procedures.
//!
//! Equivalence of levels is extensional: two levels are equivalent when they
//! evaluate to the same natural number under every assignment of naturals to
//! the parameters. This is decided by [`Level::is_def_leq`], which rewrites
//! `imax` away by distribution and case-splits blocking parameters on
//! zero/successor, making the procedure complete (unlike plain normal-form
//! comparison).

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::name::Name;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Level(Arc<LevelKind>);

#[derive(PartialEq, Eq, Hash)]
pub enum LevelKind {
    Zero,
    Succ(Level),
    Max(Level, Level),
    IMax(Level, Level),
    Param(Name),
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum LevelError {
    #[error("unbound level parameter `{0}`")]
    UnboundParam(Name),
    #[error("expected {expected} level arguments, got {got}")]
    ArityMismatch { expected: usize, got: usize },
}

impl Level {
    pub fn zero() -> Level {
        Level(Arc::new(LevelKind::Zero))
    }

    pub fn succ(l: Level) -> Level {
        Level(Arc::new(LevelKind::Succ(l)))
    }

    pub fn max(a: Level, b: Level) -> Level {
        Level(Arc::new(LevelKind::Max(a, b)))
    }

    pub fn imax(a: Level, b: Level) -> Level {
        Level(Arc::new(LevelKind::IMax(a, b)))
    }

    pub fn param(n: Name) -> Level {
        Level(Arc::new(LevelKind::Param(n)))
    }

    /// `Succ^k Zero`.
    pub fn of_nat(k: u64) -> Level {
        let mut l = Level::zero();
        for _ in 0..k {
            l = Level::succ(l);
        }
        l
    }

    pub fn kind(&self) -> &LevelKind {
        &self.0
    }

    pub fn is_zero_lit(&self) -> bool {
        matches!(self.kind(), LevelKind::Zero)
    }

    /// Evaluates under an assignment of naturals to the parameters.
    pub fn eval(&self, v: &HashMap<Name, u64>) -> Result<u64, LevelError> {
        match self.kind() {
            LevelKind::Zero => Ok(0),
            LevelKind::Succ(l) => Ok(l.eval(v)? + 1),
            LevelKind::Max(a, b) => Ok(a.eval(v)?.max(b.eval(v)?)),
            LevelKind::IMax(a, b) => {
                let vb = b.eval(v)?;
                if vb == 0 {
                    Ok(0)
                } else {
                    Ok(a.eval(v)?.max(vb))
                }
            }
            LevelKind::Param(n) => v
                .get(n)
                .copied()
                .ok_or_else(|| LevelError::UnboundParam(n.clone())),
        }
    }

    /// Collects the parameter names occurring in the level.
    pub fn collect_params(&self, out: &mut Vec<Name>) {
        match self.kind() {
            LevelKind::Zero => {}
            LevelKind::Succ(l) => l.collect_params(out),
            LevelKind::Max(a, b) | LevelKind::IMax(a, b) => {
                a.collect_params(out);
                b.collect_params(out);
            }
            LevelKind::Param(n) => {
                if !out.contains(n) {
                    out.push(n.clone());
                }
            }
        }
    }

    /// True iff every parameter in the level is among `declared`.
    pub fn params_bounded(&self, declared: &[Name]) -> bool {
        match self.kind() {
            LevelKind::Zero => true,
            LevelKind::Succ(l) => l.params_bounded(declared),
            LevelKind::Max(a, b) | LevelKind::IMax(a, b) => {
                a.params_bounded(declared) && b.params_bounded(declared)
            }
            LevelKind::Param(n) => declared.contains(n),
        }
    }

    /// Substitutes `params[i] ↦ args[i]` throughout.
    pub fn instantiate_params(&self, params: &[Name], args: &[Level]) -> Result<Level, LevelError> {
        if params.len() != args.len() {
            return Err(LevelError::ArityMismatch {
                expected: params.len(),
                got: args.len(),
            });
        }
        Ok(self.subst_with(&|n| params.iter().position(|p| p == n).map(|i| args[i].clone())))
    }

    fn subst_with(&self, f: &impl Fn(&Name) -> Option<Level>) -> Level {
        match self.kind() {
            LevelKind::Zero => self.clone(),
            LevelKind::Succ(l) => Level::succ(l.subst_with(f)),
            LevelKind::Max(a, b) => Level::max(a.subst_with(f), b.subst_with(f)),
            LevelKind::IMax(a, b) => Level::imax(a.subst_with(f), b.subst_with(f)),
            LevelKind::Param(n) => f(n).unwrap_or_else(|| self.clone()),
        }
    }

    fn subst_one(&self, name: &Name, val: &Level) -> Level {
        self.subst_with(&|n| if n == name { Some(val.clone()) } else { None })
    }

    /// True iff `eval(self, v) ≤ eval(other, v)` for every assignment `v`.
    pub fn is_def_leq(&self, other: &Level) -> bool {
        leq(self, other, 0)
    }

    /// Extensional equivalence: equal under every assignment.
    pub fn is_equiv(&self, other: &Level) -> bool {
        self == other || (self.is_def_leq(other) && other.is_def_leq(self))
    }

    /// True iff the level is positive under every assignment.
    pub fn is_nonzero(&self) -> bool {
        Level::succ(Level::zero()).is_def_leq(self)
    }

    /// True iff the level is zero under every assignment.
    pub fn is_always_zero(&self) -> bool {
        self.is_def_leq(&Level::zero())
    }

    /// Canonical form: extensionally equivalent, idempotent, and reducing
    /// constant levels to `Succ^k Zero`. The shape is a sorted, offset-carrying
    /// max of atoms.
    pub fn normalize(&self) -> Level {
        let mut terms = Vec::new();
        collect_max_terms(self, 0, &mut terms);
        // Combine terms over the same atom, keeping the largest offset.
        let mut combined: Vec<(u64, Atom)> = Vec::new();
        for (off, atom) in terms {
            if let Some(entry) = combined.iter_mut().find(|(_, a)| *a == atom) {
                entry.0 = entry.0.max(off);
            } else {
                combined.push((off, atom));
            }
        }
        // A constant `k` is subsumed by any other term with offset ≥ k,
        // since every atom evaluates to at least 0.
        let max_other_off = combined
            .iter()
            .filter(|(_, a)| !matches!(a, Atom::Zero))
            .map(|(off, _)| *off)
            .max();
        if let Some(m) = max_other_off {
            combined.retain(|(off, a)| !matches!(a, Atom::Zero) || *off > m);
        }
        combined.sort_by(|(o1, a1), (o2, a2)| atom_key(a1, *o1).cmp(&atom_key(a2, *o2)));
        let mut iter = combined.into_iter().map(|(off, atom)| {
            let mut l = atom.into_level();
            for _ in 0..off {
                l = Level::succ(l);
            }
            l
        });
        let first = iter.next().expect("at least one max term");
        iter.fold(first, Level::max)
    }
}

/// Atom at the leaf of a normalized max term.
#[derive(PartialEq, Eq, Clone)]
enum Atom {
    Zero,
    Param(Name),
    // Irreducible imax: the condition is a bare parameter.
    IMax(Level, Level),
}

impl Atom {
    fn into_level(self) -> Level {
        match self {
            Atom::Zero => Level::zero(),
            Atom::Param(n) => Level::param(n),
            Atom::IMax(a, b) => Level::imax(a, b),
        }
    }
}

fn atom_key(a: &Atom, off: u64) -> (u8, String, u64) {
    match a {
        Atom::Zero => (0, String::new(), off),
        Atom::Param(n) => (1, n.to_string(), off),
        Atom::IMax(x, y) => (2, format!("{x:?} {y:?}"), off),
    }
}

fn collect_max_terms(l: &Level, off: u64, out: &mut Vec<(u64, Atom)>) {
    match l.kind() {
        LevelKind::Zero => out.push((off, Atom::Zero)),
        LevelKind::Succ(l) => collect_max_terms(l, off + 1, out),
        LevelKind::Max(a, b) => {
            collect_max_terms(a, off, out);
            collect_max_terms(b, off, out);
        }
        LevelKind::IMax(a, b) => {
            if let Some(r) = rewrite_imax(a, b) {
                collect_max_terms(&r, off, out);
            } else {
                let (na, nb) = (a.normalize(), b.normalize());
                if let Some(r) = rewrite_imax(&na, &nb) {
                    collect_max_terms(&r, off, out);
                } else {
                    out.push((off, Atom::IMax(na, nb)));
                }
            }
        }
        LevelKind::Param(n) => out.push((off, Atom::Param(n.clone()))),
    }
}

/// Rewrites `imax(a, b)` into an equivalent imax-free head when the shape of
/// `b` (or triviality of `a`) permits. Identities used:
///   imax(a, 0)          = 0
///   imax(a, succ b)     = max(a, succ b)
///   imax(a, max(b, c))  = max(imax(a, b), imax(a, c))
///   imax(a, imax(b, c)) = max(imax(a, c), imax(b, c))
///   imax(0, b)          = b
///   imax(a, a)          = a
fn rewrite_imax(a: &Level, b: &Level) -> Option<Level> {
    if a == b {
        return Some(a.clone());
    }
    if a.is_zero_lit() {
        return Some(b.clone());
    }
    match b.kind() {
        LevelKind::Zero => Some(Level::zero()),
        LevelKind::Succ(_) => Some(Level::max(a.clone(), b.clone())),
        LevelKind::Max(b1, b2) => Some(Level::max(
            Level::imax(a.clone(), b1.clone()),
            Level::imax(a.clone(), b2.clone()),
        )),
        LevelKind::IMax(b1, b2) => Some(Level::max(
            Level::imax(a.clone(), b2.clone()),
            Level::imax(b1.clone(), b2.clone()),
        )),
        LevelKind::Param(_) => None,
    }
}

/// Finds a parameter that appears as the condition of an irreducible imax.
fn blocking_param(l: &Level) -> Option<Name> {
    match l.kind() {
        LevelKind::Zero | LevelKind::Param(_) => None,
        LevelKind::Succ(l) => blocking_param(l),
        LevelKind::Max(a, b) => blocking_param(a).or_else(|| blocking_param(b)),
        LevelKind::IMax(a, b) => match b.kind() {
            LevelKind::Param(n) => Some(n.clone()),
            _ => blocking_param(a).or_else(|| blocking_param(b)),
        },
    }
}

/// Decides `∀v. eval(a, v) ≤ eval(b, v) + diff` (for negative `diff`, the
/// slack moves to the left side).
fn leq(a: &Level, b: &Level, diff: i64) -> bool {
    use LevelKind::*;
    if diff >= 0 && (a.is_zero_lit() || a == b) {
        return true;
    }
    // Head-rewrite imax away where possible.
    if let IMax(x, y) = a.kind() {
        if let Some(r) = rewrite_imax(x, y) {
            return leq(&r, b, diff);
        }
    }
    if let IMax(x, y) = b.kind() {
        if let Some(r) = rewrite_imax(x, y) {
            return leq(a, &r, diff);
        }
    }
    // Case-split a parameter blocking an irreducible imax: p is either zero or
    // a successor. Substituting p ↦ succ p unblocks every imax conditioned on
    // p, so the number of blocking parameters strictly decreases.
    if let Some(p) = blocking_param(a).or_else(|| blocking_param(b)) {
        let zero = Level::zero();
        let succ_p = Level::succ(Level::param(p.clone()));
        return leq(&a.subst_one(&p, &zero), &b.subst_one(&p, &zero), diff)
            && leq(&a.subst_one(&p, &succ_p), &b.subst_one(&p, &succ_p), diff);
    }
    match (a.kind(), b.kind()) {
        (Succ(a1), _) => leq(a1, b, diff - 1),
        (_, Succ(b1)) => leq(a, b1, diff + 1),
        (Max(a1, a2), _) => leq(a1, b, diff) && leq(a2, b, diff),
        (_, Max(b1, b2)) => leq(a, b1, diff) || leq(a, b2, diff),
        (Zero, Zero) => diff >= 0,
        (Zero, Param(_)) | (Param(_), Zero) | (Param(_), Param(_)) => {
            // Distinct atoms: a parameter is unbounded while the other side is
            // not, and `zero ≤ param + diff` with diff < 0 fails at 0.
            diff >= 0 && a == b
        }
        _ => unreachable!("imax eliminated above"),
    }
}

impl fmt::Debug for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind() {
            LevelKind::Zero => write!(f, "0"),
            LevelKind::Succ(l) => {
                // Print constant levels as numerals.
                let mut k = 1u64;
                let mut cur = l;
                loop {
                    match cur.kind() {
                        LevelKind::Succ(l2) => {
                            k += 1;
                            cur = l2;
                        }
                        LevelKind::Zero => return write!(f, "{k}"),
                        _ => return write!(f, "({cur:?})+{k}"),
                    }
                }
            }
            LevelKind::Max(a, b) => write!(f, "max({a:?}, {b:?})"),
            LevelKind::IMax(a, b) => write!(f, "imax({a:?}, {b:?})"),
            LevelKind::Param(n) => write!(f, "{n}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Level {
        Level::param(Name::from_parts(s))
    }

    fn assign(pairs: &[(&str, u64)]) -> HashMap<Name, u64> {
        pairs
            .iter()
            .map(|(s, v)| (Name::from_parts(s), *v))
            .collect()
    }

    #[test]
    fn eval_semantics() {
        let u = p("u");
        assert_eq!(
            Level::imax(u.clone(), Level::zero()).eval(&assign(&[("u", 5)])),
            Ok(0)
        );
        assert_eq!(Level::succ(Level::zero()).eval(&assign(&[])), Ok(1));
        assert_eq!(
            Level::imax(p("u"), p("v")).eval(&assign(&[("u", 3), ("v", 2)])),
            Ok(3)
        );
        assert_eq!(
            p("u").eval(&assign(&[])),
            Err(LevelError::UnboundParam(Name::from_parts("u")))
        );
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(Level::max(Level::zero(), p("u")).normalize(), p("u"));
        assert_eq!(
            Level::succ(Level::zero()).normalize(),
            Level::succ(Level::zero())
        );
        // b provably nonzero, so imax = max
        assert_eq!(
            Level::imax(p("u"), Level::succ(Level::zero())).normalize(),
            Level::max(Level::succ(Level::zero()), p("u")).normalize()
        );
        let m = Level::imax(p("u"), Level::succ(Level::zero())).normalize();
        assert!(m.is_equiv(&Level::max(p("u"), Level::succ(Level::zero()))));
    }

    #[test]
    fn is_equiv_examples() {
        let u = p("u");
        let v = p("v");
        assert!(Level::imax(u.clone(), Level::zero()).is_equiv(&Level::zero()));
        assert!(u.is_equiv(&u));
        assert!(!Level::imax(u.clone(), v.clone()).is_equiv(&Level::max(u.clone(), v.clone())));
    }

    #[test]
    fn is_def_leq_examples() {
        let u = p("u");
        let v = p("v");
        assert!(u.is_def_leq(&Level::succ(u.clone())));
        assert!(!Level::max(u.clone(), v.clone()).is_def_leq(&u));
        assert!(!u.is_def_leq(&Level::imax(u.clone(), v.clone())));
        assert!(Level::imax(u.clone(), v.clone()).is_def_leq(&Level::max(u.clone(), v.clone())));
    }

    #[test]
    fn instantiate_params_examples() {
        let u = Name::from_parts("u");
        let pu = Level::param(u.clone());
        assert_eq!(
            pu.instantiate_params(&[u.clone()], &[Level::zero()]),
            Ok(Level::zero())
        );
        let vw = Level::max(p("v"), p("w"));
        assert_eq!(
            Level::succ(pu.clone()).instantiate_params(&[u.clone()], &[vw.clone()]),
            Ok(Level::succ(vw))
        );
        assert_eq!(
            Level::zero().instantiate_params(&[u.clone()], &[p("v")]),
            Ok(Level::zero())
        );
        assert_eq!(
            pu.instantiate_params(&[u], &[]),
            Err(LevelError::ArityMismatch {
                expected: 1,
                got: 0
            })
        );
    }

    #[test]
    fn params_bounded_examples() {
        let u = Name::from_parts("u");
        let v = Name::from_parts("v");
        assert!(p("u").params_bounded(&[u.clone(), v.clone()]));
        assert!(!p("w").params_bounded(&[u, v]));
        assert!(Level::zero().params_bounded(&[]));
    }

    #[test]
    fn normalize_is_idempotent_on_samples() {
        let samples = [
            Level::imax(p("u"), Level::imax(p("v"), p("w"))),
            Level::max(Level::succ(p("u")), Level::imax(p("u"), p("v"))),
            Level::imax(Level::max(p("u"), p("v")), Level::succ(Level::zero())),
            Level::of_nat(3),
            Level::max(Level::of_nat(2), Level::succ(p("u"))),
        ];
        for l in samples {
            let n = l.normalize();
            assert!(l.is_equiv(&n), "normalize not equivalent: {l:?} vs {n:?}");
            assert_eq!(n, n.normalize(), "normalize not idempotent for {l:?}");
        }
    }
}
