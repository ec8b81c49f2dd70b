//! Truncated power series in one parameter u over an exact field.
//!
//! Every series carries its guaranteed precision: `Mod(n)` means the
//! coefficients of u^k for k < n are exact and nothing is known beyond,
//! `Exact` means the stored terms are the whole series (a polynomial).
//! Order queries that run into the truncation boundary report a fault so the
//! caller can retry at higher precision instead of silently mis-reading
//! orders.

use std::collections::BTreeMap;

use super::mpoly::MPoly;
use super::ring::Field;
use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Prec {
    Exact,
    Mod(u32),
}

impl Prec {
    pub fn min(self, other: Prec) -> Prec {
        match (self, other) {
            (Prec::Exact, p) | (p, Prec::Exact) => p,
            (Prec::Mod(a), Prec::Mod(b)) => Prec::Mod(a.min(b)),
        }
    }

    fn bound(self) -> u64 {
        match self {
            Prec::Exact => u64::MAX,
            Prec::Mod(n) => n as u64,
        }
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct TruncSeries<F: Field> {
    pub field: F,
    pub terms: BTreeMap<u32, F::Elem>,
    pub prec: Prec,
}

impl<F: Field> TruncSeries<F> {
    pub fn zero(field: &F, prec: Prec) -> Self {
        TruncSeries { field: field.clone(), terms: BTreeMap::new(), prec }
    }

    pub fn monomial(field: &F, c: F::Elem, k: u32, prec: Prec) -> Self {
        let mut s = Self::zero(field, prec);
        s.set_term(k, c);
        s
    }

    /// The parameter u itself, exact.
    pub fn param(field: &F) -> Self {
        Self::monomial(field, field.one(), 1, Prec::Exact)
    }

    fn set_term(&mut self, k: u32, c: F::Elem) {
        if self.field.is_zero(&c) {
            return;
        }
        if let Prec::Mod(n) = self.prec {
            if k >= n {
                return;
            }
        }
        self.terms.insert(k, c);
    }

    fn add_term(&mut self, k: u32, c: F::Elem) {
        if self.field.is_zero(&c) {
            return;
        }
        if let Prec::Mod(n) = self.prec {
            if k >= n {
                return;
            }
        }
        let cur = self.terms.remove(&k);
        let s = match cur {
            Some(x) => self.field.add(&x, &c),
            None => c,
        };
        if !self.field.is_zero(&s) {
            self.terms.insert(k, s);
        }
    }

    pub fn is_exactly_zero(&self) -> bool {
        self.terms.is_empty() && self.prec == Prec::Exact
    }

    /// Valuation of the known part; u64::MAX when no term is stored.
    fn val_lower(&self) -> u64 {
        self.terms.keys().next().map(|&k| k as u64).unwrap_or(u64::MAX)
    }

    /// First nonzero exponent. `Ok(None)` when the series is exactly zero;
    /// a truncation fault when it vanishes to precision without being exact.
    pub fn order(&self) -> Result<Option<u32>> {
        match self.terms.keys().next() {
            Some(&k) => Ok(Some(k)),
            None => match self.prec {
                Prec::Exact => Ok(None),
                Prec::Mod(n) => Err(Error::Truncation(n)),
            },
        }
    }

    pub fn leading(&self) -> Result<Option<(u32, F::Elem)>> {
        match self.terms.iter().next() {
            Some((&k, c)) => Ok(Some((k, c.clone()))),
            None => match self.prec {
                Prec::Exact => Ok(None),
                Prec::Mod(n) => Err(Error::Truncation(n)),
            },
        }
    }

    pub fn coeff(&self, k: u32) -> F::Elem {
        self.terms.get(&k).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn truncate_to(&self, n: u32) -> Self {
        let prec = self.prec.min(Prec::Mod(n));
        let mut out = Self::zero(&self.field, prec);
        for (&k, c) in &self.terms {
            if k < n {
                out.terms.insert(k, c.clone());
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let prec = self.prec.min(other.prec);
        let mut out = Self::zero(&self.field, prec);
        for (&k, c) in &self.terms {
            out.add_term(k, c.clone());
        }
        for (&k, c) in &other.terms {
            out.add_term(k, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = self.field.neg(c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        // error propagation: unknown tails enter shifted by the valuation of
        // the known part of the other factor
        let mut bound = u64::MAX;
        if let Prec::Mod(n) = other.prec {
            bound = bound.min(self.val_lower().saturating_add(n as u64));
        }
        if let Prec::Mod(n) = self.prec {
            bound = bound.min(other.val_lower().saturating_add(n as u64));
        }
        if let (Prec::Mod(a), Prec::Mod(b)) = (self.prec, other.prec) {
            bound = bound.min(a as u64 + b as u64);
        }
        let prec = if bound == u64::MAX {
            Prec::Exact
        } else {
            Prec::Mod(bound.min(u32::MAX as u64) as u32)
        };
        let mut out = Self::zero(&self.field, prec);
        for (&ka, ca) in &self.terms {
            for (&kb, cb) in &other.terms {
                let k = ka as u64 + kb as u64;
                if k < prec.bound() {
                    out.add_term(k as u32, self.field.mul(ca, cb));
                }
            }
        }
        out
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let mut out = Self::zero(&self.field, self.prec);
        for (&k, a) in &self.terms {
            out.set_term(k, self.field.mul(a, c));
        }
        out
    }

    /// Multiplication by u^k.
    pub fn shift(&self, k: u32) -> Self {
        let prec = match self.prec {
            Prec::Exact => Prec::Exact,
            Prec::Mod(n) => Prec::Mod(n.saturating_add(k)),
        };
        let mut out = Self::zero(&self.field, prec);
        for (&e, c) in &self.terms {
            out.terms.insert(e + k, c.clone());
        }
        out
    }

    /// Reparametrization u -> c*u.
    pub fn scale_param(&self, c: &F::Elem) -> Self {
        let mut out = Self::zero(&self.field, self.prec);
        for (&k, a) in &self.terms {
            out.set_term(k, self.field.mul(a, &self.field.pow(c, k as usize)));
        }
        out
    }

    /// Substitution u -> u^d.
    pub fn stretch(&self, d: u32) -> Self {
        assert!(d >= 1);
        let prec = match self.prec {
            Prec::Exact => Prec::Exact,
            Prec::Mod(n) => Prec::Mod(n.saturating_mul(d)),
        };
        let mut out = Self::zero(&self.field, prec);
        for (&k, c) in &self.terms {
            out.terms.insert(k * d, c.clone());
        }
        out
    }

    /// Substitution u -> u^(1/d); requires every stored exponent divisible
    /// by d.
    pub fn extract_root(&self, d: u32) -> Option<Self> {
        assert!(d >= 1);
        if self.terms.keys().any(|&k| k % d != 0) {
            return None;
        }
        let prec = match self.prec {
            Prec::Exact => Prec::Exact,
            Prec::Mod(n) => Prec::Mod((n - 1) / d + 1),
        };
        let mut out = Self::zero(&self.field, prec);
        for (&k, c) in &self.terms {
            out.terms.insert(k / d, c.clone());
        }
        Some(out)
    }

    /// Composition self(inner(u)); inner must have positive order.
    pub fn compose(&self, inner: &Self) -> Self {
        assert!(
            inner.terms.keys().next().map_or(true, |&k| k >= 1),
            "composition requires positive order"
        );
        let one = Self::monomial(&self.field, self.field.one(), 0, Prec::Exact);
        let mut acc = Self::zero(&self.field, self.prec.min(inner.prec));
        let mut pw = one;
        let mut last_exp = 0u32;
        for (&k, c) in &self.terms {
            for _ in last_exp..k {
                pw = pw.mul(inner);
            }
            last_exp = k;
            acc = acc.add(&pw.scale(c));
        }
        // account for the truncation of self itself
        if let Prec::Mod(n) = self.prec {
            let inner_val = inner.terms.keys().next().copied().unwrap_or(1).max(1);
            acc.prec = acc.prec.min(Prec::Mod(n.saturating_mul(inner_val)));
            let bound = match acc.prec {
                Prec::Exact => u32::MAX,
                Prec::Mod(b) => b,
            };
            acc.terms.retain(|&k, _| k < bound);
        }
        acc
    }

    pub fn map_coeffs<G: Field>(&self, target: &G, f: impl Fn(&F::Elem) -> G::Elem) -> TruncSeries<G> {
        let mut out = TruncSeries::zero(target, self.prec);
        for (&k, c) in &self.terms {
            let v = f(c);
            if !target.is_zero(&v) {
                out.terms.insert(k, v);
            }
        }
        out
    }

    pub fn render(&self, param: &str) -> String {
        let mut parts: Vec<String> = Vec::new();
        for (&k, c) in &self.terms {
            let cs = self.field.fmt_elem(c);
            let cs = if cs.contains('+') || cs.contains(" - ") {
                format!("({})", cs)
            } else {
                cs
            };
            let body = match k {
                0 => cs,
                1 if cs == "1" => param.to_string(),
                1 => format!("{}*{}", cs, param),
                _ if cs == "1" => format!("{}^{}", param, k),
                _ => format!("{}*{}^{}", cs, param, k),
            };
            parts.push(body);
        }
        let mut s = parts.join(" + ").replace("+ -", "- ");
        if s.is_empty() {
            s = "0".into();
        }
        if let Prec::Mod(n) = self.prec {
            s.push_str(&format!(" + O({}^{})", param, n));
        }
        s
    }
}

/// Composes a polynomial with series assignments for all of its variables.
pub fn substitute_series<F: Field>(p: &MPoly<F>, assigns: &[TruncSeries<F>]) -> TruncSeries<F> {
    assert_eq!(assigns.len(), p.arity(), "every variable must be assigned");
    let field = &p.field;
    let overall = assigns.iter().fold(Prec::Exact, |acc, s| acc.min(s.prec));
    let one = TruncSeries::monomial(field, field.one(), 0, Prec::Exact);
    let mut powers: Vec<Vec<TruncSeries<F>>> =
        assigns.iter().map(|a| vec![one.clone(), a.clone()]).collect();
    let mut acc = TruncSeries::zero(field, overall);
    for (e, c) in &p.terms {
        let mut t = TruncSeries::monomial(field, c.clone(), 0, Prec::Exact);
        for (i, &k) in e.iter().enumerate() {
            while powers[i].len() <= k as usize {
                let next = powers[i].last().unwrap().mul(&assigns[i]);
                powers[i].push(next);
            }
            t = t.mul(&powers[i][k as usize]);
        }
        acc = acc.add(&t);
    }
    acc
}

/// Spec-facing wrapper: composition truncated at order `n`, failing when the
/// inputs cannot guarantee that precision.
pub fn substitute_series_at<F: Field>(
    p: &MPoly<F>,
    assigns: &[TruncSeries<F>],
    n: u32,
) -> Result<TruncSeries<F>> {
    let s = substitute_series(p, assigns);
    if let Prec::Mod(m) = s.prec {
        if m < n {
            return Err(Error::Truncation(m));
        }
    }
    Ok(s.truncate_to(n))
}

#[cfg(test)]
mod tests {
    use super::super::mpoly::{parse_poly, varset};
    use super::super::ring::{rat, Rationals};
    use super::*;

    fn series(pairs: &[(u32, i64)]) -> TruncSeries<Rationals> {
        let mut s = TruncSeries::zero(&Rationals, Prec::Exact);
        for &(k, c) in pairs {
            s.set_term(k, rat(c));
        }
        s
    }

    #[test]
    fn projection_substitution() {
        let v = varset(&["x", "y"]);
        let p = parse_poly("x", &v).unwrap();
        let s = substitute_series(&p, &[series(&[(1, 1)]), series(&[(2, 1)])]);
        assert_eq!(s, series(&[(1, 1)]));
    }

    #[test]
    fn composite_with_branch_of_slice() {
        // x y^2 - x^5 under x -> -u^2, y -> u gives -u^4 + u^10
        let v = varset(&["x", "y"]);
        let p = parse_poly("x*y^2 - x^5", &v).unwrap();
        let s = substitute_series(&p, &[series(&[(2, -1)]), series(&[(1, 1)])]);
        assert_eq!(s, series(&[(4, -1), (10, 1)]));
        assert_eq!(s.order().unwrap(), Some(4));
    }

    #[test]
    fn squaring_fold_parameter() {
        let v = varset(&["x", "y"]);
        let p = parse_poly("y^2", &v).unwrap();
        let s = substitute_series(&p, &[series(&[]), series(&[(1, 1)])]);
        assert_eq!(s, series(&[(2, 1)]));
    }

    #[test]
    fn precision_tracking_through_mul() {
        let mut a = TruncSeries::zero(&Rationals, Prec::Mod(5));
        a.set_term(1, rat(1));
        let b = series(&[(2, 3)]); // exact 3u^2
        let prod = a.mul(&b);
        // error O(u^5) shifted by val(b)=2
        assert_eq!(prod.prec, Prec::Mod(7));
        assert_eq!(prod.coeff(3), rat(3));
    }

    #[test]
    fn truncation_fault_on_unknown_order() {
        let a = TruncSeries::<Rationals>::zero(&Rationals, Prec::Mod(4));
        assert!(matches!(a.order(), Err(Error::Truncation(4))));
        let v = varset(&["x", "y"]);
        let p = parse_poly("x", &v).unwrap();
        assert!(substitute_series_at(&p, &[a, series(&[(1, 1)])], 10).is_err());
    }

    #[test]
    fn extract_and_stretch_roundtrip() {
        let s = series(&[(2, 5), (4, -1)]);
        let r = s.extract_root(2).unwrap();
        assert_eq!(r, series(&[(1, 5), (2, -1)]));
        assert_eq!(r.stretch(2), s);
        assert!(series(&[(2, 1), (3, 1)]).extract_root(2).is_none());
    }
}
