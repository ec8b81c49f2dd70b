//! Sparse distributed multivariate polynomials over an exact field.
//!
//! Terms are kept in a BTreeMap keyed by exponent vector, which makes the
//! representation canonical and iteration deterministic. Monomial orderings
//! are chosen per algorithm (local orders for standard bases, block orders
//! for elimination), not baked into the representation.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::sync::Arc;

use smallvec::SmallVec;

use super::ring::{rational_content, Field, Rat, Rationals, Ring};
use super::upoly::{resultant, UPoly};
use crate::error::{Error, Result};

pub type Expo = SmallVec<[u16; 4]>;

pub fn expo_total_deg(e: &Expo) -> u32 {
    e.iter().map(|&x| x as u32).sum()
}

/// Monomial orderings. `Greater` means the left monomial is larger.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum MonomialOrder {
    /// Graded reverse lexicographic (global).
    GrevLex,
    /// Anti-graded lexicographic (local): lower total degree wins, ties by
    /// lex with earlier variables first. 1 > x > y > x^2 > ...
    AntiGradedLex,
    /// Block elimination order: the first `k` variables dominate.
    Elim(usize),
}

pub fn cmp_expo(order: MonomialOrder, a: &Expo, b: &Expo) -> Ordering {
    match order {
        MonomialOrder::GrevLex => cmp_grevlex(a, b),
        MonomialOrder::AntiGradedLex => {
            let (da, db) = (expo_total_deg(a), expo_total_deg(b));
            match da.cmp(&db) {
                Ordering::Less => Ordering::Greater,
                Ordering::Greater => Ordering::Less,
                Ordering::Equal => {
                    for i in 0..a.len().max(b.len()) {
                        let (x, y) = (get(a, i), get(b, i));
                        if x != y {
                            return x.cmp(&y);
                        }
                    }
                    Ordering::Equal
                }
            }
        }
        MonomialOrder::Elim(k) => {
            let da: u32 = a.iter().take(k).map(|&x| x as u32).sum();
            let db: u32 = b.iter().take(k).map(|&x| x as u32).sum();
            da.cmp(&db)
                .then_with(|| cmp_grevlex_slice(&a[..k.min(a.len())], &b[..k.min(b.len())]))
                .then_with(|| {
                    cmp_grevlex_slice(
                        &a[k.min(a.len())..],
                        &b[k.min(b.len())..],
                    )
                })
        }
    }
}

fn get(e: &Expo, i: usize) -> u16 {
    e.get(i).copied().unwrap_or(0)
}

fn cmp_grevlex(a: &Expo, b: &Expo) -> Ordering {
    cmp_grevlex_slice(&a[..], &b[..])
}

fn cmp_grevlex_slice(a: &[u16], b: &[u16]) -> Ordering {
    let da: u32 = a.iter().map(|&x| x as u32).sum();
    let db: u32 = b.iter().map(|&x| x as u32).sum();
    match da.cmp(&db) {
        Ordering::Equal => {
            let n = a.len().max(b.len());
            for i in (0..n).rev() {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                if x != y {
                    // smaller exponent in the last differing variable wins
                    return y.cmp(&x);
                }
            }
            Ordering::Equal
        }
        other => other,
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct MPoly<F: Field> {
    pub field: F,
    pub vars: Arc<Vec<String>>,
    pub terms: BTreeMap<Expo, F::Elem>,
}

impl<F: Field> MPoly<F> {
    pub fn zero(field: &F, vars: &Arc<Vec<String>>) -> Self {
        MPoly { field: field.clone(), vars: vars.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(field: &F, vars: &Arc<Vec<String>>, c: F::Elem) -> Self {
        let mut p = Self::zero(field, vars);
        if !field.is_zero(&c) {
            p.terms.insert(Expo::from_elem(0, vars.len()), c);
        }
        p
    }

    pub fn one(field: &F, vars: &Arc<Vec<String>>) -> Self {
        Self::constant(field, vars, field.one())
    }

    pub fn var(field: &F, vars: &Arc<Vec<String>>, index: usize) -> Self {
        assert!(index < vars.len());
        let mut e = Expo::from_elem(0, vars.len());
        e[index] = 1;
        let mut p = Self::zero(field, vars);
        p.terms.insert(e, field.one());
        p
    }

    pub fn monomial(field: &F, vars: &Arc<Vec<String>>, e: Expo, c: F::Elem) -> Self {
        let mut p = Self::zero(field, vars);
        if !field.is_zero(&c) {
            p.terms.insert(e, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() <= 1 && self.terms.keys().all(|e| expo_total_deg(e) == 0)
    }

    pub fn constant_term(&self) -> F::Elem {
        self.terms
            .get(&Expo::from_elem(0, self.vars.len()))
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn arity(&self) -> usize {
        self.vars.len()
    }

    pub fn same_context(&self, other: &Self) -> bool {
        self.vars == other.vars
    }

    fn assert_context(&self, other: &Self) {
        assert!(
            self.same_context(other),
            "variable context mismatch: {:?} vs {:?}",
            self.vars,
            other.vars
        );
    }

    pub fn insert_term(&mut self, e: Expo, c: F::Elem) {
        if self.field.is_zero(&c) {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = self.field.add(o.get(), &c);
                if self.field.is_zero(&s) {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.assert_context(other);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert_term(e.clone(), c.clone());
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
        self.assert_context(other);
        let mut out = Self::zero(&self.field, &self.vars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let mut e = ea.clone();
                for (i, x) in eb.iter().enumerate() {
                    e[i] += x;
                }
                out.insert_term(e, self.field.mul(ca, cb));
            }
        }
        out
    }

    pub fn mul_term(&self, e: &Expo, c: &F::Elem) -> Self {
        let mut out = Self::zero(&self.field, &self.vars);
        for (ea, ca) in &self.terms {
            let mut en = ea.clone();
            for (i, x) in e.iter().enumerate() {
                en[i] += x;
            }
            out.insert_term(en, self.field.mul(ca, c));
        }
        out
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let mut out = Self::zero(&self.field, &self.vars);
        for (e, a) in &self.terms {
            out.insert_term(e.clone(), self.field.mul(a, c));
        }
        out
    }

    pub fn pow(&self, n: usize) -> Self {
        let mut acc = Self::one(&self.field, &self.vars);
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        if !self.same_context(other) {
            return Err(Error::VarMismatch(format!("{:?} vs {:?}", self.vars, other.vars)));
        }
        Ok(self.add(other))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        if !self.same_context(other) {
            return Err(Error::VarMismatch(format!("{:?} vs {:?}", self.vars, other.vars)));
        }
        Ok(self.mul(other))
    }

    /// Formal partial derivative.
    pub fn derivative(&self, var: usize) -> Self {
        assert!(var < self.vars.len(), "unknown variable index");
        let mut out = Self::zero(&self.field, &self.vars);
        for (e, c) in &self.terms {
            let k = e[var];
            if k == 0 {
                continue;
            }
            let mut en = e.clone();
            en[var] = k - 1;
            out.insert_term(en, self.field.mul(c, &self.field.from_i64(k as i64)));
        }
        out
    }

    /// Minimal total degree among terms; `None` for the zero polynomial
    /// (order undefined / infinite).
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(expo_total_deg).min()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(expo_total_deg).max()
    }

    pub fn degree_in(&self, var: usize) -> Option<u16> {
        self.terms.keys().map(|e| e[var]).max()
    }

    /// Homogeneous part of lowest total degree.
    pub fn lowest_form(&self) -> Self {
        let Some(d) = self.order() else {
            return self.clone();
        };
        let mut out = Self::zero(&self.field, &self.vars);
        for (e, c) in &self.terms {
            if expo_total_deg(e) == d {
                out.terms.insert(e.clone(), c.clone());
            }
        }
        out
    }

    pub fn leading_term(&self, order: MonomialOrder) -> Option<(Expo, F::Elem)> {
        self.terms
            .iter()
            .max_by(|(a, _), (b, _)| cmp_expo(order, a, b))
            .map(|(e, c)| (e.clone(), c.clone()))
    }

    pub fn eval_point(&self, pt: &[F::Elem]) -> F::Elem {
        assert_eq!(pt.len(), self.vars.len());
        let mut acc = self.field.zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &k) in e.iter().enumerate() {
                t = self.field.mul(&t, &self.field.pow(&pt[i], k as usize));
            }
            acc = self.field.add(&acc, &t);
        }
        acc
    }

    /// Substitutes each variable by a polynomial in a (possibly different)
    /// shared context.
    pub fn substitute(&self, assigns: &[MPoly<F>]) -> MPoly<F> {
        assert_eq!(assigns.len(), self.vars.len());
        let ctx = &assigns[0];
        let mut acc = MPoly::zero(&self.field, &ctx.vars);
        // memoized powers per variable
        let mut powers: Vec<Vec<MPoly<F>>> =
            assigns.iter().map(|a| vec![MPoly::one(&self.field, &a.vars), a.clone()]).collect();
        for (e, c) in &self.terms {
            let mut t = MPoly::constant(&self.field, &ctx.vars, c.clone());
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

    pub fn map_coeffs<G: Field>(&self, target: &G, f: impl Fn(&F::Elem) -> G::Elem) -> MPoly<G> {
        let mut out = MPoly::zero(target, &self.vars);
        for (e, c) in &self.terms {
            out.insert_term(e.clone(), f(c));
        }
        out
    }

    /// Exact division; `None` when `d` does not divide `self`.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        self.assert_context(d);
        assert!(!d.is_zero(), "division by zero polynomial");
        let mut rem = self.clone();
        let mut q = Self::zero(&self.field, &self.vars);
        let (dlt_e, dlt_c) = d.leading_term(MonomialOrder::GrevLex).unwrap();
        while !rem.is_zero() {
            let (rlt_e, rlt_c) = rem.leading_term(MonomialOrder::GrevLex).unwrap();
            let mut e = Expo::from_elem(0, self.vars.len());
            for i in 0..self.vars.len() {
                if rlt_e[i] < dlt_e[i] {
                    return None;
                }
                e[i] = rlt_e[i] - dlt_e[i];
            }
            let c = self.field.div(&rlt_c, &dlt_c);
            q.insert_term(e.clone(), c.clone());
            rem = rem.sub(&d.mul_term(&e, &c));
        }
        Some(q)
    }

    /// View as a univariate polynomial in `var` with coefficients in the
    /// remaining variables (kept in the same context with `var`-degree zero).
    pub fn to_upoly(&self, var: usize) -> UPoly<MPolyRing<F>> {
        let ring = MPolyRing { field: self.field.clone(), vars: self.vars.clone() };
        let deg = self.degree_in(var).unwrap_or(0) as usize;
        let mut coeffs = vec![ring.zero(); deg + 1];
        for (e, c) in &self.terms {
            let k = e[var] as usize;
            let mut en = e.clone();
            en[var] = 0;
            coeffs[k].insert_term(en, c.clone());
        }
        UPoly::from_coeffs(&ring, coeffs)
    }

    pub fn from_upoly(up: &UPoly<MPolyRing<F>>, field: &F, vars: &Arc<Vec<String>>, var: usize) -> Self {
        let mut out = Self::zero(field, vars);
        for (k, c) in up.coeffs.iter().enumerate() {
            for (e, a) in &c.terms {
                let mut en = e.clone();
                en[var] += k as u16;
                out.insert_term(en, a.clone());
            }
        }
        out
    }

    /// Reorders variables: `perm[new_index] = old_index`.
    pub fn permute_vars(&self, perm: &[usize], new_vars: &Arc<Vec<String>>) -> Self {
        assert_eq!(perm.len(), self.vars.len());
        let mut out = Self::zero(&self.field, new_vars);
        for (e, c) in &self.terms {
            let mut en = Expo::from_elem(0, perm.len());
            for (new_i, &old_i) in perm.iter().enumerate() {
                en[new_i] = e[old_i];
            }
            out.insert_term(en, c.clone());
        }
        out
    }

    pub fn involves(&self, var: usize) -> bool {
        self.terms.keys().any(|e| e[var] > 0)
    }

    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut keys: Vec<&Expo> = self.terms.keys().collect();
        keys.sort_by(|a, b| {
            expo_total_deg(b)
                .cmp(&expo_total_deg(a))
                .then_with(|| b.cmp(a))
        });
        let mut s = String::new();
        for (idx, e) in keys.iter().enumerate() {
            let c = &self.terms[*e];
            let cs = self.field.fmt_elem(c);
            let (sign, mag) = if let Some(stripped) = cs.strip_prefix('-') {
                ("-", stripped.to_string())
            } else {
                ("+", cs)
            };
            let needs_parens = mag.contains('+') || mag.contains(" - ");
            let mag = if needs_parens { format!("({})", mag) } else { mag };
            let mut mono = String::new();
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                if !mono.is_empty() {
                    mono.push('*');
                }
                if k == 1 {
                    mono.push_str(&self.vars[i]);
                } else {
                    mono.push_str(&format!("{}^{}", self.vars[i], k));
                }
            }
            let body = if mono.is_empty() {
                mag
            } else if mag == "1" {
                mono
            } else {
                format!("{}*{}", mag, mono)
            };
            if idx == 0 {
                if sign == "-" {
                    s.push('-');
                }
                s.push_str(&body);
            } else {
                s.push_str(if sign == "-" { " - " } else { " + " });
                s.push_str(&body);
            }
        }
        s
    }
}

/// Multivariate gcd by a primitive polynomial remainder sequence, recursing
/// through the variables. Result is normalized (monic-like: content one over
/// the base field; callers over Q get an integer-primitive result).
pub fn gcd_mv<F: Field>(a: &MPoly<F>, b: &MPoly<F>) -> MPoly<F> {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    let var = (0..a.arity())
        .rev()
        .find(|&v| a.involves(v) || b.involves(v));
    let Some(var) = var else {
        // both constants
        return MPoly::one(&a.field, &a.vars);
    };
    let ring = MPolyRing { field: a.field.clone(), vars: a.vars.clone() };
    let ua = a.to_upoly(var);
    let ub = b.to_upoly(var);
    let (ca, pa) = upoly_content_pp(&ring, &ua);
    let (cb, pb) = upoly_content_pp(&ring, &ub);
    let gc = gcd_mv(&ca, &cb);
    // primitive PRS
    let (mut f, mut g) = if pa.degree() >= pb.degree() { (pa, pb) } else { (pb, pa) };
    while !g.is_zero() {
        if g.deg() == 0 {
            g = UPoly::constant(&ring, MPoly::one(&a.field, &a.vars));
            let gp = MPoly::from_upoly(&g, &a.field, &a.vars, var);
            return gc.mul(&gp).normalized();
        }
        let (_, r) = f.pseudo_divrem(&ring, &g);
        let r = if r.is_zero() {
            r
        } else {
            upoly_content_pp(&ring, &r).1
        };
        f = std::mem::replace(&mut g, r);
    }
    let gp = MPoly::from_upoly(&f, &a.field, &a.vars, var);
    gc.mul(&gp).normalized()
}

fn upoly_content_pp<F: Field>(
    ring: &MPolyRing<F>,
    p: &UPoly<MPolyRing<F>>,
) -> (MPoly<F>, UPoly<MPolyRing<F>>) {
    let mut c = MPoly::zero(&ring.field, &ring.vars);
    for coeff in &p.coeffs {
        c = gcd_mv(&c, coeff);
    }
    if c.is_zero() {
        return (c, p.clone());
    }
    let pp = UPoly::from_coeffs(
        ring,
        p.coeffs
            .iter()
            .map(|x| x.exact_div(&c).expect("content division"))
            .collect(),
    );
    (c, pp)
}

impl<F: Field> MPoly<F> {
    /// Canonical scalar normalization: content one and positive leading sign
    /// over Q; monic leading coefficient otherwise.
    pub fn normalized(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let (_, lt) = self.leading_term(MonomialOrder::GrevLex).unwrap();
        if let Some(_q) = self.field.to_rat(&lt) {
            // treat as rational-coefficient polynomial: strip rational content
            let rats: Vec<Rat> = self
                .terms
                .values()
                .map(|c| self.field.to_rat(c).unwrap_or_else(|| Rat::from_integer(0.into())))
                .collect();
            if self.terms.values().all(|c| self.field.to_rat(c).is_some()) {
                let content = rational_content(rats.iter());
                let lt_rat = self.field.to_rat(&lt).unwrap();
                let sign = if lt_rat < Rat::from_integer(0.into()) {
                    -content
                } else {
                    content
                };
                let inv = self.field.from_rat(&(Rat::from_integer(1.into()) / sign));
                return self.scale(&inv);
            }
        }
        let inv = self.field.inv(&lt);
        self.scale(&inv)
    }

    /// Squarefree part `p / gcd(p, dp/dx_1, ..., dp/dx_n)` and whether the
    /// input was already squarefree.
    pub fn squarefree_part(&self) -> (Self, bool) {
        assert!(!self.is_zero(), "squarefree part of zero");
        let mut g = self.clone();
        for v in 0..self.arity() {
            g = gcd_mv(&g, &self.derivative(v));
        }
        let is_sf = g.is_constant();
        let sf = self.exact_div(&g).expect("squarefree division").normalized();
        (sf, is_sf)
    }
}

/// Resultant eliminating `var`, by the subresultant PRS over the polynomial
/// coefficient ring.
pub fn resultant_mv<F: Field>(p: &MPoly<F>, q: &MPoly<F>, var: usize) -> Result<MPoly<F>> {
    if p.is_zero() || q.is_zero() {
        return Err(Error::Precondition("resultant of zero polynomial".into()));
    }
    if !p.involves(var) && !q.involves(var) {
        return Err(Error::Precondition(format!(
            "resultant: neither input involves {}",
            p.vars[var]
        )));
    }
    let ring = MPolyRing { field: p.field.clone(), vars: p.vars.clone() };
    let up = p.to_upoly(var);
    let uq = q.to_upoly(var);
    Ok(resultant(&ring, &up, &uq))
}

/// `MPoly` as a coefficient ring (for univariate views and resultants).
#[derive(Clone, PartialEq, Debug)]
pub struct MPolyRing<F: Field> {
    pub field: F,
    pub vars: Arc<Vec<String>>,
}

impl<F: Field> Ring for MPolyRing<F> {
    type Elem = MPoly<F>;

    fn zero(&self) -> MPoly<F> {
        MPoly::zero(&self.field, &self.vars)
    }
    fn one(&self) -> MPoly<F> {
        MPoly::one(&self.field, &self.vars)
    }
    fn is_zero(&self, a: &MPoly<F>) -> bool {
        a.is_zero()
    }
    fn neg(&self, a: &MPoly<F>) -> MPoly<F> {
        a.neg()
    }
    fn add(&self, a: &MPoly<F>, b: &MPoly<F>) -> MPoly<F> {
        a.add(b)
    }
    fn mul(&self, a: &MPoly<F>, b: &MPoly<F>) -> MPoly<F> {
        a.mul(b)
    }
    fn exact_div(&self, a: &MPoly<F>, b: &MPoly<F>) -> Option<MPoly<F>> {
        if a.is_zero() {
            return Some(self.zero());
        }
        a.exact_div(b)
    }
    fn from_rat(&self, q: &Rat) -> MPoly<F> {
        MPoly::constant(&self.field, &self.vars, self.field.from_rat(q))
    }
    fn fmt_elem(&self, a: &MPoly<F>) -> String {
        a.render()
    }
}

// ---------------------------------------------------------------------------
// Expression parsing (shared by tests and the germ file reader).
// ---------------------------------------------------------------------------

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
    vars: &'a [String],
}

impl<'a> Parser<'a> {
    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse { line: 0, col: self.pos + 1, msg: msg.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && (self.bytes[self.pos] as char).is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.bytes.get(self.pos).map(|&b| b as char)
    }

    fn expr(&mut self, ctx: &ExprCtx) -> Result<MPoly<Rationals>> {
        let mut neg = false;
        if let Some(c) = self.peek() {
            if c == '+' || c == '-' {
                self.pos += 1;
                neg = c == '-';
            }
        }
        let mut acc = self.term(ctx)?;
        if neg {
            acc = acc.neg();
        }
        while let Some(c) = self.peek() {
            if c == '+' || c == '-' {
                self.pos += 1;
                let t = self.term(ctx)?;
                acc = if c == '-' { acc.sub(&t) } else { acc.add(&t) };
            } else {
                break;
            }
        }
        Ok(acc)
    }

    fn term(&mut self, ctx: &ExprCtx) -> Result<MPoly<Rationals>> {
        let mut acc = self.factor(ctx)?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    let f = self.factor(ctx)?;
                    acc = acc.mul(&f);
                }
                Some(c) if c.is_ascii_alphabetic() || c.is_ascii_digit() || c == '(' => {
                    let f = self.factor(ctx)?;
                    acc = acc.mul(&f);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn factor(&mut self, ctx: &ExprCtx) -> Result<MPoly<Rationals>> {
        let base = self.base(ctx)?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let n = self.uint()?;
            if n > 1024 {
                return Err(self.err("exponent too large"));
            }
            return Ok(base.pow(n as usize));
        }
        Ok(base)
    }

    fn base(&mut self, ctx: &ExprCtx) -> Result<MPoly<Rationals>> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr(ctx)?;
                if self.peek() != Some(')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.uint()? as i64;
                let q = if self.peek() == Some('/') {
                    self.pos += 1;
                    let d = self.uint()? as i64;
                    if d == 0 {
                        return Err(self.err("zero denominator"));
                    }
                    Rat::new(n.into(), d.into())
                } else {
                    Rat::from_integer(n.into())
                };
                Ok(MPoly::constant(&Rationals, &ctx.vars, q))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                // longest variable name match
                let mut best: Option<(usize, usize)> = None;
                for (i, v) in self.vars.iter().enumerate() {
                    let vb = v.as_bytes();
                    if self.bytes[start..].starts_with(vb)
                        && best.map_or(true, |(_, l)| vb.len() > l)
                    {
                        best = Some((i, vb.len()));
                    }
                }
                match best {
                    Some((i, l)) => {
                        self.pos += l;
                        Ok(MPoly::var(&Rationals, &ctx.vars, i))
                    }
                    None => Err(self.err(format!("unknown variable '{}'", c))),
                }
            }
            Some(c) => Err(self.err(format!("unexpected character '{}'", c))),
            None => Err(self.err("unexpected end of expression")),
        }
    }

    fn uint(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a number"));
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.err("number too large"))
    }
}

struct ExprCtx {
    vars: Arc<Vec<String>>,
}

/// Parses a polynomial expression over Q in the named variables. Column
/// positions in errors are 1-based; the caller fills in the line number.
pub fn parse_poly(src: &str, vars: &Arc<Vec<String>>) -> Result<MPoly<Rationals>> {
    let names: Vec<String> = vars.iter().cloned().collect();
    let mut p = Parser { bytes: src.as_bytes(), pos: 0, vars: &names };
    let ctx = ExprCtx { vars: vars.clone() };
    let e = p.expr(&ctx)?;
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return Err(p.err("trailing input"));
    }
    Ok(e)
}

pub fn varset(names: &[&str]) -> Arc<Vec<String>> {
    Arc::new(names.iter().map(|s| s.to_string()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xy() -> Arc<Vec<String>> {
        varset(&["x", "y"])
    }

    fn p(src: &str) -> MPoly<Rationals> {
        parse_poly(src, &xy()).unwrap()
    }

    #[test]
    fn product_difference_of_squares() {
        assert_eq!(p("x+y").mul(&p("x-y")), p("x^2-y^2"));
    }

    #[test]
    fn additive_identity() {
        let q = p("x*y^2 - x^5");
        assert_eq!(q.add(&p("0")), q);
    }

    #[test]
    fn hand_expanded_product() {
        // (xy^2 - x^5)(x + y^2), expanded by hand and collected
        let lhs = p("x*y^2 - x^5").mul(&p("x + y^2"));
        assert_eq!(lhs, p("x^2*y^2 + x*y^4 - x^6 - x^5*y^2"));
    }

    #[test]
    fn derivatives() {
        let q = p("x*y^2 - x^5");
        assert_eq!(q.derivative(0), p("y^2 - 5x^4"));
        assert_eq!(q.derivative(1), p("2x*y"));
        assert_eq!(p("7").derivative(0), p("0"));
    }

    #[test]
    fn order_examples() {
        assert_eq!(p("x*y^2 - x^5").order(), Some(3));
        assert_eq!(p("x + y^2").order(), Some(1));
        assert_eq!(p("y^4 - y^10").order(), Some(4));
        assert_eq!(p("0").order(), None);
    }

    #[test]
    fn order_is_additive() {
        let a = p("x*y^2 - x^5");
        let b = p("x + y^2");
        assert_eq!(
            a.mul(&b).order(),
            Some(a.order().unwrap() + b.order().unwrap())
        );
    }

    #[test]
    fn exact_division_roundtrip() {
        let a = p("x*y^2 - x^5");
        let b = p("x + y^2");
        let prod = a.mul(&b);
        assert_eq!(prod.exact_div(&b).unwrap(), a);
        assert!(p("x^2 + y").exact_div(&b).is_none());
    }

    #[test]
    fn gcd_and_squarefree() {
        let a = p("x").mul(&p("x + y^2"));
        let g = gcd_mv(&a, &p("x"));
        assert_eq!(g.normalized(), p("x"));
        // y^2 has squarefree part y
        let (sf, is_sf) = p("y^2").squarefree_part();
        assert_eq!(sf, p("y"));
        assert!(!is_sf);
        let (sf, is_sf) = p("x*y^2 - x^5").squarefree_part();
        assert_eq!(sf.normalized(), p("x*y^2 - x^5").normalized());
        assert!(is_sf);
        let (_, is_sf) = a.squarefree_part();
        assert!(is_sf);
    }

    #[test]
    fn resultant_eliminates() {
        // Res_y'(y + y', x(y^2 + y y' + y'^2) - x^5) = +-(x y^2 - x^5)
        let v = varset(&["x", "y", "y'"]);
        let a = parse_poly("y + y'", &v).unwrap();
        let b = parse_poly("x*(y^2 + y*y' + y'^2) - x^5", &v).unwrap();
        let r = resultant_mv(&a, &b, 2).unwrap();
        let expected = parse_poly("x*y^2 - x^5", &v).unwrap();
        let rn = r.normalized();
        assert!(rn == expected.normalized() || rn == expected.neg().normalized());

        // degree-0 case: Res_y'(y + y', x) = x
        let c = parse_poly("x", &v).unwrap();
        let r = resultant_mv(&a, &c, 2).unwrap();
        assert_eq!(r.normalized(), c.normalized());

        // evaluation property: Res_y'(y' - y, q(x, y')) = q(x, y)
        let d = parse_poly("y' - y", &v).unwrap();
        let q = parse_poly("x*y'^2 + y'^3 - x^4", &v).unwrap();
        let r = resultant_mv(&d, &q, 2).unwrap();
        assert_eq!(
            r.normalized(),
            parse_poly("x*y^2 + y^3 - x^4", &v).unwrap().normalized()
        );
    }

    #[test]
    fn resultant_vanishes_iff_common_factor() {
        let v = xy();
        let a = parse_poly("(x + y)*(x - 2y)", &v).unwrap();
        let b = parse_poly("(x + y)*(x + 3y)", &v).unwrap();
        let r = resultant_mv(&a, &b, 1).unwrap();
        assert!(r.is_zero());
        let c = parse_poly("x - 2y", &v).unwrap();
        let d = parse_poly("x + 3y", &v).unwrap();
        assert!(!resultant_mv(&c, &d, 1).unwrap().is_zero());
    }

    #[test]
    fn render_is_canonical() {
        assert_eq!(p("y^2 - 5x^4").render(), "-5*x^4 + y^2");
        assert_eq!(p("x*y^2 - x^5").render(), "-x^5 + x*y^2");
        assert_eq!(p("0").render(), "0");
    }

    #[test]
    fn parse_errors_carry_columns() {
        match parse_poly("x + z", &xy()) {
            Err(Error::Parse { col, .. }) => assert_eq!(col, 5),
            other => panic!("expected parse error, got {:?}", other),
        }
        assert!(parse_poly("x +", &xy()).is_err());
        assert!(parse_poly("x ^ y", &xy()).is_err());
    }

    #[test]
    fn local_order_examples() {
        // 1 > x > y > x^2
        let one = Expo::from_slice(&[0, 0]);
        let x = Expo::from_slice(&[1, 0]);
        let y = Expo::from_slice(&[0, 1]);
        let x2 = Expo::from_slice(&[2, 0]);
        let o = MonomialOrder::AntiGradedLex;
        assert_eq!(cmp_expo(o, &one, &x), Ordering::Greater);
        assert_eq!(cmp_expo(o, &x, &y), Ordering::Greater);
        assert_eq!(cmp_expo(o, &y, &x2), Ordering::Greater);
    }
}
